import type { EdgeClass } from "./api.js";

/**
 * Edge color legend. One color per interaction class, no edge is ever
 * drawn outside these four.
 */
export const EDGE_COLORS: Record<EdgeClass, string> = {
  positive: "#1f77b4",
  negative: "#d62728",
  neutral: "#000000",
  uncolored: "#9e9e9e",
};

export const EDGE_CLASSES: EdgeClass[] = ["positive", "negative", "neutral", "uncolored"];

/** Official UN color for each of the 17 goals, indexed by goal number. */
const GOAL_COLORS: Record<number, string> = {
  1: "#E5243B",
  2: "#DDA63A",
  3: "#4C9F38",
  4: "#C5192D",
  5: "#FF3A21",
  6: "#26BDE2",
  7: "#FCC30B",
  8: "#A21942",
  9: "#FD6925",
  10: "#DD1367",
  11: "#FD9D24",
  12: "#BF8B2E",
  13: "#3F7E44",
  14: "#0A97D9",
  15: "#56C02B",
  16: "#00689D",
  17: "#19486A",
};

export const GOAL_NAMES: Record<number, string> = {
  1: "No Poverty",
  2: "Zero Hunger",
  3: "Good Health and Well-being",
  4: "Quality Education",
  5: "Gender Equality",
  6: "Clean Water and Sanitation",
  7: "Affordable and Clean Energy",
  8: "Decent Work and Economic Growth",
  9: "Industry, Innovation and Infrastructure",
  10: "Reduced Inequalities",
  11: "Sustainable Cities and Communities",
  12: "Responsible Consumption and Production",
  13: "Climate Action",
  14: "Life Below Water",
  15: "Life on Land",
  16: "Peace, Justice and Strong Institutions",
  17: "Partnerships for the Goals",
};

export function goalColor(goal: number): string {
  const color = GOAL_COLORS[goal];
  if (!color) {
    throw new RangeError(`no such goal: ${goal}`);
  }
  return color;
}

/** Goal number from a target code such as "13.1" or "16.B". */
export function goalOf(code: string): number {
  const dot = code.indexOf(".");
  const goal = Number(dot < 0 ? code : code.slice(0, dot));
  if (!Number.isInteger(goal)) {
    throw new RangeError(`malformed target code: ${code}`);
  }
  return goal;
}
