import { describe, expect, it } from "vitest";

import { EDGE_CLASSES, EDGE_COLORS, GOAL_NAMES, goalColor, goalOf } from "../src/colors.js";

describe("edge color map", () => {
  it("covers exactly the four interaction classes", () => {
    expect(Object.keys(EDGE_COLORS).sort()).toEqual(
      ["negative", "neutral", "positive", "uncolored"]);
    expect([...EDGE_CLASSES].sort()).toEqual(Object.keys(EDGE_COLORS).sort());
  });

  it("is a bijection: four distinct colors", () => {
    const colors = Object.values(EDGE_COLORS);
    expect(new Set(colors).size).toBe(4);
  });

  it("assigns the legend colors", () => {
    // positive blue, negative red, neutral black, uncolored gray
    expect(EDGE_COLORS.positive).toBe("#1f77b4");
    expect(EDGE_COLORS.negative).toBe("#d62728");
    expect(EDGE_COLORS.neutral).toBe("#000000");
    expect(EDGE_COLORS.uncolored).toBe("#9e9e9e");
  });
});

describe("goal palette", () => {
  it("has one distinct color per goal", () => {
    const colors = Array.from({ length: 17 }, (_, i) => goalColor(i + 1));
    expect(new Set(colors).size).toBe(17);
    for (const color of colors) {
      expect(color).toMatch(/^#[0-9A-Fa-f]{6}$/);
    }
  });

  it("rejects goals outside 1..17", () => {
    expect(() => goalColor(0)).toThrow(RangeError);
    expect(() => goalColor(18)).toThrow(RangeError);
  });

  it("names all 17 goals", () => {
    expect(Object.keys(GOAL_NAMES)).toHaveLength(17);
    expect(GOAL_NAMES[13]).toBe("Climate Action");
  });
});

describe("goalOf", () => {
  it("reads the goal prefix of a target code", () => {
    expect(goalOf("13.1")).toBe(13);
    expect(goalOf("16.B")).toBe(16);
    expect(goalOf("1.A")).toBe(1);
  });

  it("rejects codes without a numeric prefix", () => {
    expect(() => goalOf("x.1")).toThrow(RangeError);
  });
});
