/** The 7-point interaction scale, most negative first. */
export const SCORE_VALUES = [-3, -2, -1, 0, 1, 2, 3] as const;

export const SCORE_LABELS: Record<number, string> = {
  [-3]: "cancelling",
  [-2]: "counteracting",
  [-1]: "constraining",
  0: "consistent",
  1: "enabling",
  2: "reinforcing",
  3: "indivisible",
};

export interface AnswerDraft {
  score: number | null;
  explanation: string;
  mitigation: string;
}

/**
 * Names of the fields still required before the draft may be
 * submitted. Empty means submittable. A negative score requires both
 * an explanation and a mitigation; whitespace does not count.
 */
export function missingFields(draft: AnswerDraft): string[] {
  const missing: string[] = [];
  if (draft.score === null) {
    missing.push("score");
    return missing;
  }
  if (draft.score < 0) {
    if (!draft.explanation.trim()) {
      missing.push("explanation");
    }
    if (!draft.mitigation.trim()) {
      missing.push("mitigation");
    }
  }
  return missing;
}
