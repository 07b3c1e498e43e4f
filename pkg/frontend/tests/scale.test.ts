import { describe, expect, it } from "vitest";

import { missingFields, SCORE_LABELS, SCORE_VALUES } from "../src/scale.js";

describe("score scale", () => {
  it("has seven points with distinct labels", () => {
    expect(SCORE_VALUES).toHaveLength(7);
    const labels = SCORE_VALUES.map((v) => SCORE_LABELS[v]);
    expect(new Set(labels).size).toBe(7);
  });

  it("anchors the ends and the middle", () => {
    expect(SCORE_LABELS[-3]).toBe("cancelling");
    expect(SCORE_LABELS[0]).toBe("consistent");
    expect(SCORE_LABELS[3]).toBe("indivisible");
  });
});

describe("missingFields", () => {
  it("requires a score first", () => {
    expect(missingFields({ score: null, explanation: "", mitigation: "" }))
      .toEqual(["score"]);
  });

  // Exhaustive over the whole form state space: 7 scores x 2 x 2 texts.
  it("blocks negative scores until both texts are present", () => {
    const texts = ["", "   ", "something"];
    for (const score of SCORE_VALUES) {
      for (const explanation of texts) {
        for (const mitigation of texts) {
          const missing = missingFields({ score, explanation, mitigation });
          if (score >= 0) {
            expect(missing).toEqual([]);
          } else {
            const expected: string[] = [];
            if (!explanation.trim()) expected.push("explanation");
            if (!mitigation.trim()) expected.push("mitigation");
            expect(missing).toEqual(expected);
          }
        }
      }
    }
  });
});
