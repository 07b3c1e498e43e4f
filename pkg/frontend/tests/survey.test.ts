import { beforeEach, describe, expect, it, vi } from "vitest";

import { ApiError } from "../src/api.js";
import type { Assignment, Progress } from "../src/api.js";
import type { AppContext } from "../src/context.js";
import { SessionStore } from "../src/session.js";
import { SurveyCard, SurveyPage } from "../src/views/survey.js";
import { fakeApi, flush } from "./fakeapi.js";

function target(code: string, description = "some target") {
  const goal = Number(code.split(".")[0]);
  return { code, goal, goal_name: `Goal ${goal}`, description };
}

function assignment(a: string, b: string): Assignment {
  return { pair: `${a}|${b}`, state: "pending", target_a: target(a), target_b: target(b) };
}

const PROGRESS: Progress = { answered: 0, skipped: 0, pending: 2, total: 2 };

function pickScore(card: HTMLElement, value: number): void {
  const radio = card.querySelector<HTMLInputElement>(`input[name=score][value="${value}"]`);
  if (!radio) throw new Error(`no radio for ${value}`);
  radio.checked = true;
  // jsdom's click() does not fire the change event a real browser would
  radio.dispatchEvent(new Event("change", { bubbles: true }));
}

function fillText(card: HTMLElement, name: string, value: string): void {
  const area = card.querySelector<HTMLTextAreaElement>(`textarea[name=${name}]`);
  if (!area) throw new Error(`no textarea ${name}`);
  area.value = value;
  area.dispatchEvent(new Event("input", { bubbles: true }));
}

function submitButton(card: HTMLElement): HTMLButtonElement {
  return card.querySelector<HTMLButtonElement>("button.submit")!;
}

describe("SurveyCard", () => {
  const handlers = { onSubmit: vi.fn(), onSkip: vi.fn() };

  beforeEach(() => {
    handlers.onSubmit.mockClear();
    handlers.onSkip.mockClear();
  });

  it("shows all seven scale options with labels", () => {
    const card = SurveyCard(assignment("13.1", "14.C"), handlers);
    const options = card.querySelectorAll("input[name=score]");
    expect(options).toHaveLength(7);
    expect(card.textContent).toContain("cancelling");
    expect(card.textContent).toContain("indivisible");
  });

  it("starts with submit disabled until a score is chosen", () => {
    const card = SurveyCard(assignment("13.1", "14.C"), handlers);
    expect(submitButton(card).disabled).toBe(true);
    pickScore(card, 3);
    expect(submitButton(card).disabled).toBe(false);
  });

  it("keeps submit blocked on a negative score until both texts are filled", () => {
    const card = SurveyCard(assignment("13.1", "14.C"), handlers);
    pickScore(card, -2);
    expect(submitButton(card).disabled).toBe(true);

    fillText(card, "explanation", "fisheries conflict");
    expect(submitButton(card).disabled).toBe(true);

    fillText(card, "mitigation", "coordinate quotas");
    expect(submitButton(card).disabled).toBe(false);
  });

  it("treats whitespace-only text as missing", () => {
    const card = SurveyCard(assignment("13.1", "14.C"), handlers);
    pickScore(card, -1);
    fillText(card, "explanation", "   ");
    fillText(card, "mitigation", "   ");
    expect(submitButton(card).disabled).toBe(true);
  });

  it("marks the text inputs required only while the score is negative", () => {
    const card = SurveyCard(assignment("13.1", "14.C"), handlers);
    const explanation = card.querySelector<HTMLTextAreaElement>("textarea[name=explanation]")!;
    pickScore(card, -3);
    expect(explanation.required).toBe(true);
    pickScore(card, 2);
    expect(explanation.required).toBe(false);
  });

  // The whole form state space: every score, with and without each text.
  it("enables submit exactly when nothing is missing", () => {
    for (const score of [-3, -2, -1, 0, 1, 2, 3]) {
      for (const explanation of ["", "why"]) {
        for (const mitigation of ["", "how"]) {
          const card = SurveyCard(assignment("13.1", "14.C"), handlers);
          pickScore(card, score);
          fillText(card, "explanation", explanation);
          fillText(card, "mitigation", mitigation);
          const blocked = score < 0 && (!explanation || !mitigation);
          expect(submitButton(card).disabled, `${score}/${explanation}/${mitigation}`)
            .toBe(blocked);
        }
      }
    }
  });

  it("never calls onSubmit for an incomplete negative answer", () => {
    const card = SurveyCard(assignment("13.1", "14.C"), handlers) as HTMLFormElement;
    pickScore(card, -2);
    card.dispatchEvent(new Event("submit", { bubbles: true, cancelable: true }));
    expect(handlers.onSubmit).not.toHaveBeenCalled();
  });

  it("submits the trimmed draft", () => {
    const card = SurveyCard(assignment("13.1", "14.C"), handlers) as HTMLFormElement;
    pickScore(card, -2);
    fillText(card, "explanation", "  conflict  ");
    fillText(card, "mitigation", "  talk  ");
    card.dispatchEvent(new Event("submit", { bubbles: true, cancelable: true }));
    expect(handlers.onSubmit).toHaveBeenCalledWith(
      { score: -2, explanation: "conflict", mitigation: "talk" });
  });

  it("wires the skip button", () => {
    const card = SurveyCard(assignment("13.1", "14.C"), handlers);
    card.querySelector<HTMLButtonElement>("button.skip")!.click();
    expect(handlers.onSkip).toHaveBeenCalledOnce();
  });
});

describe("SurveyPage", () => {
  function context(overrides: Parameters<typeof fakeApi>[0]): AppContext {
    localStorage.clear();
    return { api: fakeApi(overrides), session: new SessionStore(), navigate: vi.fn() };
  }

  it("walks the queue as answers land", async () => {
    const submitted: unknown[] = [];
    const ctx = context({
      nextAssignments: async () => ({
        assignments: [assignment("13.1", "13.2"), assignment("13.1", "13.3")],
        pending: 2,
        skipped: 0,
      }),
      progress: async () => PROGRESS,
      submitAnswer: async (draft) => {
        submitted.push(draft);
        return {
          target_a: draft.target_a, target_b: draft.target_b, score: draft.score,
          label: "indivisible", class: "positive" as const,
          explanation: null, mitigation: null, scored_at: "2025-01-01T00:00:00+00:00",
        };
      },
    });
    const page = await SurveyPage(ctx);
    expect(page.textContent).toContain("13.1  |  13.2");

    pickScore(page, 3);
    page.querySelector("form")!.dispatchEvent(
      new Event("submit", { bubbles: true, cancelable: true }));
    await flush();

    expect(submitted).toHaveLength(1);
    expect(page.textContent).toContain("13.1  |  13.3");
  });

  it("shows a notice and advances when the pair was already scored", async () => {
    const ctx = context({
      nextAssignments: async () => ({
        assignments: [assignment("13.1", "13.2"), assignment("13.1", "13.3")],
        pending: 2,
        skipped: 0,
      }),
      progress: async () => PROGRESS,
      submitAnswer: async () => {
        throw new ApiError(409, "pair (13.1, 13.2) is already scored");
      },
    });
    const page = await SurveyPage(ctx);
    pickScore(page, 2);
    page.querySelector("form")!.dispatchEvent(
      new Event("submit", { bubbles: true, cancelable: true }));
    await flush();

    expect(page.querySelector(".status")!.textContent).toContain("already scored");
    expect(page.textContent).toContain("13.1  |  13.3");
  });

  it("skips through the queue", async () => {
    const skipped: string[] = [];
    const ctx = context({
      nextAssignments: async () => ({
        assignments: [assignment("13.1", "13.2"), assignment("13.1", "13.3")],
        pending: 2,
        skipped: 0,
      }),
      progress: async () => PROGRESS,
      skip: async (a, b) => {
        skipped.push(`${a},${b}`);
      },
    });
    const page = await SurveyPage(ctx);
    page.querySelector<HTMLButtonElement>("button.skip")!.click();
    await flush();

    expect(skipped).toEqual(["13.1,13.2"]);
    expect(page.textContent).toContain("13.1  |  13.3");
  });

  it("says so when nothing is pending", async () => {
    const ctx = context({
      nextAssignments: async () => ({ assignments: [], pending: 0, skipped: 0 }),
      progress: async () => ({ answered: 0, skipped: 0, pending: 0, total: 0 }),
    });
    const page = await SurveyPage(ctx);
    expect(page.textContent).toContain("Nothing to score");
  });
});
