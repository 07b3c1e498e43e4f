import { ApiError } from "../api.js";
import type { Assignment } from "../api.js";
import type { AppContext } from "../context.js";
import { clear, el } from "../dom.js";
import { missingFields, SCORE_LABELS, SCORE_VALUES } from "../scale.js";
import type { AnswerDraft } from "../scale.js";

export interface SurveyCardHandlers {
  onSubmit(draft: { score: number; explanation: string; mitigation: string }): void;
  onSkip(): void;
}

function readDraft(form: HTMLFormElement): AnswerDraft {
  const picked = form.querySelector<HTMLInputElement>("input[name=score]:checked");
  const explanation = form.querySelector<HTMLTextAreaElement>("textarea[name=explanation]");
  const mitigation = form.querySelector<HTMLTextAreaElement>("textarea[name=mitigation]");
  return {
    score: picked ? Number(picked.value) : null,
    explanation: explanation?.value ?? "",
    mitigation: mitigation?.value ?? "",
  };
}

/**
 * One pair to score: the 7-point scale, explanation and mitigation
 * inputs, submit and skip. Choosing a negative score makes both text
 * fields required and keeps submit disabled until they are filled in;
 * the server enforces the same rule, this is the first line.
 */
export function SurveyCard(assignment: Assignment, handlers: SurveyCardHandlers): HTMLElement {
  const form = el("form", { class: "survey-card" });

  const header = el(
    "div",
    { class: "pair-header" },
    el("h3", {}, `${assignment.target_a.code}  |  ${assignment.target_b.code}`),
    el("p", { class: "target-text" },
      el("strong", {}, `${assignment.target_a.code} `), assignment.target_a.description),
    el("p", { class: "target-text" },
      el("strong", {}, `${assignment.target_b.code} `), assignment.target_b.description),
  );

  const scaleBox = el("fieldset", { class: "scale" },
    el("legend", {}, "How does progress on one target affect the other?"));
  for (const value of SCORE_VALUES) {
    const id = `score-${value}`;
    scaleBox.append(
      el("label", { class: "scale-option", for: id },
        el("input", { type: "radio", name: "score", id, value: String(value) }),
        el("span", { class: "scale-value" }, value > 0 ? `+${value}` : String(value)),
        el("span", { class: "scale-label" }, SCORE_LABELS[value]),
      ),
    );
  }

  const explanation = el("textarea", {
    name: "explanation",
    rows: 2,
    placeholder: "Why does this interaction occur?",
  });
  const mitigation = el("textarea", {
    name: "mitigation",
    rows: 2,
    placeholder: "How could the conflict be mitigated?",
  });
  const explanationField = el("label", { class: "text-field" }, "Explanation", explanation);
  const mitigationField = el("label", { class: "text-field" }, "Mitigation", mitigation);

  const hint = el("p", { class: "hint", role: "note" });
  const submit = el("button", { type: "submit", class: "submit" }, "Submit score");
  submit.disabled = true;
  const skip = el("button", { type: "button", class: "skip" }, "Skip for now");

  const update = () => {
    const draft = readDraft(form);
    const missing = missingFields(draft);
    const negative = draft.score !== null && draft.score < 0;
    explanation.required = negative;
    mitigation.required = negative;
    explanationField.classList.toggle("required", negative);
    mitigationField.classList.toggle("required", negative);
    submit.disabled = missing.length > 0;
    hint.textContent = negative && missing.length > 0
      ? `A negative score needs: ${missing.join(", ")}.`
      : "";
  };
  form.addEventListener("input", update);
  form.addEventListener("change", update);

  form.addEventListener("submit", (event) => {
    event.preventDefault();
    const draft = readDraft(form);
    if (draft.score === null || missingFields(draft).length > 0) {
      return;
    }
    handlers.onSubmit({
      score: draft.score,
      explanation: draft.explanation.trim(),
      mitigation: draft.mitigation.trim(),
    });
  });
  skip.addEventListener("click", () => handlers.onSkip());

  form.append(header, scaleBox, explanationField, mitigationField, hint,
    el("div", { class: "actions" }, submit, skip));
  return form;
}

/** The scoring queue: fetches batches of assignments and walks them. */
export async function SurveyPage(ctx: AppContext): Promise<HTMLElement> {
  const root = el("section", { class: "page" }, el("h2", {}, "Survey"));
  const status = el("p", { class: "status", role: "status" });
  const progressLine = el("p", { class: "progress" });
  const cardBox = el("div", { class: "card-box" });
  root.append(status, progressLine, cardBox);

  let queue: Assignment[] = [];
  let exhausted = false;

  const refreshProgress = async () => {
    const p = await ctx.api.progress();
    progressLine.textContent =
      `${p.answered} answered, ${p.skipped} skipped, ${p.pending} pending of ${p.total}`;
  };

  const showNext = async (): Promise<void> => {
    if (queue.length === 0 && !exhausted) {
      const batch = await ctx.api.nextAssignments();
      queue = batch.assignments;
      exhausted = queue.length === 0;
    }
    clear(cardBox);
    const current = queue[0];
    if (!current) {
      cardBox.append(
        el("p", { class: "empty" },
          "Nothing to score right now. Choose more goals to receive new pairs."),
      );
      return;
    }
    cardBox.append(SurveyCard(current, {
      onSubmit: async (draft) => {
        try {
          await ctx.api.submitAnswer({
            target_a: current.target_a.code,
            target_b: current.target_b.code,
            score: draft.score,
            explanation: draft.explanation || undefined,
            mitigation: draft.mitigation || undefined,
          });
          status.textContent = `Scored ${current.pair}.`;
        } catch (err) {
          if (err instanceof ApiError && err.status === 409) {
            // Someone else got there first; reconcile and move on.
            status.textContent = `Pair already scored (${current.pair}), moving on.`;
          } else {
            status.textContent = err instanceof Error ? err.message : String(err);
            return;
          }
        }
        queue.shift();
        await refreshProgress();
        await showNext();
      },
      onSkip: async () => {
        try {
          await ctx.api.skip(current.target_a.code, current.target_b.code);
        } catch (err) {
          status.textContent = err instanceof Error ? err.message : String(err);
          return;
        }
        status.textContent = `Skipped ${current.pair}; it will come back later.`;
        queue.shift();
        await refreshProgress();
        await showNext();
      },
    }));
  };

  await refreshProgress();
  await showNext();
  return root;
}
