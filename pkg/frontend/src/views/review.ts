import type { AppContext } from "../context.js";
import { EDGE_COLORS } from "../colors.js";
import { el } from "../dom.js";

/** Everything the signed-in expert has submitted so far. */
export async function ReviewAnswersPage(ctx: AppContext): Promise<HTMLElement> {
  const answers = await ctx.api.ownAnswers();
  const root = el("section", { class: "page" }, el("h2", {}, "My answers"));
  if (answers.length === 0) {
    root.append(el("p", { class: "empty" }, "You have not scored any pairs yet."));
    return root;
  }
  const tbody = el("tbody");
  for (const answer of answers) {
    tbody.append(el("tr", {},
      el("td", {}, `${answer.target_a} | ${answer.target_b}`),
      el("td", { class: "num" },
        el("span", { style: `color:${EDGE_COLORS[answer.class]}` },
          answer.score > 0 ? `+${answer.score}` : String(answer.score))),
      el("td", {}, answer.label),
      el("td", {}, answer.explanation ?? ""),
      el("td", {}, answer.mitigation ?? ""),
      el("td", { class: "when" }, answer.scored_at),
    ));
  }
  root.append(el("table", { class: "review" },
    el("thead", {}, el("tr", {},
      el("th", {}, "Pair"), el("th", {}, "Score"), el("th", {}, "Label"),
      el("th", {}, "Explanation"), el("th", {}, "Mitigation"), el("th", {}, "When"))),
    tbody,
  ));
  return root;
}
