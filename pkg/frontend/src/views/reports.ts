import type { Policy, SubmittedAnswer } from "../api.js";
import type { AppContext } from "../context.js";
import { EDGE_COLORS } from "../colors.js";
import { clear, el } from "../dom.js";
import { renderGraph, renderLegend } from "../graphview.js";

function policyPicker(onChange: (policy: Policy) => void): HTMLSelectElement {
  const select = el("select", { class: "policy" },
    el("option", { value: "strict" }, "strict (positive scores only)"),
    el("option", { value: "nonnegative" }, "nonnegative (neutral allowed)"),
  );
  select.addEventListener("change", () => onChange(select.value as Policy));
  return select;
}

function scoreCell(answer: SubmittedAnswer): HTMLElement {
  return el("td", { class: "num" },
    el("span", {
      class: "score-chip",
      style: `color:${EDGE_COLORS[answer.class]}`,
    }, answer.score > 0 ? `+${answer.score}` : String(answer.score)),
    ` ${answer.label}`,
  );
}

/** Landing page: the headline statistics over the live snapshot. */
export async function HomePage(ctx: AppContext): Promise<HTMLElement> {
  const summary = await ctx.api.reportSummary();
  const stat = (label: string, value: string) =>
    el("div", { class: "stat" },
      el("span", { class: "stat-value" }, value),
      el("span", { class: "stat-label" }, label));
  return el("section", { class: "page" },
    el("h2", {}, "Interactions between SDG targets"),
    el("p", {},
      "Experts score how progress on one target affects another, from cancelling (-3) to indivisible (+3). ",
      "Pick goals, score the pairs you know, and explore the resulting network."),
    el("div", { class: "stats" },
      stat("target pairs", summary.total_pairs.toLocaleString("en-US")),
      stat("scored", summary.colored.toLocaleString("en-US")),
      stat("positive", summary.positive.toLocaleString("en-US")),
      stat("negative", summary.negative.toLocaleString("en-US")),
      stat("neutral", summary.neutral.toLocaleString("en-US")),
      stat("negative share", `${summary.negative_percent.toFixed(2)}%`),
    ),
  );
}

/** The most negative interactions, worst first, plus the per-target tally. */
export async function UglyPage(ctx: AppContext): Promise<HTMLElement> {
  const [edges, ranking] = await Promise.all([ctx.api.reportUgly(), ctx.api.reportRanking()]);
  const root = el("section", { class: "page" }, el("h2", {}, "Conflicting targets"));

  if (edges.length === 0) {
    root.append(el("p", { class: "empty" }, "No negative interactions recorded."));
    return root;
  }
  const tbody = el("tbody");
  for (const edge of edges) {
    tbody.append(el("tr", {},
      scoreCell(edge),
      el("td", {}, `${edge.target_a} | ${edge.target_b}`),
      el("td", {}, edge.explanation ?? ""),
      el("td", {}, edge.mitigation ?? ""),
    ));
  }
  root.append(el("table", { class: "ugly" },
    el("thead", {}, el("tr", {},
      el("th", {}, "Score"), el("th", {}, "Pair"),
      el("th", {}, "Explanation"), el("th", {}, "Mitigation"))),
    tbody,
  ));

  const rankBody = el("tbody");
  for (const row of ranking) {
    rankBody.append(el("tr", {},
      el("td", {}, row.target),
      el("td", { class: "num" }, String(row.negative_count))));
  }
  root.append(
    el("h3", {}, "Targets by negative interactions"),
    el("table", { class: "ranking" },
      el("thead", {}, el("tr", {}, el("th", {}, "Target"), el("th", {}, "Count"))),
      rankBody,
    ),
  );
  return root;
}

/** Targets whose every scored interaction clears the policy threshold. */
export async function BeautifulPage(ctx: AppContext): Promise<HTMLElement> {
  const root = el("section", { class: "page" }, el("h2", {}, "Synergetic targets"));
  const body = el("div", { class: "beautiful-box" });

  const render = async (policy: Policy) => {
    const [targets, graph] = await Promise.all([
      ctx.api.reportBeautiful(policy),
      ctx.api.reportBeautifulGraph(policy),
    ]);
    clear(body);
    if (targets.length === 0) {
      body.append(el("p", { class: "empty" }, "No qualifying targets under this policy."));
      return;
    }
    const chips = el("div", { class: "chips" });
    for (const code of targets) {
      chips.append(el("span", { class: "chip" }, code));
    }
    body.append(chips, renderLegend(), renderGraph(graph));
  };

  root.append(policyPicker((policy) => void render(policy)), body);
  await render("strict");
  return root;
}

/** The longest chain of mutually reinforcing targets. */
export async function LongestPathPage(ctx: AppContext): Promise<HTMLElement> {
  const root = el("section", { class: "page" }, el("h2", {}, "Longest synergy chain"));
  const body = el("div", { class: "path-box" });
  const restarts = el("input", { type: "number", class: "restarts", value: "1", min: "1", max: "1000" });
  const seed = el("input", { type: "number", class: "seed", value: "0" });
  const recompute = el("button", { class: "recompute" }, "Recompute");
  let policy: Policy = "strict";

  const render = async () => {
    const report = await ctx.api.reportLongestPath(
      policy, Number(restarts.value) || 1, Number(seed.value) || 0);
    clear(body);
    if (report.nodes.length === 0) {
      body.append(el("p", { class: "empty" }, "No path: nothing qualifies under this policy."));
      return;
    }
    body.append(
      el("p", { class: "path-length" }, `${report.edge_count} edge(s)`),
      el("p", { class: "path-chain" }, report.nodes.join(" -> ")),
    );
  };
  recompute.addEventListener("click", () => void render());

  root.append(
    el("div", { class: "controls" },
      policyPicker((value) => { policy = value; void render(); }),
      el("label", {}, "Restarts ", restarts),
      el("label", {}, "Seed ", seed),
      recompute,
    ),
    body,
  );
  await render();
  return root;
}
