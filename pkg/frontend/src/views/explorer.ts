import type { AppContext } from "../context.js";
import { GOAL_NAMES } from "../colors.js";
import { clear, el } from "../dom.js";
import { renderGraph, renderLegend } from "../graphview.js";

/**
 * Public two-goal graph view. The picker offers exactly two slots, so
 * a third selection is impossible by construction.
 */
export function GraphExplorerPage(ctx: AppContext): HTMLElement {
  const root = el("section", { class: "page" }, el("h2", {}, "Interaction graph"));
  const first = el("select", { class: "goal-first", name: "goal-first" });
  const second = el("select", { class: "goal-second", name: "goal-second" },
    el("option", { value: "" }, "(none)"));
  for (let goal = 1; goal <= 17; goal += 1) {
    const label = `${goal}. ${GOAL_NAMES[goal]}`;
    first.append(el("option", { value: String(goal) }, label));
    second.append(el("option", { value: String(goal) }, label));
  }
  first.value = "13";
  second.value = "14";

  const status = el("p", { class: "status", role: "status" });
  const view = el("div", { class: "graph-box" });
  const draw = el("button", { class: "draw" }, "Draw");

  const render = async () => {
    const goals = [Number(first.value)];
    if (second.value !== "" && second.value !== first.value) {
      goals.push(Number(second.value));
    }
    status.textContent = "";
    try {
      const payload = await ctx.api.publicGraph(goals);
      clear(view);
      const colored = payload.edges.filter((e) => e.class !== "uncolored").length;
      view.append(
        el("p", { class: "graph-stats" },
          `${payload.nodes.length} targets, ${payload.edges.length} pairs, ${colored} scored`),
        renderLegend(),
        renderGraph(payload),
      );
    } catch (err) {
      status.textContent = err instanceof Error ? err.message : String(err);
    }
  };
  draw.addEventListener("click", render);

  root.append(
    el("p", {}, "Pick one or two goals; every pair among their targets is shown."),
    el("div", { class: "picker" }, first, second, draw),
    status,
    view,
  );
  void render();
  return root;
}
