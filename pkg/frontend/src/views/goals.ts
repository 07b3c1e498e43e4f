import type { AppContext } from "../context.js";
import { GOAL_NAMES, goalColor } from "../colors.js";
import { el } from "../dom.js";

/**
 * Goal selection. Choosing goals assigns every not-yet-scored pair
 * among their targets; selections only ever grow, so goals already
 * chosen render checked and locked.
 */
export async function GoalPickerPage(ctx: AppContext): Promise<HTMLElement> {
  const chosen = new Set(await ctx.api.goals());
  const root = el("section", { class: "page" }, el("h2", {}, "Your goals"));
  const status = el("p", { class: "status", role: "status" });
  const grid = el("div", { class: "goal-grid" });
  const boxes: HTMLInputElement[] = [];

  for (let goal = 1; goal <= 17; goal += 1) {
    const box = el("input", { type: "checkbox", name: `goal-${goal}`, value: String(goal) });
    if (chosen.has(goal)) {
      box.checked = true;
      box.disabled = true;
    }
    boxes.push(box);
    grid.append(el("label", { class: "goal-option" },
      box,
      el("span", { class: "goal-dot", style: `background:${goalColor(goal)}` }),
      `${goal}. ${GOAL_NAMES[goal]}`,
    ));
  }

  const save = el("button", { class: "save" }, "Add selected goals");
  save.addEventListener("click", async () => {
    const picked = boxes.filter((b) => b.checked && !b.disabled).map((b) => Number(b.value));
    if (picked.length === 0) {
      status.textContent = "Nothing new selected.";
      return;
    }
    try {
      const update = await ctx.api.chooseGoals(picked);
      for (const box of boxes) {
        if (update.goals.includes(Number(box.value))) {
          box.checked = true;
          box.disabled = true;
        }
      }
      status.textContent = `${update.new_assignments} new pair(s) assigned to you.`;
    } catch (err) {
      status.textContent = err instanceof Error ? err.message : String(err);
    }
  });

  root.append(
    el("p", {}, "Every pair among the targets of your goals lands in your survey queue."),
    grid, save, status,
  );
  return root;
}
