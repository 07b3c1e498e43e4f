import type { AppContext } from "../context.js";
import { parseCsv } from "../csv.js";
import { clear, el } from "../dom.js";

/**
 * Admin dashboard: pending sign-ups with approve buttons, every
 * recorded answer (sortable by score), and the full user list.
 * Non-admin sessions are routed to the login page.
 */
export async function AdminPage(ctx: AppContext): Promise<HTMLElement> {
  if (ctx.session.role !== "admin") {
    ctx.navigate("#/login");
    return el("p", { class: "notice" }, "Administrators only.");
  }

  const root = el("section", { class: "page" }, el("h2", {}, "Administration"));
  const status = el("p", { class: "status", role: "status" });
  root.append(status);

  // -- pending sign-ups ---------------------------------------------------

  const pendingBox = el("div", { class: "pending-box" });
  root.append(el("h3", {}, "Pending sign-ups"), pendingBox);

  const renderPending = async () => {
    const users = await ctx.api.pendingUsers();
    clear(pendingBox);
    if (users.length === 0) {
      pendingBox.append(el("p", { class: "empty" }, "No pending sign-ups."));
      return;
    }
    const tbody = el("tbody");
    for (const user of users) {
      const approve = el("button", { class: "approve" }, "Approve");
      approve.addEventListener("click", async () => {
        try {
          await ctx.api.approveUser(user.id);
          status.textContent = `Approved ${user.login}.`;
        } catch (err) {
          status.textContent = err instanceof Error ? err.message : String(err);
        }
        await renderPending();
      });
      tbody.append(el("tr", { "data-login": user.login },
        el("td", {}, user.login),
        el("td", {}, user.full_name),
        el("td", { class: "num" }, String(user.years_experience)),
        el("td", {}, approve),
      ));
    }
    pendingBox.append(el("table", { class: "pending" },
      el("thead", {}, el("tr", {},
        el("th", {}, "Login"), el("th", {}, "Name"),
        el("th", {}, "Years"), el("th", {}, ""))),
      tbody,
    ));
  };

  // -- all answers, sortable by score --------------------------------------

  const answersBox = el("div", { class: "answers-box" });
  root.append(el("h3", {}, "All answers"), answersBox);

  const csv = parseCsv(await ctx.api.exportCsv());
  const header = csv[0] ?? [];
  const scoreCol = header.indexOf("score");
  let answerRows = csv.slice(1).filter((row) => row.length === header.length);
  let direction: "asc" | "desc" = "desc";

  const renderAnswers = () => {
    clear(answersBox);
    if (answerRows.length === 0) {
      answersBox.append(el("p", { class: "empty" }, "No answers recorded yet."));
      return;
    }
    const sortButton = el("button", { class: "sort-score" },
      `Score ${direction === "desc" ? "(high to low)" : "(low to high)"}`);
    sortButton.addEventListener("click", () => {
      direction = direction === "desc" ? "asc" : "desc";
      renderAnswers();
    });
    const sorted = [...answerRows].sort((a, b) => {
      const delta = Number(a[scoreCol]) - Number(b[scoreCol]);
      return direction === "asc" ? delta : -delta;
    });
    const tbody = el("tbody");
    for (const row of sorted) {
      tbody.append(el("tr", {}, ...row.map((cell, i) =>
        el("td", { class: i === scoreCol ? "num score-cell" : "" }, cell))));
    }
    answersBox.append(el("table", { class: "answers" },
      el("thead", {}, el("tr", {}, ...header.map((name) =>
        name === "score"
          ? el("th", {}, sortButton)
          : el("th", {}, name)))),
      tbody,
    ));
  };

  // -- user list ------------------------------------------------------------

  const usersBox = el("div", { class: "users-box" });
  root.append(el("h3", {}, "Users"), usersBox);

  const renderUsers = async () => {
    const users = await ctx.api.listUsers();
    clear(usersBox);
    const tbody = el("tbody");
    for (const user of users) {
      tbody.append(el("tr", {},
        el("td", {}, user.login),
        el("td", {}, user.full_name),
        el("td", {}, user.status),
        el("td", {}, user.role),
        el("td", { class: "num" }, String(user.years_experience)),
      ));
    }
    usersBox.append(el("table", { class: "users" },
      el("thead", {}, el("tr", {},
        el("th", {}, "Login"), el("th", {}, "Name"), el("th", {}, "Status"),
        el("th", {}, "Role"), el("th", {}, "Years"))),
      tbody,
    ));
  };

  await renderPending();
  renderAnswers();
  await renderUsers();
  return root;
}
