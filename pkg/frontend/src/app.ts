import { ApiClient, ApiError } from "./api.js";
import type { AppContext } from "./context.js";
import { clear, el } from "./dom.js";
import { SessionStore } from "./session.js";
import { AdminPage } from "./views/admin.js";
import { LoginPage, SignupPage } from "./views/auth.js";
import { GraphExplorerPage } from "./views/explorer.js";
import { GoalPickerPage } from "./views/goals.js";
import { BeautifulPage, HomePage, LongestPathPage, UglyPage } from "./views/reports.js";
import { ReviewAnswersPage } from "./views/review.js";
import { SurveyPage } from "./views/survey.js";

type View = (ctx: AppContext) => HTMLElement | Promise<HTMLElement>;

const ROUTES: Record<string, View> = {
  "/": HomePage,
  "/signup": SignupPage,
  "/login": LoginPage,
  "/goals": GoalPickerPage,
  "/survey": SurveyPage,
  "/review": ReviewAnswersPage,
  "/admin": AdminPage,
  "/graph": GraphExplorerPage,
  "/reports/ugly": UglyPage,
  "/reports/beautiful": BeautifulPage,
  "/reports/longest-path": LongestPathPage,
};

function renderNav(ctx: AppContext): HTMLElement {
  const link = (href: string, text: string) => el("a", { href }, text);
  const nav = el("nav", { class: "topnav" },
    el("span", { class: "brand" }, "SDG interactions"),
    link("#/", "Home"),
    link("#/graph", "Graph"),
    link("#/reports/ugly", "Conflicts"),
    link("#/reports/beautiful", "Synergies"),
    link("#/reports/longest-path", "Longest chain"),
  );
  if (ctx.session.signedIn) {
    nav.append(link("#/goals", "Goals"), link("#/survey", "Survey"), link("#/review", "My answers"));
    if (ctx.session.role === "admin") {
      nav.append(link("#/admin", "Admin"));
    }
    const logout = el("button", { class: "logout" }, "Log out");
    logout.addEventListener("click", () => {
      ctx.session.signOut();
      ctx.navigate("#/");
    });
    nav.append(logout);
  } else {
    nav.append(link("#/signup", "Sign up"), link("#/login", "Log in"));
  }
  return nav;
}

export function startApp(root: HTMLElement): void {
  const session = new SessionStore();
  const api = new ApiClient(session);
  const ctx: AppContext = {
    api,
    session,
    navigate: (path) => {
      if (window.location.hash === path) {
        void render();
      } else {
        window.location.hash = path;
      }
    },
  };

  const navBox = el("div");
  const main = el("main", { id: "view" });
  root.append(navBox, main);

  const render = async () => {
    clear(navBox);
    navBox.append(renderNav(ctx));
    const path = window.location.hash.replace(/^#/, "") || "/";
    const view = ROUTES[path];
    clear(main);
    if (!view) {
      main.append(el("p", { class: "empty" }, "Page not found."));
      return;
    }
    try {
      main.append(await view(ctx));
    } catch (err) {
      if (err instanceof ApiError && err.status === 401) {
        // Expired or missing session: back through login.
        ctx.session.signOut();
        ctx.navigate("#/login");
        return;
      }
      main.append(el("p", { class: "error" },
        err instanceof Error ? err.message : String(err)));
    }
  };

  window.addEventListener("hashchange", () => void render());
  void render();
}

const appRoot = document.getElementById("app");
if (appRoot) {
  startApp(appRoot);
}
