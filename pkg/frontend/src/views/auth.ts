import { ApiError } from "../api.js";
import type { AppContext } from "../context.js";
import { el } from "../dom.js";

function field(labelText: string, input: HTMLElement): HTMLElement {
  return el("label", { class: "form-field" }, labelText, input);
}

export function LoginPage(ctx: AppContext): HTMLElement {
  const root = el("section", { class: "page narrow" }, el("h2", {}, "Log in"));
  const status = el("p", { class: "status", role: "status" });
  const login = el("input", { name: "login", autocomplete: "username" });
  const password = el("input", { name: "password", type: "password", autocomplete: "current-password" });
  const form = el("form", { class: "auth-form" },
    field("Login", login),
    field("Password", password),
    el("button", { type: "submit" }, "Log in"),
  );
  form.addEventListener("submit", async (event) => {
    event.preventDefault();
    try {
      const result = await ctx.api.login(login.value, password.value);
      ctx.session.signIn(result.token, result.role);
      ctx.navigate(result.role === "admin" ? "#/admin" : "#/survey");
    } catch (err) {
      status.textContent = err instanceof Error ? err.message : String(err);
    }
  });
  root.append(form, status,
    el("p", {}, "No account yet? ", el("a", { href: "#/signup" }, "Sign up.")));
  return root;
}

export function SignupPage(ctx: AppContext): HTMLElement {
  const root = el("section", { class: "page narrow" }, el("h2", {}, "Sign up"));
  const status = el("p", { class: "status", role: "status" });
  const login = el("input", { name: "login", required: true });
  const password = el("input", { name: "password", type: "password", required: true });
  const fullName = el("input", { name: "full_name", required: true });
  const years = el("input", { name: "years_experience", type: "number", min: "0", value: "0" });
  const education = el("input", { name: "educational_attainment" });
  const affiliations = el("input", { name: "affiliations" });
  const optIn = el("input", { name: "acknowledgement_opt_in", type: "checkbox" });

  const form = el("form", { class: "auth-form" },
    field("Login", login),
    field("Password", password),
    field("Full name", fullName),
    field("Years of professional experience", years),
    field("Educational attainment", education),
    field("Affiliations", affiliations),
    el("label", { class: "form-field inline" }, optIn,
      " Credit me by name in published data"),
    el("p", { class: "hint" },
      "Accounts need administrator approval, and approval requires at least 5 years of experience."),
    el("button", { type: "submit" }, "Create account"),
  );
  form.addEventListener("submit", async (event) => {
    event.preventDefault();
    try {
      const created = await ctx.api.signup({
        login: login.value,
        password: password.value,
        full_name: fullName.value,
        years_experience: Number(years.value) || 0,
        educational_attainment: education.value,
        affiliations: affiliations.value,
        acknowledgement_opt_in: optIn.checked,
      });
      status.textContent =
        `Account ${created.login} created and awaiting approval. You can log in once approved.`;
      form.querySelectorAll("input, button").forEach((node) => {
        (node as HTMLInputElement | HTMLButtonElement).disabled = true;
      });
    } catch (err) {
      if (err instanceof ApiError && err.status === 409) {
        status.textContent = "That login is taken; pick another.";
      } else {
        status.textContent = err instanceof Error ? err.message : String(err);
      }
    }
  });
  root.append(form, status);
  return root;
}
