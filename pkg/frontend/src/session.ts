const TOKEN_KEY = "sdg.token";
const ROLE_KEY = "sdg.role";

export type Role = "expert" | "admin";

/** Session token and role, persisted so a reload keeps you signed in. */
export class SessionStore {
  get token(): string | null {
    return localStorage.getItem(TOKEN_KEY);
  }

  get role(): Role | null {
    const value = localStorage.getItem(ROLE_KEY);
    return value === "expert" || value === "admin" ? value : null;
  }

  get signedIn(): boolean {
    return this.token !== null;
  }

  signIn(token: string, role: Role): void {
    localStorage.setItem(TOKEN_KEY, token);
    localStorage.setItem(ROLE_KEY, role);
  }

  signOut(): void {
    localStorage.removeItem(TOKEN_KEY);
    localStorage.removeItem(ROLE_KEY);
  }
}
