import type { Api } from "./api.js";
import type { SessionStore } from "./session.js";

export interface AppContext {
  api: Api;
  session: SessionStore;
  navigate(path: string): void;
}
