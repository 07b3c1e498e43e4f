/**
 * Typed client for the /api/v1 endpoints. Every view talks to the
 * service exclusively through the Api interface so tests can swap in
 * a fake without touching fetch.
 */

import type { SessionStore } from "./session.js";

export type EdgeClass = "positive" | "negative" | "neutral" | "uncolored";
export type Policy = "strict" | "nonnegative";

export interface TargetInfo {
  code: string;
  goal: number;
  goal_name: string;
  description: string;
}

export interface Assignment {
  pair: string;
  state: "pending" | "skipped" | "answered";
  target_a: TargetInfo;
  target_b: TargetInfo;
}

export interface AssignmentBatch {
  assignments: Assignment[];
  pending: number;
  skipped: number;
}

export interface AnswerSubmission {
  target_a: string;
  target_b: string;
  score: number;
  explanation?: string;
  mitigation?: string;
}

export interface SubmittedAnswer {
  target_a: string;
  target_b: string;
  score: number;
  label: string;
  class: EdgeClass;
  explanation: string | null;
  mitigation: string | null;
  scored_at: string;
}

export interface Progress {
  answered: number;
  skipped: number;
  pending: number;
  total: number;
}

export interface GraphNode {
  code: string;
  goal: number;
  label: string;
}

export interface GraphEdge {
  source: string;
  target: string;
  score: number | null;
  class: EdgeClass;
}

export interface GraphPayload {
  nodes: GraphNode[];
  edges: GraphEdge[];
  goals?: number[];
  policy?: string;
}

export interface SummaryReport {
  total_pairs: number;
  colored: number;
  positive: number;
  negative: number;
  neutral: number;
  uncolored: number;
  negative_share: number;
  negative_percent: number;
}

export interface RankingRow {
  target: string;
  negative_count: number;
}

export interface LongestPathReport {
  policy: string;
  nodes: string[];
  edge_count: number;
}

export interface SignupRequest {
  login: string;
  password: string;
  full_name: string;
  years_experience: number;
  educational_attainment?: string;
  affiliations?: string;
  acknowledgement_opt_in?: boolean;
  curator_id?: number | null;
}

export interface SignupResponse {
  id: number;
  login: string;
  status: string;
}

export interface LoginResponse {
  token: string;
  expires_at: string;
  role: "expert" | "admin";
}

export interface PendingUser {
  id: number;
  login: string;
  full_name: string;
  years_experience: number;
  curator_id: number | null;
}

export interface UserRow extends PendingUser {
  status: string;
  role: string;
  acknowledgement_opt_in: boolean;
}

export interface GoalsUpdate {
  goals: number[];
  new_assignments: number;
}

export class ApiError extends Error {
  constructor(readonly status: number, detail: string) {
    super(detail);
    this.name = "ApiError";
  }
}

export interface Api {
  signup(body: SignupRequest): Promise<SignupResponse>;
  login(login: string, password: string): Promise<LoginResponse>;
  goals(): Promise<number[]>;
  chooseGoals(goals: number[]): Promise<GoalsUpdate>;
  nextAssignments(limit?: number): Promise<AssignmentBatch>;
  submitAnswer(draft: AnswerSubmission): Promise<SubmittedAnswer>;
  skip(targetA: string, targetB: string): Promise<void>;
  progress(): Promise<Progress>;
  ownAnswers(): Promise<SubmittedAnswer[]>;
  publicGraph(goals: number[]): Promise<GraphPayload>;
  reportSummary(): Promise<SummaryReport>;
  reportUgly(): Promise<SubmittedAnswer[]>;
  reportBeautiful(policy: Policy): Promise<string[]>;
  reportBeautifulGraph(policy: Policy): Promise<GraphPayload>;
  reportRanking(): Promise<RankingRow[]>;
  reportLongestPath(policy: Policy, restarts?: number, seed?: number): Promise<LongestPathReport>;
  pendingUsers(): Promise<PendingUser[]>;
  approveUser(id: number): Promise<void>;
  listUsers(): Promise<UserRow[]>;
  exportCsv(): Promise<string>;
}

/** Default batch size for the survey queue. */
export const BATCH_SIZE = 10;

export class ApiClient implements Api {
  constructor(private readonly session: SessionStore, private readonly base = "") {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const headers: Record<string, string> = {};
    if (body !== undefined) {
      headers["Content-Type"] = "application/json";
    }
    const token = this.session.token;
    if (token) {
      headers["Authorization"] = `Bearer ${token}`;
    }
    const response = await fetch(this.base + path, {
      method,
      headers,
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    if (!response.ok) {
      let detail = response.statusText;
      try {
        const parsed = (await response.json()) as { detail?: unknown };
        if (typeof parsed.detail === "string") {
          detail = parsed.detail;
        } else if (parsed.detail !== undefined) {
          detail = JSON.stringify(parsed.detail);
        }
      } catch {
        // non-JSON error body, keep the status text
      }
      throw new ApiError(response.status, detail);
    }
    const type = response.headers.get("content-type") ?? "";
    if (type.includes("text/csv")) {
      return (await response.text()) as T;
    }
    return (await response.json()) as T;
  }

  signup(body: SignupRequest): Promise<SignupResponse> {
    return this.request("POST", "/api/v1/signup", body);
  }

  login(login: string, password: string): Promise<LoginResponse> {
    return this.request("POST", "/api/v1/login", { login, password });
  }

  async goals(): Promise<number[]> {
    const data = await this.request<{ goals: number[] }>("GET", "/api/v1/goals");
    return data.goals;
  }

  chooseGoals(goals: number[]): Promise<GoalsUpdate> {
    return this.request("POST", "/api/v1/goals", { goals });
  }

  nextAssignments(limit = BATCH_SIZE): Promise<AssignmentBatch> {
    return this.request("GET", `/api/v1/assignments/next?limit=${limit}`);
  }

  submitAnswer(draft: AnswerSubmission): Promise<SubmittedAnswer> {
    return this.request("POST", "/api/v1/answers", draft);
  }

  async skip(targetA: string, targetB: string): Promise<void> {
    const pair = encodeURIComponent(`${targetA},${targetB}`);
    await this.request("POST", `/api/v1/answers/${pair}/skip`);
  }

  progress(): Promise<Progress> {
    return this.request("GET", "/api/v1/progress");
  }

  async ownAnswers(): Promise<SubmittedAnswer[]> {
    const data = await this.request<{ answers: SubmittedAnswer[] }>("GET", "/api/v1/answers");
    return data.answers;
  }

  publicGraph(goals: number[]): Promise<GraphPayload> {
    return this.request("GET", `/api/v1/graph?goals=${goals.join(",")}`);
  }

  reportSummary(): Promise<SummaryReport> {
    return this.request("GET", "/api/v1/reports/summary");
  }

  async reportUgly(): Promise<SubmittedAnswer[]> {
    const data = await this.request<{ edges: SubmittedAnswer[] }>("GET", "/api/v1/reports/ugly");
    return data.edges;
  }

  async reportBeautiful(policy: Policy): Promise<string[]> {
    const data = await this.request<{ targets: string[] }>(
      "GET", `/api/v1/reports/beautiful?policy=${policy}`);
    return data.targets;
  }

  reportBeautifulGraph(policy: Policy): Promise<GraphPayload> {
    return this.request("GET", `/api/v1/reports/beautiful-graph?policy=${policy}`);
  }

  async reportRanking(): Promise<RankingRow[]> {
    const data = await this.request<{ ranking: RankingRow[] }>("GET", "/api/v1/reports/ranking");
    return data.ranking;
  }

  reportLongestPath(policy: Policy, restarts = 1, seed = 0): Promise<LongestPathReport> {
    return this.request(
      "GET",
      `/api/v1/reports/longest-path?policy=${policy}&restarts=${restarts}&seed=${seed}`,
    );
  }

  async pendingUsers(): Promise<PendingUser[]> {
    const data = await this.request<{ users: PendingUser[] }>("GET", "/api/v1/admin/pending");
    return data.users;
  }

  async approveUser(id: number): Promise<void> {
    await this.request("POST", `/api/v1/admin/approve/${id}`);
  }

  async listUsers(): Promise<UserRow[]> {
    const data = await this.request<{ users: UserRow[] }>("GET", "/api/v1/admin/users");
    return data.users;
  }

  exportCsv(): Promise<string> {
    return this.request("GET", "/api/v1/admin/export.csv");
  }
}
