/** Typed client for the proof service; the UI talks to nothing else. */

import type { FormulaDoc, TermDoc } from "./model.js";

export type GoalDoc = { formula: FormulaDoc; assumptions: FormulaDoc[] };

export type ArgsDoc = {
  p?: FormulaDoc;
  q?: FormulaDoc;
  t?: TermDoc;
  c?: string;
};

export type TreeDoc =
  | { goal: GoalDoc; open: true }
  | { goal: GoalDoc; rule: string; args: ArgsDoc; children: TreeDoc[] };

export interface SessionState {
  session_id: string;
  tree: TreeDoc;
  open_goal_paths: number[][];
  can_undo: boolean;
  can_redo: boolean;
  renderings: { ok_listing: string; tree_text: string };
}

export interface RuleOption {
  rule: string;
  args: Record<string, "formula" | "term" | "identifier">;
}

export interface CorpusItem {
  name: string;
  goal: FormulaDoc;
  goal_text: string;
  has_proof: boolean;
  description: string;
}

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
    public body: Record<string, unknown> = {},
  ) {
    super(message);
  }
}

async function request<T>(base: string, path: string, init?: RequestInit): Promise<T> {
  const response = await fetch(base + path, {
    headers: { "content-type": "application/json" },
    ...init,
  });
  const body = await response.json().catch(() => ({}));
  if (!response.ok) {
    const code = typeof body.code === "string" ? body.code : `HTTP${response.status}`;
    const message = typeof body.message === "string" ? body.message : response.statusText;
    throw new ApiError(response.status, code, message, body);
  }
  return body as T;
}

export class Client {
  constructor(readonly base: string = "") {}

  createSession(goal: FormulaDoc): Promise<{ session_id: string }> {
    return request(this.base, "/api/sessions", {
      method: "POST",
      body: JSON.stringify({ goal }),
    });
  }

  getSession(id: string): Promise<SessionState> {
    return request(this.base, `/api/sessions/${id}`);
  }

  apply(id: string, path: number[], rule: string, args: ArgsDoc): Promise<SessionState> {
    return request(this.base, `/api/sessions/${id}/apply`, {
      method: "POST",
      body: JSON.stringify({ path, rule, args }),
    });
  }

  undo(id: string): Promise<SessionState> {
    return request(this.base, `/api/sessions/${id}/undo`, { method: "POST" });
  }

  redo(id: string): Promise<SessionState> {
    return request(this.base, `/api/sessions/${id}/redo`, { method: "POST" });
  }

  exportProof(id: string): Promise<Record<string, unknown>> {
    return request(this.base, `/api/sessions/${id}/export`);
  }

  rules(goal: FormulaDoc, assumptions: FormulaDoc[]): Promise<RuleOption[]> {
    const params = new URLSearchParams({
      goal: JSON.stringify(goal),
      assumptions: JSON.stringify(assumptions),
    });
    return request(this.base, `/api/rules?${params}`);
  }

  corpus(): Promise<CorpusItem[]> {
    return request(this.base, "/api/corpus");
  }

  corpusEntry(name: string): Promise<CorpusItem & { proof?: Record<string, unknown> }> {
    return request(this.base, `/api/corpus/${name}`);
  }

  checkProof(doc: Record<string, unknown>): Promise<{ accepted: boolean }> {
    return request(this.base, "/api/check", {
      method: "POST",
      body: JSON.stringify(doc),
    });
  }
}
