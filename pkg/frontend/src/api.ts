/** Thin fetch client for the proof service's JSON API. */

import type {
  MoveArgs,
  MovePayload,
  SessionDetail,
  SessionSummary,
} from './types.js';

export class ApiError extends Error {
  constructor(
    public status: number,
    public body: { error?: string; message?: string } & Record<string, unknown>,
  ) {
    super(body.message ?? `HTTP ${status}`);
  }
}

async function parse(resp: Response): Promise<unknown> {
  const text = await resp.text();
  let body: unknown = {};
  if (text) {
    try {
      body = JSON.parse(text);
    } catch {
      body = { message: text };
    }
  }
  if (!resp.ok) {
    throw new ApiError(resp.status, body as ApiError['body']);
  }
  return body;
}

export class ApiClient {
  constructor(public baseUrl: string = '') {}

  private async request(method: string, path: string, body?: unknown): Promise<unknown> {
    const resp = await fetch(this.baseUrl + path, {
      method,
      headers: body === undefined ? {} : { 'Content-Type': 'application/json' },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    return parse(resp);
  }

  createSession(theorem: string, name?: string): Promise<SessionSummary> {
    return this.request('POST', '/sessions', { theorem, name }) as Promise<SessionSummary>;
  }

  getSession(id: string): Promise<SessionDetail> {
    return this.request('GET', `/sessions/${id}`) as Promise<SessionDetail>;
  }

  async getMoves(id: string, goal: number, level: string): Promise<MovePayload[]> {
    const body = (await this.request(
      'GET',
      `/sessions/${id}/moves?goal=${goal}&level=${level}`,
    )) as { moves: MovePayload[] };
    return body.moves;
  }

  applyMove(
    id: string,
    move: MovePayload,
    args: MoveArgs,
    revision: number,
  ): Promise<SessionSummary> {
    return this.request('POST', `/sessions/${id}/apply`, {
      move,
      args,
      revision,
    }) as Promise<SessionSummary>;
  }

  undoTo(id: string, stateIndex: number, revision: number): Promise<SessionSummary> {
    return this.request('POST', `/sessions/${id}/undo`, {
      state_index: stateIndex,
      revision,
    }) as Promise<SessionSummary>;
  }

  async getScript(id: string): Promise<string> {
    const resp = await fetch(`${this.baseUrl}/sessions/${id}/script`);
    if (!resp.ok) {
      throw new ApiError(resp.status, await resp.json());
    }
    return resp.text();
  }
}
