/** Typed client for the session service.
 *
 * Every number shown in the explorer comes from these responses; the client
 * holds no similarity, pruning, or layout logic of its own.
 */

export interface Sector {
  color: string;
  alpha: number;
}

export interface ViewNode {
  id: number;
  x: number;
  y: number;
  sectors: Sector[];
}

export interface ViewEdge {
  a: number;
  b: number;
  sim: number;
  thickness: number;
  label: string;
}

export interface ObjectiveInfo {
  name: string;
  sense: "min" | "max";
}

export interface StyleState {
  s_lo: number;
  s_hi: number;
  objective_coloring: boolean;
  label_decimals: number;
  thickness_range: [number, number];
}

export interface ViewMeta {
  objectives: ObjectiveInfo[];
  excluded: number[];
  metric: string;
  n: number;
  edge_count: number;
  style: StyleState;
  operations: Record<string, unknown>[];
  [key: string]: unknown;
}

export interface View {
  nodes: ViewNode[];
  edges: ViewEdge[];
  meta: ViewMeta;
}

export interface StylePatch {
  s_lo?: number;
  s_hi?: number;
  objective_coloring?: boolean;
  label_decimals?: number;
}

/** Non-2xx reply carrying the service's error envelope verbatim. */
export class ServiceError extends Error {
  constructor(
    readonly status: number,
    readonly errorCode: string,
    message: string,
    readonly detail: unknown,
  ) {
    super(message);
    this.name = "ServiceError";
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class SessionClient {
  private readonly fetchImpl: FetchLike;

  constructor(
    private readonly baseUrl: string = "",
    fetchImpl?: FetchLike,
  ) {
    // bind, or browsers reject fetch called without its window receiver
    this.fetchImpl = fetchImpl ?? globalThis.fetch.bind(globalThis);
  }

  async createSession(body: unknown): Promise<string> {
    const reply = await this.request("POST", "/sessions", body);
    return (reply as { session_id: string }).session_id;
  }

  async view(sid: string): Promise<View> {
    return (await this.request("GET", `/sessions/${sid}/view`)) as View;
  }

  async exclude(sid: string, ids: number[]): Promise<void> {
    await this.request("POST", `/sessions/${sid}/exclude`, { ids });
  }

  async restyle(sid: string, patch: StylePatch): Promise<void> {
    await this.request("POST", `/sessions/${sid}/style`, patch);
  }

  async reset(sid: string): Promise<void> {
    await this.request("POST", `/sessions/${sid}/reset`);
  }

  private async request(method: string, path: string, body?: unknown): Promise<unknown> {
    const init: RequestInit = { method };
    if (body !== undefined) {
      init.headers = { "content-type": "application/json" };
      init.body = JSON.stringify(body);
    }
    const response = await this.fetchImpl(this.baseUrl + path, init);
    if (response.ok) {
      return response.status === 204 ? null : response.json();
    }
    let envelope: { error_code?: string; message?: string; detail?: unknown } = {};
    try {
      envelope = await response.json();
    } catch {
      // non-JSON body; fall through to the generic message
    }
    throw new ServiceError(
      response.status,
      envelope.error_code ?? "http_error",
      envelope.message ?? `request failed with status ${response.status}`,
      envelope.detail ?? null,
    );
  }
}
