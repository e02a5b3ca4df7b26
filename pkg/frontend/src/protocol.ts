/** Typed client for the switching-game JSON protocol.
 *
 * The server is authoritative: every method returns exactly what it sent
 * back, and nothing here mutates game state locally.
 */

export type Side = "short" | "cut";
export type Variant = "global" | "st";

export interface GraphSpec {
  n: number;
  edges: [number, number][];
}

export interface ShortCertificate {
  kind: "short";
  nodes: number[];
  trees: [number[], number[]];
  first_edge: number | null;
}

export interface CutCertificate {
  kind: "cut";
  partition: number[][];
  deficit: number;
  forest_split?: [number[], number[]] | null;
}

export type Certificate = ShortCertificate | CutCertificate | null;

export interface Analysis {
  winner: Side;
  note: string | null;
  certificate: Certificate;
}

export interface ServerState {
  variant: Variant;
  first: Side;
  s: number | null;
  t: number | null;
  engine_side: string;
  graph: { n: number; edges: [number, number, number][] };
  tags: { short: number[]; cut: number[] };
  to_move: Side;
  winner: Side | null;
  legal_moves: number[];
  history: [Side, number][];
}

export interface CreateResponse {
  id: string;
  analysis: Analysis;
  state: ServerState;
}

export interface MoveResponse extends ServerState {
  engine_reply: number | null;
}

export interface CoreView {
  kind: string;
  trees?: number[][];
  blocks?: number[][];
  partition?: number[][];
  cross_edges?: number[];
  reservoirs?: number[][];
  pending?: number[];
}

export interface CertificateView {
  analysis: Analysis;
  cores: Record<string, CoreView>;
}

export class ProtocolError extends Error {
  constructor(readonly status: number, message: string) {
    super(message);
  }
}

export class GameClient {
  constructor(
    private readonly base: string = "",
    private readonly fetchImpl: typeof fetch = fetch,
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchImpl(`${this.base}${path}`, init);
    const body = await response.json();
    if (!response.ok) {
      throw new ProtocolError(response.status, body.error ?? "request failed");
    }
    return body as T;
  }

  createGame(params: {
    graph: GraphSpec;
    variant: Variant;
    first: Side;
    engine_side: string;
    s?: number;
    t?: number;
  }): Promise<CreateResponse> {
    return this.request("/api/games", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(params),
    });
  }

  getState(id: string): Promise<ServerState> {
    return this.request(`/api/games/${id}`);
  }

  move(id: string, edgeId: number): Promise<MoveResponse> {
    return this.request(`/api/games/${id}/moves`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ edge_id: edgeId }),
    });
  }

  stepEngine(id: string): Promise<MoveResponse> {
    return this.request(`/api/games/${id}/moves`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({}),
    });
  }

  certificate(id: string): Promise<CertificateView> {
    return this.request(`/api/games/${id}/certificate`);
  }
}
