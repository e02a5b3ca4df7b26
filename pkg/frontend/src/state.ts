/** Client mirror of the game state plus layout coordinates.
 *
 * Invariant: edge tags always match the last server response; the board
 * can re-derive itself from the server transcript alone, which the tests
 * assert by replaying.
 */

import type { Analysis, Certificate, ServerState, Side } from "./protocol.js";

export interface EdgeView {
  id: number;
  u: number;
  v: number;
  tag: Side | null;
  /** parallel-edge rank among edges sharing the endpoints, for curvature */
  lane: number;
  overlay: "tree0" | "tree1" | "cross" | null;
}

export interface BoardView {
  n: number;
  edges: EdgeView[];
  toMove: Side;
  winner: Side | null;
  legalMoves: number[];
  history: [Side, number][];
  terminals: [number, number] | null;
  /** node id -> partition block index (certificate overlay), if any */
  blockOf: Map<number, number> | null;
}

export function boardFromServer(state: ServerState, analysis: Analysis | null): BoardView {
  const shortTags = new Set(state.tags.short);
  const cutTags = new Set(state.tags.cut);
  const laneCounter = new Map<string, number>();
  const edges: EdgeView[] = state.graph.edges.map(([id, u, v]) => {
    const key = u < v ? `${u}-${v}` : `${v}-${u}`;
    const lane = laneCounter.get(key) ?? 0;
    laneCounter.set(key, lane + 1);
    return {
      id,
      u,
      v,
      tag: shortTags.has(id) ? "short" : cutTags.has(id) ? "cut" : null,
      lane,
      overlay: null,
    };
  });
  const board: BoardView = {
    n: state.graph.n,
    edges,
    toMove: state.to_move,
    winner: state.winner,
    legalMoves: [...state.legal_moves],
    history: state.history.map(([m, e]) => [m, e]),
    terminals: state.s !== null && state.t !== null ? [state.s, state.t] : null,
    blockOf: null,
  };
  if (analysis) applyCertificateOverlay(board, analysis.certificate);
  return board;
}

/** Overlay sets are exactly the certificate's JSON arrays. */
export function applyCertificateOverlay(board: BoardView, certificate: Certificate): void {
  for (const edge of board.edges) edge.overlay = null;
  board.blockOf = null;
  if (!certificate) return;
  if (certificate.kind === "short") {
    const [t0, t1] = certificate.trees;
    const first = new Set(t0);
    const second = new Set(t1);
    for (const edge of board.edges) {
      if (first.has(edge.id)) edge.overlay = "tree0";
      else if (second.has(edge.id)) edge.overlay = "tree1";
    }
  } else {
    const blockOf = new Map<number, number>();
    certificate.partition.forEach((block, index) => {
      for (const node of block) blockOf.set(node, index);
    });
    board.blockOf = blockOf;
    for (const edge of board.edges) {
      if (blockOf.get(edge.u) !== blockOf.get(edge.v)) edge.overlay = "cross";
    }
  }
}

/** The overlay rendered back as plain arrays, for equality checks. */
export function overlayArrays(board: BoardView): {
  trees: [number[], number[]] | null;
  partition: number[][] | null;
  cross: number[] | null;
} {
  const tree0 = board.edges.filter((e) => e.overlay === "tree0").map((e) => e.id).sort((a, b) => a - b);
  const tree1 = board.edges.filter((e) => e.overlay === "tree1").map((e) => e.id).sort((a, b) => a - b);
  const cross = board.edges.filter((e) => e.overlay === "cross").map((e) => e.id).sort((a, b) => a - b);
  let partition: number[][] | null = null;
  if (board.blockOf) {
    const blocks = new Map<number, number[]>();
    for (const [node, index] of board.blockOf) {
      const block = blocks.get(index) ?? [];
      block.push(node);
      blocks.set(index, block);
    }
    partition = [...blocks.entries()]
      .sort(([a], [b]) => a - b)
      .map(([, nodes]) => nodes.sort((x, y) => x - y));
  }
  return {
    trees: tree0.length || tree1.length ? [tree0, tree1] : null,
    partition,
    cross: cross.length ? cross : null,
  };
}

/** Re-derive tag sets from a transcript; used to assert the server-
 * authoritative invariant (the board never mutates state locally). */
export function replayTranscript(history: [Side, number][]): {
  short: number[];
  cut: number[];
} {
  const short: number[] = [];
  const cut: number[] = [];
  for (const [mover, edge] of history) {
    (mover === "short" ? short : cut).push(edge);
  }
  short.sort((a, b) => a - b);
  cut.sort((a, b) => a - b);
  return { short, cut };
}

export function sameTags(board: BoardView, state: ServerState): boolean {
  const fromBoard = {
    short: board.edges.filter((e) => e.tag === "short").map((e) => e.id).sort((a, b) => a - b),
    cut: board.edges.filter((e) => e.tag === "cut").map((e) => e.id).sort((a, b) => a - b),
  };
  return (
    JSON.stringify(fromBoard.short) === JSON.stringify([...state.tags.short].sort((a, b) => a - b)) &&
    JSON.stringify(fromBoard.cut) === JSON.stringify([...state.tags.cut].sort((a, b) => a - b))
  );
}

/** Parse a pasted edge list: one "u v" pair per line. */
export function parseEdgeList(text: string): { n: number; edges: [number, number][] } {
  const edges: [number, number][] = [];
  let maxNode = -1;
  for (const raw of text.split("\n")) {
    const line = raw.split("#")[0].trim();
    if (!line) continue;
    const parts = line.split(/\s+/).map(Number);
    if (parts.length !== 2 || parts.some((x) => !Number.isInteger(x) || x < 0)) {
      throw new Error(`bad edge line: "${raw}"`);
    }
    const [u, v] = parts;
    if (u === v) throw new Error(`loops are not allowed: "${raw}"`);
    edges.push([u, v]);
    maxNode = Math.max(maxNode, u, v);
  }
  if (!edges.length) throw new Error("no edges given");
  return { n: maxNode + 1, edges };
}
