/** App wiring: create sessions, click edges, await the server, overlay
 * certificates.  The server is authoritative; every UI action is one
 * protocol call and the board is rebuilt from the response. */

import { forceLayout, type Point } from "./layout.js";
import { PRESETS } from "./presets.js";
import {
  GameClient,
  ProtocolError,
  type Analysis,
  type ServerState,
  type Side,
  type Variant,
} from "./protocol.js";
import { boardFromServer, parseEdgeList, sameTags, replayTranscript } from "./state.js";
import { renderBoard } from "./render.js";

const client = new GameClient("");

interface Session {
  id: string;
  analysis: Analysis;
  engineSide: string;
  humanSide: Side | null;
  lastState: ServerState;
  points: Point[];
}

let session: Session | null = null;
let busy = false;

const el = {
  preset: document.getElementById("preset") as HTMLSelectElement,
  pasted: document.getElementById("pasted") as HTMLTextAreaElement,
  variant: document.getElementById("variant") as HTMLSelectElement,
  first: document.getElementById("first") as HTMLSelectElement,
  side: document.getElementById("side") as HTMLSelectElement,
  terminalS: document.getElementById("terminal-s") as HTMLInputElement,
  terminalT: document.getElementById("terminal-t") as HTMLInputElement,
  start: document.getElementById("start") as HTMLButtonElement,
  step: document.getElementById("step") as HTMLButtonElement,
  banner: document.getElementById("banner") as HTMLDivElement,
  status: document.getElementById("status") as HTMLDivElement,
  error: document.getElementById("error") as HTMLDivElement,
  board: document.getElementById("board") as unknown as SVGSVGElement,
  transcript: document.getElementById("transcript") as HTMLOListElement,
  overlayNote: document.getElementById("overlay-note") as HTMLDivElement,
};

function populatePresets(): void {
  for (const preset of PRESETS) {
    const option = document.createElement("option");
    option.value = preset.name;
    option.textContent = `${preset.name} (n=${preset.graph.n}, m=${preset.graph.edges.length})`;
    el.preset.appendChild(option);
  }
  const custom = document.createElement("option");
  custom.value = "__custom__";
  custom.textContent = "pasted edge list";
  el.preset.appendChild(custom);
  el.preset.addEventListener("change", () => {
    const preset = PRESETS.find((p) => p.name === el.preset.value);
    if (preset) {
      el.terminalS.value = String(preset.terminals[0]);
      el.terminalT.value = String(preset.terminals[1]);
    }
  });
}

function describeAnalysis(analysis: Analysis): string {
  const cert = analysis.certificate;
  let detail = "";
  if (cert && cert.kind === "short") {
    detail = ` — two trees ${JSON.stringify(cert.trees)}`;
    if (cert.first_edge !== null) detail += `, opening edge ${cert.first_edge}`;
  } else if (cert && cert.kind === "cut") {
    detail = ` — deficient partition ${JSON.stringify(cert.partition)}`;
  } else if (analysis.note) {
    detail = ` — ${analysis.note}`;
  }
  return `${analysis.winner === "short" ? "Short" : "Cut"} wins${detail}`;
}

function show(state: ServerState): void {
  if (!session) return;
  session.lastState = state;
  const board = boardFromServer(state, session.analysis);
  if (!sameTags(board, state)) {
    // the invariant is structural; surface loudly if it ever breaks
    el.error.textContent = "internal: board tags diverged from server state";
  }
  const replayed = replayTranscript(board.history);
  if (
    JSON.stringify(replayed.short) !== JSON.stringify([...state.tags.short].sort((a, b) => a - b)) ||
    JSON.stringify(replayed.cut) !== JSON.stringify([...state.tags.cut].sort((a, b) => a - b))
  ) {
    el.error.textContent = "internal: transcript replay diverged from server tags";
  }
  const mySide = session.humanSide;
  const clickable =
    state.winner === null && (session.engineSide === "none" || state.to_move === mySide);
  renderBoard(el.board, board, session.points, {
    clickable,
    onEdgeClick: (edgeId) => void playEdge(edgeId),
  });
  el.transcript.innerHTML = "";
  for (const [mover, edge] of state.history) {
    const item = document.createElement("li");
    item.textContent = `${mover} tags ${edge}`;
    item.className = `move-${mover}`;
    el.transcript.appendChild(item);
  }
  if (state.winner) {
    el.status.textContent = `game over: ${state.winner} wins`;
    el.step.disabled = true;
  } else if (session.engineSide === "both") {
    el.status.textContent = `${state.to_move} (engine) to move — press step`;
    el.step.disabled = false;
  } else {
    el.status.textContent =
      state.to_move === mySide ? "your move: click an untagged edge" : `${state.to_move} to move`;
    el.step.disabled = true;
  }
}

async function playEdge(edgeId: number): Promise<void> {
  if (!session || busy) return;
  busy = true;
  el.error.textContent = "";
  try {
    const state = await client.move(session.id, edgeId);
    show(state);
  } catch (err) {
    el.error.textContent = err instanceof ProtocolError ? `${err.status}: ${err.message}` : String(err);
  } finally {
    busy = false;
  }
}

async function stepEngine(): Promise<void> {
  if (!session || busy) return;
  busy = true;
  el.error.textContent = "";
  try {
    const state = await client.stepEngine(session.id);
    show(state);
  } catch (err) {
    el.error.textContent = err instanceof ProtocolError ? `${err.status}: ${err.message}` : String(err);
  } finally {
    busy = false;
  }
}

async function start(): Promise<void> {
  el.error.textContent = "";
  let graph;
  try {
    if (el.preset.value === "__custom__") {
      graph = parseEdgeList(el.pasted.value);
    } else {
      graph = PRESETS.find((p) => p.name === el.preset.value)!.graph;
    }
  } catch (err) {
    el.error.textContent = String(err);
    return;
  }
  const variant = el.variant.value as Variant;
  const engineSide = el.side.value; // which side the ENGINE plays
  const humanSide: Side | null =
    engineSide === "short" ? "cut" : engineSide === "cut" ? "short" : null;
  try {
    const created = await client.createGame({
      graph,
      variant,
      first: el.first.value as Side,
      engine_side: engineSide,
      ...(variant === "st"
        ? { s: Number(el.terminalS.value), t: Number(el.terminalT.value) }
        : {}),
    });
    session = {
      id: created.id,
      analysis: created.analysis,
      engineSide,
      humanSide,
      lastState: created.state,
      points: forceLayout(
        graph.n,
        graph.edges,
        el.board.clientWidth || 760,
        el.board.clientHeight || 520,
      ),
    };
    el.banner.textContent = describeAnalysis(created.analysis);
    el.banner.className = `banner winner-${created.analysis.winner}`;
    el.overlayNote.textContent =
      created.analysis.certificate?.kind === "short"
        ? "overlay: the two disjoint spanning trees"
        : created.analysis.certificate?.kind === "cut"
          ? "overlay: deficient partition blocks and its cross-edges"
          : "";
    show(created.state);
  } catch (err) {
    el.error.textContent = err instanceof ProtocolError ? `${err.status}: ${err.message}` : String(err);
  }
}

populatePresets();
el.preset.value = PRESETS[0].name;
el.terminalS.value = String(PRESETS[0].terminals[0]);
el.terminalT.value = String(PRESETS[0].terminals[1]);
el.start.addEventListener("click", () => void start());
el.step.addEventListener("click", () => void stepEngine());
