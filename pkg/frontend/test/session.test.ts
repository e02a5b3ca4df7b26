/** Scripted sessions against the real server (acceptance: the protocol
 * transcript reproduces the engine's reference transcript byte for byte,
 * and certificate overlays equal the JSON certificate arrays). */
import { spawn, spawnSync, type ChildProcess } from "node:child_process";
import { mkdtempSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { GameClient } from "../src/protocol.js";
import { PRESETS } from "../src/presets.js";
import { boardFromServer, overlayArrays, replayTranscript, sameTags } from "../src/state.js";

const PORT = 8930 + (process.pid % 50);
const BASE = `http://127.0.0.1:${PORT}`;
let server: ChildProcess;

async function waitForServer(): Promise<void> {
  for (let i = 0; i < 100; i += 1) {
    try {
      const res = await fetch(`${BASE}/api/games/none`);
      if (res.status === 404) return;
    } catch {
      await new Promise((r) => setTimeout(r, 100));
    }
  }
  throw new Error("server did not come up");
}

beforeAll(async () => {
  server = spawn("python3", ["-m", "sylva.cli", "game", "serve", "--port", String(PORT)], {
    cwd: join(__dirname, "..", ".."),
    stdio: "ignore",
  });
  await waitForServer();
}, 30000);

afterAll(() => {
  server.kill();
});

function referenceTranscript(presetName: string): { winner: string; transcript: [string, number][] } {
  const preset = PRESETS.find((p) => p.name === presetName)!;
  const dir = mkdtempSync(join(tmpdir(), "sylva-ui-"));
  const file = join(dir, "g.txt");
  const lines = [`graph ${preset.graph.n} ${preset.graph.edges.length}`];
  for (const [u, v] of preset.graph.edges) lines.push(`${u} ${v}`);
  writeFileSync(file, lines.join("\n") + "\n");
  const run = spawnSync("python3", ["-m", "sylva.cli", "game", "play", file], {
    cwd: join(__dirname, "..", ".."),
    encoding: "utf-8",
  });
  expect(run.status).toBe(0);
  const doc = JSON.parse(run.stdout);
  return { winner: doc.winner, transcript: doc.transcript };
}

async function spectatedTranscript(presetName: string) {
  const preset = PRESETS.find((p) => p.name === presetName)!;
  const client = new GameClient(BASE);
  const created = await client.createGame({
    graph: preset.graph,
    variant: "global",
    first: "cut",
    engine_side: "both",
  });
  let state = created.state;
  while (state.winner === null) {
    state = await client.stepEngine(created.id);
  }
  return { created, state, client };
}

describe("scripted sessions on the presets", () => {
  for (const name of ["triangle", "K4"]) {
    it(`reproduces the engine transcript byte-for-byte on ${name}`, async () => {
      const reference = referenceTranscript(name);
      const { created, state } = await spectatedTranscript(name);
      expect(JSON.stringify(state.history)).toBe(JSON.stringify(reference.transcript));
      expect(state.winner).toBe(reference.winner);
      expect(created.analysis.winner).toBe(reference.winner);
      // the board mirror never diverges from the server state
      const board = boardFromServer(state, created.analysis);
      expect(sameTags(board, state)).toBe(true);
      const replayed = replayTranscript(state.history);
      expect(replayed.short).toEqual([...state.tags.short].sort((a, b) => a - b));
      expect(replayed.cut).toEqual([...state.tags.cut].sort((a, b) => a - b));
    });
  }

  it("certificate overlays equal the JSON arrays (K4: two trees)", async () => {
    const preset = PRESETS.find((p) => p.name === "K4")!;
    const client = new GameClient(BASE);
    const created = await client.createGame({
      graph: preset.graph,
      variant: "global",
      first: "cut",
      engine_side: "short",
    });
    expect(created.analysis.winner).toBe("short");
    const cert = created.analysis.certificate;
    expect(cert?.kind).toBe("short");
    const board = boardFromServer(created.state, created.analysis);
    const overlay = overlayArrays(board);
    expect(overlay.trees).toEqual(
      (cert as { trees: [number[], number[]] }).trees.map((t) => [...t].sort((a, b) => a - b)),
    );
  });

  it("certificate overlays equal the JSON arrays (triangle: partition)", async () => {
    const preset = PRESETS.find((p) => p.name === "triangle")!;
    const client = new GameClient(BASE);
    const created = await client.createGame({
      graph: preset.graph,
      variant: "global",
      first: "cut",
      engine_side: "cut",
    });
    expect(created.analysis.winner).toBe("cut");
    const cert = created.analysis.certificate;
    expect(cert?.kind).toBe("cut");
    const board = boardFromServer(created.state, created.analysis);
    const overlay = overlayArrays(board);
    expect(overlay.partition).toEqual((cert as { partition: number[][] }).partition);
    // every edge of the triangle crosses the singleton partition
    expect(overlay.cross).toEqual([0, 1, 2]);
  });

  it("plays a human-vs-engine session through the protocol", async () => {
    const preset = PRESETS.find((p) => p.name === "K4")!;
    const client = new GameClient(BASE);
    const created = await client.createGame({
      graph: preset.graph,
      variant: "global",
      first: "cut",
      engine_side: "short",
    });
    let state = created.state;
    while (state.winner === null && state.legal_moves.length > 0) {
      state = await client.move(created.id, state.legal_moves[0]);
      const board = boardFromServer(state, null);
      expect(sameTags(board, state)).toBe(true);
    }
    // the engine predicted Short and must have won against this policy
    expect(state.winner).toBe("short");
    // illegal re-tag surfaces as 409
    const replayedEdge = state.history[0][1];
    await expect(client.move(created.id, replayedEdge)).rejects.toMatchObject({
      status: 409,
    });
  });

  it("supports the s-t variant with terminals from the preset", async () => {
    const preset = PRESETS.find((p) => p.name === "C4")!;
    const client = new GameClient(BASE);
    const created = await client.createGame({
      graph: preset.graph,
      variant: "st",
      first: "cut",
      engine_side: "cut",
      s: preset.terminals[0],
      t: preset.terminals[1],
    });
    expect(created.analysis.winner).toBe("cut");
    // the engine opened; its move is recorded in the history
    expect(created.state.history.length).toBe(1);
    expect(created.state.history[0][0]).toBe("cut");
  });
});
