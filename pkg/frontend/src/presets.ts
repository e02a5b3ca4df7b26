import type { GraphSpec } from "./protocol.js";

export interface Preset {
  name: string;
  graph: GraphSpec;
  /** sensible default terminals for the s-t variant */
  terminals: [number, number];
}

export const PRESETS: Preset[] = [
  {
    name: "triangle",
    graph: { n: 3, edges: [[0, 1], [1, 2], [0, 2]] },
    terminals: [0, 2],
  },
  {
    name: "K4",
    graph: {
      n: 4,
      edges: [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]],
    },
    terminals: [0, 3],
  },
  {
    name: "C4",
    graph: { n: 4, edges: [[0, 1], [1, 2], [2, 3], [3, 0]] },
    terminals: [0, 2],
  },
  {
    name: "doubled C4",
    graph: {
      n: 4,
      edges: [[0, 1], [0, 1], [1, 2], [1, 2], [2, 3], [2, 3], [3, 0], [3, 0]],
    },
    terminals: [0, 2],
  },
  {
    name: "theta",
    graph: { n: 4, edges: [[0, 1], [1, 2], [0, 3], [3, 2], [0, 2]] },
    terminals: [1, 3],
  },
  {
    name: "wheel 5",
    graph: {
      n: 5,
      edges: [[0, 1], [0, 2], [0, 3], [0, 4], [1, 2], [2, 3], [3, 4], [4, 1]],
    },
    terminals: [1, 3],
  },
];
