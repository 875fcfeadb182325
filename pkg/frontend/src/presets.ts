// Bundled demonstration boards: the opening 6-move example, the
// isolated / semi-isolated / mobile triple, and a tesseract scramble.

import type { NewGameRequest } from "./types.js";

export interface Preset {
  name: string;
  description: string;
  request: NewGameRequest;
}

export const PRESETS: Preset[] = [
  {
    name: "cube-6-move-example",
    description: "Cube, k=2: the classic 3-cycle solvable in exactly 6 moves",
    request: {
      d: 3, k: 2, l: 4,
      scramble: { config: { d: 3, tokens: { "001": 1, "000": 2, "100": 3, "010": 4 } } },
      target: { d: 3, tokens: { "100": 1, "001": 2, "000": 3, "010": 4 } },
    },
  },
  {
    name: "cube-isolated",
    description: "Cube, k=2: nothing can ever move",
    request: {
      d: 3, k: 2, l: 4,
      scramble: { config: { d: 3, tokens: { "001": 1, "111": 2, "100": 3, "010": 4 } } },
      target: { d: 3, tokens: { "001": 1, "111": 2, "100": 3, "010": 4 } },
    },
  },
  {
    name: "cube-stuck-four",
    description: "Cube, k=2: tokens 1-4 are stuck, only 5 roams the top face",
    request: {
      d: 3, k: 2, l: 3,
      scramble: { config: { d: 3, tokens: { "000": 1, "100": 2, "110": 3, "010": 4, "001": 5 } } },
      target: { d: 3, tokens: { "000": 1, "100": 2, "110": 3, "010": 4, "011": 5 } },
    },
  },
  {
    name: "cube-free-play",
    description: "Cube, k=2: random solvable scramble",
    request: { d: 3, k: 2, l: 4, scramble: { random_steps: 20 }, seed: 1 },
  },
  {
    name: "tesseract-scramble",
    description: "Tesseract, k=3 at the solvability threshold (l=11)",
    request: { d: 4, k: 3, l: 11, scramble: { random_steps: 25 }, seed: 7 },
  },
];

export function presetByName(name: string): Preset {
  const p = PRESETS.find((x) => x.name === name);
  if (!p) {
    throw new Error(`no preset named ${name}`);
  }
  return p;
}
