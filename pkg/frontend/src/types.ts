// Wire types mirroring the play service's JSON payloads.

export interface ConfigJson {
  d: number;
  tokens: Record<string, number>;   // vertex string "x1x2..xd" -> label
}

export interface MoveJson {
  label: number;
  from: string;
  to: string;
  face: string;
}

export interface SessionState {
  id: string;
  d: number;
  k: number;
  l: number;
  current: ConfigJson;
  target: ConfigJson;
  legal_moves: MoveJson[];
  solved: boolean;
  stuck: number[];
  solvable: boolean | null;
  history_length: number;
}

export interface HintResponse {
  move: MoveJson | null;
  remaining: number;
}

export interface SolvableResponse {
  solvable: boolean | null;
  distance?: number | null;
}

export interface NewGameRequest {
  d: number;
  k: number;
  l: number;
  seed?: number;
  scramble?: { random_steps: number } | { config: ConfigJson };
  target?: ConfigJson | "canonical";
}
