// Fixed orthographic projections of Q^3, Q^4 and Q^5 wireframes.
// Q^4 draws as nested cubes (the tesseract), Q^5 as two linked tesseract
// frames side by side. Positions are deterministic per dimension.

export interface Point {
  x: number;
  y: number;
}

const CUBE_AXES: Point[] = [
  { x: 150, y: 0 },     // x1
  { x: 62, y: -48 },    // x2 (depth, drawn up-right)
  { x: 0, y: 150 },     // x3
];

function bit(v: number, a: number): number {
  return (v >> a) & 1;
}

export function vertexCount(d: number): number {
  return 1 << d;
}

/** 2D position of each vertex of Q^d, d in 3..5. */
export function project(d: number, v: number): Point {
  if (d < 3 || d > 5) {
    throw new Error(`projection supports d = 3..5, got ${d}`);
  }
  let x = 40;
  let y = 230;
  for (let a = 0; a < 3 && a < d; a++) {
    x += bit(v, a) * CUBE_AXES[a].x;
    y += bit(v, a) * CUBE_AXES[a].y;
  }
  if (d >= 4) {
    // inner cube for x4 = 1: shrink toward a center point
    if (bit(v, 3)) {
      const cx = 40 + (CUBE_AXES[0].x + CUBE_AXES[1].x) / 2;
      const cy = 230 + (CUBE_AXES[1].y + CUBE_AXES[2].y) / 2 + 20;
      x = cx + (x - cx) * 0.52;
      y = cy + (y - cy) * 0.52;
    }
  }
  if (d === 5) {
    // second tesseract frame for x5 = 1
    x += bit(v, 4) * 330;
  }
  return { x, y };
}

/** Every edge of Q^d as a pair of vertex numbers (Hamming distance 1). */
export function edges(d: number): Array<[number, number]> {
  const out: Array<[number, number]> = [];
  for (let v = 0; v < (1 << d); v++) {
    for (let a = 0; a < d; a++) {
      const w = v ^ (1 << a);
      if (v < w) {
        out.push([v, w]);
      }
    }
  }
  return out;
}

export function vertexToString(d: number, v: number): string {
  let s = "";
  for (let a = 0; a < d; a++) {
    s += bit(v, a) ? "1" : "0";
  }
  return s;
}

export function vertexFromString(s: string): number {
  let v = 0;
  for (let a = 0; a < s.length; a++) {
    if (s[a] === "1") {
      v |= 1 << a;
    }
  }
  return v;
}
