// DOM wiring: renders the wireframe and tokens as SVG, drives the board
// controller from clicks, and mirrors every server response into the view.

import { ApiClient } from "./api.js";
import { BoardController } from "./board.js";
import { edges, project, vertexToString } from "./projection.js";
import { PRESETS, presetByName } from "./presets.js";
import type { MoveJson, SessionState } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export class App {
  private controller: BoardController;
  private hintMove: MoveJson | null = null;

  constructor(private root: Document, api?: ApiClient) {
    this.controller = new BoardController(api ?? new ApiClient(""));
    this.controller.onEvent((e) => {
      if (e.kind === "state") {
        this.hintMove = null;
        this.render(e.state);
      } else if (e.kind === "selected") {
        this.paintHighlights();
      } else if (e.kind === "resync") {
        this.setStatus("move rejected by the server; board resynced");
      } else if (e.kind === "hint") {
        this.hintMove = e.move;
        this.setStatus(e.move
          ? `hint: token ${e.move.label} to ${e.move.to} (${e.remaining} to go)`
          : "already solved");
        this.paintHighlights();
      } else if (e.kind === "solvable") {
        this.setBadge(e.verdict);
      } else if (e.kind === "error") {
        this.setStatus(e.message);
      }
    });
  }

  mount(): void {
    const sel = this.root.getElementById("preset") as HTMLSelectElement;
    for (const p of PRESETS) {
      const opt = this.root.createElement("option");
      opt.value = p.name;
      opt.textContent = `${p.name} — ${p.description}`;
      sel.appendChild(opt);
    }
    this.button("new-game").addEventListener("click", () => {
      void this.newGameFromPanel();
    });
    this.button("hint").addEventListener("click", () => {
      void this.controller.requestHint();
    });
    this.button("solvable").addEventListener("click", () => {
      void this.controller.checkSolvable();
    });
    void this.newGameFromPanel();
  }

  private button(id: string): HTMLButtonElement {
    return this.root.getElementById(id) as HTMLButtonElement;
  }

  private async newGameFromPanel(): Promise<void> {
    const sel = this.root.getElementById("preset") as HTMLSelectElement;
    try {
      await this.controller.newGame(presetByName(sel.value || PRESETS[0].name).request);
      this.setStatus("your move");
      this.setBadge(this.controller.state?.solvable ?? null);
    } catch (err) {
      this.setStatus(`could not start: ${String(err)}`);
    }
  }

  private setStatus(text: string): void {
    const el = this.root.getElementById("status");
    if (el) {
      el.textContent = text;
    }
  }

  private setBadge(verdict: boolean | null): void {
    const el = this.root.getElementById("solvable-badge");
    if (!el) {
      return;
    }
    el.textContent = verdict === null ? "solvable: unknown (budget)"
      : verdict ? "solvable" : "unsolvable";
    el.className = verdict === null ? "badge unknown" : verdict ? "badge ok" : "badge bad";
  }

  private render(state: SessionState): void {
    const svg = this.root.getElementById("board");
    if (!svg) {
      return;
    }
    while (svg.firstChild) {
      svg.removeChild(svg.firstChild);
    }
    const d = state.d;
    for (const [a, b] of edges(d)) {
      const pa = project(d, a);
      const pb = project(d, b);
      const line = this.root.createElementNS(SVG_NS, "line");
      line.setAttribute("x1", String(pa.x));
      line.setAttribute("y1", String(pa.y));
      line.setAttribute("x2", String(pb.x));
      line.setAttribute("y2", String(pb.y));
      line.setAttribute("class", "edge");
      svg.appendChild(line);
    }
    for (let v = 0; v < (1 << d); v++) {
      const vs = vertexToString(d, v);
      const p = project(d, v);
      const g = this.root.createElementNS(SVG_NS, "g");
      g.setAttribute("data-vertex", vs);
      g.addEventListener("click", () => {
        void this.controller.clickVertex(vs);
      });
      const circle = this.root.createElementNS(SVG_NS, "circle");
      circle.setAttribute("cx", String(p.x));
      circle.setAttribute("cy", String(p.y));
      circle.setAttribute("r", "16");
      g.appendChild(circle);
      const lab = state.current.tokens[vs];
      if (lab !== undefined) {
        const text = this.root.createElementNS(SVG_NS, "text");
        text.setAttribute("x", String(p.x));
        text.setAttribute("y", String(p.y + 5));
        text.setAttribute("text-anchor", "middle");
        text.textContent = String(lab);
        g.appendChild(text);
      }
      svg.appendChild(g);
    }
    this.paintHighlights();
    const banner = this.root.getElementById("banner");
    if (banner) {
      banner.textContent = state.solved ? "solved!" : "";
    }
    const tgt = this.root.getElementById("target-line");
    if (tgt) {
      const toks = Object.entries(state.target.tokens)
        .sort((a, b) => a[1] - b[1])
        .map(([vtx, lab]) => `${lab}@${vtx}`)
        .join("  ");
      tgt.textContent = `target: ${toks}`;
    }
  }

  /** Highlight classes mirror the server state only. */
  private paintHighlights(): void {
    const state = this.controller.state;
    const svg = this.root.getElementById("board");
    if (!state || !svg) {
      return;
    }
    const movable = this.controller.movableLabels();
    const stuck = this.controller.stuckLabels();
    const selected = this.controller.selected;
    const targets = selected === null ? new Set<string>()
      : this.controller.targetsFor(selected);
    for (const g of Array.from(svg.querySelectorAll("g[data-vertex]"))) {
      const vs = g.getAttribute("data-vertex") ?? "";
      const lab = state.current.tokens[vs];
      const classes = ["cell"];
      if (lab !== undefined) {
        classes.push("token");
        if (stuck.has(lab)) {
          classes.push("stuck");
        } else if (movable.has(lab)) {
          classes.push("movable");
        }
        if (selected === lab) {
          classes.push("selected");
        }
      } else if (targets.has(vs)) {
        classes.push("target");
      }
      if (this.hintMove && (vs === this.hintMove.to || vs === this.hintMove.from)) {
        classes.push("hinted");
      }
      g.setAttribute("class", classes.join(" "));
    }
  }
}

export function start(): void {
  const app = new App(document);
  app.mount();
}

if (typeof document !== "undefined" && document.getElementById("board")) {
  start();
}
