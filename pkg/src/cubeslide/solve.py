"""Optimal solving: shortest k-move sequences between two configurations.

When the ranked state space fits in memory, one compiled BFS from the target
yields distances everywhere; the solution path is then extracted greedily,
always taking the first legal move (label, then target order) that
decreases the distance.  That makes the returned path, and therefore every
hint, deterministic.  Larger spaces fall back to a bidirectional search.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .config import LabeledConfig
from .geometry import faces_through, Vertex
from .moves import Move, legal_moves, apply_move
from . import fastbfs

DEFAULT_BUDGET = 10 ** 8
DEFAULT_MEM_BUDGET = 2_500_000_000


@dataclass
class SolveResult:
    status: str                # solved | unsolvable-different-component | unknown-budget
    moves: list = field(default_factory=list)
    length: int | None = None
    explored: int = 0

    def to_json(self) -> dict:
        out = {"status": self.status, "length": self.length,
               "moves": [m.to_json() for m in self.moves]}
        return out


def _check_pair(start: LabeledConfig, target: LabeledConfig) -> None:
    if start.d != target.d:
        raise ValueError("dimension mismatch between start and target")
    if start.labels != target.labels:
        raise ValueError("start and target must carry the same labels")


def solve(start: LabeledConfig, target: LabeledConfig, k: int,
          budget: int = DEFAULT_BUDGET,
          mem_budget: int = DEFAULT_MEM_BUDGET) -> SolveResult:
    """Shortest move sequence from start to target, or a component verdict."""
    _check_pair(start, target)
    if start == target:
        return SolveResult("solved", [], 0, 1)
    d, T = start.d, start.num_tokens
    space = fastbfs.space_size(1 << d, T) if T <= 15 else None
    # the ranked route sweeps the whole space; only take it when the state
    # budget plausibly covers that
    if space is not None and space <= mem_budget and space <= 8 * budget:
        return _solve_ranked(start, target, k)
    return _solve_bidirectional(start, target, k, budget)


def _solve_ranked(start: LabeledConfig, target: LabeledConfig, k: int) -> SolveResult:
    d, T = start.d, start.num_tokens
    n_verts = 1 << d
    visited, _, _, dist = fastbfs.bfs_labeled(
        [fastbfs.pack_config(target)], d, k, T)
    r = fastbfs.state_rank(fastbfs.pack_config(start), n_verts, T)
    L = int(dist[r])
    if L == 255:
        return SolveResult("unsolvable-different-component", [], None, visited)
    moves_out = []
    cur = start
    remaining = L
    while remaining:
        for mv in legal_moves(cur, k):
            nxt = apply_move(cur, mv)
            nr = fastbfs.state_rank(fastbfs.pack_config(nxt), n_verts, T)
            if int(dist[nr]) == remaining - 1:
                moves_out.append(mv)
                cur = nxt
                remaining -= 1
                break
        else:
            raise AssertionError("no distance-decreasing move found")
    return SolveResult("solved", moves_out, L, visited)


def _witness_face(config: LabeledConfig, v: int, w: int, k: int):
    """Lexicographically first free k-face containing both endpoints (the
    same witness legal_moves would report)."""
    for face in faces_through(Vertex(config.d, v), k):
        if not face.contains(w):
            continue
        occ = config.occupancy
        blocked = False
        sub = 0
        while True:
            x = face.base | sub
            if x != v and (occ >> x) & 1:
                blocked = True
                break
            if sub == face.stars:
                break
            sub = (sub - face.stars) & face.stars
        if not blocked:
            return face
    raise AssertionError("no witnessing face for a BFS edge")


def _states_to_moves(states: list, d: int, k: int) -> list:
    out = []
    for a, b in zip(states, states[1:]):
        diff = [v for v in range(1 << d) if (a >> (4 * v)) & 15 != (b >> (4 * v)) & 15]
        v = next(x for x in diff if (a >> (4 * x)) & 15 and not (b >> (4 * x)) & 15)
        w = next(x for x in diff if (b >> (4 * x)) & 15 and not (a >> (4 * x)) & 15)
        lab = (a >> (4 * v)) & 15
        cfg = fastbfs.unpack_config(d, a)
        out.append(Move(lab, Vertex(d, v), Vertex(d, w), _witness_face(cfg, v, w, k)))
    return out


def _solve_bidirectional(start: LabeledConfig, target: LabeledConfig, k: int,
                         budget: int) -> SolveResult:
    """Meet-in-the-middle over packed states, expanding the smaller frontier.

    Returns a shortest path (deterministic via sorted expansion), though not
    necessarily the greedy-canonical one the ranked route produces.
    """
    d = start.d
    n_verts = 1 << d
    src, others, tgt, _ = fastbfs._combo_cache(d, k)
    combos = list(zip(src.tolist(), others.tolist(), tgt.tolist()))

    def neighbors(s: int):
        occ = 0
        for v in range(n_verts):
            if (s >> (4 * v)) & 15:
                occ |= 1 << v
        for sv, om, tv in combos:
            if (occ >> sv) & 1 and not occ & om:
                lab = (s >> (4 * sv)) & 15
                yield s - (lab << (4 * sv)) + (lab << (4 * tv))

    s0, t0 = fastbfs.pack_config(start), fastbfs.pack_config(target)
    fparent = {s0: None}
    bparent = {t0: None}
    ffront, bfront = [s0], [t0]
    explored = 2
    while ffront and bfront:
        if explored > budget:
            return SolveResult("unknown-budget", [], None, explored)
        forward = len(ffront) <= len(bfront)
        parents, other = (fparent, bparent) if forward else (bparent, fparent)
        frontier = ffront if forward else bfront
        nxt = []
        meets = []
        for s in sorted(frontier):
            for ns in neighbors(s):
                if ns not in parents:
                    parents[ns] = s
                    nxt.append(ns)
                    explored += 1
                    if ns in other:
                        meets.append(ns)
        if meets:
            meet = min(meets)
            fchain = _chain(fparent, meet)
            bchain = _chain(bparent, meet)
            states = fchain[::-1] + bchain[1:]
            moves_out = _states_to_moves(states, d, k)
            return SolveResult("solved", moves_out, len(moves_out), explored)
        if forward:
            ffront = nxt
        else:
            bfront = nxt
    return SolveResult("unsolvable-different-component", [], None, explored)


def _chain(parents: dict, state: int) -> list:
    out = [state]
    while parents[out[-1]] is not None:
        out.append(parents[out[-1]])
    return out


def hint(current: LabeledConfig, target: LabeledConfig, k: int,
         budget: int = DEFAULT_BUDGET) -> tuple:
    """(first move of a shortest path, remaining distance); the move is the
    first in (label, target) order among distance-decreasing ones."""
    result = solve(current, target, k, budget)
    if result.status != "solved":
        raise ValueError(f"no hint: {result.status}")
    if result.length == 0:
        return None, 0
    return result.moves[0], result.length
