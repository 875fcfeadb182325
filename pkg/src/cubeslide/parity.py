"""Unlabeled puzzle graphs and the cycle-parity method.

Every edge of the unlabeled graph transposes one token with one empty
vertex, so a closed walk induces a permutation of the occupied slots of its
base mask whose parity equals the walk length mod 2.  If every fundamental
cycle of a spanning tree is even, every closed walk is even, and labeled
components can only refine the permutation-parity classes.  The group
generated by the fundamental-cycle permutations (the monodromy group G at
the base mask) determines the labeled structure over a component of N
masks exactly:

    component size = N * |G|        number of components = T! / |G|

which is how the rows too large for labeled search are derived.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .config import Rules, UnlabeledConfig
from . import fastbfs


# --- permutation groups (degree <= 32), enough for monodromy orders ---

def _pmul(a: tuple, b: tuple) -> tuple:
    """Compose: (a*b)(x) = a(b(x))."""
    return tuple(a[b[x]] for x in range(len(a)))


def _pinv(a: tuple) -> tuple:
    inv = [0] * len(a)
    for i, ai in enumerate(a):
        inv[ai] = i
    return tuple(inv)


class PermGroup:
    """Incremental Schreier-Sims stabilizer chain on points 0..degree-1.

    Strong generators are stored with the deepest base prefix they fix; the
    orbit at level i uses every generator fixing base[0..i-1].  The product
    of orbit sizes is always a lower bound for the group order and is exact
    once the Schreier closure finishes, so callers may abort the closure
    early via `order_cap` when an a-priori maximum order is known.
    """

    def __init__(self, degree: int):
        self.degree = degree
        self.base: list = []
        self.strong: list = []       # (fix_level, perm)
        self.transversal: list = []  # per level: {point: coset rep}
        self._identity = tuple(range(degree))

    def _gens_at(self, level: int) -> list:
        return [p for lv, p in self.strong if lv >= level]

    def _orbit_rebuild(self, level: int) -> None:
        b = self.base[level]
        tr = {b: self._identity}
        queue = [b]
        gens = self._gens_at(level)
        while queue:
            x = queue.pop()
            rep = tr[x]
            for g in gens:
                y = g[x]
                if y not in tr:
                    tr[y] = _pmul(g, rep)
                    queue.append(y)
        self.transversal[level] = tr

    def _sift(self, p: tuple):
        """Reduce p through the chain; returns (residue, level-it-stuck-at)."""
        for lvl in range(len(self.base)):
            x = p[self.base[lvl]]
            tr = self.transversal[lvl]
            if x not in tr:
                return p, lvl
            p = _pmul(_pinv(tr[x]), p)
        return p, len(self.base)

    def contains(self, p: tuple) -> bool:
        residue, _ = self._sift(p)
        return residue == self._identity

    def add(self, p: tuple, order_cap: int | None = None) -> bool:
        """Add a generator, re-closing the chain; True if the group grew.

        With order_cap set, closure aborts once the orbit-size product
        reaches the cap (then order() equals the true order
        because the product never overshoots).
        """
        grew = False
        pending = [p]
        seen = set()
        while pending:
            g = pending.pop()
            residue, lvl = self._sift(g)
            if residue == self._identity:
                continue
            grew = True
            if lvl == len(self.base):
                moved = next(i for i in range(self.degree) if residue[i] != i)
                self.base.append(moved)
                self.transversal.append({})
            self.strong.append((lvl, residue))
            for i in range(lvl + 1):
                self._orbit_rebuild(i)
            if order_cap is not None and self.order() >= order_cap:
                return True
            for i in range(lvl + 1):
                tr = self.transversal[i]
                for x, rep in list(tr.items()):
                    for h in self._gens_at(i):
                        schreier = _pmul(_pinv(tr[h[x]]), _pmul(h, rep))
                        if schreier != self._identity and schreier not in seen:
                            seen.add(schreier)
                            pending.append(schreier)
        return grew

    def order(self) -> int:
        n = 1
        for tr in self.transversal:
            n *= len(tr)
        return n


# --- unlabeled components ---

@dataclass
class UnlabeledComponent:
    """The reachable masks from a base occupancy, with BFS tree and parity.

    even_cycles records whether every closed walk at the base induces an
    even permutation of the tokens (tracked through the canonically ordered
    empty slots, not just walk length: with several empties the holes absorb
    transpositions, so length parity alone says nothing).
    """
    d: int
    k: int
    base_mask: int
    masks: np.ndarray          # visit order, base first
    dist: np.ndarray           # depth indexed by mask rank
    max_depth: int
    even_cycles: bool
    index: dict = field(default_factory=dict)
    _parents: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not self.index:
            self.index = {int(m): i for i, m in enumerate(self.masks)}

    @property
    def size(self) -> int:
        return len(self.masks)

    @property
    def num_tokens(self) -> int:
        return int(self.base_mask).bit_count()

    def depth_of(self, mask: int) -> int:
        return int(self.dist[fastbfs.mask_rank(mask, 1 << self.d)])

    def parent_of(self, mask: int):
        """(parent_mask, (src, tgt) move parent->mask), None at the base.

        The tree is deterministic: the first shallower neighbor in move order.
        """
        m = int(mask)
        if m == self.base_mask:
            return None
        cached = self._parents.get(m)
        if cached is not None:
            return cached
        dm = self.depth_of(m)
        for s, t in fastbfs.unlabeled_moves(m, self.d, self.k):
            pm = (m ^ (1 << s)) | (1 << t)
            if self.depth_of(pm) == dm - 1:
                entry = (pm, (t, s))
                self._parents[m] = entry
                return entry
        raise AssertionError("broken BFS tree")

    def parent_walk(self, mask: int) -> list:
        """Moves (src, tgt) along the tree from the base down to `mask`."""
        walk = []
        m = int(mask)
        while m != self.base_mask:
            pm, mv = self.parent_of(m)
            walk.append(mv)
            m = pm
        walk.reverse()
        return walk


def unlabeled_component(config: UnlabeledConfig | int, k: int, d: int | None = None) -> UnlabeledComponent:
    """Explore the unlabeled component of an occupancy mask."""
    if isinstance(config, UnlabeledConfig):
        d, mask = config.d, config.occupancy
    else:
        if d is None:
            raise ValueError("d required when passing a raw mask")
        mask = int(config)
    T = mask.bit_count()
    masks, dist, maxd, even = fastbfs.bfs_unlabeled(mask, d, k, T)
    return UnlabeledComponent(d, k, mask, masks, dist, maxd, even)


@dataclass(frozen=True)
class CyclePermutation:
    """Permutation of the base mask's occupied slots along one closed walk.

    Each edge transposes a token with an empty vertex; over all slots the
    cycle permutation therefore has the parity of its length, but the token
    part alone differs from it by the permutation the holes undergo.  Both
    parities are carried here and their relation is asserted.
    """
    base_config: UnlabeledConfig
    perm: tuple
    length: int
    hole_parity: int = 0

    def __post_init__(self) -> None:
        if _perm_parity(self.perm) != (self.length + self.hole_parity) % 2:
            raise AssertionError(
                "token parity must be walk length plus hole-shift parity")


def _perm_parity(perm: tuple) -> int:
    seen = [False] * len(perm)
    parity = 0
    for i in range(len(perm)):
        if seen[i]:
            continue
        j = i
        clen = 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            clen += 1
        parity ^= (clen - 1) & 1
    return parity


def walk_permutation(comp: UnlabeledComponent, walk: list) -> tuple:
    """Track the base mask's tokens along (src, tgt) moves of a closed walk."""
    slots = [v for v in range(1 << comp.d) if (comp.base_mask >> v) & 1]
    pos = {v: i for i, v in enumerate(slots)}   # vertex -> token index
    cur = list(slots)                            # token index -> vertex
    for s, t in walk:
        i = pos.pop(s)
        cur[i] = t
        pos[t] = i
    if sorted(cur) != slots:
        raise ValueError("walk is not closed over the base mask")
    perm = [0] * len(slots)
    for i, v in enumerate(cur):
        perm[i] = slots.index(v)
    return tuple(perm)


def walk_token_parity(comp: UnlabeledComponent, walk: list) -> int:
    """Token-permutation parity of a walk via the per-edge weights."""
    mask = comp.base_mask
    parity = 0
    for s, t in walk:
        parity ^= fastbfs.edge_parity_weight(mask, s, t)
        mask = (mask ^ (1 << s)) | (1 << t)
    return parity


def fundamental_cycles(comp: UnlabeledComponent):
    """Yield (walk, length) per non-tree edge: base->u, edge, v->base."""
    for m in comp.masks:
        m = int(m)
        for s, t in fastbfs.unlabeled_moves(m, comp.d, comp.k):
            nb = (m ^ (1 << s)) | (1 << t)
            if comp.index[nb] < comp.index[m]:
                continue   # handle each undirected edge once, from lower index
            pm = comp.parent_of(m)
            pn = comp.parent_of(nb)
            if (pn is not None and pn[0] == m and pn[1] == (s, t)) or \
               (pm is not None and pm[0] == nb and pm[1] == (t, s)):
                continue   # tree edge
            up = comp.parent_walk(m)
            down = [(b, a) for a, b in reversed(comp.parent_walk(nb))]
            walk = up + [(s, t)] + down
            yield walk, len(walk)


@dataclass
class ParityReport:
    rules: Rules
    component_size: int
    all_base_cycles_even: bool
    conclusion: str
    evidence: list

    def to_json(self) -> dict:
        return {
            "d": self.rules.d,
            "k": self.rules.k,
            "l": self.rules.l,
            "component_size": self.component_size,
            "all_base_cycles_even": self.all_base_cycles_even,
            "conclusion": self.conclusion,
            "evidence": self.evidence,
        }


def cycle_base_parity(comp: UnlabeledComponent) -> ParityReport:
    """Check whether every spanning-tree fundamental cycle permutes the
    tokens evenly.

    The check is a 2-coloring of the parity double cover: each edge carries
    weight 1 (the token-empty transposition) plus the number of empties
    strictly between its endpoints (the shift of the canonically ordered
    holes).  A conflict is exactly an odd fundamental cycle.  The BFS kernel
    already did this; an independent python coloring pass cross-checks it.
    """
    rules = Rules(comp.d, comp.k, (1 << comp.d) - comp.num_tokens)
    two_colorable = _parity_cover_check(comp)
    if two_colorable != comp.even_cycles:
        raise AssertionError("token-parity cross-check failed")
    all_even = comp.even_cycles
    evidence = [
        f"unlabeled component: {comp.size} masks from base "
        f"{comp.base_mask:0{1 << comp.d}b}",
        "cycle base: " + ("all token permutations even"
                          if all_even else "odd token permutation found"),
        f"independent parity 2-coloring: {'consistent' if two_colorable else 'conflict'}",
    ]
    conclusion = "at-most-two-mobile-classes" if all_even else "inconclusive"
    return ParityReport(rules, comp.size, all_even, conclusion, evidence)


def _parity_cover_check(comp: UnlabeledComponent) -> bool:
    color = {int(comp.masks[0]): 0}
    for m in comp.masks:
        m = int(m)
        cm = color[m]
        for s, t in fastbfs.unlabeled_moves(m, comp.d, comp.k):
            w = fastbfs.edge_parity_weight(m, s, t)
            nb = (m ^ (1 << s)) | (1 << t)
            if nb in color:
                if color[nb] != cm ^ w:
                    return False
            else:
                color[nb] = cm ^ w
    return True


def mask_mobility(comp: UnlabeledComponent) -> tuple:
    """(kind, stuck_slots) for any labeling over this component.

    Tracks each base slot through the component: a slot is stuck iff no
    reachable (mask, tracked-position) pair has a legal move from the
    tracked position.  Mobility of a labeled configuration only depends on
    its underlying mask, and in fact on the mask's component.
    """
    base = comp.base_mask
    slots = [v for v in range(1 << comp.d) if (base >> v) & 1]
    if comp.size == 1 and not fastbfs.unlabeled_moves(base, comp.d, comp.k):
        return "isolated", frozenset(slots)
    stuck = []
    for p in slots:
        if not _slot_can_move(comp, p):
            stuck.append(p)
    if not stuck:
        return "mobile", frozenset()
    return "semi-isolated", frozenset(stuck)


def _slot_can_move(comp: UnlabeledComponent, p: int) -> bool:
    seen = {(comp.base_mask, p)}
    stack = [(comp.base_mask, p)]
    while stack:
        m, v = stack.pop()
        for s, t in fastbfs.unlabeled_moves(m, comp.d, comp.k):
            if s == v:
                return True
            nb = (m ^ (1 << s)) | (1 << t)
            if (nb, v) not in seen:
                seen.add((nb, v))
                stack.append((nb, v))
    return False


def monodromy_order(comp: UnlabeledComponent, collect_cycles: int = 0) -> tuple:
    """|G| for the group of slot permutations over closed walks at the base.

    Feeds fundamental-cycle permutations into a stabilizer chain, stopping
    early once the parity-capped maximum (A_T or S_T) is reached.  Returns
    (order, group, sample_cycles).
    """
    T = comp.num_tokens
    fact = int(fastbfs._FACT[T]) if T <= 16 else _big_factorial(T)
    cap = max(1, fact // 2) if comp.even_cycles else fact
    group = PermGroup(T)
    samples = []
    base_cfg = UnlabeledConfig(comp.d, comp.base_mask)
    order = 1
    if T <= 1 or comp.size == 1:
        return 1, group, samples
    for walk, length in fundamental_cycles(comp):
        perm = walk_permutation(comp, walk)
        if collect_cycles and len(samples) < collect_cycles:
            tok_par = walk_token_parity(comp, walk)
            hole_par = (tok_par + length) % 2
            samples.append(CyclePermutation(base_cfg, perm, length, hole_par))
        if group.add(perm, order_cap=cap):
            order = group.order()
            if order >= cap:
                break
    return order, group, samples


def _big_factorial(n: int) -> int:
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def strong_parity_verdict(rules: Rules, expected_l: int | None = None) -> dict:
    """Combine cycle parity with even-solvability evidence into a verdict.

    Looks for a mobile unlabeled component at the given rules, checks its
    cycle base, and computes the monodromy order: all cycles even gives
    at-most-two labeled mobile classes; |G| = T!/2 pins exactly two.
    """
    import itertools as it
    from .formulas import S_value

    d, k, l = rules.d, rules.k, rules.l
    T = rules.tokens
    n = 1 << d
    seen = set()
    mobile_comp = None
    for occ in it.combinations(range(n), T):
        mask = 0
        for v in occ:
            mask |= 1 << v
        if mask in seen:
            continue
        comp = unlabeled_component(mask, k, d)
        seen.update(int(m) for m in comp.masks)
        kind, _ = mask_mobility(comp)
        if kind == "mobile":
            mobile_comp = comp
            break
    if mobile_comp is None:
        return {
            "rules": (d, k, l), "verdict": "no-mobile-configurations",
            "evidence": [f"all {len(seen)} masks non-mobile"],
        }
    report = cycle_base_parity(mobile_comp)
    order, _, _ = monodromy_order(mobile_comp)
    fact = _big_factorial(T)
    evidence = list(report.evidence)
    evidence.append(f"monodromy order {order} of maximum {fact}")
    s_dk = S_value(d, k)
    even_solvable = order * 2 >= fact
    if even_solvable:
        evidence.append(
            "even solvability: all even label permutations realized by closed walks")
    if l == s_dk:
        evidence.append(f"l equals the even-solvability threshold {s_dk}")
    if report.all_base_cycles_even and even_solvable:
        verdict = "strong-parity"
        evidence.append("exactly two labeled mobile components, split by parity")
    elif report.all_base_cycles_even:
        verdict = "at-most-two-mobile-classes"
    elif not even_solvable:
        verdict = "inconclusive"
    else:
        verdict = "connected"
        evidence.append("odd cycle present: one labeled mobile component")
    return {
        "rules": (d, k, l),
        "verdict": verdict,
        "component_size": mobile_comp.size,
        "all_base_cycles_even": report.all_base_cycles_even,
        "monodromy_order": order,
        "labeled_mobile_components": fact // order,
        "evidence": evidence,
    }
