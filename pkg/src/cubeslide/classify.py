"""Mobility classification: isolated, semi-isolated (with stuck set), mobile.

A label is stuck exactly when no edge anywhere in the component moves it:
each edge moves one token, so a never-moved label sits at a constant vertex
across the whole component, and the component is generated by moves of the
other labels.  One sweep of the component therefore computes the maximal
stuck set; exploration stops early once every label has been seen moving.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .config import LabeledConfig
from . import fastbfs, parity

DEFAULT_BUDGET = 10 ** 8


@dataclass
class Classification:
    kind: str                  # isolated | semi-isolated | mobile | inconclusive
    stuck_set: frozenset       # labels (empty unless semi-isolated/inconclusive)
    explored: int              # component size, or lower bound if truncated
    truncated: bool = False

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "stuck": sorted(self.stuck_set),
            "component_size": self.explored,
            "truncated": self.truncated,
        }


def classify(config: LabeledConfig, k: int, budget: int = DEFAULT_BUDGET) -> Classification:
    """Sweep the component of `config`, accumulating which labels move.

    Early exit once all labels have moved (mobile); a budget hit with labels
    still unseen yields an explicit inconclusive verdict, never a silent one.
    """
    d = config.d
    n_verts = 1 << d
    T = config.num_tokens
    if T > 15:
        raise ValueError("classification supports at most 15 tokens "
                         "(4-bit packed labels)")
    src, others, tgt, _ = fastbfs._combo_cache(d, k)
    combos = list(zip(src.tolist(), others.tolist(), tgt.tolist()))
    start = fastbfs.pack_config(config)
    seen = {start}
    frontier = [start]
    moved: set = set()
    while frontier:
        nxt = []
        for s in frontier:
            occ = 0
            for v in range(n_verts):
                if (s >> (4 * v)) & 15:
                    occ |= 1 << v
            for sv, om, tv in combos:
                if not (occ >> sv) & 1 or occ & om:
                    continue
                lab = (s >> (4 * sv)) & 15
                moved.add(lab)
                ns = s - (lab << (4 * sv)) + (lab << (4 * tv))
                if ns not in seen:
                    seen.add(ns)
                    nxt.append(ns)
            if len(moved) == T:
                return Classification("mobile", frozenset(), len(seen))
        if len(seen) > budget:
            stuck = config.labels - moved
            return Classification("inconclusive", frozenset(stuck), len(seen),
                                  truncated=True)
        frontier = nxt
    stuck = config.labels - moved
    if not moved:
        return Classification("isolated", frozenset(stuck), len(seen))
    if not stuck:
        return Classification("mobile", frozenset(), len(seen))
    return Classification("semi-isolated", frozenset(stuck), len(seen))


def first_mobile_l(d: int, k: int, l_max: int | None = None,
                   budget: int = DEFAULT_BUDGET) -> int:
    """Smallest l admitting a mobile configuration.

    Scans occupancy masks up to exhaustion of each unlabeled component;
    mobility only depends on the mask's component (relabeling is a puzzle
    graph isomorphism), so one representative per component suffices.
    """
    n = 1 << d
    if l_max is None:
        l_max = n - 1
    for l in range(1, l_max + 1):
        T = n - l
        seen: set = set()
        for occ in itertools.combinations(range(n), T):
            mask = 0
            for v in occ:
                mask |= 1 << v
            if mask in seen:
                continue
            comp = parity.unlabeled_component(mask, k, d)
            seen.update(int(m) for m in comp.masks)
            kind, _ = parity.mask_mobility(comp)
            if kind == "mobile":
                return l
    raise ValueError(f"no mobile configuration up to l={l_max}")
