"""Census of puzzle graphs: component sizes and counts, regimes, diameters.

The census never enumerates the labeled graph wholesale.  It partitions
occupancy masks into unlabeled components; over a component of N masks with
monodromy group G the labeled graph decomposes into T!/|G| isomorphic
components of N*|G| configurations each.  Labeled breadth-first search is
spent only where it is irreplaceable: exact diameters, which are computed as
eccentricities of one representative per symmetry orbit of masks (the
hyperoctahedral action and label permutations are puzzle-graph
automorphisms, so eccentricity is constant on an orbit).
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .geometry import symmetry_vertex_maps
from .config import LabeledConfig, Rules, canonical_mask
from . import fastbfs, parity

# space (in states) up to which plain python set-BFS beats JIT spin-up
PY_SPACE_LIMIT = 60_000
# memory gate for allocating a uint8 distance array over the ranked space
DEFAULT_MEM_BUDGET = 2_500_000_000
# component size up to which diameters run all-pairs instead of orbit mode
# (orbit mode is exact too; all-pairs additionally yields the unit-slide
# diameter, wanted only on tiny components)
ALL_PAIRS_LIMIT = 64
DEFAULT_BUDGET = 10 ** 8


@dataclass
class BfsStats:
    visited: int
    max_depth: int
    frontier_peak: int


@dataclass
class ComponentHandle:
    d: int
    k: int
    num_tokens: int
    start: LabeledConfig
    size: int
    states: list | None       # packed states (python path only)
    dist: np.ndarray | None   # rank-indexed depths (compiled path only)
    truncated: bool = False

    @property
    def rules(self) -> Rules:
        return Rules(self.d, self.k, (1 << self.d) - self.num_tokens)


def _python_bfs(start_state: int, d: int, k: int, budget: int,
                adjacent_only: bool = False):
    """Set-based BFS on packed states; returns (states, dist_map, stats, truncated)."""
    if adjacent_only:
        src, others, tgt, _ = fastbfs.build_combos(d, k, adjacent_only=True)
        combos = list(zip(src.tolist(), others.tolist(), tgt.tolist()))
    else:
        src, others, tgt, _ = fastbfs._combo_cache(d, k)
        combos = list(zip(src.tolist(), others.tolist(), tgt.tolist()))
    n_verts = 1 << d
    dist = {start_state: 0}
    frontier = [start_state]
    depth = 0
    peak = 1
    truncated = False
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
                ns = s - (lab << (4 * sv)) + (lab << (4 * tv))
                if ns not in dist:
                    if len(dist) >= budget:
                        truncated = True
                        nxt = []
                        break
                    dist[ns] = depth + 1
                    nxt.append(ns)
            if truncated:
                break
        if nxt:
            depth += 1
            peak = max(peak, len(nxt))
        frontier = nxt
    stats = BfsStats(len(dist), depth, peak)
    return list(dist), dist, stats, truncated


def explore_component(config: LabeledConfig, k: int, budget: int = DEFAULT_BUDGET,
                      mem_budget: int = DEFAULT_MEM_BUDGET):
    """Breadth-first exploration of one labeled component.

    Uses the compiled rank-indexed kernel when the whole ranked space fits the
    memory budget, otherwise a python set BFS bounded by `budget` states.
    """
    d, T = config.d, config.num_tokens
    n_verts = 1 << d
    start = fastbfs.pack_config(config)
    space = fastbfs.space_size(n_verts, T) if T <= 15 else None
    if space is not None and PY_SPACE_LIMIT < space <= mem_budget:
        visited, maxd, peak, dist = fastbfs.bfs_labeled([start], d, k, T)
        handle = ComponentHandle(d, k, T, config, visited, None, dist)
        return handle, BfsStats(visited, maxd, peak)
    states, _, stats, truncated = _python_bfs(start, d, k, budget)
    handle = ComponentHandle(d, k, T, config, len(states), states, None,
                             truncated=truncated)
    return handle, stats


# --- unlabeled stratification ---

@dataclass
class Stratum:
    """One unlabeled component with its derived labeled structure."""
    component: parity.UnlabeledComponent
    kind: str                  # isolated / semi-isolated / mobile
    stuck_slots: frozenset
    monodromy_order: int
    labeled_size: int          # configurations per labeled component
    labeled_count: int         # number of labeled components over this stratum


def stratify(d: int, k: int, l: int, mask_limit: int = 4_000_000) -> list:
    """Partition all popcount-T masks into unlabeled components and derive
    the labeled component structure of each."""
    import itertools as it

    n = 1 << d
    T = n - l
    total_masks = math.comb(n, T)
    if total_masks > mask_limit:
        raise MemoryError(
            f"{total_masks} masks exceed the stratification limit {mask_limit}")
    fact_T = math.factorial(T)
    seen = np.zeros(total_masks, dtype=bool)
    strata = []
    if T == 0:
        comp = parity.unlabeled_component(0, k, d)
        return [Stratum(comp, "isolated", frozenset(), 1, 1, 1)]
    for occ in it.combinations(range(n), T):
        mask = 0
        for v in occ:
            mask |= 1 << v
        r = fastbfs.mask_rank(mask, n)
        if seen[r]:
            continue
        comp = parity.unlabeled_component(mask, k, d)
        for m in comp.masks:
            seen[fastbfs.mask_rank(int(m), n)] = True
        kind, stuck = parity.mask_mobility(comp)
        if comp.size == 1:
            order = 1
        else:
            order, _, _ = parity.monodromy_order(comp)
        size = comp.size * order
        count = fact_T // order
        assert fact_T % order == 0
        strata.append(Stratum(comp, kind, stuck, order, size, count))
    return strata


# --- the census report ---

CSV_COLUMNS = ("d,k,l,total_configs,biggest_component,diameter_lo,diameter_hi,"
               "regime,num_max_components,bfs_depth_f,runtime_ms")


@dataclass
class CensusReport:
    rules: Rules
    total_configs: int
    biggest_component: int
    num_max_components: int
    regime: str
    num_mobile_components: int
    diameter_lo: int | None = None
    diameter_hi: int | None = None
    diameter_certified: bool = True
    diameter_unit_slides: int | None = None
    bfs_depth_f: int | None = None
    runtime_ms: int | None = None
    notes: list = field(default_factory=list)

    @property
    def diameter(self):
        if self.diameter_lo is not None and self.diameter_lo == self.diameter_hi:
            return self.diameter_lo
        return None

    def to_json(self, include_runtime: bool = False) -> dict:
        out = {
            "d": self.rules.d, "k": self.rules.k, "l": self.rules.l,
            "total_configs": self.total_configs,
            "biggest_component": self.biggest_component,
            "diameter_lo": self.diameter_lo,
            "diameter_hi": self.diameter_hi,
            "diameter_certified": self.diameter_certified,
            "diameter_unit_slides": self.diameter_unit_slides,
            "regime": self.regime,
            "num_max_components": self.num_max_components,
            "num_mobile_components": self.num_mobile_components,
            "bfs_depth_f": self.bfs_depth_f,
            "notes": self.notes,
        }
        if include_runtime:
            out["runtime_ms"] = self.runtime_ms
        return out

    def to_csv_row(self, include_runtime: bool = True) -> str:
        vals = [self.rules.d, self.rules.k, self.rules.l, self.total_configs,
                self.biggest_component,
                self.diameter_lo if self.diameter_lo is not None else "",
                self.diameter_hi if self.diameter_hi is not None else "",
                self.regime, self.num_max_components,
                self.bfs_depth_f if self.bfs_depth_f is not None else "",
                self.runtime_ms if include_runtime and self.runtime_ms is not None else ""]
        return ",".join(str(v) for v in vals)


def _rep_config(d: int, mask: int) -> LabeledConfig:
    slots = [0] * (1 << d)
    lab = 0
    for v in range(1 << d):
        if (mask >> v) & 1:
            lab += 1
            slots[v] = lab
    return LabeledConfig(d, tuple(slots))


def _canonical_reps(d: int, strata: list) -> list:
    """One (canonical_key, actual_mask, stratum) per symmetry orbit of masks
    across the given strata (masks of isomorphic components collapse)."""
    vmaps = symmetry_vertex_maps(d)
    reps: dict = {}
    for st in strata:
        for m in st.component.masks:
            m = int(m)
            key = canonical_mask(d, m, vmaps)
            if key not in reps or m < reps[key][0]:
                reps[key] = (m, st)
    return [(key, m, st) for key, (m, st) in sorted(reps.items())]


def _unlabeled_ecc(d: int, k: int, mask: int) -> int:
    _, _, maxd, _ = fastbfs.bfs_unlabeled(mask, d, k, mask.bit_count())
    return maxd


def exact_orbit_diameter(d: int, k: int, strata_max: list, threads: int = 1,
                         mem_budget: int = DEFAULT_MEM_BUDGET):
    """Exact diameter of the biggest labeled component(s).

    Runs one eccentricity BFS per symmetry orbit of masks, ordered by
    unlabeled eccentricity; centers found along the way prune orbits whose
    eccentricity upper bound (f_center + distance) cannot exceed the best
    lower bound.  Returns (diam, f, stats_notes).
    """
    T = strata_max[0].component.num_tokens
    n_verts = 1 << d
    space = fastbfs.space_size(n_verts, T)
    reps = _canonical_reps(d, strata_max)
    f_value = None
    first_key = min(r[0] for r in reps)
    # schedule: the deterministic f-orbit, then the largest unlabeled
    # eccentricities (securing the lower bound), then the smallest ones
    # (centers, whose distance maps prune the middle band), then the rest
    uecc = {r[0]: _unlabeled_ecc(d, k, r[1]) for r in reps}
    by_ecc = sorted(reps, key=lambda r: (-uecc[r[0]], r[0]))
    head = [r for r in by_ecc if r[0] == first_key]
    far = [r for r in by_ecc if r[0] != first_key][:3]
    rest = [r for r in by_ecc if r[0] != first_key][3:]
    centers = sorted(rest, key=lambda r: (uecc[r[0]], r[0]))[:2]
    middle = [r for r in rest if r not in centers]
    order = head + far + centers + middle

    rep_states = {key: fastbfs.pack_config(_rep_config(d, m)) for key, m, _ in order}
    all_keys = [key for key, _, _ in order]
    all_states = [rep_states[key] for key in all_keys]
    lb = 0
    ubs = {key: None for key, _, _ in order}
    lock = __import__("threading").Lock()
    results = {}
    skipped = 0

    def run_one(item):
        nonlocal lb, f_value, skipped
        key, m, st = item
        with lock:
            if key != first_key and ubs[key] is not None and ubs[key] <= lb:
                skipped += 1
                return
        visited, maxd, peak, probe_depths = fastbfs.bfs_labeled_ecc(
            rep_states[key], d, k, T, probe_states=all_states)
        with lock:
            results[key] = (visited, maxd, peak)
            lb = max(lb, maxd)
            if key == first_key:
                f_value = maxd
            for okey, dr in zip(all_keys, probe_depths):
                if okey in results or dr < 0:
                    continue
                lb = max(lb, dr)
                cand = maxd + dr
                if ubs[okey] is None or cand < ubs[okey]:
                    ubs[okey] = cand

    bitset_bytes = max(space, 1) // 8
    max_workers = max(1, min(threads, max(1, int(mem_budget // max(bitset_bytes, 1)))))
    if max_workers == 1:
        for item in order:
            run_one(item)
    else:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            list(pool.map(run_one, order))
    diam = max(maxd for _, maxd, _ in results.values())
    sizes = {visited for visited, _, _ in results.values()}
    return diam, f_value, sizes, len(order), skipped


def _all_pairs_diameter(states: list, d: int, k: int, budget: int,
                        adjacent_only: bool = False) -> int:
    best = 0
    for s in states:
        _, _, stats, trunc = _python_bfs(s, d, k, budget, adjacent_only)
        assert not trunc
        best = max(best, stats.max_depth)
    return best


def census(rules: Rules, mode: str = "auto", diameter_mode: str = "auto",
           budget: int = DEFAULT_BUDGET, mem_budget: int = DEFAULT_MEM_BUDGET,
           threads: int = 1, with_timing: bool = False) -> CensusReport:
    """One table row: sizes and counts exactly, diameter per the chosen mode.

    diameter_mode: auto | exact-all-pairs | exact-orbit | bound | none.
    mode: auto | full (full enumerates every labeled configuration; it is a
    brute-force oracle for small boards).
    """
    t0 = time.monotonic()
    if mode == "full":
        report = _census_full(rules, budget)
        report.runtime_ms = int((time.monotonic() - t0) * 1000)
        return report

    d, k, l = rules.d, rules.k, rules.l
    n = 1 << d
    T = rules.tokens
    total = math.comb(n, T) * math.factorial(T)
    strata = stratify(d, k, l)
    s_big = max(st.labeled_size for st in strata)
    num_max = sum(st.labeled_count for st in strata if st.labeled_size == s_big)
    mobile = sum(st.labeled_count for st in strata if st.kind == "mobile")
    kinds = {st.kind for st in strata}
    if kinds == {"isolated"}:
        regime_tag = "isolated"
    elif mobile == 0:
        regime_tag = "semi-isolated"
    elif mobile == 2:
        regime_tag = "strong-parity"
    elif mobile == 1:
        regime_tag = "connected"
    else:
        regime_tag = f"unexpected-{mobile}-mobile"

    report = CensusReport(rules, total, s_big, num_max, regime_tag, mobile)

    strata_max = [st for st in strata if st.labeled_size == s_big]
    _fill_diameter(report, d, k, strata_max, diameter_mode, budget, mem_budget, threads)

    if report.diameter is not None and report.bfs_depth_f is not None:
        f = report.bfs_depth_f
        if report.diameter > f + 3:
            report.notes.append(
                f"observed diam={report.diameter} exceeds f+3={f + 3}")
        else:
            report.notes.append(f"diam <= f+3 holds (f={f})")
    report.runtime_ms = int((time.monotonic() - t0) * 1000) if with_timing else None
    return report


def _fill_diameter(report: CensusReport, d: int, k: int, strata_max: list,
                   diameter_mode: str, budget: int, mem_budget: int,
                   threads: int) -> None:
    s_big = report.biggest_component
    n_verts = 1 << d
    T = strata_max[0].component.num_tokens
    space = fastbfs.space_size(n_verts, T) if T <= 15 else None

    if diameter_mode == "none":
        return
    if diameter_mode == "auto":
        if s_big <= ALL_PAIRS_LIMIT:
            diameter_mode = "exact-all-pairs"
        elif space is not None and space // 8 <= mem_budget and \
                len(_canonical_reps(d, strata_max)) * s_big <= 8_000_000_000:
            # one eccentricity BFS per mask orbit while the sweep is tractable
            diameter_mode = "exact-orbit"
        elif s_big <= 2_000:
            # small component inside an unrankably large space: plain
            # all-pairs over the component is still exact and cheap
            diameter_mode = "exact-all-pairs"
        else:
            diameter_mode = "bound"

    if diameter_mode == "exact-all-pairs":
        if s_big > 5_000:
            raise ValueError("component too large for all-pairs diameter")
        rep = _rep_config(d, int(strata_max[0].component.base_mask))
        states, _, stats, trunc = _python_bfs(fastbfs.pack_config(rep), d, k, budget)
        assert not trunc and len(states) == s_big
        best = 0
        for st in _dedup_reps(d, strata_max):
            sts, _, st_stats, _ = _python_bfs(st, d, k, budget)
            best = max(best, _all_pairs_diameter(sts, d, k, budget))
        report.diameter_lo = report.diameter_hi = best
        report.bfs_depth_f = stats.max_depth
        report.diameter_unit_slides = max(
            _all_pairs_diameter(
                _python_bfs(st, d, k, budget, adjacent_only=True)[0],
                d, k, budget, adjacent_only=True)
            for st in _dedup_reps(d, strata_max))
        return

    if diameter_mode == "exact-orbit":
        if space is None or space // 8 > mem_budget:
            raise MemoryError(f"ranked space {space} over the memory budget")
        diam, f, sizes, n_orbits, skipped = exact_orbit_diameter(
            d, k, strata_max, threads, mem_budget)
        assert sizes == {s_big}, (sizes, s_big)
        report.diameter_lo = report.diameter_hi = diam
        report.bfs_depth_f = f
        report.notes.append(
            f"exact-orbit diameter over {n_orbits} mask orbits ({skipped} pruned)")
        return

    # bound mode: one labeled BFS when both memory and a single sweep are
    # affordable, else unlabeled bounds
    if space is not None and space // 8 <= mem_budget and s_big <= 800_000_000:
        rep = _rep_config(d, int(strata_max[0].component.base_mask))
        visited, f, peak, _ = fastbfs.bfs_labeled_ecc(
            fastbfs.pack_config(rep), d, k, T)
        assert visited == s_big, (visited, s_big)
        report.diameter_lo = f
        report.diameter_hi = min(2 * f, f + 3)
        report.diameter_certified = False
        report.bfs_depth_f = f
        report.notes.append(
            "bound mode: lower = BFS depth f, upper = min(2f, f+3); "
            "f+3 is the empirically observed slack")
        return
    best_unlab = 0
    for key, m, st in _canonical_reps(d, strata_max):
        best_unlab = max(best_unlab, _unlabeled_ecc(d, k, m))
    report.diameter_lo = best_unlab
    report.diameter_hi = None
    report.diameter_certified = False
    report.notes.append(
        "bound mode (labeled space infeasible): lower = exact unlabeled "
        "diameter; no certified upper bound at this scale")


def _dedup_reps(d: int, strata_max: list) -> list:
    """Packed start states, one per symmetry orbit across max-size strata."""
    return [fastbfs.pack_config(_rep_config(d, m))
            for _, m, _ in _canonical_reps(d, strata_max)]


def _census_full(rules: Rules, budget: int) -> CensusReport:
    """Brute force: enumerate every labeled configuration (small boards)."""
    import itertools as it

    d, k, l = rules.d, rules.k, rules.l
    n = 1 << d
    T = rules.tokens
    total = math.comb(n, T) * math.factorial(T)
    if total > min(budget, 3_000_000):
        raise ValueError(f"full census of {total} configurations is infeasible")
    seen = set()
    comp_sizes = []
    comp_data = []
    for occ in it.combinations(range(n), T):
        for perm in it.permutations(range(1, T + 1)):
            state = 0
            for pos, lab in zip(occ, perm):
                state |= lab << (4 * pos)
            if state in seen:
                continue
            states, _, stats, trunc = _python_bfs(state, d, k, budget)
            assert not trunc
            seen.update(states)
            comp_sizes.append(len(states))
            comp_data.append((state, len(states)))
    s_big = max(comp_sizes)
    num_max = comp_sizes.count(s_big)
    # mobility per component: labels that never move
    mobile = 0
    any_semi = False
    for state, size in comp_data:
        kind = _component_kind(state, d, k, T, budget)
        if kind == "mobile":
            mobile += 1
        elif kind == "semi-isolated":
            any_semi = True
    if mobile == 2:
        regime_tag = "strong-parity"
    elif mobile == 1:
        regime_tag = "connected"
    elif any_semi:
        regime_tag = "semi-isolated"
    else:
        regime_tag = "isolated"
    report = CensusReport(rules, total, s_big, num_max, regime_tag, mobile)
    if s_big <= 10 * ALL_PAIRS_LIMIT:
        big_state = next(s for s, size in comp_data if size == s_big)
        states, _, stats, _ = _python_bfs(big_state, d, k, budget)
        best = max(_all_pairs_diameter(st_states, d, k, budget)
                   for st_states in [_python_bfs(s, d, k, budget)[0]
                                     for s, size in comp_data if size == s_big])
        report.diameter_lo = report.diameter_hi = best
        report.bfs_depth_f = stats.max_depth
        report.diameter_unit_slides = max(
            _all_pairs_diameter(
                _python_bfs(s, d, k, budget, adjacent_only=True)[0],
                d, k, budget, adjacent_only=True)
            for s, size in comp_data if size == s_big)
    return report


def _component_kind(state: int, d: int, k: int, T: int, budget: int) -> str:
    states, _, stats, _ = _python_bfs(state, d, k, budget)
    if len(states) == 1:
        return "isolated"
    moved = set()
    src, others, tgt, _ = fastbfs._combo_cache(d, k)
    combos = list(zip(src.tolist(), others.tolist(), tgt.tolist()))
    n_verts = 1 << d
    for s in states:
        occ = 0
        for v in range(n_verts):
            if (s >> (4 * v)) & 15:
                occ |= 1 << v
        for sv, om, tv in combos:
            if (occ >> sv) & 1 and not occ & om:
                moved.add((s >> (4 * sv)) & 15)
        if len(moved) == T:
            return "mobile"
    return "semi-isolated" if len(moved) < T else "mobile"


def regime(rules: Rules, budget: int = DEFAULT_BUDGET) -> str:
    """Connectivity regime tag, via the stratified census."""
    return census(rules, diameter_mode="none", budget=budget).regime


# --- checkpoint files: sorted packed states with a small header ---

_CKPT_MAGIC = b"CSLD"


def write_checkpoint(path, rules: Rules, level: int, states) -> None:
    """Persist a visited set (sorted packed states) with a (d,k,l,level) header."""
    arr = np.asarray(sorted(int(s) for s in states), dtype=np.uint64)
    header = np.array([rules.d, rules.k, rules.l, level, len(arr)],
                      dtype=np.uint32)
    with open(path, "wb") as fh:
        fh.write(_CKPT_MAGIC)
        header.tofile(fh)
        arr.tofile(fh)


def read_checkpoint(path):
    """Returns (rules, level, states_array)."""
    with open(path, "rb") as fh:
        if fh.read(4) != _CKPT_MAGIC:
            raise ValueError("not a checkpoint file")
        header = np.fromfile(fh, dtype=np.uint32, count=5)
        d, k, l, level, count = (int(x) for x in header)
        arr = np.fromfile(fh, dtype=np.uint64, count=count)
    if len(arr) != count:
        raise ValueError("truncated checkpoint file")
    return Rules(d, k, l), level, arr
