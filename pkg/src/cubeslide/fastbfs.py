"""Compiled breadth-first kernels over packed puzzle states.

Labeled states for d <= 4 pack one 4-bit label slot per vertex into a uint64.
Each state gets a perfect rank
    rank = mask_rank(occupancy) * T! + lehmer(perm)
so a flat uint8 distance array over C(2^d, T) * T! entries does visited
bookkeeping and eccentricity in one structure (255 = unseen).  Unlabeled
states are occupancy masks ranked by the combinatorial number system alone,
which keeps d = 5 parity runs cheap.

Everything here is deliberately allocation-light: these loops dominate every
census and every exact diameter.
"""
from __future__ import annotations

import math

import numpy as np
from numba import njit

from .geometry import Vertex, faces_through
from .config import LabeledConfig

_U = np.uint64

_BINOM = np.zeros((34, 34), dtype=np.int64)
for _n in range(34):
    _BINOM[_n][0] = 1
    for _k in range(1, _n + 1):
        _BINOM[_n][_k] = _BINOM[_n - 1][_k - 1] + _BINOM[_n - 1][_k]

_FACT = np.array([math.factorial(i) for i in range(17)], dtype=np.int64)


def build_combos(d: int, k: int, adjacent_only: bool = False):
    """Flattened (source, blocked-mask, target, between-mask) arrays over all
    k-faces.

    The blocked mask holds every face vertex except the source; a move fires
    when the source is occupied and nothing in the blocked mask is.  The
    between-mask covers the vertices strictly between source and target in
    vertex order: counting empties there gives the token-permutation parity
    weight of the edge (see parity module).
    """
    src, others, tgt, betw = [], [], [], []
    for v in range(1 << d):
        for face in faces_through(Vertex(d, v), k):
            om = 0
            verts = []
            sub = 0
            while True:
                w = face.base | sub
                if w != v:
                    om |= 1 << w
                    verts.append(w)
                if sub == face.stars:
                    break
                sub = (sub - face.stars) & face.stars
            for w in verts:
                if adjacent_only and (v ^ w).bit_count() != 1:
                    continue
                lo, hi = min(v, w), max(v, w)
                between = ((1 << hi) - 1) & ~((1 << (lo + 1)) - 1)
                src.append(v)
                others.append(om)
                tgt.append(w)
                betw.append(between)
    return (np.array(src, dtype=np.int64),
            np.array(others, dtype=np.int64),
            np.array(tgt, dtype=np.int64),
            np.array(betw, dtype=np.int64))


def pack_config(config: LabeledConfig) -> int:
    key = 0
    for v, lab in enumerate(config.slots):
        key |= lab << (4 * v)
    return key


def unpack_config(d: int, key: int) -> LabeledConfig:
    slots = tuple((key >> (4 * v)) & 15 for v in range(1 << d))
    return LabeledConfig(d, slots)


def mask_rank(occ: int, n_verts: int) -> int:
    """Rank of an occupancy mask among same-popcount masks (ascending)."""
    r = 0
    cnt = 0
    for v in range(n_verts):
        if (occ >> v) & 1:
            cnt += 1
            r += _BINOM[v][cnt]
    return int(r)


def mask_unrank(rank: int, n_verts: int, T: int) -> int:
    """Inverse of mask_rank."""
    occ = 0
    cnt = T
    for v in range(n_verts - 1, -1, -1):
        if cnt and _BINOM[v][cnt] <= rank:
            rank -= int(_BINOM[v][cnt])
            occ |= 1 << v
            cnt -= 1
    return occ


def state_rank(state: int, n_verts: int, T: int) -> int:
    """Python mirror of the kernel ranking (tests, point lookups)."""
    occ = 0
    perm = []
    for v in range(n_verts):
        lab = (state >> (4 * v)) & 15
        if lab:
            occ |= 1 << v
            perm.append(lab - 1)
    mr = mask_rank(occ, n_verts)
    pr = 0
    for i in range(T):
        c = sum(1 for j in range(i + 1, T) if perm[j] < perm[i])
        pr += c * int(_FACT[T - 1 - i])
    return mr * int(_FACT[T]) + pr


def space_size(n_verts: int, T: int) -> int:
    return int(_BINOM[n_verts][T]) * int(_FACT[T])


@njit(cache=True, nogil=True, inline="always")
def _rank64(state, n_verts, T, binom, fact, perm):
    mr = 0
    cnt = 0
    idx = 0
    for v in range(n_verts):
        lab = np.int64((state >> _U(4 * v)) & _U(15))
        if lab != 0:
            cnt += 1
            mr += binom[v][cnt]
            perm[idx] = lab - 1
            idx += 1
    pr = 0
    for i in range(T):
        c = 0
        for j in range(i + 1, T):
            if perm[j] < perm[i]:
                c += 1
        pr += c * fact[T - 1 - i]
    return mr * fact[T] + pr


@njit(cache=True, nogil=True)
def _bfs_labeled(starts, dist, vstart, others, tgt, n_verts, T, binom, fact):
    """Level BFS from `starts`; fills dist (uint8, 255 = unseen).

    Combo arrays are sliced per source vertex (vstart[v]..vstart[v+1]), so
    only occupied vertices are scanned; occupancy rides along the frontier.
    Returns (visited_count, max_depth, frontier_peak).
    """
    perm = np.empty(16, dtype=np.int64)
    n = starts.shape[0]
    cur = starts.copy()
    cur_occ = np.empty(n, dtype=np.int64)
    for i in range(n):
        s = cur[i]
        occ = 0
        for v in range(n_verts):
            if (s >> _U(4 * v)) & _U(15) != _U(0):
                occ |= 1 << v
        cur_occ[i] = occ
        dist[_rank64(s, n_verts, T, binom, fact, perm)] = 0
    visited = n
    peak = n
    depth = 0
    while n > 0:
        cap = 4 * n + 1024
        nxt = np.empty(cap, dtype=np.uint64)
        nxt_occ = np.empty(cap, dtype=np.int64)
        m = 0
        for i in range(n):
            s = cur[i]
            occ = cur_occ[i]
            for v in range(n_verts):
                if (occ >> v) & 1 == 0:
                    continue
                lab = (s >> _U(4 * v)) & _U(15)
                base = s - (lab << _U(4 * v))
                tgtmask = 0
                for c in range(vstart[v], vstart[v + 1]):
                    if occ & others[c] != 0:
                        continue
                    t = tgt[c]
                    if (tgtmask >> t) & 1:
                        continue
                    tgtmask |= 1 << t
                    ns = base + (lab << _U(4 * t))
                    r = _rank64(ns, n_verts, T, binom, fact, perm)
                    if dist[r] == 255:
                        dist[r] = depth + 1
                        if m == cap:
                            cap = 2 * cap
                            grown = np.empty(cap, dtype=np.uint64)
                            grown[:m] = nxt[:m]
                            nxt = grown
                            grown_occ = np.empty(cap, dtype=np.int64)
                            grown_occ[:m] = nxt_occ[:m]
                            nxt_occ = grown_occ
                        nxt[m] = ns
                        nxt_occ[m] = (occ ^ (1 << v)) | (1 << t)
                        m += 1
        if m > 0:
            depth += 1
            visited += m
            if m > peak:
                peak = m
        cur = nxt[:m]
        cur_occ = nxt_occ[:m]
        n = m
    return visited, depth, peak


@njit(cache=True, nogil=True)
def _bfs_labeled_bitset(starts, bits, probes, probe_depth, vstart, others,
                        tgt, n_verts, T, binom, fact):
    """Eccentricity BFS with a visited bitset instead of a distance array.

    The bitset is 8x smaller than a uint8 distance array, which keeps it
    cache-resident for the big sweeps; distances are recorded only for the
    `probes` ranks (sorted), which is all the orbit pruning needs.
    Returns (visited_count, max_depth, frontier_peak).
    """
    perm = np.empty(16, dtype=np.int64)
    n = starts.shape[0]
    cur = starts.copy()
    cur_occ = np.empty(n, dtype=np.int64)
    for i in range(n):
        s = cur[i]
        occ = 0
        for v in range(n_verts):
            if (s >> _U(4 * v)) & _U(15) != _U(0):
                occ |= 1 << v
        cur_occ[i] = occ
        r = _rank64(s, n_verts, T, binom, fact, perm)
        bits[r >> 6] |= _U(1) << _U(r & 63)
    nprobe = probes.shape[0]
    for p in range(nprobe):
        r = probes[p]
        if (bits[r >> 6] >> _U(r & 63)) & _U(1) != _U(0):
            probe_depth[p] = 0
    visited = n
    peak = n
    depth = 0
    while n > 0:
        cap = 4 * n + 1024
        nxt = np.empty(cap, dtype=np.uint64)
        nxt_occ = np.empty(cap, dtype=np.int64)
        m = 0
        for i in range(n):
            s = cur[i]
            occ = cur_occ[i]
            for v in range(n_verts):
                if (occ >> v) & 1 == 0:
                    continue
                lab = (s >> _U(4 * v)) & _U(15)
                base = s - (lab << _U(4 * v))
                tgtmask = 0
                for c in range(vstart[v], vstart[v + 1]):
                    if occ & others[c] != 0:
                        continue
                    t = tgt[c]
                    if (tgtmask >> t) & 1:
                        continue
                    tgtmask |= 1 << t
                    ns = base + (lab << _U(4 * t))
                    r = _rank64(ns, n_verts, T, binom, fact, perm)
                    w = r >> 6
                    b = _U(1) << _U(r & 63)
                    if bits[w] & b == _U(0):
                        bits[w] |= b
                        if m == cap:
                            cap = 2 * cap
                            grown = np.empty(cap, dtype=np.uint64)
                            grown[:m] = nxt[:m]
                            nxt = grown
                            grown_occ = np.empty(cap, dtype=np.int64)
                            grown_occ[:m] = nxt_occ[:m]
                            nxt_occ = grown_occ
                        nxt[m] = ns
                        nxt_occ[m] = (occ ^ (1 << v)) | (1 << t)
                        m += 1
        if m > 0:
            depth += 1
            visited += m
            if m > peak:
                peak = m
            for p in range(nprobe):
                if probe_depth[p] < 0:
                    r = probes[p]
                    if (bits[r >> 6] >> _U(r & 63)) & _U(1) != _U(0):
                        probe_depth[p] = depth
        cur = nxt[:m]
        cur_occ = nxt_occ[:m]
        n = m
    return visited, depth, peak


def bfs_labeled_ecc(start_state: int, d: int, k: int, T: int,
                    probe_states=None):
    """Eccentricity BFS via the bitset kernel.

    Returns (visited, max_depth, peak, probe_depths) where probe_depths[i]
    is the distance from the start to probe_states[i], or -1 if unreached.
    """
    n_verts = 1 << d
    space = space_size(n_verts, T)
    bits = np.zeros((space + 63) // 64, dtype=np.uint64)
    probe_states = probe_states or []
    ranks = np.array([state_rank(s, n_verts, T) for s in probe_states],
                     dtype=np.int64)
    order = np.argsort(ranks) if len(probe_states) else np.array([], dtype=np.int64)
    depth_sorted = np.full(len(probe_states), -1, dtype=np.int64)
    vstart, others, tgt = _sliced_combo_cache(d, k)
    visited, maxd, peak = _bfs_labeled_bitset(
        np.array([start_state], dtype=np.uint64), bits,
        ranks[order] if len(probe_states) else ranks,
        depth_sorted, vstart, others, tgt, n_verts, T, _BINOM, _FACT)
    probe_depths = [0] * len(probe_states)
    for pos, idx in enumerate(order):
        probe_depths[int(idx)] = int(depth_sorted[pos])
    return int(visited), int(maxd), int(peak), probe_depths


@njit(cache=True, nogil=True, inline="always")
def _mask_rank64(mask, n_verts, binom):
    r = 0
    cnt = 0
    for v in range(n_verts):
        if (mask >> _U(v)) & _U(1) != _U(0):
            cnt += 1
            r += binom[v][cnt]
    return r


@njit(cache=True, nogil=True, inline="always")
def _popcount64(x):
    x = x - ((x >> _U(1)) & _U(0x5555555555555555))
    x = (x & _U(0x3333333333333333)) + ((x >> _U(2)) & _U(0x3333333333333333))
    x = (x + (x >> _U(4))) & _U(0x0F0F0F0F0F0F0F0F)
    return np.int64((x * _U(0x0101010101010101)) >> _U(56))


@njit(cache=True, nogil=True)
def _bfs_unlabeled(start, dist, par, src, others, tgt, betw, n_verts, binom,
                   out_masks):
    """BFS over occupancy masks; fills dist (depth) and par (token parity of
    the tree walk) by mask rank; out_masks holds visit order.

    Returns (count, max_depth, all_cycles_even) where all_cycles_even means
    every fundamental cycle induces an even permutation of the tokens.  The
    parity weight of an edge is 1 + (empties strictly between source and
    target): the transposition itself plus the shift of the canonically
    ordered empty slots.
    """
    full = (_U(1) << _U(n_verts)) - _U(1)
    r0 = _mask_rank64(start, n_verts, binom)
    dist[r0] = 0
    par[r0] = 0
    out_masks[0] = start
    count = 1
    head = 0
    even_cycles = True
    maxd = 0
    ncombo = src.shape[0]
    while head < count:
        s = out_masks[head]
        head += 1
        rs = _mask_rank64(s, n_verts, binom)
        d0 = np.int64(dist[rs])
        p0 = np.int64(par[rs])
        si = np.int64(s)
        for c in range(ncombo):
            if (si >> src[c]) & 1 == 0:
                continue
            if si & others[c] != 0:
                continue
            w = np.int64(1 + _popcount64(_U(betw[c]) & (full ^ s))) & 1
            ns = (s ^ (_U(1) << _U(src[c]))) | (_U(1) << _U(tgt[c]))
            r = _mask_rank64(ns, n_verts, binom)
            if dist[r] == 255:
                dist[r] = d0 + 1
                par[r] = (p0 + w) & 1
                if d0 + 1 > maxd:
                    maxd = d0 + 1
                out_masks[count] = ns
                count += 1
            elif np.int64(par[r]) != ((p0 + w) & 1):
                even_cycles = False
    return count, maxd, even_cycles


def bfs_labeled(start_states, d: int, k: int, T: int, dist=None):
    """Run the compiled labeled BFS; returns (visited, max_depth, peak, dist)."""
    n_verts = 1 << d
    space = space_size(n_verts, T)
    if dist is None:
        dist = np.full(space, 255, dtype=np.uint8)
    vstart, others, tgt = _sliced_combo_cache(d, k)
    starts = np.asarray(start_states, dtype=np.uint64)
    visited, maxd, peak = _bfs_labeled(starts, dist, vstart, others, tgt,
                                       n_verts, T, _BINOM, _FACT)
    return int(visited), int(maxd), int(peak), dist


_sliced: dict = {}


def _sliced_combo_cache(d: int, k: int):
    """Combo arrays indexed by source-vertex slices (vstart[v]..vstart[v+1])."""
    if (d, k) not in _sliced:
        src, others, tgt, _ = _combo_cache(d, k)
        n_verts = 1 << d
        vstart = np.searchsorted(src, np.arange(n_verts + 1)).astype(np.int64)
        _sliced[(d, k)] = (vstart, others, tgt)
    return _sliced[(d, k)]


def bfs_unlabeled(start_mask: int, d: int, k: int, T: int):
    """Run the compiled unlabeled BFS.

    Returns (masks, dist, max_depth, all_cycles_even) where all_cycles_even
    reports whether every closed walk permutes the tokens evenly.
    """
    n_verts = 1 << d
    space = int(_BINOM[n_verts][T])
    dist = np.full(space, 255, dtype=np.uint8)
    par = np.full(space, 255, dtype=np.uint8)
    out = np.zeros(space, dtype=np.uint64)
    src, others, tgt, betw = _combo_cache(d, k)
    count, maxd, even = _bfs_unlabeled(np.uint64(start_mask), dist, par, src,
                                       others, tgt, betw, n_verts, _BINOM, out)
    return out[:count].copy(), dist, int(maxd), bool(even)


_combos: dict = {}


def _combo_cache(d: int, k: int):
    if (d, k) not in _combos:
        _combos[(d, k)] = build_combos(d, k)
    return _combos[(d, k)]


def unlabeled_moves(mask: int, d: int, k: int) -> list:
    """(src, tgt) pairs legal from an occupancy mask (general metric)."""
    src, others, tgt, _ = _combo_cache(d, k)
    out = []
    seen = set()
    for c in range(len(src)):
        s, o, t = int(src[c]), int(others[c]), int(tgt[c])
        if (mask >> s) & 1 and not (mask & o) and (s, t) not in seen:
            seen.add((s, t))
            out.append((s, t))
    return out


def edge_parity_weight(mask: int, s: int, t: int) -> int:
    """Token-permutation parity contribution of one move from `mask`:
    the transposition plus the shift of the canonically ordered empties."""
    lo, hi = min(s, t), max(s, t)
    between = ((1 << hi) - 1) & ~((1 << (lo + 1)) - 1)
    return (1 + (between & ~mask).bit_count()) & 1
