"""Token configurations on the cube: labeled, unlabeled, packed, canonical.

A labeled configuration places tokens 1..2^d-l on distinct vertices; the
unlabeled quotient keeps only the occupancy mask.  Packed keys give every
configuration a fixed-width integer for hashing and canonicalization.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .geometry import (
    MAX_DIM,
    CubeSymmetry,
    FaceSpec,
    Vertex,
    _check_dim,
    all_symmetries,
    face_vertices,
)


@dataclass(frozen=True)
class Rules:
    """Board dimension d, move dimension k, number of unoccupied vertices l."""
    d: int
    k: int
    l: int

    def __post_init__(self) -> None:
        _check_dim(self.d)
        if not 1 <= self.k <= self.d:
            raise ValueError(f"need 1 <= k <= d, got k={self.k}, d={self.d}")
        if not 1 <= self.l <= (1 << self.d):
            raise ValueError(f"need 1 <= l <= 2^d, got l={self.l}")

    @property
    def tokens(self) -> int:
        return (1 << self.d) - self.l


@dataclass(frozen=True)
class LabeledConfig:
    """Immutable placement of labels 1..T on vertices; slots[v] is the label at
    vertex v, 0 meaning empty."""
    d: int
    slots: tuple

    def __post_init__(self) -> None:
        _check_dim(self.d)
        if len(self.slots) != 1 << self.d:
            raise ValueError("slots length must be 2^d")
        labels = sorted(s for s in self.slots if s)
        if labels != list(range(1, len(labels) + 1)):
            raise ValueError("labels must be a bijection onto 1..T")

    @classmethod
    def from_tokens(cls, d: int, tokens: Mapping[Vertex | int, int]) -> "LabeledConfig":
        slots = [0] * (1 << d)
        for v, lab in tokens.items():
            coords = v.coords if isinstance(v, Vertex) else v
            if slots[coords]:
                raise ValueError(f"vertex {coords} occupied twice")
            slots[coords] = lab
        return cls(d, tuple(slots))

    @property
    def occupancy(self) -> int:
        mask = 0
        for v, lab in enumerate(self.slots):
            if lab:
                mask |= 1 << v
        return mask

    @property
    def num_tokens(self) -> int:
        return sum(1 for s in self.slots if s)

    @property
    def l(self) -> int:
        return (1 << self.d) - self.num_tokens

    @property
    def labels(self) -> frozenset:
        return frozenset(s for s in self.slots if s)

    def position_of(self, label: int) -> Vertex:
        return Vertex(self.d, self.slots.index(label))

    def tokens(self) -> dict:
        return {Vertex(self.d, v): lab for v, lab in enumerate(self.slots) if lab}

    def relabeled(self) -> "LabeledConfig":
        """Renumber labels into 1..T preserving their order (no-op here;
        face restrictions use the same call)."""
        return self

    def to_json(self) -> dict:
        toks = {Vertex(self.d, v).to_string(): lab
                for v, lab in enumerate(self.slots) if lab}
        return {"d": self.d, "tokens": toks}

    @classmethod
    def from_json(cls, obj: Mapping) -> "LabeledConfig":
        d = int(obj["d"])
        toks = {Vertex.from_string(s).coords: int(lab)
                for s, lab in obj["tokens"].items()}
        for s in obj["tokens"]:
            if len(s) != d:
                raise ValueError(f"vertex string {s!r} does not match d={d}")
        return cls.from_tokens(d, toks)


@dataclass(frozen=True)
class UnlabeledConfig:
    d: int
    occupancy: int

    def __post_init__(self) -> None:
        _check_dim(self.d)
        if not 0 <= self.occupancy < (1 << (1 << self.d)):
            raise ValueError("occupancy mask out of range")

    @property
    def num_tokens(self) -> int:
        return self.occupancy.bit_count()

    @property
    def l(self) -> int:
        return (1 << self.d) - self.num_tokens

    def to_json(self) -> dict:
        verts = [Vertex(self.d, v).to_string()
                 for v in range(1 << self.d) if (self.occupancy >> v) & 1]
        return {"d": self.d, "vertices": verts}

    @classmethod
    def from_json(cls, obj: Mapping) -> "UnlabeledConfig":
        d = int(obj["d"])
        mask = 0
        for s in obj["vertices"]:
            v = Vertex.from_string(s)
            if v.d != d:
                raise ValueError(f"vertex string {s!r} does not match d={d}")
            mask |= 1 << v.coords
        return cls(d, mask)


def forget_labels(config: LabeledConfig) -> UnlabeledConfig:
    """The quotient map u: drop labels, keep occupancy."""
    return UnlabeledConfig(config.d, config.occupancy)


def phi(config: LabeledConfig | UnlabeledConfig) -> int:
    """Coordinate-sum parity of the occupied vertices: the 2-coloring that
    every unit slide flips."""
    if isinstance(config, LabeledConfig):
        occ = config.occupancy
    else:
        occ = config.occupancy
    total = 0
    v = occ
    while v:
        low = v & -v
        total ^= (low.bit_length() - 1).bit_count() & 1
        v ^= low
    return total


def q(d: int, l: int, n: int) -> int:
    """Unoccupied count after n iterated lifts: l + sum_{i<n} 2^(d+i) - n."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return l + sum(1 << (d + i) for i in range(n)) - n


def lift(config: LabeledConfig, axis: int, side: int, extra: Vertex | int) -> LabeledConfig:
    """Embed the board as the side-`side` face of Q^(d+1) along `axis` and add
    one new token (label T+1) at `extra` on the opposite face."""
    d = config.d
    if d + 1 > MAX_DIM:
        raise ValueError(f"lift would exceed maximum dimension {MAX_DIM}")
    if not 0 <= axis <= d:
        raise ValueError(f"axis must be in 0..{d}")
    if side not in (0, 1):
        raise ValueError("side must be 0 or 1")
    ex = extra.coords if isinstance(extra, Vertex) else extra
    if not 0 <= ex < (1 << (d + 1)):
        raise ValueError("extra vertex out of range for lifted cube")
    if ((ex >> axis) & 1) == side:
        raise ValueError("extra vertex must lie on the face opposite the embedding")

    def embed(v: int) -> int:
        low = v & ((1 << axis) - 1)
        high = v >> axis
        return low | (side << axis) | (high << (axis + 1))

    slots = [0] * (1 << (d + 1))
    for v, lab in enumerate(config.slots):
        if lab:
            slots[embed(v)] = lab
    if slots[ex]:
        raise ValueError("extra vertex collides with an embedded token")
    slots[ex] = config.num_tokens + 1
    return LabeledConfig(d + 1, tuple(slots))


def restrict(config: LabeledConfig | UnlabeledConfig, face: FaceSpec):
    """Restriction to a face: an r-dimensional configuration on the face's own
    coordinates (starred axes of Q^d, ascending)."""
    if face.dim < 1:
        raise ValueError("restriction needs a face of dimension >= 1")
    axes = [a for a in range(face.d) if (face.stars >> a) & 1]

    def project(v: int) -> int:
        out = 0
        for i, a in enumerate(axes):
            out |= ((v >> a) & 1) << i
        return out

    verts = [v.coords for v in face_vertices(face)]
    if isinstance(config, UnlabeledConfig):
        mask = 0
        for v in verts:
            if (config.occupancy >> v) & 1:
                mask |= 1 << project(v)
        return UnlabeledConfig(face.dim, mask)
    slots = [0] * (1 << face.dim)
    for v in verts:
        if config.slots[v]:
            slots[project(v)] = config.slots[v]
    # labels keep their identity on the face, which may not form 1..T:
    # renumbering would lose track of which tokens are which, so sub-boards
    # are returned as raw slot tuples wrapped by _FaceConfig.
    labels = sorted(s for s in slots if s)
    if labels == list(range(1, len(labels) + 1)):
        return LabeledConfig(face.dim, tuple(slots))
    return _FaceConfig(face.dim, tuple(slots))


class _FaceConfig:
    """Restriction result whose labels are inherited (not renumbered)."""

    def __init__(self, d: int, slots: tuple):
        self.d = d
        self.slots = slots

    @property
    def occupancy(self) -> int:
        mask = 0
        for v, lab in enumerate(self.slots):
            if lab:
                mask |= 1 << v
        return mask

    def relabeled(self) -> LabeledConfig:
        """Renumber labels by value order to get a standalone board."""
        order = {lab: i + 1 for i, lab in enumerate(sorted(s for s in self.slots if s))}
        return LabeledConfig(self.d, tuple(order.get(s, 0) for s in self.slots))

    def __eq__(self, other) -> bool:
        return (self.d, self.slots) == (other.d, other.slots)


# --- packed keys and canonical forms ---

def slot_bits(num_tokens: int) -> int:
    """Bits per vertex slot: enough for labels 0..T with 0 the empty sentinel."""
    return max(1, (num_tokens + 1 - 1).bit_length())


def encode(config: LabeledConfig) -> int:
    """Pack slots into one integer, vertex 0 in the lowest bits."""
    width = slot_bits(config.num_tokens)
    key = 0
    for v, lab in enumerate(config.slots):
        key |= lab << (v * width)
    return key


def decode(d: int, num_tokens: int, key: int) -> LabeledConfig:
    width = slot_bits(num_tokens)
    mask = (1 << width) - 1
    slots = tuple((key >> (v * width)) & mask for v in range(1 << d))
    return LabeledConfig(d, slots)


def canonical_form(config: LabeledConfig, mode: str = "cube-symmetry") -> int:
    """Minimum packed key over the orbit of the chosen group action.

    mode "cube-symmetry": hyperoctahedral action on vertices only.
    mode "cube-symmetry+relabel": additionally relabel tokens by first-visit
    order, which picks one representative per relabeling class in O(2^d) per
    symmetry instead of enumerating all T! permutations.
    """
    if mode not in ("cube-symmetry", "cube-symmetry+relabel"):
        raise ValueError(f"unknown canonicalization mode {mode!r}")
    d = config.d
    n = 1 << d
    width = slot_bits(config.num_tokens)
    best = None
    for g in all_symmetries(d):
        vmap = g.vertex_map()
        slots = [0] * n
        for v, lab in enumerate(config.slots):
            if lab:
                slots[vmap[v]] = lab
        if mode == "cube-symmetry+relabel":
            relabel: dict = {}
            for v in range(n):
                if slots[v] and slots[v] not in relabel:
                    relabel[slots[v]] = len(relabel) + 1
            slots = [relabel[s] if s else 0 for s in slots]
        key = 0
        for v in range(n):
            key |= slots[v] << (v * width)
        if best is None or key < best:
            best = key
    return best


def canonical_mask(d: int, occupancy: int, vertex_maps: Iterable[tuple] | None = None) -> int:
    """Minimum occupancy mask over the hyperoctahedral orbit."""
    if vertex_maps is None:
        vertex_maps = (g.vertex_map() for g in all_symmetries(d))
    best = occupancy
    for vmap in vertex_maps:
        img = 0
        m = occupancy
        while m:
            low = m & -m
            img |= 1 << vmap[low.bit_length() - 1]
            m ^= low
        if img < best:
            best = img
    return best


def apply_symmetry_config(g: CubeSymmetry, config: LabeledConfig) -> LabeledConfig:
    vmap = g.vertex_map()
    slots = [0] * len(config.slots)
    for v, lab in enumerate(config.slots):
        if lab:
            slots[vmap[v]] = lab
    return LabeledConfig(config.d, tuple(slots))


def permute_labels(config: LabeledConfig, perm: Mapping[int, int]) -> LabeledConfig:
    """Apply a label permutation {old: new}."""
    slots = tuple(perm.get(s, s) if s else 0 for s in config.slots)
    return LabeledConfig(config.d, slots)
