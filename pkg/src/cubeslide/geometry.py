"""Geometry of the d-cube Q^d: vertices, faces in star notation, symmetries.

Vertices are d-bit integers: bit j (least significant j=0) holds coordinate
x_{j+1}, so the textual form "x1x2...xd" reads left to right.  A face is a
star vector over {0,1,*}: the starred axes are free, the rest pinned, and a
face with r stars has exactly 2^r vertices.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, NamedTuple

MAX_DIM = 6


def _check_dim(d: int) -> None:
    if not 1 <= d <= MAX_DIM:
        raise ValueError(f"dimension must be in 1..{MAX_DIM}, got {d}")


class Vertex(NamedTuple):
    d: int
    coords: int

    def validate(self) -> "Vertex":
        _check_dim(self.d)
        if not 0 <= self.coords < (1 << self.d):
            raise ValueError(f"vertex coords {self.coords} out of range for d={self.d}")
        return self

    @classmethod
    def from_string(cls, s: str) -> "Vertex":
        """Parse "x1x2...xd" (e.g. "001" is the vertex with x3=1)."""
        if not s or any(c not in "01" for c in s):
            raise ValueError(f"bad vertex string {s!r}")
        coords = 0
        for j, c in enumerate(s):
            coords |= (c == "1") << j
        return cls(len(s), coords).validate()

    def to_string(self) -> str:
        return "".join("1" if (self.coords >> j) & 1 else "0" for j in range(self.d))

    def coordinate(self, axis: int) -> int:
        return (self.coords >> axis) & 1


@dataclass(frozen=True)
class FaceSpec:
    """A face of Q^d: `stars` is the bitmask of free axes, `base` the pinned bits.

    Bits of `base` on starred axes must be zero, so each face has one
    canonical representation.
    """
    d: int
    stars: int
    base: int

    def __post_init__(self) -> None:
        _check_dim(self.d)
        full = (1 << self.d) - 1
        if self.stars & ~full or self.base & ~full:
            raise ValueError("stars/base out of range for dimension")
        if self.base & self.stars:
            raise ValueError("base must be zero on starred axes")

    @property
    def dim(self) -> int:
        return self.stars.bit_count()

    def contains(self, v: Vertex | int) -> bool:
        coords = v.coords if isinstance(v, Vertex) else v
        return (coords & ~self.stars) == self.base

    @classmethod
    def from_string(cls, s: str) -> "FaceSpec":
        """Parse "**0"-style star vectors (position i is axis i)."""
        if not s or any(c not in "01*" for c in s):
            raise ValueError(f"bad face string {s!r}")
        stars = base = 0
        for j, c in enumerate(s):
            if c == "*":
                stars |= 1 << j
            elif c == "1":
                base |= 1 << j
        return cls(len(s), stars, base)

    def to_string(self) -> str:
        out = []
        for j in range(self.d):
            if (self.stars >> j) & 1:
                out.append("*")
            else:
                out.append("1" if (self.base >> j) & 1 else "0")
        return "".join(out)


def faces_through(v: Vertex, k: int) -> list[FaceSpec]:
    """All k-faces containing v, ordered lexicographically by star-axis set."""
    v.validate()
    if not 0 <= k <= v.d:
        raise ValueError(f"face dimension k={k} out of range for d={v.d}")
    out = []
    for axes in itertools.combinations(range(v.d), k):
        stars = 0
        for a in axes:
            stars |= 1 << a
        out.append(FaceSpec(v.d, stars, v.coords & ~stars))
    return out


def face_vertices(f: FaceSpec) -> list[Vertex]:
    """The 2^r vertices of the face, ascending by coords."""
    verts = []
    sub = 0
    while True:
        verts.append(f.base | sub)
        if sub == f.stars:
            break
        sub = (sub - f.stars) & f.stars  # next subset of the star mask
    return [Vertex(f.d, c) for c in sorted(verts)]


def parallel_face(f: FaceSpec) -> FaceSpec:
    """The opposite (d-1)-face: same stars, pinned bit complemented."""
    if f.dim != f.d - 1:
        raise ValueError("parallel_face needs a face with exactly one fixed axis")
    fixed = ((1 << f.d) - 1) & ~f.stars
    return FaceSpec(f.d, f.stars, f.base ^ fixed)


class CubeSymmetry(NamedTuple):
    """Hyperoctahedral element: axis permutation followed by axis reflections.

    Coordinate j of g(v) is coordinate perm[j] of v, XORed with bit j of flips.
    """
    perm: tuple
    flips: int

    @property
    def d(self) -> int:
        return len(self.perm)

    def apply(self, v: Vertex | int) -> Vertex | int:
        coords = v.coords if isinstance(v, Vertex) else v
        out = self.flips
        for j, p in enumerate(self.perm):
            out ^= ((coords >> p) & 1) << j
        return Vertex(self.d, out) if isinstance(v, Vertex) else out

    def vertex_map(self) -> tuple:
        """Image of every vertex 0..2^d-1 (precompute for hot loops)."""
        return tuple(self.apply(v) for v in range(1 << self.d))

    def compose(self, other: "CubeSymmetry") -> "CubeSymmetry":
        """self after other: (self*other)(v) = self(other(v))."""
        perm = tuple(other.perm[p] for p in self.perm)
        flips = self.flips
        for j, p in enumerate(self.perm):
            flips ^= ((other.flips >> p) & 1) << j
        return CubeSymmetry(perm, flips)

    def inverse(self) -> "CubeSymmetry":
        inv = [0] * self.d
        for j, p in enumerate(self.perm):
            inv[p] = j
        flips = 0
        for j, p in enumerate(self.perm):
            flips ^= ((self.flips >> j) & 1) << p
        return CubeSymmetry(tuple(inv), flips)

    @classmethod
    def identity(cls, d: int) -> "CubeSymmetry":
        _check_dim(d)
        return cls(tuple(range(d)), 0)


def all_symmetries(d: int) -> Iterator[CubeSymmetry]:
    """All 2^d * d! symmetries, permutations in lex order, flips ascending."""
    _check_dim(d)
    for perm in itertools.permutations(range(d)):
        for flips in range(1 << d):
            yield CubeSymmetry(perm, flips)


def symmetry_vertex_maps(d: int) -> list[tuple]:
    """Vertex-image tables for the whole group, in all_symmetries order."""
    return [g.vertex_map() for g in all_symmetries(d)]
