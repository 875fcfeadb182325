"""Legal-move generation under the k-rule, and the unit-slide variant.

A token may move on a k-face when every other vertex of that face is empty;
it may then occupy any vertex of the face.  The unit-slide variant restricts
targets to Hamming distance 1 (the "adjacent" puzzle): it has the same
connectivity because any face move decomposes into unit slides inside the
same free face.
"""
from __future__ import annotations

from functools import lru_cache
from typing import NamedTuple

from .geometry import FaceSpec, Vertex, faces_through
from .config import LabeledConfig


class Move(NamedTuple):
    label: int
    frm: Vertex
    to: Vertex
    face: FaceSpec

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "from": self.frm.to_string(),
            "to": self.to.to_string(),
            "face": self.face.to_string(),
        }

    @classmethod
    def from_json(cls, obj) -> "Move":
        return cls(
            int(obj["label"]),
            Vertex.from_string(obj["from"]),
            Vertex.from_string(obj["to"]),
            FaceSpec.from_string(obj["face"]),
        )

    def reversed(self) -> "Move":
        return Move(self.label, self.to, self.frm, self.face)


@lru_cache(maxsize=None)
def _face_table(d: int, k: int):
    """Per vertex: ((others_mask, face, targets), ...) in lex face order."""
    table = []
    for v in range(1 << d):
        entries = []
        for face in faces_through(Vertex(d, v), k):
            others = 0
            targets = []
            sub = 0
            while True:
                w = face.base | sub
                if w != v:
                    others |= 1 << w
                    targets.append(w)
                if sub == face.stars:
                    break
                sub = (sub - face.stars) & face.stars
            entries.append((others, face, tuple(sorted(targets))))
        table.append(tuple(entries))
    return tuple(table)


def is_free_k_state(config: LabeledConfig, v: Vertex | int, face: FaceSpec) -> bool:
    """True iff v is occupied and every other vertex of `face` is empty."""
    coords = v.coords if isinstance(v, Vertex) else v
    if not config.slots[coords]:
        raise ValueError(f"vertex {coords} is unoccupied")
    if not face.contains(coords):
        raise ValueError("face does not contain the vertex")
    occ = config.occupancy
    others = 0
    sub = 0
    while True:
        w = face.base | sub
        if w != coords:
            others |= 1 << w
        if sub == face.stars:
            break
        sub = (sub - face.stars) & face.stars
    return occ & others == 0


def legal_moves(config: LabeledConfig, k: int, adjacent_only: bool = False) -> list[Move]:
    """All legal k-moves, ordered by (label, target vertex).

    A token free on several faces reaches some targets more than once; one
    move per (token, target) is kept, witnessed by the lexicographically
    first free face.
    """
    d = config.d
    table = _face_table(d, k)
    occ = config.occupancy
    by_label = sorted((lab, v) for v, lab in enumerate(config.slots) if lab)
    out = []
    for lab, v in by_label:
        witnessed: dict = {}
        for others, face, targets in table[v]:
            if occ & others:
                continue
            for w in targets:
                if w not in witnessed:
                    witnessed[w] = face
        for w in sorted(witnessed):
            if adjacent_only and (v ^ w).bit_count() != 1:
                continue
            out.append(Move(lab, Vertex(d, v), Vertex(d, w), witnessed[w]))
    return out


def legal_moves_adjacent(config: LabeledConfig, k: int) -> list[Move]:
    """The unit-slide subset: only Hamming-distance-1 targets."""
    return legal_moves(config, k, adjacent_only=True)


def apply_move(config: LabeledConfig, move: Move) -> LabeledConfig:
    """Apply a move, validating its legality (guards stale callers)."""
    v, w = move.frm.coords, move.to.coords
    if config.slots[v] != move.label:
        raise ValueError(f"token {move.label} is not at {move.frm.to_string()}")
    if config.slots[w]:
        raise ValueError(f"target {move.to.to_string()} is occupied")
    if not (move.face.contains(v) and move.face.contains(w)):
        raise ValueError("witnessing face does not contain both endpoints")
    if not is_free_k_state(config, v, move.face):
        raise ValueError("token is not in a free state on the witnessing face")
    slots = list(config.slots)
    slots[w] = slots[v]
    slots[v] = 0
    return LabeledConfig(config.d, tuple(slots))


def decompose_into_slides(config: LabeledConfig, move: Move) -> list[Move]:
    """Split a face move into <= k unit slides inside the same free face.

    The face stays free for the moving token throughout, so each slide is
    legal in sequence.
    """
    v, w = move.frm.coords, move.to.coords
    slides = []
    cur = v
    diff = v ^ w
    a = 0
    while diff:
        if diff & 1:
            nxt = cur ^ (1 << a)
            slides.append(Move(move.label, Vertex(config.d, cur),
                               Vertex(config.d, nxt), move.face))
            cur = nxt
        diff >>= 1
        a += 1
    return slides
