"""Sliding puzzles on the vertices of hypercubes.

Tokens on Q^d slide under the k-rule: a token may jump to any vertex of a
k-dimensional face whose other vertices are all empty.  The package
generates legal moves, classifies configurations (isolated, semi-isolated,
mobile), censuses whole puzzle graphs with symmetry and unlabeled-quotient
reductions, analyzes parity, solves individual puzzles optimally, and
serves an interactive play API.
"""
from .geometry import (MAX_DIM, CubeSymmetry, FaceSpec, Vertex, all_symmetries,
                       face_vertices, faces_through, parallel_face)
from .config import (LabeledConfig, Rules, UnlabeledConfig, canonical_form,
                     decode, encode, forget_labels, lift, phi, q, restrict)
from .moves import (Move, apply_move, decompose_into_slides, is_free_k_state,
                    legal_moves, legal_moves_adjacent)
from .classify import Classification, classify, first_mobile_l
from .explore import BfsStats, CensusReport, census, explore_component, regime
from .parity import (CyclePermutation, ParityReport, cycle_base_parity,
                     monodromy_order, strong_parity_verdict, unlabeled_component)
from .solve import SolveResult, hint, solve
from .formulas import (S_closed_form, S_corner_formula, S_value,
                       diameter_conjecture_value, s_small, sdk_table)

__version__ = "0.1.0"

__all__ = [
    "MAX_DIM", "Vertex", "FaceSpec", "CubeSymmetry", "faces_through",
    "face_vertices", "parallel_face", "all_symmetries",
    "Rules", "LabeledConfig", "UnlabeledConfig", "forget_labels", "phi", "q",
    "lift", "restrict", "canonical_form", "encode", "decode",
    "Move", "legal_moves", "legal_moves_adjacent", "apply_move",
    "is_free_k_state", "decompose_into_slides",
    "Classification", "classify", "first_mobile_l",
    "census", "CensusReport", "BfsStats", "explore_component", "regime",
    "ParityReport", "CyclePermutation", "unlabeled_component",
    "cycle_base_parity", "monodromy_order", "strong_parity_verdict",
    "SolveResult", "solve", "hint",
    "s_small", "S_value", "S_closed_form", "S_corner_formula",
    "diameter_conjecture_value", "sdk_table",
]
