import random

import pytest

from cubeslide import (FaceSpec, LabeledConfig, Move, Vertex, apply_move,
                       decompose_into_slides, is_free_k_state, legal_moves,
                       legal_moves_adjacent, phi)
from cubeslide.config import apply_symmetry_config
from cubeslide.geometry import all_symmetries
from tests.test_config import random_config


def test_free_state_fig1_semi(fig1_semi):
    five = Vertex.from_string("001")
    assert is_free_k_state(fig1_semi, five, FaceSpec.from_string("**1"))
    one = Vertex.from_string("000")
    for f in ("**0", "*0*", "0**"):
        assert not is_free_k_state(fig1_semi, one, FaceSpec.from_string(f))


def test_free_state_single_token():
    cfg = LabeledConfig.from_tokens(3, {0: 1})
    from cubeslide import faces_through
    for f in faces_through(Vertex(3, 0), 2):
        assert is_free_k_state(cfg, 0, f)


def test_free_state_errors(fig1_semi):
    with pytest.raises(ValueError):
        is_free_k_state(fig1_semi, Vertex.from_string("111"), FaceSpec.from_string("**1"))


def test_legal_moves_sec1(sec1_initial):
    moves = legal_moves(sec1_initial, 2)
    assert len(moves) == 9
    by_label = {}
    for m in moves:
        by_label.setdefault(m.label, []).append(m)
    assert sorted(by_label) == [1, 3, 4]
    assert all(len(v) == 3 for v in by_label.values())
    # deterministic order: by label then target coords
    order = [(m.label, m.to.coords) for m in moves]
    assert order == sorted(order)


def test_legal_moves_isolated(fig1_isolated):
    assert legal_moves(fig1_isolated, 2) == []


def test_degree_bound_on_non_isolated():
    rng = random.Random(9)
    for _ in range(60):
        d = rng.choice((3, 4))
        k = rng.randint(1, d)
        cfg = random_config(rng, d, rng.randint(1, (1 << d) - 1))
        moves = legal_moves(cfg, k)
        if moves:
            assert len(moves) >= (1 << k) - 1


def test_sec1_solution_replay(sec1_initial, sec1_target):
    seq = [(1, "101"), (4, "111"), (2, "001"), (3, "000"), (4, "010"), (1, "100")]
    cfg = sec1_initial
    for lab, to in seq:
        mv = next(m for m in legal_moves(cfg, 2)
                  if m.label == lab and m.to.to_string() == to)
        cfg = apply_move(cfg, mv)
    assert cfg == sec1_target


def test_apply_move_reverse_roundtrip(sec1_initial):
    for mv in legal_moves(sec1_initial, 2):
        nxt = apply_move(sec1_initial, mv)
        assert forget_occ(nxt) == forget_occ(sec1_initial) ^ (1 << mv.frm.coords) ^ (1 << mv.to.coords)
        back = apply_move(nxt, mv.reversed())
        assert back == sec1_initial


def forget_occ(cfg):
    return cfg.occupancy


def test_apply_move_rejects_illegal(sec1_initial):
    bogus = Move(2, Vertex.from_string("000"), Vertex.from_string("110"),
                 FaceSpec.from_string("**0"))
    with pytest.raises(ValueError):
        apply_move(sec1_initial, bogus)


def test_move_symmetry_property():
    rng = random.Random(17)
    for _ in range(40):
        d = rng.choice((3, 4))
        k = rng.randint(1, d)
        cfg = random_config(rng, d, rng.randint(1, (1 << d) - 1))
        for mv in legal_moves(cfg, k)[:5]:
            nxt = apply_move(cfg, mv)
            rev = [m for m in legal_moves(nxt, k)
                   if m.label == mv.label and m.to == mv.frm]
            assert rev, "reverse move must be legal"


def test_adjacent_subset_and_phi_flip(sec1_initial):
    adj = legal_moves_adjacent(sec1_initial, 2)
    assert len(adj) == 6
    alles = {(m.label, m.frm, m.to) for m in legal_moves(sec1_initial, 2)}
    for m in adj:
        assert (m.label, m.frm, m.to) in alles
        assert (m.frm.coords ^ m.to.coords).bit_count() == 1
        assert phi(apply_move(sec1_initial, m)) != phi(sec1_initial)


def test_adjacent_equals_general_for_k1():
    rng = random.Random(23)
    for _ in range(30):
        d = rng.choice((2, 3, 4))
        cfg = random_config(rng, d, rng.randint(1, (1 << d) - 1))
        assert legal_moves(cfg, 1) == legal_moves_adjacent(cfg, 1)


def test_decomposition_into_unit_slides():
    rng = random.Random(31)
    checked = 0
    for _ in range(200):
        d = rng.choice((3, 4))
        k = rng.randint(1, d)
        cfg = random_config(rng, d, rng.randint(1, (1 << d) - 1))
        for mv in legal_moves(cfg, k)[:4]:
            slides = decompose_into_slides(cfg, mv)
            assert 1 <= len(slides) <= k
            cur = cfg
            for s in slides:
                cur = apply_move(cur, s)   # validates each slide's legality
            assert cur == apply_move(cfg, mv)
            checked += 1
    assert checked > 100


def test_equivariance_under_symmetry():
    rng = random.Random(41)
    symd = {d: list(all_symmetries(d)) for d in (2, 3)}
    for _ in range(30):
        d = rng.choice((2, 3))
        k = rng.randint(1, d)
        cfg = random_config(rng, d, rng.randint(1, (1 << d) - 1))
        g = rng.choice(symd[d])
        gcfg = apply_symmetry_config(g, cfg)
        lhs = {(m.label, g.apply(m.frm.coords), g.apply(m.to.coords))
               for m in legal_moves(cfg, k)}
        rhs = {(m.label, m.frm.coords, m.to.coords) for m in legal_moves(gcfg, k)}
        assert lhs == rhs


def test_move_json_roundtrip():
    mv = Move.from_json({"label": 4, "from": "010", "to": "111", "face": "*1*"})
    assert mv.label == 4 and mv.face.to_string() == "*1*"
    assert mv.to_json() == {"label": 4, "from": "010", "to": "111", "face": "*1*"}


def test_target_dedup_single_move_per_pair(sec1_initial):
    moves = legal_moves(sec1_initial, 2)
    pairs = {(m.label, m.to.coords) for m in moves}
    assert len(pairs) == len(moves)
