import random

import pytest

from cubeslide import LabeledConfig, apply_move, hint, legal_moves, solve
from cubeslide.config import permute_labels
from cubeslide.explore import _python_bfs
from cubeslide import fastbfs


def test_sec1_example_is_six_moves(sec1_initial, sec1_target):
    res = solve(sec1_initial, sec1_target, 2)
    assert res.status == "solved"
    assert res.length == 6 and len(res.moves) == 6
    cfg = sec1_initial
    for mv in res.moves:
        cfg = apply_move(cfg, mv)   # validates legality of each step
    assert cfg == sec1_target


def test_solve_identity(sec1_initial):
    res = solve(sec1_initial, sec1_initial, 2)
    assert res.status == "solved" and res.length == 0 and res.moves == []


def test_parity_trap_unsolvable(sec1_initial):
    twisted = permute_labels(sec1_initial, {1: 2, 2: 1})
    res = solve(sec1_initial, twisted, 2)
    assert res.status == "unsolvable-different-component"


def test_solve_symmetric_lengths(sec1_initial, sec1_target):
    a = solve(sec1_initial, sec1_target, 2)
    b = solve(sec1_target, sec1_initial, 2)
    assert a.length == b.length == 6


def test_random_pairs_against_bfs_oracle(fig1_mobile):
    start_state = fastbfs.pack_config(fig1_mobile)
    states, dist_map, _, _ = _python_bfs(start_state, 3, 2, 10 ** 6)
    assert len(states) == 672
    rng = random.Random(99)
    seen_max = 0
    for _ in range(25):
        a = fastbfs.unpack_config(3, rng.choice(states))
        b = fastbfs.unpack_config(3, rng.choice(states))
        res = solve(a, b, 2)
        _, amap, _, _ = _python_bfs(fastbfs.pack_config(a), 3, 2, 10 ** 6)
        oracle = amap[fastbfs.pack_config(b)]
        assert res.status == "solved" and res.length == oracle
        seen_max = max(seen_max, oracle)
    assert seen_max >= 6


def test_solve_length_within_diameter(fig1_mobile):
    # all sampled pairs in the (3,2,4) big component solve within 10 moves
    start_state = fastbfs.pack_config(fig1_mobile)
    states, _, _, _ = _python_bfs(start_state, 3, 2, 10 ** 6)
    rng = random.Random(5)
    for _ in range(10):
        a = fastbfs.unpack_config(3, rng.choice(states))
        b = fastbfs.unpack_config(3, rng.choice(states))
        assert solve(a, b, 2).length <= 10


def test_bidirectional_route_matches_ranked(sec1_initial, sec1_target):
    ranked = solve(sec1_initial, sec1_target, 2)
    bidi = solve(sec1_initial, sec1_target, 2, mem_budget=0)
    assert bidi.status == "solved" and bidi.length == ranked.length
    cfg = sec1_initial
    for mv in bidi.moves:
        cfg = apply_move(cfg, mv)
    assert cfg == sec1_target


def test_bidirectional_unsolvable_and_budget(sec1_initial):
    twisted = permute_labels(sec1_initial, {3: 4, 4: 3})
    res = solve(sec1_initial, twisted, 2, mem_budget=0)
    assert res.status == "unsolvable-different-component"
    far = solve(sec1_initial, twisted, 2, budget=5, mem_budget=0)
    assert far.status in ("unknown-budget", "unsolvable-different-component")


def test_hint_first_move_and_decrease(sec1_initial, sec1_target):
    mv, remaining = hint(sec1_initial, sec1_target, 2)
    assert remaining == 6
    assert mv.to_json() == {"label": 1, "from": "001", "to": "101", "face": "**1"}
    nxt = apply_move(sec1_initial, mv)
    _, rem2 = hint(nxt, sec1_target, 2)
    assert rem2 == 5


def test_hint_tie_break_is_move_order(fig1_mobile):
    # the hinted move must be the first legal move (label, target order)
    # among all distance-decreasing ones
    states, _, _, _ = _python_bfs(fastbfs.pack_config(fig1_mobile), 3, 2, 10 ** 6)
    rng = random.Random(123)
    for _ in range(10):
        a = fastbfs.unpack_config(3, rng.choice(states))
        b = fastbfs.unpack_config(3, rng.choice(states))
        if a == b:
            continue
        mv, rem = hint(a, b, 2)
        for cand in legal_moves(a, 2):
            nxt = apply_move(a, cand)
            if solve(nxt, b, 2).length == rem - 1:
                assert cand == mv
                break


def test_hint_distance_one():
    a = LabeledConfig.from_tokens(3, {0: 1})
    b = LabeledConfig.from_tokens(3, {3: 1})
    mv, rem = hint(a, b, 1 + 1)
    assert rem == 1 and mv.to.coords == 3


def test_hint_unsolvable_raises(sec1_initial):
    twisted = permute_labels(sec1_initial, {1: 2, 2: 1})
    with pytest.raises(ValueError):
        hint(sec1_initial, twisted, 2)


def test_solve_rejects_mismatched(sec1_initial):
    other = LabeledConfig.from_tokens(3, {0: 1, 1: 2})
    with pytest.raises(ValueError):
        solve(sec1_initial, other, 2)


def test_solve_result_json(sec1_initial, sec1_target):
    js = solve(sec1_initial, sec1_target, 2).to_json()
    assert js["status"] == "solved" and js["length"] == 6
    assert len(js["moves"]) == 6
    assert set(js["moves"][0]) == {"label", "from", "to", "face"}
