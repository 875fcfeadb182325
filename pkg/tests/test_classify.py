import itertools
import random

from cubeslide import (LabeledConfig, classify, first_mobile_l, s_small)
from cubeslide.config import apply_symmetry_config, permute_labels
from cubeslide.geometry import all_symmetries
from cubeslide import fastbfs
from tests.test_config import random_config


def test_fig1_triple(fig1_isolated, fig1_semi, fig1_mobile):
    assert classify(fig1_isolated, 2).kind == "isolated"
    c = classify(fig1_semi, 2)
    assert c.kind == "semi-isolated"
    assert c.stuck_set == frozenset([1, 2, 3, 4])
    assert c.explored == 4
    assert classify(fig1_mobile, 2).kind == "mobile"
    assert c.to_json() == {"kind": "semi-isolated", "stuck": [1, 2, 3, 4],
                           "component_size": 4, "truncated": False}


def test_budget_exhaustion_is_explicit(fig1_mobile):
    c = classify(fig1_mobile, 2, budget=2)
    assert c.truncated and c.kind == "inconclusive"


def test_all_isolated_below_s():
    # fewer empties than a free face needs: everything is isolated
    for d, k in ((3, 2), (4, 3)):
        for l in range(1, s_small(d, k)):
            T = (1 << d) - l
            for occ in itertools.combinations(range(1 << d), T):
                cfg = LabeledConfig.from_tokens(d, {v: i + 1 for i, v in enumerate(occ)})
                assert classify(cfg, k).kind == "isolated"
                break  # one spot check per l keeps this fast


def test_at_s_semi_exists_no_mobile_3_2():
    # exhaustive at (d,k,l) = (3,2,3)
    kinds = set()
    for occ in itertools.combinations(range(8), 5):
        cfg = LabeledConfig.from_tokens(3, {v: i + 1 for i, v in enumerate(occ)})
        kinds.add(classify(cfg, 2).kind)
    assert "semi-isolated" in kinds and "mobile" not in kinds


def test_classification_symmetry_invariant():
    rng = random.Random(13)
    sym3 = list(all_symmetries(3))
    for _ in range(12):
        cfg = random_config(rng, 3, rng.randint(3, 6))
        base = classify(cfg, 2)
        g = rng.choice(sym3)
        image = apply_symmetry_config(g, cfg)
        assert classify(image, 2).kind == base.kind
        T = cfg.num_tokens
        perm = list(range(1, T + 1))
        rng.shuffle(perm)
        relab = permute_labels(cfg, dict(zip(range(1, T + 1), perm)))
        assert classify(relab, 2).kind == base.kind


def test_corner_cluster_relocation_distance():
    # moving the corner cluster (a vertex plus its neighbors, d = k+1) to an
    # adjacent corner takes exactly k unlabeled moves: the clusters share
    # only the two corners, so k tokens must relocate, one per move, and a
    # sliding order achieving that exists
    for k in (2, 3, 4):
        d = k + 1
        around0 = (1 << 0)
        for a in range(d):
            around0 |= 1 << (1 << a)
        around1 = (1 << 1)
        for a in range(d):
            around1 |= 1 << (1 ^ (1 << a))
        masks, dist, _, _ = fastbfs.bfs_unlabeled(around1, d, k, d + 1)
        r = fastbfs.mask_rank(around0, 1 << d)
        assert int(dist[r]) == k, (k, int(dist[r]))


def test_first_mobile_l_3_2():
    assert first_mobile_l(3, 2) == 4
