"""Closed forms: movability threshold s(d,k), solvability threshold S(d,k),
and the conjectured k=1 diameter.

S follows the recursion S(d,k) = S(d-1,k-1) + S(d-1,k) from the bases
S(i,i) = 2^i - 1 and S(i,1) = 1; the binomial closed form re-derives it as
an independent verifier (its index bounds are easy to get wrong, so the
memoized recursion is the source of truth).
"""
from __future__ import annotations

import math
from functools import lru_cache


def s_small(d: int, k: int) -> int:
    """Fewest empties admitting any move: a free k-face needs 2^k - 1."""
    _check(d, k)
    return (1 << k) - 1


@lru_cache(maxsize=None)
def S_value(d: int, k: int) -> int:
    """Fewest empties with the even-solvability property (= first mobile l)."""
    _check(d, k)
    if k == d:
        return (1 << k) - 1
    if k == 1:
        return 1
    return S_value(d - 1, k - 1) + S_value(d - 1, k)


def S_closed_form(d: int, k: int) -> int:
    """Binomial expansion of the recursion, valid for k >= 2, n = d-k >= 1.

    Expanding the recursion down to the bases S(i,i) = 2^i - 1 and
    S(i,1) = 1 counts lattice paths that hit each base for the FIRST time
    there, so the weight of S(i,i) is C(n+k-i-1, k-i) (the last step must
    keep k, earlier ones choose the k-decrements) and the weights of the
    S(i,1) leaves sum the first-passage counts C(n+k-i-1, k-2).
    """
    n = d - k
    if k < 2 or n < 1:
        raise ValueError("closed form needs k >= 2 and d-k >= 1")
    first = sum(math.comb(n + k - i - 1, k - i) * ((1 << i) - 1)
                for i in range(2, k + 1))
    second = sum(math.comb(n + k - i - 1, k - 2) for i in range(2, n + 2))
    return first + second


def S_corner_formula(k: int) -> int:
    """S(k+1, k) = 2^(k+1) - k - 2, the one-extra-dimension special case."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return (1 << (k + 1)) - k - 2


def diameter_conjecture_value(d: int, l: int) -> int:
    """Conjectured diameter of the k=1 puzzle for l >= 2: d * (2^d - l)."""
    if l < 2:
        raise ValueError("the conjecture concerns l >= 2")
    if not 1 <= d:
        raise ValueError("bad dimension")
    return d * ((1 << d) - l)


def sdk_table(d_max: int) -> list:
    """Rows (d, k, S(d,k)) for all 1 <= k <= d <= d_max."""
    out = []
    for d in range(1, d_max + 1):
        for k in range(1, d + 1):
            out.append((d, k, S_value(d, k)))
    return out


def _check(d: int, k: int) -> None:
    if not 1 <= k <= d:
        raise ValueError(f"need 1 <= k <= d, got d={d}, k={k}")
