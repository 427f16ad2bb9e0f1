"""Shared brute-force oracles for cross-validating the closed-form code paths.

Everything here works on materialized letters only, with no residue
arithmetic, so the two routes stay independent.
"""

from __future__ import annotations

from collections import Counter

from antipow import FiniteWord, InstructionSequence, toeplitz_paperfolding_prefix

_PREFIX_CACHE: dict[tuple[InstructionSequence, int], FiniteWord] = {}


def materialized(b: InstructionSequence, n: int) -> FiniteWord:
    key = (b, n)
    if key not in _PREFIX_CACHE:
        _PREFIX_CACHE[key] = toeplitz_paperfolding_prefix(b, n)
    return _PREFIX_CACHE[key]


def brute_ones(w: FiniteWord, a: int, n: int) -> int:
    """Ones among positions a+1..n of a materialized binary word."""
    assert n <= len(w)
    return sum(w.data[a:n])


def brute_delta(w: FiniteWord, a: int, n: int) -> int:
    """Excess ones of (a, n) over the per-order baselines, counted directly."""
    length = n - a
    baseline = sum(length >> (k + 2) for k in range(max(length.bit_length(), 2)))
    return brute_ones(w, a, n) - baseline


def brute_delta_vector(w: FiniteWord, l: int, d: int, m: int) -> tuple[int, ...]:
    return tuple(brute_delta(w, l + t * d, l + (t + 1) * d) for t in range(m))


def brute_find_first(w: FiniteWord, m: int, kind: str, d_max: int | None = None):
    """Quadratic reference scan: smallest start, ties broken by smallest cell
    width, comparing cells pairwise."""
    n = len(w)
    limit = n // m if d_max is None else min(d_max, n // m)
    for start in range(1, n - m + 2):
        for d in range(1, limit + 1):
            if start - 1 + m * d > n:
                break
            cells = [w.data[start - 1 + i * d : start - 1 + (i + 1) * d] for i in range(m)]
            if kind in ("power", "antipower"):
                keys = cells
            else:
                keys = [tuple(sorted(Counter(c).items())) for c in cells]
            distinct = len(set(keys))
            ok = distinct == m if kind.endswith("antipower") else distinct == 1
            if ok:
                return start, d
    return None
