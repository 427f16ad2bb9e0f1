"""Exhaustive detection of powers, abelian powers, antipowers and abelian
antipowers in finite words.

The block scans are vectorized per cell width d: window contents are reduced
to exact equality classes (rank doubling, no probabilistic hashing) and
window Parikh vectors to integer keys, after which per-split distinctness is
a column-wise sort.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .words import FiniteWord

KINDS = ("power", "abelian_power", "antipower", "abelian_antipower")


@dataclass(frozen=True)
class BlockSplit:
    """Geometry of m consecutive cells of width cell_width starting at the
    1-based position start; occupies positions start..start+m*cell_width-1."""

    start: int
    cell_width: int
    order: int

    def __post_init__(self) -> None:
        if self.start < 1:
            raise ValueError("start is 1-based, must be >= 1")
        if self.cell_width < 1 or self.order < 1:
            raise ValueError("cell width and order must be >= 1")

    @property
    def end(self) -> int:
        return self.start + self.cell_width * self.order - 1


@dataclass(frozen=True)
class ClassifyResult:
    is_power: bool
    is_abelian_power: bool
    is_antipower: bool
    is_abelian_antipower: bool


@dataclass(frozen=True)
class ScanHit:
    start: int
    cell_width: int
    order: int
    kind: str

    def to_json(self) -> str:
        return json.dumps(
            {"start": self.start, "d": self.cell_width, "m": self.order, "kind": self.kind}
        )


def classify_block(w: FiniteWord, split: BlockSplit) -> ClassifyResult:
    """Flags for one split: cells all equal / pairwise distinct, as words and
    as Parikh vectors."""
    if split.end > len(w):
        raise ValueError(f"split ends at {split.end}, beyond word length {len(w)}")
    base = split.start - 1
    d, m = split.cell_width, split.order
    cells = [w.data[base + i * d : base + (i + 1) * d] for i in range(m)]
    cum = w.cum_counts
    vectors = [tuple(int(c) for c in cum[base + (i + 1) * d] - cum[base + i * d]) for i in range(m)]
    words_distinct = len(set(cells))
    vecs_distinct = len(set(vectors))
    return ClassifyResult(
        is_power=words_distinct == 1,
        is_abelian_power=vecs_distinct == 1,
        is_antipower=words_distinct == m,
        is_abelian_antipower=vecs_distinct == m,
    )


@lru_cache(maxsize=8)
def _rank_levels(w: FiniteWord) -> tuple[np.ndarray, ...]:
    """levels[j][p] is the equality class of the length-2^j window at p;
    built by rank doubling, so classes are exact."""
    arr = np.frombuffer(w.data, dtype=np.uint8).astype(np.int64)
    _, ranks = np.unique(arr, return_inverse=True)
    levels = [ranks]
    size = 1
    while 2 * size <= len(arr):
        prev = levels[-1]
        valid = len(arr) - 2 * size + 1
        keys = prev[:valid] * (int(prev.max()) + 1) + prev[size : size + valid]
        _, ranks = np.unique(keys, return_inverse=True)
        levels.append(ranks)
        size *= 2
    return tuple(levels)


def _window_classes(w: FiniteWord, d: int) -> np.ndarray:
    """Exact equality-class id of every length-d window of w."""
    levels = _rank_levels(w)
    j = d.bit_length() - 1
    level = levels[j]
    valid = len(w) - d + 1
    if (1 << j) == d:
        return level[:valid]
    # cover [p, p+d) by two overlapping length-2^j pieces
    keys = level[:valid] * (int(level.max()) + 1) + level[d - (1 << j) : d - (1 << j) + valid]
    _, cid = np.unique(keys, return_inverse=True)
    return cid


def _parikh_keys(w: FiniteWord, d: int) -> np.ndarray | None:
    """One integer per length-d window, equal iff the windows are abelian
    equivalent; None when the key would overflow (caller falls back)."""
    cum = w.cum_counts
    if len(w.alphabet) == 2:
        ones = cum[:, 1]
        return ones[d:] - ones[:-d]
    if (d + 1) ** len(w.alphabet) >= 2**62:
        return None
    weights = (d + 1) ** np.arange(len(w.alphabet), dtype=np.int64)
    return (cum[d:] - cum[:-d]) @ weights


def _split_masks(values: np.ndarray, d: int, m: int, distinct: bool) -> np.ndarray:
    """Boolean mask over 0-based split starts: cells pairwise distinct
    (distinct=True) or all equal (distinct=False), judging cells by the
    per-window values array."""
    starts = len(values) - (m - 1) * d
    cells = np.stack([values[i * d : i * d + starts] for i in range(m)])
    if not distinct:
        return (cells == cells[0]).all(axis=0)
    cells = np.sort(cells, axis=0)
    return (np.diff(cells, axis=0) != 0).all(axis=0)


def _hit_mask(w: FiniteWord, d: int, m: int, kind: str) -> np.ndarray:
    if kind in ("power", "antipower"):
        values = _window_classes(w, d)
    else:
        values = _parikh_keys(w, d)
        if values is None:
            return _hit_mask_slow(w, d, m, kind)
    return _split_masks(values, d, m, distinct=kind.endswith("antipower"))


def _hit_mask_slow(w: FiniteWord, d: int, m: int, kind: str) -> np.ndarray:
    cum = w.cum_counts
    starts = len(w) - m * d + 1
    distinct = kind.endswith("antipower")
    out = np.zeros(starts, dtype=bool)
    for p in range(starts):
        vecs = {tuple(int(c) for c in cum[p + (i + 1) * d] - cum[p + i * d]) for i in range(m)}
        out[p] = len(vecs) == m if distinct else len(vecs) == 1
    return out


def _check_scan_args(w: FiniteWord, m: int, kind: str) -> None:
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}; expected one of {KINDS}")
    if m < 2:
        raise ValueError("order must be >= 2")
    if len(w) < m:
        raise ValueError("word too short for the requested order")


def _first_hits_per_d(w, m, kind, ds) -> list[tuple[int, int]]:
    """(0-based start, d) of the earliest hit for each d that has one."""
    hits = []
    for d in ds:
        mask = _hit_mask(w, d, m, kind)
        if mask.any():
            hits.append((int(mask.argmax()), d))
    return hits


def find_first(
    w: FiniteWord, m: int, kind: str, d_max: int | None = None, threads: int = 1
) -> ScanHit | None:
    """Earliest occurrence (smallest start, ties broken by smallest cell
    width) of the requested kind with cell width at most d_max."""
    _check_scan_args(w, m, kind)
    if d_max is not None and d_max < 1:
        raise ValueError("d_max must be >= 1")
    limit = len(w) // m
    if d_max is not None:
        limit = min(limit, d_max)
    ds = range(1, limit + 1)
    if threads > 1:
        chunks = [ds[i::threads] for i in range(threads)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = pool.map(lambda c: _first_hits_per_d(w, m, kind, c), chunks)
        hits = [h for part in results for h in part]
    else:
        hits = _first_hits_per_d(w, m, kind, ds)
    if not hits:
        return None
    start0, d = min(hits)
    return ScanHit(start=start0 + 1, cell_width=d, order=m, kind=kind)


def avoidance_scan(w: FiniteWord, m: int, kind: str, threads: int = 1) -> bool:
    """True iff w contains no occurrence of the requested kind, checking
    every start and every cell width that fits."""
    _check_scan_args(w, m, kind)
    ds = range(1, len(w) // m + 1)

    def clean(chunk) -> bool:
        return not any(_hit_mask(w, d, m, kind).any() for d in chunk)

    if threads > 1:
        if kind in ("power", "antipower"):
            _rank_levels(w)  # build shared table before fanning out
        chunks = [ds[i::threads] for i in range(threads)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return all(pool.map(clean, chunks))
    return clean(ds)
