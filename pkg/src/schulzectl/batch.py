"""Vectorised Schulze evaluation over stacks of net-advantage matrices.

The exhaustive deciders evaluate thousands of closely related elections
(candidate subsets, voter subsets, manipulator ballots).  They all reduce to
a stack of ``(B, m, m)`` margin matrices; candidates that are absent from a
given election get the ``ABSENT`` sentinel on their row and column so that
no bottleneck path can pass through them.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Iterator, Sequence

import numpy as np

from .election import Ballot

ABSENT = -(1 << 50)


class SearchBudgetExceeded(RuntimeError):
    """An exhaustive search would visit more nodes than allowed."""

    def __init__(self, needed: int, budget: int, what: str = "search"):
        super().__init__(f"{what} needs {needed} evaluations, budget is {budget}")
        self.needed = needed
        self.budget = budget


DEFAULT_BUDGET = 5_000_000
CHUNK = 4096


def check_budget(needed: int, budget: int | None, what: str = "search") -> None:
    if budget is not None and needed > budget:
        raise SearchBudgetExceeded(needed, budget, what)


def ballot_contributions(candidates: Sequence[str], rankings: Sequence[Ballot]) -> np.ndarray:
    """(n_ballots, m, m) array: +1 where the ballot ranks row over column, -1 for the reverse."""
    pos = {c: i for i, c in enumerate(candidates)}
    m = len(candidates)
    out = np.zeros((len(rankings), m, m), dtype=np.int64)
    for b, ranking in enumerate(rankings):
        rank = np.empty(m, dtype=np.int64)
        for place, c in enumerate(ranking):
            rank[pos[c]] = place
        out[b] = np.sign(rank[None, :] - rank[:, None])
    return out


def strengths(mats: np.ndarray) -> np.ndarray:
    """Max-min closure of every matrix in the stack."""
    paths = np.array(mats, dtype=np.int64, copy=True)
    m = paths.shape[-1]
    for k in range(m):
        via = np.minimum(paths[:, :, k, None], paths[:, None, k, :])
        np.maximum(paths, via, out=paths)
    return paths


def mask_absent(net: np.ndarray, present: np.ndarray) -> np.ndarray:
    """Broadcast one (m, m) or a stack of margins against (B, m) presence masks."""
    both = present[:, :, None] & present[:, None, :]
    return np.where(both, net, ABSENT)


def winner_mask(mats: np.ndarray, present: np.ndarray | None = None) -> np.ndarray:
    """(B, m) boolean: candidate present and beaten by nobody in beatpath strength."""
    if present is None:
        present = np.ones(mats.shape[:2], dtype=bool)
        paths = strengths(mats)
    else:
        paths = strengths(mask_absent(mats, present))
    beaten = (paths.transpose(0, 2, 1) > paths).any(axis=2)
    return present & ~beaten


def survivors(win: np.ndarray, ties_eliminate: bool) -> np.ndarray:
    if not ties_eliminate:
        return win
    return win & (win.sum(axis=1) == 1)[:, None]


def subset_masks(codes: np.ndarray, m: int) -> np.ndarray:
    """Bit i of each code says whether candidate i is in the subset."""
    return ((codes[:, None] >> np.arange(m, dtype=np.int64)) & 1).astype(bool)


def chunked(items: Iterable, size: int = CHUNK) -> Iterator[list]:
    it = iter(items)
    while True:
        block = list(itertools.islice(it, size))
        if not block:
            return
        yield block


def count_vectors(caps: Sequence[int], max_total: int | None = None) -> Iterator[tuple[int, ...]]:
    """All vectors 0 <= v[i] <= caps[i] (sum <= max_total), ordered by total then lexicographically."""
    top = sum(caps) if max_total is None else min(max_total, sum(caps))
    for total in range(top + 1):
        yield from _vectors_with_total(tuple(caps), total)


def _vectors_with_total(caps: tuple[int, ...], total: int) -> Iterator[tuple[int, ...]]:
    if not caps:
        if total == 0:
            yield ()
        return
    rest_cap = sum(caps[1:])
    for first in range(min(caps[0], total), -1, -1):
        if total - first > rest_cap:
            break
        for tail in _vectors_with_total(caps[1:], total - first):
            yield (first,) + tail


def count_vector_total(caps: Sequence[int], max_total: int | None = None) -> int:
    """Number of vectors count_vectors would produce (polynomial DP)."""
    top = sum(caps) if max_total is None else min(max_total, sum(caps))
    ways = [1] + [0] * top
    for cap in caps:
        nxt = [0] * (top + 1)
        for t, w in enumerate(ways):
            if w:
                for x in range(min(cap, top - t) + 1):
                    nxt[t + x] += w
        ways = nxt
    return sum(ways)
