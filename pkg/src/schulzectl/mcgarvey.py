"""McGarvey construction: a ballot profile realising a given even margin matrix."""

from __future__ import annotations

from typing import Iterable, Sequence

from .election import Election, PairMatrix, ValidationError, check_candidate_name


def _gadget(candidates: tuple[str, ...], a: str, b: str) -> tuple[tuple[str, ...], tuple[str, ...]]:
    rest = [c for c in candidates if c not in (a, b)]
    first = (a, b, *rest)
    second = (*reversed(rest), a, b)
    return first, second


def synthesize(target: PairMatrix) -> Election:
    """Profile whose net-advantage matrix equals ``target`` exactly.

    Each +2 on a pair (a, b) costs two ballots, ``a > b > rest`` and
    ``reversed(rest) > a > b``; everything except (a, b) cancels.
    """
    cands = target.candidates
    m = len(cands)
    if m < 2:
        if m == 1 and target.values[0][0] != 0:
            raise ValidationError("diagonal entries must be 0")
        return Election(cands, ())
    vals = target.values
    for i in range(m):
        if vals[i][i] != 0:
            raise ValidationError(f"diagonal entry for {cands[i]!r} must be 0")
        for j in range(i + 1, m):
            if vals[i][j] != -vals[j][i]:
                raise ValidationError(f"matrix not skew-symmetric at ({cands[i]}, {cands[j]})")
            if vals[i][j] % 2:
                raise ValidationError(
                    f"odd margin {vals[i][j]} at ({cands[i]}, {cands[j]}): parity error"
                )
    ballots: list[tuple[int, tuple[str, ...]]] = []
    for i in range(m):
        for j in range(i + 1, m):
            w = vals[i][j]
            if w == 0:
                continue
            a, b = (cands[i], cands[j]) if w > 0 else (cands[j], cands[i])
            first, second = _gadget(cands, a, b)
            ballots.append((abs(w) // 2, first))
            ballots.append((abs(w) // 2, second))
    return Election(cands, tuple(ballots))


def relations_matrix(
    candidates: Sequence[str], relations: Iterable[tuple[str, str, int]]
) -> PairMatrix:
    """Matrix for ``(winner, loser, weight)`` triples; unlisted pairs tie."""
    cands = tuple(candidates)
    for c in cands:
        check_candidate_name(c)
    known = set(cands)
    seen: dict[frozenset, tuple[str, str]] = {}
    entries: dict[tuple[str, str], int] = {}
    for winner, loser, weight in relations:
        for c in (winner, loser):
            if c not in known:
                raise ValidationError(f"relation ({winner} > {loser}): unknown candidate {c!r}")
        if winner == loser:
            raise ValidationError(f"relation ({winner} > {loser}): a candidate cannot beat itself")
        key = frozenset((winner, loser))
        if key in seen:
            prev = seen[key]
            raise ValidationError(
                f"pair ({winner}, {loser}) listed twice (earlier as {prev[0]} > {prev[1]})"
            )
        seen[key] = (winner, loser)
        entries[(winner, loser)] = int(weight)
    return PairMatrix.from_pairs(cands, entries)


def synthesize_relations(
    candidates: Sequence[str], relations: Iterable[tuple[str, str, int]]
) -> Election:
    return synthesize(relations_matrix(candidates, relations))
