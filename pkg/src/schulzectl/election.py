"""Ballots, elections, pairwise matrices and the Schulze winner rule.

An election is a candidate tuple plus a multiset of strict rankings, stored as
``(count, ranking)`` groups.  Pairwise matrices are indexed by candidate name
but keep the election's candidate order so they can be handed to numpy code
without re-sorting.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

Ballot = tuple[str, ...]

CANDIDATE_RE = re.compile(r"^[A-Za-z0-9_+^'\-]+$")

# Margins are summed as Python ints but the batch engine uses int64; keep
# m * |V| well away from the sentinel used for absent candidates.
MAX_WEIGHT = 1 << 40


class ValidationError(ValueError):
    """Raised for malformed elections, ballots or matrices."""


def check_candidate_name(name: str) -> str:
    if not isinstance(name, str) or not CANDIDATE_RE.match(name):
        raise ValidationError(f"invalid candidate name {name!r}")
    return name


def parse_ranking(text: str) -> Ballot:
    """Split ``"a > b > c"`` into ``("a", "b", "c")``."""
    return tuple(tok.strip() for tok in text.split(">"))


@dataclass(frozen=True)
class Election:
    """Candidates plus ballot groups; every ballot ranks exactly the candidates."""

    candidates: tuple[str, ...]
    ballots: tuple[tuple[int, Ballot], ...] = ()

    def __post_init__(self) -> None:
        cands = tuple(self.candidates)
        object.__setattr__(self, "candidates", cands)
        for c in cands:
            check_candidate_name(c)
        if len(set(cands)) != len(cands):
            raise ValidationError("duplicate candidate in candidate list")
        cset = set(cands)
        groups = []
        total = 0
        for idx, group in enumerate(self.ballots):
            try:
                count, ranking = group
            except (TypeError, ValueError):
                raise ValidationError(f"ballot {idx}: expected (count, ranking)") from None
            if isinstance(ranking, str):
                ranking = parse_ranking(ranking)
            ranking = tuple(ranking)
            if isinstance(count, bool) or not isinstance(count, int) or count < 0:
                raise ValidationError(f"ballot {idx}: count must be a nonnegative integer")
            if len(set(ranking)) != len(ranking):
                raise ValidationError(f"ballot {idx}: duplicate candidate in ranking")
            unknown = [c for c in ranking if c not in cset]
            if unknown:
                raise ValidationError(f"ballot {idx}: unknown candidate {unknown[0]!r}")
            if len(ranking) != len(cands):
                missing = sorted(cset.difference(ranking))
                raise ValidationError(f"ballot {idx}: missing candidate {missing[0]!r}")
            total += count
            groups.append((count, ranking))
        if total * max(len(cands), 1) >= MAX_WEIGHT:
            raise ValidationError("voter count too large for 64-bit margins")
        object.__setattr__(self, "ballots", tuple(groups))

    @classmethod
    def from_ballots(cls, candidates: Iterable[str], ballots: Iterable) -> "Election":
        """Build from ``(count, "a > b > c")`` pairs or ``(count, sequence)`` pairs."""
        return cls(tuple(candidates), tuple(ballots))

    @property
    def voter_count(self) -> int:
        return sum(count for count, _ in self.ballots)

    def index(self, name: str) -> int:
        try:
            return self.candidates.index(name)
        except ValueError:
            raise ValidationError(f"unknown candidate {name!r}") from None

    def voters(self) -> Iterator[Ballot]:
        """Expand ballot groups into individual voters."""
        for count, ranking in self.ballots:
            for _ in range(count):
                yield ranking

    def restrict(self, keep: Iterable[str]) -> "Election":
        """Sub-election on ``keep``; ballots keep their relative order."""
        keep_set = set(keep)
        for c in keep_set:
            if c not in self.candidates:
                raise ValidationError(f"unknown candidate {c!r}")
        cands = tuple(c for c in self.candidates if c in keep_set)
        ballots = tuple(
            (count, tuple(c for c in ranking if c in keep_set)) for count, ranking in self.ballots
        )
        return Election(cands, ballots)

    def with_ballots(self, extra: Iterable[tuple[int, Ballot]]) -> "Election":
        return Election(self.candidates, self.ballots + tuple(extra))

    def merged(self) -> "Election":
        """Same election with identical rankings folded into one group."""
        counts: dict[Ballot, int] = {}
        for count, ranking in self.ballots:
            counts[ranking] = counts.get(ranking, 0) + count
        return Election(self.candidates, tuple((c, r) for r, c in counts.items() if c))


@dataclass(frozen=True)
class PairMatrix:
    """Square integer matrix over a candidate tuple, indexed by name pairs."""

    candidates: tuple[str, ...]
    values: tuple[tuple[int, ...], ...]

    def __getitem__(self, pair: tuple[str, str]) -> int:
        a, b = pair
        return self.values[self.candidates.index(a)][self.candidates.index(b)]

    def __len__(self) -> int:
        return len(self.candidates)

    def rows(self) -> list[list[int]]:
        return [list(row) for row in self.values]

    def as_dict(self) -> dict[tuple[str, str], int]:
        return {
            (a, b): self.values[i][j]
            for i, a in enumerate(self.candidates)
            for j, b in enumerate(self.candidates)
            if i != j
        }

    def is_skew_symmetric(self) -> bool:
        n = len(self.candidates)
        return all(
            self.values[i][j] == -self.values[j][i] for i in range(n) for j in range(n) if i != j
        )

    @classmethod
    def from_rows(cls, candidates: Sequence[str], rows: Sequence[Sequence[int]]) -> "PairMatrix":
        cands = tuple(candidates)
        if len(rows) != len(cands) or any(len(r) != len(cands) for r in rows):
            raise ValidationError("matrix shape does not match candidate count")
        return cls(cands, tuple(tuple(int(v) for v in r) for r in rows))

    @classmethod
    def from_pairs(cls, candidates: Sequence[str], entries: dict[tuple[str, str], int]) -> "PairMatrix":
        """Skew-symmetric matrix from ``{(a, b): w}``; unlisted pairs are 0."""
        cands = tuple(candidates)
        pos = {c: i for i, c in enumerate(cands)}
        rows = [[0] * len(cands) for _ in cands]
        for (a, b), w in entries.items():
            if a not in pos or b not in pos:
                raise ValidationError(f"unknown candidate in pair ({a}, {b})")
            rows[pos[a]][pos[b]] = w
            rows[pos[b]][pos[a]] = -w
        return cls.from_rows(cands, rows)


def compute_advantage(e: Election) -> PairMatrix:
    """adv[a][b] = number of voters ranking a above b."""
    n = len(e.candidates)
    pos = {c: i for i, c in enumerate(e.candidates)}
    adv = [[0] * n for _ in range(n)]
    for count, ranking in e.ballots:
        if not count:
            continue
        order = [pos[c] for c in ranking]
        for hi in range(n):
            row = adv[order[hi]]
            for lo in range(hi + 1, n):
                row[order[lo]] += count
    return PairMatrix.from_rows(e.candidates, adv)


def compute_net_advantage(e: Election) -> PairMatrix:
    adv = compute_advantage(e).values
    n = len(e.candidates)
    net = [[adv[i][j] - adv[j][i] for j in range(n)] for i in range(n)]
    return PairMatrix.from_rows(e.candidates, net)


def strongest_paths(netadv: PairMatrix) -> PairMatrix:
    """Widest-path closure of the net-advantage graph (Floyd-Warshall, max-min).

    paths[i][j] ends up as the best bottleneck weight over all i->j paths,
    where a direct edge counts as a path.
    """
    m = len(netadv.candidates)
    paths = netadv.rows()
    for k in range(m):
        row_k = paths[k]
        for i in range(m):
            if i == k:
                continue
            row_i = paths[i]
            via = row_i[k]
            for j in range(m):
                if i == j:
                    continue
                newpath = via if via < row_k[j] else row_k[j]
                if newpath > row_i[j]:
                    row_i[j] = newpath
    return PairMatrix.from_rows(netadv.candidates, paths)


def winners_from_strengths(strength: PairMatrix) -> tuple[str, ...]:
    s = strength.values
    m = len(strength.candidates)
    out = [
        strength.candidates[a]
        for a in range(m)
        if not any(s[b][a] > s[a][b] for b in range(m) if b != a)
    ]
    return tuple(sorted(out))


def winners(e: Election) -> tuple[str, ...]:
    """Schulze winners, sorted by name.  No candidates means no winners."""
    if not e.candidates:
        return ()
    return winners_from_strengths(strongest_paths(compute_net_advantage(e)))


def is_condorcet_winner(e: Election, a: str) -> bool:
    i = e.index(a)
    net = compute_net_advantage(e).values
    return all(net[i][j] > 0 for j in range(len(e.candidates)) if j != i)


def is_weak_condorcet_winner(e: Election, a: str) -> bool:
    i = e.index(a)
    net = compute_net_advantage(e).values
    return all(net[i][j] >= 0 for j in range(len(e.candidates)) if j != i)
