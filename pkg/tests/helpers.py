"""Independent oracles and instance generators shared by the tests."""

from __future__ import annotations

import itertools
import random

from schulzectl.election import Election, PairMatrix, compute_net_advantage

EXAMPLE = Election(("a", "b", "c"), ((3, ("a", "b", "c")), (3, ("b", "c", "a")), (2, ("c", "a", "b"))))
EXAMPLE_TEXT = "candidates: a, b, c\n3: a > b > c\n3: b > c > a\n2: c > a > b\n"


def path_strengths(net: PairMatrix) -> list[list[int]]:
    """Strongest paths by listing every simple path (exponential, small m only)."""
    cands = net.candidates
    m = len(cands)
    out = [[0] * m for _ in range(m)]
    for i in range(m):
        for j in range(m):
            if i == j:
                continue
            best = None
            others = [k for k in range(m) if k not in (i, j)]
            for r in range(len(others) + 1):
                for mid in itertools.permutations(others, r):
                    walk = (i, *mid, j)
                    w = min(net.values[a][b] for a, b in zip(walk, walk[1:]))
                    best = w if best is None else max(best, w)
            out[i][j] = best
    return out


def oracle_winners(e: Election) -> tuple[str, ...]:
    net = compute_net_advantage(e)
    s = path_strengths(net)
    m = len(e.candidates)
    return tuple(
        sorted(
            e.candidates[a]
            for a in range(m)
            if all(s[b][a] <= s[a][b] for b in range(m) if b != a)
        )
    )


def random_election(rng: random.Random, m: int, max_groups: int = 5, max_count: int = 3, names=None) -> Election:
    names = tuple(names or "pabcdefgh"[:m])
    groups = []
    for _ in range(rng.randint(1, max_groups)):
        r = list(names)
        rng.shuffle(r)
        groups.append((rng.randint(1, max_count), tuple(r)))
    return Election(names, tuple(groups))


def random_margins(rng: random.Random, m: int, max_abs: int = 8, names=None) -> PairMatrix:
    names = tuple(names or "pabcdefgh"[:m])
    vals = list(range(-max_abs, max_abs + 1, 2))
    entries = {(names[i], names[j]): rng.choice(vals) for i in range(m) for j in range(i + 1, m)}
    return PairMatrix.from_pairs(names, entries)


def small_profiles(names=("p", "a", "b"), max_ballots: int = 2):
    """Every election over ``names`` with at most ``max_ballots`` voters."""
    rankings = list(itertools.permutations(names))
    for n in range(max_ballots + 1):
        for combo in itertools.combinations_with_replacement(rankings, n):
            yield Election(names, tuple((1, r) for r in combo))
