"""Coalitional manipulation of Schulze elections.

Two exact deciders are provided: an unrestricted one over every multiset of
manipulator ballots, and one where the whole coalition casts a single ballot.
In the nonunique-winner model the two agree for constructive manipulation;
in the unique-winner model they can differ, and
:func:`find_unique_winner_gap` searches for such an instance.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from . import batch
from .election import (
    Ballot,
    Election,
    PairMatrix,
    ValidationError,
    compute_net_advantage,
    strongest_paths,
    winners,
)
from .enums import Goal, WinnerModel
from .mcgarvey import synthesize


@dataclass(frozen=True)
class ManipulationInstance:
    election: Election
    manipulators: int
    target: str
    goal: Goal = Goal.CONSTRUCTIVE
    model: WinnerModel = WinnerModel.NONUNIQUE

    def __post_init__(self) -> None:
        object.__setattr__(self, "goal", Goal.parse(self.goal))
        object.__setattr__(self, "model", WinnerModel(self.model))
        if self.target not in self.election.candidates:
            raise ValidationError(f"unknown candidate {self.target!r}")
        if isinstance(self.manipulators, bool) or not isinstance(self.manipulators, int) or self.manipulators < 1:
            raise ValidationError("manipulator count must be a positive integer")


@dataclass(frozen=True)
class ManipulationResult:
    decision: bool
    witness: tuple[Ballot, ...] | None
    explored: int


def goal_reached(ws: tuple[str, ...], target: str, goal: Goal, model: WinnerModel) -> bool:
    if model is WinnerModel.NONUNIQUE:
        success = target in ws
    else:
        success = ws == (target,)
    return success if goal is Goal.CONSTRUCTIVE else not success


def _goal_mask(win: np.ndarray, p: int, goal: Goal, model: WinnerModel) -> np.ndarray:
    if model is WinnerModel.NONUNIQUE:
        success = win[:, p]
    else:
        success = win[:, p] & (win.sum(axis=1) == 1)
    return success if goal is Goal.CONSTRUCTIVE else ~success


def all_rankings(candidates: tuple[str, ...]) -> list[Ballot]:
    return list(itertools.permutations(candidates))


def _replay(inst: ManipulationInstance, ballots: tuple[Ballot, ...]) -> bool:
    e = inst.election.with_ballots((1, b) for b in ballots)
    return goal_reached(winners(e), inst.target, inst.goal, inst.model)


def _search(
    inst: ManipulationInstance, combos: Iterator[tuple[int, ...]], rankings: list[Ballot]
) -> ManipulationResult:
    e = inst.election
    base = np.array(compute_net_advantage(e).values, dtype=np.int64)
    contrib = batch.ballot_contributions(e.candidates, rankings)
    p = e.index(inst.target)
    explored = 0
    for block in batch.chunked(combos):
        idx = np.array(block, dtype=np.int64)
        mats = base + contrib[idx].sum(axis=1)
        ok = _goal_mask(batch.winner_mask(mats), p, inst.goal, inst.model)
        hits = np.flatnonzero(ok)
        if hits.size:
            explored += int(hits[0]) + 1
            witness = tuple(rankings[i] for i in block[hits[0]])
            if not _replay(inst, witness):
                raise AssertionError("batched and scalar Schulze evaluation disagree")
            return ManipulationResult(True, witness, explored)
        explored += len(block)
    return ManipulationResult(False, None, explored)


def decide_bruteforce(inst: ManipulationInstance, budget: int | None = batch.DEFAULT_BUDGET) -> ManipulationResult:
    """Exact decision over every multiset of manipulator ballots.

    Manipulators are interchangeable, so multisets (not sequences) of the m!
    rankings are enumerated, in lexicographic order of ranking indices.
    """
    rankings = all_rankings(inst.election.candidates)
    needed = math.comb(len(rankings) + inst.manipulators - 1, inst.manipulators)
    batch.check_budget(needed, budget, "manipulation search")
    combos = itertools.combinations_with_replacement(range(len(rankings)), inst.manipulators)
    return _search(inst, combos, rankings)


def decide_identical(inst: ManipulationInstance, budget: int | None = batch.DEFAULT_BUDGET) -> ManipulationResult:
    """Exact decision when every manipulator casts the same ballot."""
    rankings = all_rankings(inst.election.candidates)
    batch.check_budget(len(rankings), budget, "manipulation search")
    combos = ((i,) * inst.manipulators for i in range(len(rankings)))
    return _search(inst, combos, rankings)


def shift_by_identical(e: Election, ballot: Ballot, copies: int) -> Election:
    return e.with_ballots([(copies, tuple(ballot))])


def single_manipulator_feasibility(e: Election, p: str, model: WinnerModel | str) -> bool:
    """Strength-gap test for one manipulator, computed on the honest voters.

    nonunique: nobody beats ``p`` in beatpath strength by more than two.
    unique: nobody beats ``p`` in beatpath strength at all.
    Advisory only; :func:`decide_bruteforce` is the decider of record.
    """
    model = WinnerModel(model)
    i = e.index(p)
    s = strongest_paths(compute_net_advantage(e)).values
    gap = 2 if model is WinnerModel.NONUNIQUE else 0
    return all(s[a][i] - s[i][a] <= gap for a in range(len(e.candidates)) if a != i)


@dataclass(frozen=True)
class GapSearchConfig:
    """Search space for :func:`find_unique_winner_gap`.

    Base elections are McGarvey profiles of skew-symmetric margin matrices
    with even entries in ``[-max_margin, max_margin]``.  With ``exhaustive``
    every such matrix is tried (candidate ``p`` is always the first one);
    otherwise ``samples`` matrices are drawn with ``seed``.
    """

    candidates: int = 4
    max_margin: int = 2
    manipulators: int = 2
    model: WinnerModel = WinnerModel.UNIQUE
    exhaustive: bool = True
    samples: int = 2000
    seed: int = 0
    max_instances: int = 100_000


@dataclass(frozen=True)
class GapWitness:
    instance: ManipulationInstance
    ballots: tuple[Ballot, ...]
    instances_tried: int


class GapNotFound(LookupError):
    """Search space exhausted without a witness; this is not a disproof."""

    def __init__(self, tried: int):
        super().__init__(f"no gap instance among {tried} tried")
        self.tried = tried


def candidate_names(m: int) -> tuple[str, ...]:
    return ("p",) + tuple("abcdefghijklmno"[:m - 1])


def _pair_values(max_margin: int) -> list[int]:
    return list(range(-max_margin, max_margin + 1, 2))


def _matrices(cfg: GapSearchConfig) -> Iterator[PairMatrix]:
    names = candidate_names(cfg.candidates)
    pairs = list(itertools.combinations(range(cfg.candidates), 2))
    values = _pair_values(cfg.max_margin)
    if cfg.exhaustive:
        choices: Iterator = itertools.product(values, repeat=len(pairs))
    else:
        rng = np.random.default_rng(cfg.seed)
        choices = (tuple(int(v) for v in rng.choice(values, size=len(pairs))) for _ in range(cfg.samples))
    for combo in choices:
        entries = {(names[i], names[j]): w for (i, j), w in zip(pairs, combo)}
        yield PairMatrix.from_pairs(names, entries)


def find_unique_winner_gap(cfg: GapSearchConfig = GapSearchConfig()) -> GapWitness:
    """First instance where differing manipulator ballots succeed but identical ones fail.

    Goal is always constructive; ``cfg.model`` selects the winner model.  The
    returned instance is re-checked with both deciders before returning.
    """
    model = WinnerModel(cfg.model)
    tried = 0
    for target in _matrices(cfg):
        if tried >= cfg.max_instances:
            break
        tried += 1
        inst = ManipulationInstance(synthesize(target), cfg.manipulators, "p", Goal.CONSTRUCTIVE, model)
        if decide_identical(inst, budget=None).decision:
            continue
        general = decide_bruteforce(inst, budget=None)
        if not general.decision:
            continue
        # re-verification on the returned instance
        assert general.witness is not None and len(set(general.witness)) > 1
        assert _replay(inst, general.witness)
        assert not decide_identical(inst, budget=None).decision
        return GapWitness(inst, general.witness, tried)
    raise GapNotFound(tried)
