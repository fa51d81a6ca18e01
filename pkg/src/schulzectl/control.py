"""Electoral control for Schulze elections: action semantics and exact deciders.

Families (all in the nonunique-winner model):

=====  =================================================================
AC     add at most ``budget`` candidates from the pool
AUC    add any subset of the pool
DC     delete at most ``budget`` candidates (never ``p`` when destructive)
AV     add at most ``budget`` unregistered voters
DV     delete at most ``budget`` voters
PC     partition (C1, C2); survivors of (C1, V) face C2 in the final
RPC    partition (C1, C2); survivors of both subelections meet in the final
PV     partition (V1, V2); survivors of (C, V1), (C, V2) meet in (D1 u D2, V)
=====  =================================================================

Subelection ballots are the full ballots restricted to the participating
candidates.  Voter-based actions are expressed per ballot group: a tuple
with one count per ``(count, ranking)`` group, which avoids enumerating
interchangeable voters separately.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator

import numpy as np

from . import batch
from .election import Ballot, Election, ValidationError, compute_net_advantage, winners
from .enums import Goal, TieModel


class Family(str, Enum):
    AC = "ac"
    AUC = "auc"
    DC = "dc"
    AV = "av"
    DV = "dv"
    PC = "pc"
    RPC = "rpc"
    PV = "pv"

    @classmethod
    def parse(cls, value: "str | Family") -> "Family":
        if isinstance(value, Family):
            return value
        v = value.lower()
        return cls.AUC if v == "acu" else cls(v)

    @property
    def budgeted(self) -> bool:
        return self in (Family.AC, Family.DC, Family.AV, Family.DV)

    @property
    def partitions(self) -> bool:
        return self in (Family.PC, Family.RPC, Family.PV)


@dataclass(frozen=True)
class ControlInstance:
    family: Family
    goal: Goal
    election: Election
    distinguished: str
    tie_model: TieModel | None = None
    budget: int | None = None
    pool: tuple[str, ...] = ()
    unregistered: tuple[tuple[int, Ballot], ...] = ()

    def __post_init__(self) -> None:
        fam = Family.parse(self.family)
        object.__setattr__(self, "family", fam)
        object.__setattr__(self, "goal", Goal.parse(self.goal))
        if self.tie_model is not None:
            object.__setattr__(self, "tie_model", TieModel.parse(self.tie_model))
        object.__setattr__(self, "pool", tuple(self.pool))
        cands = self.election.candidates
        for d in self.pool:
            if d not in cands:
                raise ValidationError(f"pool candidate {d!r} missing from ballots")
        if len(set(self.pool)) != len(self.pool):
            raise ValidationError("duplicate pool candidate")
        if self.pool and fam not in (Family.AC, Family.AUC):
            raise ValidationError(f"family {fam.value} takes no candidate pool")
        if self.distinguished not in cands or self.distinguished in self.pool:
            raise ValidationError(f"distinguished candidate {self.distinguished!r} not in C")
        if fam.budgeted and (self.budget is None or self.budget < 0):
            raise ValidationError(f"family {fam.value} needs a nonnegative budget k")
        if fam.partitions and self.tie_model is None:
            raise ValidationError(f"family {fam.value} needs a tie model (te/tp)")
        if self.unregistered and fam is not Family.AV:
            raise ValidationError("only AV instances take unregistered voters")
        # validates rankings of W against the candidate set
        w = Election(cands, tuple(self.unregistered))
        object.__setattr__(self, "unregistered", w.ballots)

    @property
    def base_candidates(self) -> tuple[str, ...]:
        pool = set(self.pool)
        return tuple(c for c in self.election.candidates if c not in pool)


@dataclass(frozen=True)
class ControlAction:
    """Witness for a control family.

    ``candidates``: added set (AC/AUC), deleted set (DC) or first part C1
    (PC/RPC).  ``voters``: one count per ballot group; added from W (AV),
    deleted from V (DV) or placed in V1 (PV).
    """

    candidates: frozenset[str] = frozenset()
    voters: tuple[int, ...] | None = None

    def describe(self, inst: ControlInstance) -> dict:
        fam = inst.family
        if fam in (Family.AC, Family.AUC):
            return {"added": sorted(self.candidates)}
        if fam is Family.DC:
            return {"deleted": sorted(self.candidates)}
        if fam in (Family.PC, Family.RPC):
            rest = [c for c in inst.election.candidates if c not in self.candidates]
            return {"C1": sorted(self.candidates), "C2": sorted(rest)}
        groups = inst.unregistered if fam is Family.AV else inst.election.ballots
        chosen = [
            {"count": n, "ballot": " > ".join(r)}
            for n, (_, r) in zip(self.voters or (), groups)
            if n
        ]
        key = {Family.AV: "added_voters", Family.DV: "deleted_voters", Family.PV: "V1"}[fam]
        return {key: chosen}


@dataclass(frozen=True)
class ControlResult:
    decision: bool
    witness: ControlAction | None
    explored: int


@dataclass(frozen=True)
class Outcome:
    final_candidates: tuple[str, ...]
    final_winners: tuple[str, ...]
    goal_reached: bool


def survivors(e: Election, tie: TieModel) -> tuple[str, ...]:
    ws = winners(e)
    if tie is TieModel.TE and len(ws) != 1:
        return ()
    return ws


def _voter_election(e: Election, counts: tuple[int, ...]) -> Election:
    return Election(e.candidates, tuple((n, r) for n, (_, r) in zip(counts, e.ballots)))


def _check_counts(counts, groups, what: str) -> tuple[int, ...]:
    if counts is None or len(counts) != len(groups):
        raise ValidationError(f"{what}: expected one count per ballot group ({len(groups)})")
    counts = tuple(int(c) for c in counts)
    for c, (cap, _) in zip(counts, groups):
        if c < 0 or c > cap:
            raise ValidationError(f"{what}: count {c} outside 0..{cap}")
    return counts


def evaluate(inst: ControlInstance, act: ControlAction) -> Outcome:
    """Carry out ``act`` and report the final election."""
    e = inst.election
    fam = inst.family
    chosen = frozenset(act.candidates)
    base = inst.base_candidates
    final_votes = e
    if fam in (Family.AC, Family.AUC):
        if not chosen <= set(inst.pool):
            raise ValidationError("added candidates must come from the pool")
        if fam is Family.AC and len(chosen) > inst.budget:
            raise ValidationError(f"adding {len(chosen)} candidates exceeds budget {inst.budget}")
        final = [c for c in e.candidates if c in base or c in chosen]
    elif fam is Family.DC:
        if not chosen <= set(base):
            raise ValidationError("deleted candidates must belong to the election")
        if len(chosen) > inst.budget:
            raise ValidationError(f"deleting {len(chosen)} candidates exceeds budget {inst.budget}")
        if inst.goal is Goal.DESTRUCTIVE and inst.distinguished in chosen:
            raise ValidationError("destructive deletion may not delete the distinguished candidate")
        final = [c for c in base if c not in chosen]
    elif fam in (Family.PC, Family.RPC):
        if not chosen <= set(base):
            raise ValidationError("partition part must be a subset of the candidates")
        c1 = [c for c in base if c in chosen]
        c2 = [c for c in base if c not in chosen]
        d1 = survivors(e.restrict(c1), inst.tie_model)
        if fam is Family.PC:
            keep = set(d1) | set(c2)
        else:
            keep = set(d1) | set(survivors(e.restrict(c2), inst.tie_model))
        final = [c for c in base if c in keep]
    elif fam is Family.AV:
        counts = _check_counts(act.voters, inst.unregistered, "added voters")
        if sum(counts) > inst.budget:
            raise ValidationError(f"adding {sum(counts)} voters exceeds budget {inst.budget}")
        added = tuple((n, r) for n, (_, r) in zip(counts, inst.unregistered) if n)
        final_votes = e.with_ballots(added)
        final = list(base)
    elif fam is Family.DV:
        counts = _check_counts(act.voters, e.ballots, "deleted voters")
        if sum(counts) > inst.budget:
            raise ValidationError(f"deleting {sum(counts)} voters exceeds budget {inst.budget}")
        kept = tuple(cap - n for n, (cap, _) in zip(counts, e.ballots))
        final_votes = _voter_election(e, kept)
        final = list(base)
    elif fam is Family.PV:
        counts = _check_counts(act.voters, e.ballots, "voter partition")
        rest = tuple(cap - n for n, (cap, _) in zip(counts, e.ballots))
        keep = set(survivors(_voter_election(e, counts), inst.tie_model))
        keep |= set(survivors(_voter_election(e, rest), inst.tie_model))
        final = [c for c in base if c in keep]
    else:  # pragma: no cover
        raise ValidationError(f"unknown family {fam}")
    ws = winners(final_votes.restrict(final)) if final else ()
    member = inst.distinguished in ws
    reached = member if inst.goal is Goal.CONSTRUCTIVE else not member
    return Outcome(tuple(final), ws, reached)


def apply(inst: ControlInstance, act: ControlAction) -> bool:
    """True when ``act`` achieves the instance's goal."""
    return evaluate(inst, act).goal_reached


# --- exhaustive deciders ---------------------------------------------------


def _goal(win: np.ndarray, p: int, goal: Goal) -> np.ndarray:
    return win[:, p] if goal is Goal.CONSTRUCTIVE else ~win[:, p]


def _subsets_by_size(items: list[str], max_size: int) -> Iterator[tuple[str, ...]]:
    for size in range(min(max_size, len(items)) + 1):
        yield from itertools.combinations(items, size)


def _n_subsets(n: int, max_size: int) -> int:
    return sum(math.comb(n, s) for s in range(min(max_size, n) + 1))


def enumeration_size(inst: ControlInstance) -> int:
    """Number of actions the brute-force decider would evaluate."""
    fam = inst.family
    if fam is Family.AC:
        return _n_subsets(len(inst.pool), inst.budget)
    if fam is Family.AUC:
        return 2 ** len(inst.pool)
    if fam is Family.DC:
        return _n_subsets(len(inst.base_candidates) - 1, inst.budget)
    if fam is Family.PC:
        return 2 ** len(inst.base_candidates)
    if fam is Family.RPC:
        return 2 ** max(len(inst.base_candidates) - 1, 0)
    if fam is Family.AV:
        return batch.count_vector_total([n for n, _ in inst.unregistered], inst.budget)
    if fam is Family.DV:
        return batch.count_vector_total([n for n, _ in inst.election.ballots], inst.budget)
    caps = [n for n, _ in inst.election.ballots]
    return (math.prod(c + 1 for c in caps) + 1) // 2


def _first_hit(
    inst: ControlInstance, blocks: Iterable[tuple[list, np.ndarray]]
) -> ControlResult:
    explored = 0
    for actions, ok in blocks:
        hits = np.flatnonzero(ok)
        if hits.size:
            explored += int(hits[0]) + 1
            act = actions[int(hits[0])]
            if not apply(inst, act):
                raise AssertionError("batched and scalar control evaluation disagree")
            return ControlResult(True, act, explored)
        explored += len(actions)
    return ControlResult(False, None, explored)


def _candidate_blocks(inst: ControlInstance, net: np.ndarray, p: int):
    cands = inst.election.candidates
    pos = {c: i for i, c in enumerate(cands)}
    m = len(cands)
    base_mask = np.array([c in set(inst.base_candidates) for c in cands])
    fam = inst.family
    if fam in (Family.AC, Family.AUC):
        limit = inst.budget if fam is Family.AC else len(inst.pool)
        combos = _subsets_by_size(list(inst.pool), limit)
        sign = 1
    else:
        others = [c for c in inst.base_candidates if c != inst.distinguished]
        combos = _subsets_by_size(others, inst.budget)
        sign = -1
    for block in batch.chunked(combos):
        present = np.repeat(base_mask[None], len(block), axis=0)
        for row, combo in enumerate(block):
            for c in combo:
                present[row, pos[c]] = sign > 0
        win = batch.winner_mask(net, present)
        yield [ControlAction(candidates=frozenset(c)) for c in block], _goal(win, p, inst.goal)


def _partition_blocks(inst: ControlInstance, net: np.ndarray, p: int):
    cands = inst.election.candidates
    m = len(cands)
    te = inst.tie_model is TieModel.TE
    runoff = inst.family is Family.RPC
    if runoff:
        # the part holding the least candidate is C1; the semantics are symmetric
        least = cands.index(min(cands))
        free = [i for i in range(m) if i != least]
        total = 2 ** len(free)
    else:
        free = list(range(m))
        total = 2 ** m
    for start in range(0, total, batch.CHUNK):
        codes = np.arange(start, min(start + batch.CHUNK, total), dtype=np.int64)
        bits = batch.subset_masks(codes, len(free))
        c1 = np.zeros((len(codes), m), dtype=bool)
        c1[:, free] = bits
        if runoff:
            c1[:, least] = True
        c2 = ~c1
        d1 = batch.survivors(batch.winner_mask(net, c1), te)
        if runoff:
            d2 = batch.survivors(batch.winner_mask(net, c2), te)
        else:
            d2 = c2
        win = batch.winner_mask(net, d1 | d2)
        actions = [
            ControlAction(candidates=frozenset(cands[i] for i in np.flatnonzero(row)))
            for row in c1
        ]
        yield actions, _goal(win, p, inst.goal)


def _voter_blocks(inst: ControlInstance, net: np.ndarray, p: int):
    e = inst.election
    fam = inst.family
    te = inst.tie_model is TieModel.TE
    if fam is Family.AV:
        groups = inst.unregistered
        vectors = batch.count_vectors([n for n, _ in groups], inst.budget)
    elif fam is Family.DV:
        groups = e.ballots
        vectors = batch.count_vectors([n for n, _ in groups], inst.budget)
    else:
        groups = e.ballots
        caps = tuple(n for n, _ in groups)
        # (V1, V2) and (V2, V1) give the same final election
        vectors = (
            v for v in itertools.product(*(range(c + 1) for c in caps))
            if v <= tuple(c - x for c, x in zip(caps, v))
        )
    contrib = batch.ballot_contributions(e.candidates, [r for _, r in groups])
    flat = contrib.reshape(len(groups), -1)
    m = len(e.candidates)
    for block in batch.chunked(vectors):
        vec = np.array(block, dtype=np.int64).reshape(len(block), len(groups))
        part = (vec @ flat).reshape(len(block), m, m) if len(groups) else np.zeros((len(block), m, m), np.int64)
        if fam is Family.AV:
            win = batch.winner_mask(net + part)
        elif fam is Family.DV:
            win = batch.winner_mask(net - part)
        else:
            d1 = batch.survivors(batch.winner_mask(part), te)
            d2 = batch.survivors(batch.winner_mask(net - part), te)
            win = batch.winner_mask(np.broadcast_to(net, part.shape), d1 | d2)
        actions = [ControlAction(voters=tuple(v)) for v in block]
        yield actions, _goal(win, p, inst.goal)


def decide_bruteforce(inst: ControlInstance, budget: int | None = batch.DEFAULT_BUDGET) -> ControlResult:
    """Exact decision by enumerating every admissible action.

    The first witness in enumeration order is returned (smallest sets first
    for add/delete families, ascending bit codes for partitions) and is
    replayed through :func:`apply` before returning.
    """
    batch.check_budget(enumeration_size(inst), budget, f"{inst.family.value} control search")
    e = inst.election
    net = np.array(compute_net_advantage(e).values, dtype=np.int64)
    p = e.index(inst.distinguished)
    fam = inst.family
    if fam in (Family.AC, Family.AUC, Family.DC):
        return _first_hit(inst, _candidate_blocks(inst, net, p))
    if fam in (Family.PC, Family.RPC):
        return _first_hit(inst, _partition_blocks(inst, net, p))
    return _first_hit(inst, _voter_blocks(inst, net, p))
