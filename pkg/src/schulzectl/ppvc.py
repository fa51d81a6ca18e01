"""Path-preserving vertex cut and destructive candidate control reduced to it.

PPVC: delete at most ``k`` vertices so that some ``t -> s`` path survives
while every ``s -> t`` path is cut.

``p`` fails to win exactly when some rival ``a`` has a stronger beatpath to
``p`` than ``p`` has back.  Taking the threshold ``tau`` to be that strength,
this means: in the graph of edges with margin at least ``tau`` there is an
``a -> p`` path but no ``p -> a`` path.  So destructive DC/AC/AUC asks, for
some ``(a, tau)``, for a candidate set to drop that keeps the first path and
cuts every instance of the second, which is one PPVC query per pair.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable, Iterable

from . import batch
from .control import ControlAction, ControlInstance, Family, apply
from .election import ValidationError, compute_net_advantage, is_condorcet_winner, winners
from .enums import Goal


@dataclass(frozen=True)
class PpvcInstance:
    vertices: tuple[str, ...]
    edges: frozenset[tuple[str, str]]
    s: str
    t: str
    k: int
    deletable: frozenset[str] | None = None  # default: every vertex but s and t
    capped: frozenset[str] = frozenset()  # vertices counted against max_retained
    max_retained: int | None = None

    def __post_init__(self) -> None:
        verts = tuple(self.vertices)
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", frozenset(self.edges))
        known = set(verts)
        if len(known) != len(verts):
            raise ValidationError("duplicate vertex")
        for u, v in self.edges:
            if u not in known or v not in known:
                raise ValidationError(f"edge {u} -> {v} uses an unknown vertex")
        if self.s not in known or self.t not in known:
            raise ValidationError("s and t must be vertices")
        if self.s == self.t:
            raise ValidationError("s and t must differ")
        if self.k < 0:
            raise ValidationError("deletion limit must be nonnegative")
        dele = frozenset(known - {self.s, self.t}) if self.deletable is None else frozenset(self.deletable)
        if not dele <= known or self.s in dele or self.t in dele:
            raise ValidationError("deletable vertices must exclude s and t")
        object.__setattr__(self, "deletable", dele)
        object.__setattr__(self, "capped", frozenset(self.capped))

    def reaches(self, removed: Iterable[str], src: str, dst: str) -> bool:
        gone = set(removed)
        adj: dict[str, list[str]] = {}
        for u, v in self.edges:
            if u not in gone and v not in gone:
                adj.setdefault(u, []).append(v)
        seen, stack = {src}, [src]
        while stack:
            u = stack.pop()
            if u == dst:
                return True
            for v in adj.get(u, ()):
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        return False

    def admissible(self, removed: Iterable[str]) -> bool:
        removed = set(removed)
        if len(removed) > self.k or not removed <= self.deletable:
            return False
        if self.max_retained is not None and len(self.capped - removed) > self.max_retained:
            return False
        return True

    def is_solution(self, removed: Iterable[str]) -> bool:
        removed = set(removed)
        return (
            self.admissible(removed)
            and self.reaches(removed, self.t, self.s)
            and not self.reaches(removed, self.s, self.t)
        )


@dataclass(frozen=True)
class PpvcResult:
    decision: bool
    deleted: frozenset[str] | None
    explored: int


def ppvc_bruteforce(inst: PpvcInstance, budget: int | None = batch.DEFAULT_BUDGET) -> PpvcResult:
    """Exact decision; smallest deletion sets are tried first."""
    pool = sorted(inst.deletable)
    limit = min(inst.k, len(pool))
    needed = sum(math.comb(len(pool), r) for r in range(limit + 1))
    batch.check_budget(needed, budget, "vertex cut search")
    explored = 0
    if not inst.reaches((), inst.t, inst.s):
        # deleting vertices never creates a path
        return PpvcResult(False, None, 0)
    for r in range(limit + 1):
        for combo in itertools.combinations(pool, r):
            explored += 1
            if inst.is_solution(combo):
                removed = frozenset(combo)
                # re-check on a freshly computed induced graph
                assert inst.reaches(removed, inst.t, inst.s)
                assert not inst.reaches(removed, inst.s, inst.t)
                return PpvcResult(True, removed, explored)
    return PpvcResult(False, None, explored)


Oracle = Callable[[PpvcInstance], PpvcResult]


@dataclass(frozen=True)
class ReductionResult:
    decision: bool
    witness: ControlAction | None
    oracle_calls: int
    query: tuple[str, int] | None = None  # (adversary, threshold) of the successful query
    shortcut: str | None = None  # pre-check that settled the instance, if any


def threshold_graph(inst: ControlInstance, tau: int) -> frozenset[tuple[str, str]]:
    net = compute_net_advantage(inst.election)
    cands = inst.election.candidates
    return frozenset((u, v) for u in cands for v in cands if u != v and net[u, v] >= tau)


def query_bound(inst: ControlInstance) -> int:
    net = compute_net_advantage(inst.election)
    m = len(inst.election.candidates)
    weights = {w for row in net.values for w in row}
    return (m - 1) * len(weights)


def dc_candidates_via_ppvc(
    inst: ControlInstance, oracle: Oracle = ppvc_bruteforce
) -> ReductionResult:
    """Destructive DC / AC / AUC decided through PPVC oracle calls.

    Adversaries are tried in candidate order and thresholds from high to
    low; the first successful query's cut is turned into a deletion (DC)
    or addition (AC/AUC) set and replayed through the control semantics.
    """
    fam = inst.family
    if fam not in (Family.DC, Family.AC, Family.AUC) or inst.goal is not Goal.DESTRUCTIVE:
        raise ValidationError("the vertex-cut reduction covers destructive DC, AC and AUC only")
    e = inst.election
    p = inst.distinguished
    if is_condorcet_winner(e, p):
        return ReductionResult(False, None, 0, shortcut="condorcet")
    if p not in winners(e.restrict(inst.base_candidates)):
        act = ControlAction()
        assert apply(inst, act)
        return ReductionResult(True, act, 0, shortcut="already beaten")
    net = compute_net_advantage(e)
    cands = e.candidates
    weights = sorted({w for row in net.values for w in row}, reverse=True)
    pool = frozenset(inst.pool)
    calls = 0
    for a in cands:
        if a == p:
            continue
        for tau in weights:
            if tau <= net[p, a]:
                break
            edges = threshold_graph(inst, tau)
            if fam is Family.DC:
                q = PpvcInstance(cands, edges, p, a, inst.budget)
            else:
                cap = inst.budget if fam is Family.AC else None
                q = PpvcInstance(
                    cands, edges, p, a, len(pool),
                    deletable=pool - {a}, capped=pool, max_retained=cap,
                )
            calls += 1
            res = oracle(q)
            if not res.decision:
                continue
            cut = res.deleted or frozenset()
            if fam is Family.DC:
                act = ControlAction(candidates=frozenset(cut))
            else:
                act = ControlAction(candidates=pool - cut)
            if not apply(inst, act):
                raise AssertionError(f"vertex cut for ({a}, {tau}) does not defeat {p}")
            return ReductionResult(True, act, calls, (a, tau))
    return ReductionResult(False, None, calls)
