"""Polynomial deciders for destructive control by (runoff) partition of candidates.

In the nonunique-winner model, PC and RPC coincide within a tie model:

* ties promote: control succeeds iff some candidate ``a`` has
  ``netadv(a, p) > 0``; put ``{a, p}`` in the first part and ``p`` loses
  its subelection.
* ties eliminate: same with ``netadv(a, p) >= 0``; a pairwise tie already
  stops ``p`` from being promoted.

If no such ``a`` exists, ``p`` is a (weak) Condorcet winner in every subset
and cannot be stopped.  Any rule where weak Condorcet winners always win
admits the same test.
"""

from __future__ import annotations

import itertools

from . import batch
from .control import ControlAction, ControlResult
from .election import Election, compute_net_advantage, winners
from .enums import TieModel


def _adversary(e: Election, p: str, strict: bool) -> str | None:
    net = compute_net_advantage(e)
    for a in sorted(e.candidates):
        if a == p:
            continue
        margin = net[a, p]
        if margin > 0 or (not strict and margin == 0):
            return a
    return None


def _decide(e: Election, p: str, strict: bool) -> ControlResult:
    e.index(p)
    a = _adversary(e, p, strict)
    if a is None:
        return ControlResult(False, None, len(e.candidates) - 1)
    return ControlResult(True, ControlAction(candidates=frozenset({a, p})), 1)


def dc_pc_tp(e: Election, p: str) -> ControlResult:
    """Destructive PC/RPC, ties promote; witness first part is ``{a, p}``."""
    return _decide(e, p, strict=True)


def dc_pc_te(e: Election, p: str) -> ControlResult:
    """Destructive PC/RPC, ties eliminate; witness first part is ``{a, p}``."""
    return _decide(e, p, strict=False)


def dc_pc(e: Election, p: str, tie: TieModel | str) -> ControlResult:
    return dc_pc_te(e, p) if TieModel.parse(tie) is TieModel.TE else dc_pc_tp(e, p)


def characterization_subset(
    e: Election, p: str, model: TieModel | str, budget: int | None = batch.DEFAULT_BUDGET
) -> bool:
    """Is there ``C' ⊆ C`` containing ``p`` where ``p`` fails to (uniquely) win?

    TP asks for ``p`` not a winner of ``(C', V)``; TE asks for ``p`` not the
    unique winner.  Decided by enumerating every such subset.
    """
    model = TieModel.parse(model)
    e.index(p)
    others = [c for c in e.candidates if c != p]
    batch.check_budget(2 ** len(others), budget, "subset characterization")
    for size in range(len(others) + 1):
        for extra in itertools.combinations(others, size):
            ws = winners(e.restrict((p, *extra)))
            if model is TieModel.TP and p not in ws:
                return True
            if model is TieModel.TE and ws != (p,):
                return True
    return False
