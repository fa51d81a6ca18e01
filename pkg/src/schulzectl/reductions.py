"""3SAT to Schulze control: instance generators and a desk-scale verifier.

Every generator returns a :class:`GeneratedInstance` holding the control
instance, a role for every candidate and the witness recipe that turns a
satisfying assignment into a control action.  Candidate-control gadgets are
given as weighted pairwise relations and realised with the McGarvey
construction (unlisted pairs tie).  Voter-partition gadgets are given as
explicit ballots, one per voter, each with its list of required pairwise
preferences.

Candidate names::

    p, a, a', b, c', u'    distinguished / helper / adversary candidates
    c3                     clause 3
    c3^2                   second copy of clause 3 (deletion gadget)
    c3'                    twin of clause 3 (destructive voter partition)
    x2+, x2-               literal candidates of variable 2
    x2', x2''              variable gadgets
    x2                     variable candidate (voter partition)
    l3_1                   first literal occurrence of clause 3
    n1_2_3_1^2             second copy of the negation gadget for l1_2, l3_1

Completion of partially specified ballots: each voter's constraints are
closed into a ranking by a topological sort whose ties are broken in
canonical candidate order, descending for the first, third, ... voter of a
group and ascending for the second, fourth, ....  Clause twins ``cj'`` additionally
rotate cyclically from voter to voter.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Callable, Sequence

from . import batch
from .cnf import Assignment, CnfFormula
from .control import ControlAction, ControlInstance, Family, apply, decide_bruteforce
from .election import Ballot, Election, ValidationError, compute_net_advantage
from .enums import Goal, TieModel
from .mcgarvey import relations_matrix, synthesize

Relation = tuple[str, str, int]
Constraint = tuple[str, str]


class PreconditionError(ValidationError):
    """The formula is outside the size range a construction is defined for."""


@dataclass(frozen=True)
class GeneratedInstance:
    kind: str
    formula: CnfFormula
    instance: ControlInstance
    roles: dict[str, str]
    recipe_text: str
    recipe_fn: Callable[[Assignment], ControlAction] = field(repr=False, compare=False)
    relations: tuple[Relation, ...] = ()
    # voter-partition gadgets: one label and constraint list per ballot group
    ballot_labels: tuple[str, ...] = ()
    constraints: tuple[tuple[Constraint, ...], ...] = ()

    def recipe(self, assignment: Assignment) -> ControlAction:
        if len(assignment) != self.formula.variable_count:
            raise ValidationError("assignment length differs from the variable count")
        return self.recipe_fn(tuple(bool(v) for v in assignment))


# --- shared helpers --------------------------------------------------------


def _clause(j: int) -> str:
    return f"c{j + 1}"


def _var(i: int, suffix: str = "") -> str:
    return f"x{i + 1}{suffix}"


def _sat_by(f: CnfFormula, i: int, value: bool) -> set[int]:
    return set(f.satisfied_when(i + 1, value))


def _mcgarvey_instance(
    family: Family,
    candidates: Sequence[str],
    relations: list[Relation],
    p: str,
    **kw,
) -> tuple[ControlInstance, tuple[Relation, ...]]:
    election = synthesize(relations_matrix(candidates, relations))
    return ControlInstance(family, Goal.CONSTRUCTIVE, election, p, **kw), tuple(relations)


# --- constructive adding of candidates ------------------------------------


def gen_cc_ac(f: CnfFormula, limited: bool = True) -> GeneratedInstance:
    """Adding candidates; pool holds one candidate per literal, budget ``|pool|``."""
    n, k = f.variable_count, f.clause_count
    clauses = [_clause(j) for j in range(k)]
    base = ["p", "a", *clauses]
    pool: list[str] = []
    roles = {"p": "distinguished", "a": "helper"}
    roles.update({c: "clause" for c in clauses})
    for i in range(n):
        base += [_var(i, "'"), _var(i, "''")]
        pool += [_var(i, "+"), _var(i, "-")]
        roles.update({_var(i, "'"): "variable", _var(i, "''"): "variable"})
        roles.update({_var(i, "+"): "literal", _var(i, "-"): "literal"})
    rel: list[Relation] = [(c, "p", 2) for c in clauses]
    for i in range(n):
        pos, neg, one, two = _var(i, "+"), _var(i, "-"), _var(i, "'"), _var(i, "''")
        rel += [
            (one, "p", 2), ("p", two, 2), (pos, one, 4), (neg, one, 4),
            (two, neg, 4), (neg, pos, 4), (pos, "p", 4),
        ]
        rel += [(pos, _clause(j), 4) for j in sorted(_sat_by(f, i, True))]
        rel += [(neg, _clause(j), 4) for j in sorted(_sat_by(f, i, False))]
    rel.append(("p", "a", 4))
    for i in range(n):
        rel += [("a", _var(i, "+"), 4), ("a", _var(i, "-"), 4)]
    family = Family.AC if limited else Family.AUC
    inst, rels = _mcgarvey_instance(
        family, base + pool, rel, "p", pool=tuple(pool), budget=len(pool) if limited else None
    )

    def recipe(asg: Assignment) -> ControlAction:
        return ControlAction(candidates=frozenset(_var(i, "+" if v else "-") for i, v in enumerate(asg)))

    return GeneratedInstance(
        "cc_ac" if limited else "cc_auc", f, inst, roles,
        "add xi+ for true variables and xi- for false ones", recipe, rels,
    )


# --- constructive deleting of candidates ----------------------------------


def _occurrence(j: int, s: int) -> str:
    return f"l{j + 1}_{s + 1}"


def conflicting_pairs(f: CnfFormula) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    """Pairs of literal occurrences (clause, slot) that negate each other."""
    occ = [(j, s, lit) for j, c in enumerate(f.clauses) for s, lit in enumerate(c)]
    return [
        ((j, s), (m, t))
        for idx, (j, s, lit) in enumerate(occ)
        for (m, t, other) in occ[idx + 1:]
        if lit == -other
    ]


def gen_cc_dc(f: CnfFormula) -> GeneratedInstance:
    """Deleting candidates; budget equals the clause count, gadgets are copied budget+1 times."""
    k = f.clause_count
    copies = k + 1
    cands = ["p"]
    roles = {"p": "distinguished"}
    rel: list[Relation] = []
    for j in range(k):
        occ = [_occurrence(j, s) for s in range(3)]
        for l in range(copies):
            name = f"{_clause(j)}^{l + 1}"
            cands.append(name)
            roles[name] = "clause"
            rel.append((name, occ[0], 2))
        for name in occ:
            cands.append(name)
            roles[name] = "literal"
        rel += [(occ[0], occ[1], 2), (occ[1], occ[2], 2), (occ[2], "p", 2)]
    for (j, s), (m, t) in conflicting_pairs(f):
        for l in range(copies):
            name = f"n{j + 1}_{s + 1}_{m + 1}_{t + 1}^{l + 1}"
            cands.append(name)
            roles[name] = "negation"
            rel += [(_occurrence(j, s), name, 2), (_occurrence(m, t), name, 2), (name, "p", 2)]
    cands.append("a")
    roles["a"] = "helper"
    rel.append(("p", "a", 2))
    rel += [("a", _occurrence(j, s), 2) for j in range(k) for s in range(3)]
    inst, rels = _mcgarvey_instance(Family.DC, cands, rel, "p", budget=k)

    def recipe(asg: Assignment) -> ControlAction:
        deleted = set()
        for j, clause in enumerate(f.clauses):
            for s, lit in enumerate(clause):
                if asg[abs(lit) - 1] == (lit > 0):
                    deleted.add(_occurrence(j, s))
                    break
        return ControlAction(candidates=frozenset(deleted))

    return GeneratedInstance(
        "cc_dc", f, inst, roles,
        "delete the first satisfied literal occurrence of every clause", recipe, rels,
    )


# --- constructive partition of candidates ---------------------------------


def _literal_block(f: CnfFormula, roles: dict[str, str]) -> tuple[list[str], list[str]]:
    clauses = [_clause(j) for j in range(f.clause_count)]
    lits = []
    for i in range(f.variable_count):
        for suffix, role in (("+", "literal"), ("-", "literal"), ("'", "variable")):
            lits.append(_var(i, suffix))
            roles[_var(i, suffix)] = role
    roles.update({c: "clause" for c in clauses})
    return clauses, lits


def _chosen(asg: Assignment) -> set[str]:
    return {_var(i, "+" if v else "-") for i, v in enumerate(asg)}


def _unchosen(asg: Assignment) -> set[str]:
    return {_var(i, "-" if v else "+") for i, v in enumerate(asg)}


def gen_cc_pc_te(f: CnfFormula, runoff: bool = False) -> GeneratedInstance:
    """Partition of candidates, ties eliminate (adversaries c' and u')."""
    roles = {"p": "distinguished", "c'": "adversary", "u'": "adversary", "a": "helper", "a'": "helper"}
    clauses, lits = _literal_block(f, roles)
    cands = ["p", *lits, *clauses, "c'", "u'", "a", "a'"]
    rel: list[Relation] = []
    rel += [(c, "p", 4) for c in clauses]
    rel += [(c, "a", 4) for c in clauses]
    rel += [("c'", "p", 2), ("c'", "a", 4), ("u'", "p", 4), ("a", "a'", 4)]
    for i in range(f.variable_count):
        rel += [("a'", _var(i, "+"), 4), ("a'", _var(i, "-"), 4)]
        rel += [("p", _var(i, "+"), 2), ("p", _var(i, "-"), 2)]
    rel.append(("c'", "u'", 2))
    rel += [("c'", c, 2) for c in clauses]
    for i in range(f.variable_count):
        pos, neg, one = _var(i, "+"), _var(i, "-"), _var(i, "'")
        rel += [("u'", one, 4), (one, neg, 4), (neg, pos, 4), (pos, "a", 4)]
    rel.append(("a", "u'", 2))
    for i in range(f.variable_count):
        rel += [(_var(i, "+"), _clause(j), 4) for j in sorted(_sat_by(f, i, True))]
        rel += [(_var(i, "-"), _clause(j), 4) for j in sorted(_sat_by(f, i, False))]
    family = Family.RPC if runoff else Family.PC
    inst, rels = _mcgarvey_instance(family, cands, rel, "p", tie_model=TieModel.TE)

    def recipe(asg: Assignment) -> ControlAction:
        drop = _unchosen(asg) | {"p"}
        return ControlAction(candidates=frozenset(c for c in cands if c not in drop))

    return GeneratedInstance(
        "cc_rpc_te" if runoff else "cc_pc_te", f, inst, roles,
        "C1 = every candidate except p and the literals of the unchosen values", recipe, rels,
    )


def gen_cc_pc_tp(f: CnfFormula, runoff: bool = False) -> GeneratedInstance:
    """Partition of candidates, ties promote (no adversaries)."""
    roles = {"p": "distinguished", "a": "helper", "a'": "helper"}
    clauses, lits = _literal_block(f, roles)
    cands = ["p", *lits, *clauses, "a", "a'"]
    rel: list[Relation] = [("p", "a", 2)]
    rel += [(c, "p", 4) for c in clauses]
    rel += [(c, "a", 4) for c in clauses]
    rel.append(("a", "a'", 6))
    for i in range(f.variable_count):
        rel += [("a'", _var(i, "+"), 6), ("a'", _var(i, "-"), 6), ("a'", _var(i, "'"), 2)]
        rel += [("p", _var(i, "+"), 2), ("p", _var(i, "-"), 2)]
    for i in range(f.variable_count):
        pos, neg, one = _var(i, "+"), _var(i, "-"), _var(i, "'")
        rel += [(one, neg, 4), (neg, pos, 4), (pos, "a", 4)]
    for i in range(f.variable_count):
        rel += [(_var(i, "+"), _clause(j), 6) for j in sorted(_sat_by(f, i, True))]
        rel += [(_var(i, "-"), _clause(j), 6) for j in sorted(_sat_by(f, i, False))]
    family = Family.RPC if runoff else Family.PC
    inst, rels = _mcgarvey_instance(family, cands, rel, "p", tie_model=TieModel.TP)

    def recipe(asg: Assignment) -> ControlAction:
        part = {"a", "a'"} | _chosen(asg) | set(clauses)
        part |= {_var(i, "'") for i in range(f.variable_count)}
        return ControlAction(candidates=frozenset(part))

    return GeneratedInstance(
        "cc_rpc_tp" if runoff else "cc_pc_tp", f, inst, roles,
        "C1 = {a, a'} + chosen literals + every clause and xi' candidate", recipe, rels,
    )


# --- partition of voters ---------------------------------------------------


def complete_ballot(
    order: Sequence[str],
    constraints: Sequence[Constraint],
    descending: bool = False,
    rotate: tuple[Sequence[str], int] | None = None,
) -> Ballot:
    """Linear extension of ``constraints`` with ties broken in canonical order.

    ``rotate=(group, shift)`` permutes the tie-break keys of ``group``
    cyclically by ``shift`` positions.
    """
    key = {c: i for i, c in enumerate(order)}
    if rotate is not None:
        group, shift = rotate
        slots = sorted(key[c] for c in group)
        for t, c in enumerate(group):
            key[c] = slots[(t - shift) % len(group)]
    preds = {c: 0 for c in order}
    succ: dict[str, list[str]] = {c: [] for c in order}
    for hi, lo in set(constraints):
        succ[hi].append(lo)
        preds[lo] += 1
    sign = -1 if descending else 1
    heap = [(sign * key[c], c) for c in order if preds[c] == 0]
    heapq.heapify(heap)
    out = []
    while heap:
        _, c = heapq.heappop(heap)
        out.append(c)
        for d in succ[c]:
            preds[d] -= 1
            if preds[d] == 0:
                heapq.heappush(heap, (sign * key[d], d))
    if len(out) != len(order):
        raise ValidationError("ballot constraints are cyclic")
    return tuple(out)


@dataclass
class _VoterBuilder:
    order: list[str]
    rotate: list[str] = field(default_factory=list)
    labels: list[str] = field(default_factory=list)
    constraints: list[tuple[Constraint, ...]] = field(default_factory=list)
    ballots: list[tuple[int, Ballot]] = field(default_factory=list)

    def group(self, label: str, size: int, cons: Sequence[Constraint]) -> None:
        for v in range(size):
            self.voter(f"{label}.{v + 1}" if size > 1 else label, cons, v)

    def voter(self, label: str, cons: Sequence[Constraint], index: int) -> None:
        rot = (self.rotate, len(self.ballots)) if len(self.rotate) > 1 else None
        ballot = complete_ballot(self.order, cons, descending=index % 2 == 0, rotate=rot)
        self.labels.append(label)
        self.constraints.append(tuple(cons))
        self.ballots.append((1, ballot))

    def election(self) -> Election:
        return Election(tuple(self.order), tuple(self.ballots))

    def counts(self, chosen: set[str]) -> tuple[int, ...]:
        return tuple(1 if self._group_of(l) in chosen or l in chosen else 0 for l in self.labels)

    @staticmethod
    def _group_of(label: str) -> str:
        return label.split(".")[0]


def _assignment_voters(f: CnfFormula, clause_cons, var_cons, extra: list[Constraint], b: _VoterBuilder) -> None:
    """Voters T1..Tn then F1..Fn; each group alternates completion order."""
    for value, tag in ((True, "T"), (False, "F")):
        for i in range(f.variable_count):
            sat = _sat_by(f, i, value)
            cons = clause_cons(sat) + var_cons(i) + extra
            b.voter(f"{tag}{i + 1}", cons, i)


def _assignment_labels(asg: Assignment, flip: bool = False) -> set[str]:
    return {f"{'T' if v != flip else 'F'}{i + 1}" for i, v in enumerate(asg)}


def _cc_pv(f: CnfFormula, tie: TieModel) -> GeneratedInstance:
    n, k = f.variable_count, f.clause_count
    if tie is TieModel.TE and n < 3:
        raise PreconditionError(f"needs at least 3 variables (group of |U| - 3 voters), got {n}")
    clauses = [_clause(j) for j in range(k)]
    variables = [_var(i) for i in range(n)]
    roles = {"p": "distinguished", "a": "helper"}
    roles.update({c: "clause" for c in clauses})
    roles.update({x: "variable" for x in variables})
    b = _VoterBuilder(["p", *clauses, *variables, "a"])

    def clause_cons(sat: set[int]) -> list[Constraint]:
        return [("p", c) if j in sat else (c, "p") for j, c in enumerate(clauses)]

    def var_cons(i: int) -> list[Constraint]:
        return [(x, "p") if t == i else ("p", x) for t, x in enumerate(variables)]

    _assignment_voters(f, clause_cons, var_cons, [("p", "a")], b)
    p_over_clauses = [("p", c) for c in clauses]
    vars_over_p = [(x, "p") for x in variables]
    if tie is TieModel.TE:
        b.group("G3", n - 3, p_over_clauses + vars_over_p + [("a", "p")])
        b.group("G4", 1, p_over_clauses + [("p", "a")] + vars_over_p)
        b.group("G5", 2, p_over_clauses + [("p", x) for x in variables] + [("a", "p")])
        first = {"G3", "G4", "G5"}
        second: set[str] = set()
        text = "V1 = voters of the satisfying assignment + groups G3, G4, G5"
    else:
        b.group("G3", n - 1, p_over_clauses + vars_over_p + [("a", "p")])
        b.group("G4", 1, p_over_clauses + vars_over_p + [("a", "p")])
        chain = [("a", x) for x in variables] + [(x, c) for x in variables for c in clauses]
        chain += [("a", c) for c in clauses] + [(c, "p") for c in clauses]
        chain += [("a", "p")] + vars_over_p
        b.group("G5", n + 2, chain)
        first = {"G3", "G4"}
        text = "V1 = voters of the satisfying assignment + groups G3, G4"
    inst = ControlInstance(Family.PV, Goal.CONSTRUCTIVE, b.election(), "p", tie_model=tie)

    def recipe(asg: Assignment) -> ControlAction:
        return ControlAction(voters=b.counts(_assignment_labels(asg) | first))

    kind = "cc_pv_te" if tie is TieModel.TE else "cc_pv_tp"
    return GeneratedInstance(
        kind, f, inst, roles, text, recipe,
        ballot_labels=tuple(b.labels), constraints=tuple(b.constraints),
    )


def gen_cc_pv_te(f: CnfFormula) -> GeneratedInstance:
    return _cc_pv(f, TieModel.TE)


def gen_cc_pv_tp(f: CnfFormula) -> GeneratedInstance:
    return _cc_pv(f, TieModel.TP)


def _dc_pv(f: CnfFormula, tie: TieModel) -> GeneratedInstance:
    n, k = f.variable_count, f.clause_count
    clauses = [_clause(j) for j in range(k)]
    twins = [_clause(j) + "'" for j in range(k)]
    variables = [_var(i) for i in range(n)]
    vtwins = [_var(i, "'") for i in range(n)]
    roles = {"p": "distinguished", "a": "adversary", "b": "adversary"}
    roles.update({c: "clause" for c in clauses + twins})
    roles.update({x: "variable" for x in variables + vtwins})
    b = _VoterBuilder(["p", "a", "b", *clauses, *twins, *variables, *vtwins], rotate=twins)

    def clause_cons(sat: set[int]) -> list[Constraint]:
        return [(twins[j], clauses[j]) if j in sat else (clauses[j], twins[j]) for j in range(k)]

    def var_cons(i: int) -> list[Constraint]:
        return [(vtwins[t], variables[t]) if t == i else (variables[t], vtwins[t]) for t in range(n)]

    extra: list[Constraint] = [("p", "a"), ("p", "b")]
    extra += [(c, "a") for c in clauses + twins]
    extra += [(x, "b") for x in variables + vtwins]
    _assignment_voters(f, clause_cons, var_cons, extra, b)
    size = 2 * n - 2 if tie is TieModel.TE else 2 * n
    b.group("G3", size, [("a", "p"), ("p", "b")])
    b.group("G4", size, [("b", "p"), ("p", "a")])
    inst = ControlInstance(Family.PV, Goal.DESTRUCTIVE, b.election(), "p", tie_model=tie)

    def recipe(asg: Assignment) -> ControlAction:
        return ControlAction(voters=b.counts(_assignment_labels(asg) | {"G3"}))

    kind = "dc_pv_te" if tie is TieModel.TE else "dc_pv_tp"
    return GeneratedInstance(
        kind, f, inst, roles,
        "V1 = voters of the satisfying assignment + group G3; V2 = the rest", recipe,
        ballot_labels=tuple(b.labels), constraints=tuple(b.constraints),
    )


def gen_dc_pv_te(f: CnfFormula) -> GeneratedInstance:
    return _dc_pv(f, TieModel.TE)


def gen_dc_pv_tp(f: CnfFormula) -> GeneratedInstance:
    return _dc_pv(f, TieModel.TP)


# --- registry, census and fidelity checks ----------------------------------


GENERATORS: dict[str, Callable[[CnfFormula], GeneratedInstance]] = {
    "cc_ac": lambda f: gen_cc_ac(f, limited=True),
    "cc_auc": lambda f: gen_cc_ac(f, limited=False),
    "cc_dc": gen_cc_dc,
    "cc_pc_te": lambda f: gen_cc_pc_te(f, runoff=False),
    "cc_rpc_te": lambda f: gen_cc_pc_te(f, runoff=True),
    "cc_pc_tp": lambda f: gen_cc_pc_tp(f, runoff=False),
    "cc_rpc_tp": lambda f: gen_cc_pc_tp(f, runoff=True),
    "cc_pv_te": gen_cc_pv_te,
    "cc_pv_tp": gen_cc_pv_tp,
    "dc_pv_te": gen_dc_pv_te,
    "dc_pv_tp": gen_dc_pv_tp,
}

KINDS = tuple(GENERATORS)


def kind_for(family: Family | str, goal: Goal | str = Goal.CONSTRUCTIVE, tie: TieModel | str | None = None) -> str:
    """Map CLI-style (family, goal, tie) to a generator name."""
    fam = Family.parse(family)
    goal = Goal.parse(goal)
    prefix = "cc" if goal is Goal.CONSTRUCTIVE else "dc"
    if fam in (Family.AC, Family.AUC, Family.DC):
        kind = f"cc_{fam.value}"
        if goal is not Goal.CONSTRUCTIVE:
            kind = ""
    elif fam.partitions:
        if tie is None:
            raise ValidationError(f"family {fam.value} needs a tie model (te/tp)")
        kind = f"{prefix}_{fam.value}_{TieModel.parse(tie).value}"
    else:
        kind = ""
    if kind not in GENERATORS:
        raise ValidationError(f"no reduction for {goal.value} {fam.value}")
    return kind


def generate(f: CnfFormula, kind: str) -> GeneratedInstance:
    if kind not in GENERATORS:
        raise ValidationError(f"unknown reduction {kind!r}; expected one of {', '.join(KINDS)}")
    return GENERATORS[kind](f)


def verification_formula(kind: str, f: CnfFormula) -> CnfFormula:
    """Formula actually fed to ``kind``: the TE voter-partition gadget needs 3 variables.

    Smaller formulas get unused variables appended, which keeps satisfiability.
    """
    return f.with_variable_count(3) if kind == "cc_pv_te" else f


def expected_census(kind: str, f: CnfFormula) -> dict[str, int]:
    """Closed-form candidate (and voter) counts of each construction."""
    n, k = f.variable_count, f.clause_count
    if kind in ("cc_ac", "cc_auc"):
        return {"candidates": 2 + k + 2 * n, "pool": 2 * n}
    if kind == "cc_dc":
        return {"candidates": 2 + k * (k + 1) + 3 * k + (k + 1) * len(conflicting_pairs(f))}
    if kind in ("cc_pc_te", "cc_rpc_te"):
        return {"candidates": 5 + 3 * n + k}
    if kind in ("cc_pc_tp", "cc_rpc_tp"):
        return {"candidates": 3 + 3 * n + k}
    if kind == "cc_pv_te":
        return {"candidates": 2 + n + k, "voters": 3 * n}
    if kind == "cc_pv_tp":
        return {"candidates": 2 + n + k, "voters": 4 * n + 2}
    if kind == "dc_pv_te":
        return {"candidates": 3 + 2 * k + 2 * n, "voters": 6 * n - 4}
    if kind == "dc_pv_tp":
        return {"candidates": 3 + 2 * k + 2 * n, "voters": 6 * n}
    raise ValidationError(f"unknown reduction {kind!r}")


def census(g: GeneratedInstance) -> dict[str, int]:
    e = g.instance.election
    out = {"candidates": len(e.candidates) - len(g.instance.pool)}
    if g.kind in ("cc_ac", "cc_auc"):
        out["pool"] = len(g.instance.pool)
    if g.constraints:
        out["voters"] = e.voter_count
    return out


def relation_violations(g: GeneratedInstance) -> list[str]:
    """Listed relations whose exact margin is missing, plus nonzero unlisted pairs."""
    net = compute_net_advantage(g.instance.election)
    want = relations_matrix(net.candidates, g.relations)
    cands = net.candidates
    out = []
    for i, a in enumerate(cands):
        for j in range(i + 1, len(cands)):
            b = cands[j]
            if net[a, b] != want[a, b]:
                out.append(f"netadv({a},{b}) = {net[a, b]}, expected {want[a, b]}")
    return out


def constraint_violations(g: GeneratedInstance) -> list[str]:
    out = []
    for label, cons, (_, ballot) in zip(g.ballot_labels, g.constraints, g.instance.election.ballots):
        pos = {c: i for i, c in enumerate(ballot)}
        out += [f"{label}: {hi} not above {lo}" for hi, lo in cons if pos[hi] > pos[lo]]
    return out


def role_gaps(g: GeneratedInstance) -> list[str]:
    return [c for c in g.instance.election.candidates if c not in g.roles]


# --- verification ----------------------------------------------------------


@dataclass
class VerificationReport:
    kind: str
    formula: str
    satisfiable: bool
    fidelity_ok: bool
    forward_ok: bool
    backward_ok: bool | None  # None: skipped (enumeration over budget)
    decision: bool | None
    details: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.fidelity_ok and self.forward_ok and self.backward_ok is True

    @property
    def forward_passed(self) -> bool:
        return self.fidelity_ok and self.forward_ok

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "formula": self.formula,
            "satisfiable": self.satisfiable,
            "fidelity_ok": self.fidelity_ok,
            "forward_ok": self.forward_ok,
            "backward_ok": "skipped" if self.backward_ok is None else self.backward_ok,
            "decision": self.decision,
            "details": self.details,
        }


def verify_reduction(
    f: CnfFormula,
    kind: str,
    budget: int | None = batch.DEFAULT_BUDGET,
    backward: bool = True,
) -> VerificationReport:
    """Check a construction on ``f`` in both directions.

    Forward: the recipe action of every satisfying assignment must reach
    the goal.  Backward: the exhaustive control decision must equal
    satisfiability; it is skipped (never guessed) when the enumeration
    exceeds ``budget``.  Relation/constraint fidelity, role coverage and
    census are checked as well.
    """
    g = generate(f, kind)
    details: list[str] = []
    bad = relation_violations(g) if g.relations else constraint_violations(g)
    gaps = role_gaps(g)
    if gaps:
        bad.append(f"candidates without a role: {', '.join(gaps)}")
    if census(g) != expected_census(kind, f):
        bad.append(f"census {census(g)} differs from {expected_census(kind, f)}")
    details += bad
    models = list(f.satisfying_assignments())
    forward_ok = True
    for asg in models:
        act = g.recipe(asg)
        if not apply(g.instance, act):
            forward_ok = False
            bits = "".join("1" if v else "0" for v in asg)
            details.append(f"recipe action for assignment {bits} misses the goal")
    backward_ok: bool | None = None
    decision: bool | None = None
    if backward:
        try:
            res = decide_bruteforce(g.instance, budget)
        except batch.SearchBudgetExceeded as exc:
            details.append(f"backward check skipped: {exc}")
        else:
            decision = res.decision
            backward_ok = decision == bool(models)
            if not backward_ok:
                details.append(
                    f"exhaustive control says {'yes' if decision else 'no'} "
                    f"but the formula is {'satisfiable' if models else 'unsatisfiable'}"
                )
                if res.witness is not None:
                    details.append(f"control witness: {res.witness.describe(g.instance)}")
    else:
        details.append("backward check not requested")
    return VerificationReport(kind, str(f), bool(models), not bad, forward_ok, backward_ok, decision, details)
