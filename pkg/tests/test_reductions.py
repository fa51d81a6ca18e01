import random

import pytest

from schulzectl.cnf import CnfFormula, random_3cnf
from schulzectl.control import ControlAction, _voter_election, apply, decide_bruteforce, evaluate
from schulzectl.election import ValidationError, compute_net_advantage, winners
from schulzectl.enums import Goal, TieModel
from schulzectl.reductions import (
    KINDS,
    PreconditionError,
    census,
    complete_ballot,
    constraint_violations,
    expected_census,
    gen_cc_ac,
    gen_cc_dc,
    gen_cc_pc_te,
    gen_cc_pc_tp,
    gen_cc_pv_te,
    gen_dc_pv_te,
    gen_dc_pv_tp,
    generate,
    kind_for,
    verification_formula,
    verify_reduction,
)

ONE = CnfFormula(1, ((1, 1, 1),))
UNSAT = CnfFormula(1, ((1, 1, 1), (-1, -1, -1)))
THREE = CnfFormula(3, ((1, 2, 3), (-1, 2, -3)))
MCGARVEY_KINDS = [k for k in KINDS if "pv" not in k]
PV_KINDS = [k for k in KINDS if "pv" in k]


def sample_formulas():
    rng = random.Random(1)
    return [ONE, UNSAT, THREE, CnfFormula(2, ((1, -2, -2), (-1, 2, 1)))] + [
        random_3cnf(4, 3, rng) for _ in range(3)
    ]


@pytest.mark.parametrize("kind", MCGARVEY_KINDS)
def test_listed_relations_exact_and_rest_tied(kind):
    for f in sample_formulas():
        g = generate(f, kind)
        net = compute_net_advantage(g.instance.election)
        for w, l, weight in g.relations:
            assert net[w, l] == weight
        listed = {frozenset((w, l)) for w, l, _ in g.relations}
        cands = net.candidates
        for i, a in enumerate(cands):
            for b in cands[i + 1:]:
                if frozenset((a, b)) not in listed:
                    assert net[a, b] == 0


@pytest.mark.parametrize("kind", PV_KINDS)
def test_every_ballot_meets_its_constraints(kind):
    for f in sample_formulas():
        g = generate(verification_formula(kind, f), kind)
        assert constraint_violations(g) == []
        assert len(g.ballot_labels) == g.instance.election.voter_count


@pytest.mark.parametrize("kind", KINDS)
def test_census_and_roles(kind):
    for f in sample_formulas():
        f = verification_formula(kind, f)
        g = generate(f, kind)
        assert census(g) == expected_census(kind, f)
        assert set(g.roles) == set(g.instance.election.candidates)


def test_adding_gadget_small_formula():
    g = gen_cc_ac(ONE, limited=True)
    inst = g.instance
    assert len(inst.base_candidates) == 5 and inst.pool == ("x1+", "x1-")
    assert inst.budget == 2
    net = compute_net_advantage(inst.election)
    assert (net["c1", "p"], net["x1+", "c1"], net["p", "a"], net["x1''", "x1-"]) == (2, 4, 4, 4)
    assert apply(inst, g.recipe((True,)))
    assert not decide_bruteforce(gen_cc_ac(UNSAT).instance).decision
    assert not decide_bruteforce(gen_cc_ac(UNSAT, limited=False).instance).decision


def test_deletion_gadget_census():
    g = gen_cc_dc(CnfFormula(3, ((1, 2, 3),)))
    roles = list(g.roles.values())
    assert roles.count("clause") == 2 and roles.count("literal") == 3
    assert roles.count("negation") == 0 and g.instance.budget == 1
    assert len(g.instance.election.candidates) == 7


def test_deletion_gadget_negation_copies():
    g = gen_cc_dc(UNSAT)
    # 3 x 3 conflicting occurrence pairs, k + 1 = 3 copies each
    assert list(g.roles.values()).count("negation") == 27
    assert not decide_bruteforce(g.instance).decision


def test_partition_gadget_sizes():
    assert len(gen_cc_pc_te(ONE).instance.election.candidates) == 9
    assert len(gen_cc_pc_tp(ONE).instance.election.candidates) == 7


def test_partition_recipes():
    te = gen_cc_pc_te(ONE).recipe((True,))
    assert "p" not in te.candidates and "x1-" not in te.candidates and len(te.candidates) == 7
    tp = gen_cc_pc_tp(ONE)
    assert tp.recipe((True,)).candidates == {"a", "a'", "x1+", "c1", "x1'"}
    assert apply(tp.instance, tp.recipe((True,)))


def test_voter_gadget_needs_three_variables():
    with pytest.raises(PreconditionError):
        gen_cc_pv_te(ONE)
    padded = verification_formula("cc_pv_te", ONE)
    assert padded.variable_count == 3 and padded.clauses == ONE.clauses


def test_destructive_voter_gadgets_differ_only_in_group_sizes():
    te, tp = gen_dc_pv_te(THREE), gen_dc_pv_tp(THREE)
    assert te.instance.election.candidates == tp.instance.election.candidates
    count = lambda g, tag: sum(1 for l in g.ballot_labels if l.startswith(tag))
    assert (count(te, "G3"), count(te, "G4")) == (4, 4)
    assert (count(tp, "G3"), count(tp, "G4")) == (6, 6)
    assert [l for l in te.ballot_labels if l[0] in "TF"] == [l for l in tp.ballot_labels if l[0] in "TF"]


def test_complete_ballot():
    order = ["p", "a", "b", "c"]
    asc = complete_ballot(order, [("c", "a")])
    desc = complete_ballot(order, [("c", "a")], descending=True)
    assert asc == ("p", "b", "c", "a") and desc == ("c", "b", "a", "p")
    assert complete_ballot(order, [], rotate=(["a", "b", "c"], 1)) == ("p", "b", "c", "a")
    with pytest.raises(ValidationError, match="cyclic"):
        complete_ballot(order, [("a", "b"), ("b", "a")])


def test_kind_mapping():
    assert kind_for("acu") == "cc_auc"
    assert kind_for("rpc", "c", "te") == "cc_rpc_te"
    assert kind_for("pv", "d", "tp") == "dc_pv_tp"
    with pytest.raises(ValidationError):
        kind_for("dc", "d")
    with pytest.raises(ValidationError):
        kind_for("pc", "c")


def test_verify_report_and_budget_skip():
    rep = verify_reduction(ONE, "cc_ac")
    assert rep.passed and rep.decision is True
    skipped = verify_reduction(ONE, "cc_pc_tp", budget=3)
    assert skipped.backward_ok is None and skipped.decision is None
    assert any("skipped" in d for d in skipped.details)
    assert skipped.as_dict()["backward_ok"] == "skipped"


# Regression tests pinning the defects the verifier found in the gadgets.


def test_deletion_recipe_leaks_through_negation_candidates():
    f = CnfFormula(1, ((1, 1, -1),))
    g = gen_cc_dc(f)
    act = g.recipe((False,))
    assert act.candidates == {"l1_3"}
    out = evaluate(g.instance, act)
    # c1^1 -> l1_1 -> n1_1_1_3^1 -> p keeps strength 2 while p reaches c1^1 only with 0
    assert not out.goal_reached


def test_partition_te_adversary_cannot_be_tied():
    g = gen_cc_pc_te(ONE)
    c1 = sorted(g.recipe((True,)).candidates)
    assert winners(g.instance.election.restrict(c1)) == ("c'",)


def test_partition_tp_unsat_formula_still_controllable():
    g = gen_cc_pc_tp(UNSAT)
    act = ControlAction(candidates=frozenset({"c1", "c2", "x1+", "x1-"}))
    assert apply(g.instance, act)


def test_voter_tp_recipe_leaves_literals_ahead_of_p():
    g = generate(THREE, "cc_pv_tp")
    e = g.instance.election
    v1 = _voter_election(e, g.recipe((True, True, False)).voters)
    net = compute_net_advantage(v1)
    assert all(net["p", x] == -2 for x in ("x1", "x2", "x3"))
    assert "p" not in winners(v1)
