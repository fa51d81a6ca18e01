import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import EXAMPLE, oracle_winners, path_strengths, random_election
from schulzectl.election import (
    Election,
    PairMatrix,
    ValidationError,
    compute_advantage,
    compute_net_advantage,
    is_condorcet_winner,
    is_weak_condorcet_winner,
    parse_ranking,
    strongest_paths,
    winners,
)


def test_example_margins():
    adv = compute_advantage(EXAMPLE)
    assert adv["a", "b"] == 5 and adv["b", "a"] == 3
    net = compute_net_advantage(EXAMPLE)
    assert net.rows() == [[0, 2, -2], [-2, 0, 4], [2, -4, 0]]
    assert net.is_skew_symmetric()


def test_example_strengths_and_winners():
    s = strongest_paths(compute_net_advantage(EXAMPLE))
    assert s.rows() == [[0, 2, 2], [2, 0, 4], [2, 2, 0]]
    assert winners(EXAMPLE) == ("a", "b")


def test_winner_output_is_sorted():
    e = Election(("z", "m", "a"), ((1, ("z", "m", "a")), (1, ("a", "m", "z"))))
    assert winners(e) == tuple(sorted(winners(e)))


def test_no_voters_everyone_wins():
    e = Election(("a", "b", "c"), ())
    assert winners(e) == ("a", "b", "c")


def test_single_candidate():
    assert winners(Election(("a",), ((2, ("a",)),))) == ("a",)


def test_restrict_keeps_candidate_order():
    r = EXAMPLE.restrict(["c", "a"])
    assert r.candidates == ("a", "c")
    assert r.ballots[0] == (3, ("a", "c"))


@pytest.mark.parametrize(
    "ballots, fragment",
    [
        (((1, ("a", "b", "x")),), "ballot 0"),
        (((1, ("a", "b")),), "missing"),
        (((1, ("a", "a", "b")),), "duplicate"),
        (((-1, ("a", "b", "c")),), "count"),
    ],
)
def test_ballot_validation(ballots, fragment):
    with pytest.raises(ValidationError, match=fragment):
        Election(("a", "b", "c"), ballots)


def test_bad_candidate_names():
    with pytest.raises(ValidationError):
        Election(("a b", "c"), ())
    with pytest.raises(ValidationError):
        Election(("a", "a"), ())


def test_parse_ranking():
    assert parse_ranking(" a > b>c ") == ("a", "b", "c")


def test_condorcet_helpers():
    e = Election(("a", "b", "c"), ((2, ("a", "b", "c")), (1, ("b", "c", "a"))))
    assert is_condorcet_winner(e, "a")
    assert winners(e) == ("a",)
    tie = Election(("a", "b"), ((1, ("a", "b")), (1, ("b", "a"))))
    assert is_weak_condorcet_winner(tie, "a") and not is_condorcet_winner(tie, "a")


def test_pair_matrix_from_pairs():
    m = PairMatrix.from_pairs(("a", "b", "c"), {("a", "b"): 4})
    assert m["b", "a"] == -4 and m["a", "c"] == 0


@settings(max_examples=150, deadline=None)
@given(st.integers(2, 5), st.integers(0, 10_000))
def test_strengths_match_simple_path_enumeration(m, seed):
    e = random_election(random.Random(seed), m)
    net = compute_net_advantage(e)
    assert strongest_paths(net).rows() == path_strengths(net)
    assert winners(e) == oracle_winners(e)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 6), st.integers(0, 10_000))
def test_winner_set_never_empty(m, seed):
    e = random_election(random.Random(seed), m)
    assert winners(e)


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 5), st.integers(0, 10_000))
def test_ballot_order_and_splitting_irrelevant(m, seed):
    rng = random.Random(seed)
    e = random_election(rng, m)
    split = [(1, r) for n, r in e.ballots for _ in range(n)]
    rng.shuffle(split)
    assert winners(Election(e.candidates, tuple(split))) == winners(e)
    assert winners(e.merged()) == winners(e)


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 6), st.integers(0, 10_000))
def test_condorcet_winner_is_sole_winner(m, seed):
    e = random_election(random.Random(seed), m)
    for c in e.candidates:
        if is_condorcet_winner(e, c):
            assert winners(e) == (c,)


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 6), st.integers(0, 10_000))
def test_strength_dominates_direct_margin(m, seed):
    net = compute_net_advantage(random_election(random.Random(seed), m))
    s = strongest_paths(net)
    for a in net.candidates:
        for b in net.candidates:
            if a != b:
                assert s[a, b] >= net[a, b]
