import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import random_margins
from schulzectl.election import PairMatrix, ValidationError, compute_net_advantage
from schulzectl.mcgarvey import relations_matrix, synthesize, synthesize_relations


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 6), st.integers(0, 10_000))
def test_round_trip(m, seed):
    target = random_margins(random.Random(seed), m)
    e = synthesize(target)
    assert compute_net_advantage(e).values == target.values
    total = sum(abs(target.values[i][j]) for i in range(m) for j in range(i + 1, m))
    assert e.voter_count == total


def test_zero_matrix_needs_no_voters():
    e = synthesize(PairMatrix.from_pairs(("a", "b"), {}))
    assert e.voter_count == 0


def test_odd_margin_rejected():
    with pytest.raises(ValidationError, match="parity"):
        synthesize(PairMatrix.from_pairs(("a", "b"), {("a", "b"): 3}))


def test_non_skew_rejected():
    with pytest.raises(ValidationError, match="skew"):
        synthesize(PairMatrix(("a", "b"), ((0, 2), (2, 0))))


def test_nonzero_diagonal_rejected():
    with pytest.raises(ValidationError, match="diagonal"):
        synthesize(PairMatrix(("a", "b"), ((2, 0), (0, 0))))


def test_relations_defaults_to_ties():
    e = synthesize_relations(("a", "b", "c"), [("a", "b", 4), ("c", "a", 2)])
    net = compute_net_advantage(e)
    assert (net["a", "b"], net["c", "a"], net["b", "c"]) == (4, 2, 0)


@pytest.mark.parametrize(
    "rels, fragment",
    [
        ([("a", "z", 2)], "unknown candidate"),
        ([("a", "a", 2)], "itself"),
        ([("a", "b", 2), ("b", "a", 2)], "listed twice"),
    ],
)
def test_relation_errors(rels, fragment):
    with pytest.raises(ValidationError, match=fragment):
        relations_matrix(("a", "b"), rels)
