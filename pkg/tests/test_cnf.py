import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from schulzectl.cnf import CnfFormula, desk_suite, parse_dimacs, random_3cnf, to_dimacs
from schulzectl.election import ValidationError

SAMPLE = """c a comment
p cnf 3 2
1 -2 3 0
-1 2
 -3 0
"""


def test_parse_sample():
    f = parse_dimacs(SAMPLE)
    assert f.variable_count == 3
    assert f.clauses == ((1, -2, 3), (-1, 2, -3))


def test_round_trip():
    f = parse_dimacs(SAMPLE)
    assert parse_dimacs(to_dimacs(f)) == f


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("1 2 3 0\n", "before"),
        ("p cnf 3 1\n1 2 3\n", "terminated"),
        ("p cnf 3 2\n1 2 3 0\n", "announces"),
        ("p cnf 2 1\n1 2 3 0\n", "out of range"),
        ("p cnf 3 1\n1 2 0\n", "3 literals"),
        ("p cnf 3 1\n1 x 3 0\n", "non-integer"),
        ("", "header"),
        ("p dnf 3 1\n", "problem line"),
    ],
)
def test_parse_errors(text, fragment):
    with pytest.raises(ValidationError, match=fragment):
        parse_dimacs(text)


def test_strict_mode():
    CnfFormula(1, ((1, 1, -1),))
    with pytest.raises(ValidationError, match="distinct"):
        CnfFormula(1, ((1, 1, -1),), strict=True)


def test_unsatisfiable_pair():
    f = CnfFormula(1, ((1, 1, 1), (-1, -1, -1)))
    assert not f.is_satisfiable()
    assert list(f.satisfying_assignments()) == []


@settings(max_examples=100, deadline=None)
@given(st.integers(3, 5), st.integers(1, 8), st.integers(0, 10_000))
def test_models_match_direct_check(n, k, seed):
    f = random_3cnf(n, k, random.Random(seed))
    want = [
        bits
        for bits in itertools.product((False, True), repeat=n)
        if all(any((l > 0) == bits[abs(l) - 1] for l in c) for c in f.clauses)
    ]
    assert list(f.satisfying_assignments()) == want


def test_desk_suite_shape():
    suite = desk_suite()
    assert len(suite) == len({(f.variable_count, f.clauses) for f in suite})
    assert any(not f.is_satisfiable() for f in suite)
    assert CnfFormula(1, ((1, 1, 1), (-1, -1, -1))) in suite
    for f in suite:
        assert f.variable_count <= 2 and 1 <= f.clause_count <= 2
        assert {abs(l) for c in f.clauses for l in c} == set(range(1, f.variable_count + 1))


def test_satisfied_when():
    f = CnfFormula(2, ((1, 2, 2), (-1, 2, 2)))
    assert f.satisfied_when(1, True) == [0]
    assert f.satisfied_when(1, False) == [1]
