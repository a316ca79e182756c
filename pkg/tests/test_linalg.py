from __future__ import annotations

from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Matrix as SymMatrix

from tautilt.fields import Field, fraction_str
from tautilt.linalg import Matrix, Subspace, determinant, solve_homogeneous, solve_square

Q = Field()

small = st.integers(min_value=-4, max_value=4)


def dense(rows, ncols):
    return st.lists(st.lists(small, min_size=ncols, max_size=ncols), min_size=rows, max_size=rows)


def to_matrix(data):
    return Matrix.from_dense([[Q(x) for x in row] for row in data], Q, len(data), len(data[0]) if data else 0)


def test_field_parse_and_format():
    assert Field.parse("Q").name == "Q"
    assert Field.parse("F2").name == "F2"
    assert fraction_str(Fraction(3, 4)) == "3/4"
    assert fraction_str(2) == "2/1"


@settings(max_examples=40, deadline=None)
@given(dense(3, 4), dense(4, 2))
def test_matmul_matches_sympy(a, b):
    got = (to_matrix(a) @ to_matrix(b)).to_dense(Q(0))
    want = (SymMatrix(a) * SymMatrix(b)).tolist()
    assert [[Q.to_fraction(x) for x in row] for row in got] == [[Fraction(int(x)) for x in row] for row in want]


@settings(max_examples=40, deadline=None)
@given(dense(4, 4))
def test_rank_and_determinant_match_sympy(a):
    M = to_matrix(a)
    assert M.rank() == SymMatrix(a).rank()
    assert Q.to_fraction(determinant(a, Q.domain)) == SymMatrix(a).det()


@settings(max_examples=40, deadline=None)
@given(dense(3, 5))
def test_homogeneous_solutions_are_solutions(a):
    eqs = [{j: Q(x) for j, x in enumerate(row) if x} for row in a]
    basis, _ = solve_homogeneous(eqs, 5, Q(1))
    assert len(basis) == 5 - SymMatrix(a).rank()
    for v in basis:
        for e in eqs:
            assert sum((c * v.get(j, Q(0)) for j, c in e.items()), Q(0)) == 0


@settings(max_examples=40, deadline=None)
@given(dense(3, 4), dense(1, 4))
def test_subspace_membership(a, extra):
    vecs = [{j: Q(x) for j, x in enumerate(row) if x} for row in a]
    S = Subspace(vecs, 4)
    for v in vecs:
        assert S.contains(v)
    w = {j: Q(x) for j, x in enumerate(extra[0]) if x}
    assert S.contains(w) == (SymMatrix(a + extra).rank() == SymMatrix(a).rank())


def test_solve_square():
    rows = [[Q(2), Q(1)], [Q(1), Q(1)]]
    assert solve_square(rows, [Q(3), Q(2)], Q.domain) == [Q(1), Q(1)]


def test_prime_field_arithmetic():
    F2 = Field(2)
    M = Matrix.from_dense([[F2(1), F2(1)], [F2(1), F2(1)]], F2, 2, 2)
    assert M.rank() == 1
    assert (M @ M).is_zero()
