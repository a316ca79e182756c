from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tautilt.errors import CapExceeded, UnsupportedField
from tautilt.fields import Field
from tautilt.modules import Module, direct_sum, indec_projective, simple
from tautilt.stability import is_theta_semistable, submodule_dim_vectors, submodules
from tautilt.zoo import linear_A

F2 = Field(2)


@pytest.fixture(scope="module")
def A2():
    return linear_A(2, F2).build()


def test_submodule_examples(A2):
    assert submodule_dim_vectors(simple(A2, 0)) == {(0, 0), (1, 0)}
    assert submodule_dim_vectors(indec_projective(A2, 0)) == {(0, 0), (0, 1), (1, 1)}
    assert submodule_dim_vectors(direct_sum([simple(A2, 0), simple(A2, 1)])) == {
        (0, 0), (1, 0), (0, 1), (1, 1)}


def test_submodule_count_matches_subspace_count():
    # semisimple S^2 over F_2 and F_3: all subspaces of a plane are submodules
    for p in (2, 3):
        A = linear_A(1, Field(p)).build()
        S = simple(A, 0)
        assert len(submodules(direct_sum([S, S]))) == 1 + (p + 1) + 1


def test_semistability_examples(A2):
    assert is_theta_semistable(simple(A2, 0), (0, 5))
    P1 = indec_projective(A2, 0)
    assert is_theta_semistable(P1, (1, -1))
    assert not is_theta_semistable(P1, (-1, 1))
    for M in (simple(A2, 0), P1):
        assert is_theta_semistable(M, (0, 0))


def test_caps():
    Q = linear_A(2).build()
    with pytest.raises(UnsupportedField):
        submodule_dim_vectors(simple(Q, 0))
    A = linear_A(1, Field(2)).build()
    S = simple(A, 0)
    with pytest.raises(CapExceeded):
        submodule_dim_vectors(direct_sum([S] * 11))
    with pytest.raises(UnsupportedField):
        submodule_dim_vectors(simple(linear_A(1, Field(5)).build(), 0))


entries = st.integers(min_value=0, max_value=1)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2), st.integers(0, 2), st.data())
def test_sums_of_submodules_are_submodules(d1, d2, data):
    A = linear_A(2, F2).build()
    a = [[data.draw(entries) for _ in range(d2)] for _ in range(d1)]
    M = Module.from_dense(A, [d1, d2], {"a": a})
    subs = submodules(M)
    dims = {tuple(len(S) for S in sub) for sub in subs}
    assert (0, 0) in dims and (d1, d2) in dims
    theta = (Fraction(d2), Fraction(-d1))
    assert is_theta_semistable(M, theta) == all(d2 * x - d1 * y <= 0 for x, y in dims)
