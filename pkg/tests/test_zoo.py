from __future__ import annotations

import pytest

from tautilt.errors import BadParams, UnsupportedFamily
from tautilt.modules import (indec_projective, induce_along_quotient, is_indecomposable,
                             is_isomorphic)
from tautilt.zoo import (DOCUMENTED_DIMS, oracle_indecomposables, oracle_support_tau_tilting,
                         parse_preset, preset, preset_from_string, preset_quotient_pair)

CASES = [("linear_A", (n,)) for n in range(1, 7)] + [
    ("kronecker", ()), ("tilted_A3", ()), ("cluster_tilted_A3", ()),
    ("cyclic_nakayama", (1, 2)), ("cyclic_nakayama", (2, 2)), ("cyclic_nakayama", (3, 2)),
    ("cyclic_nakayama", (2, 3)), ("cyclic_nakayama", (4, 4)),
]


@pytest.mark.parametrize("family,params", CASES)
def test_documented_dimensions(family, params):
    assert preset(family, params).build().dim == DOCUMENTED_DIMS[family](*params)


def test_named_presets():
    assert preset("linear_A", (2,)).build().dim == 3
    assert preset("kronecker").build().dim == 4
    assert preset("tilted_A3").build().dim == 5
    assert parse_preset("cyclic_nakayama:3,2") == ("cyclic_nakayama", (3, 2))
    assert preset_from_string("linear_A:4").build().n == 4


def test_bad_params():
    with pytest.raises(BadParams):
        preset("linear_A", (7,))
    with pytest.raises(BadParams):
        preset("linear_A", ())
    with pytest.raises(BadParams):
        preset("wild", ())
    with pytest.raises(BadParams):
        parse_preset("linear_A:x")


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_interval_oracle(n):
    mods = oracle_indecomposables("linear_A", (n,))
    assert len(mods) == n * (n + 1) // 2
    assert all(is_indecomposable(M) for M in mods)
    for i, X in enumerate(mods):
        for Y in mods[i + 1:]:
            assert not is_isomorphic(X, Y)


def test_kronecker_oracle():
    mods = oracle_indecomposables("kronecker", depth=1)
    assert [M.dims for M in mods] == [(0, 1), (1, 2)]
    A = mods[0].algebra
    assert is_isomorphic(mods[0], indec_projective(A, 1))
    assert is_isomorphic(mods[1], indec_projective(A, 0))
    both = oracle_indecomposables("kronecker", depth=2, side="both")
    assert len(both) == 6


def test_unsupported_oracles():
    with pytest.raises(UnsupportedFamily):
        oracle_indecomposables("linear_A", (5,))
    with pytest.raises(UnsupportedFamily):
        oracle_support_tau_tilting("kronecker")
    with pytest.raises(UnsupportedFamily):
        oracle_indecomposables("cluster_tilted_A3")


@pytest.mark.parametrize("n,count", [(2, 5), (3, 14), (4, 42)])
def test_catalan_counts(n, count):
    assert len(oracle_support_tau_tilting("linear_A", (n,))) == count


def test_quotient_pair():
    B, C, data = preset_quotient_pair()
    Balg, Calg = B.build(), C.build()
    assert Balg.dim - Calg.dim == 1
    assert data.kind == "relations" and data.parent is B
    for i in range(3):
        assert is_isomorphic(induce_along_quotient(indec_projective(Balg, i), C), indec_projective(Calg, i))
