from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tautilt.algebra import quotient_by_relations
from tautilt.errors import NonSplitResidue, UnsupportedField, ZeroModule
from tautilt.fields import Field
from tautilt.modules import (Module, decompose, direct_sum, dual, fac_contains, hom, hom_basis,
                             hom_to_tau_vanishes, indec_injective, indec_projective,
                             induce_along_quotient, injective_dimension, is_indecomposable,
                             is_isomorphic, is_projective, is_tau_rigid, min_projective_presentation,
                             parse_module_literal, format_module_literal, projective_dimension,
                             regular_module, simple, tau, tau_inverse, Morphism)
from tautilt.zoo import (cyclic_nakayama, kronecker, kronecker_preinjective,
                         kronecker_preprojective, linear_A, oracle_indecomposables)

from test_algebra import loop


@pytest.fixture(scope="module")
def A2():
    return linear_A(2).build()


def test_projectives(A2):
    assert indec_projective(A2, 0).dims == (1, 1)
    assert indec_projective(A2, 1).dims == (0, 1)
    assert is_isomorphic(indec_projective(A2, 1), simple(A2, 1))
    assert indec_projective(loop(2).build(), 0).dims == (2,)


def test_hom_examples(A2):
    P1, S1, S2 = indec_projective(A2, 0), simple(A2, 0), simple(A2, 1)
    assert hom_basis(P1, S2) == []
    assert hom(P1, S1).dim == 1
    for M in (P1, S1, S2):
        H = hom(M, M)
        assert any(f.is_iso() for f in H.basis) or H.dim >= 1
        assert H.coords(Morphism.identity(M)) is not None


def test_presentation_examples(A2):
    pres = min_projective_presentation(simple(A2, 0))
    assert pres.a == (1, 0) and pres.b == (0, 1)
    assert pres.g_vector == (1, -1)
    for i in range(2):
        p = min_projective_presentation(indec_projective(A2, i))
        assert p.a == tuple(int(j == i) for j in range(2)) and p.b == (0, 0)
    R = loop(2).build()
    p = min_projective_presentation(simple(R, 0))
    assert p.a == (1,) and p.b == (1,)
    with pytest.raises(ZeroModule):
        min_projective_presentation(Module.zero(A2))


def test_tau_examples(A2):
    assert is_isomorphic(tau(simple(A2, 0)), simple(A2, 1))
    for i in range(2):
        assert tau(indec_projective(A2, i)).is_zero()
    K = kronecker().build()
    assert tau(kronecker_preprojective(K, 1)).is_zero()
    assert tau(kronecker_preprojective(K, 2)).dims == (0, 1)
    assert is_isomorphic(tau(kronecker_preprojective(K, 3)), kronecker_preprojective(K, 1))
    assert is_isomorphic(tau(kronecker_preinjective(K, 0)), kronecker_preinjective(K, 2))


def test_decompose_examples(A2):
    P1 = indec_projective(A2, 0)
    parts = decompose(direct_sum([P1, P1]))
    assert len(parts) == 1 and parts[0][1] == 2 and is_isomorphic(parts[0][0], P1)
    parts = decompose(regular_module(A2))
    assert sorted(X.dims for X, _ in parts) == [(0, 1), (1, 1)]
    S = simple(A2, 0)
    assert decompose(S) == [(S, 1)] or is_isomorphic(decompose(S)[0][0], S)


def test_decompose_detects_non_split_residue():
    # a = identity, b = rotation by a quarter turn: End is the Gaussian rationals
    K = kronecker().build()
    M = Module.from_dense(K, [2, 2], {"a": [[1, 0], [0, 1]], "b": [[0, -1], [1, 0]]})
    with pytest.raises(NonSplitResidue):
        decompose(M)


def test_decompose_needs_characteristic_zero():
    B = linear_A(2, Field(2)).build()
    with pytest.raises(UnsupportedField):
        decompose(simple(B, 0))


def test_rigidity_examples(A2):
    P1, S1, S2 = indec_projective(A2, 0), simple(A2, 0), simple(A2, 1)
    assert is_tau_rigid(P1) and is_tau_rigid(S2)
    assert not is_tau_rigid(direct_sum([S1, S2]))
    assert is_tau_rigid(direct_sum([P1, S1]))


def test_fac_examples(A2):
    P1, S1 = indec_projective(A2, 0), simple(A2, 0)
    R = regular_module(A2)
    for M in oracle_indecomposables("linear_A", (2,), algebra=A2):
        assert fac_contains(R, M)
    assert not fac_contains(S1, P1)
    assert fac_contains(P1, S1)


def test_induction_examples():
    K = kronecker()
    B = quotient_by_relations(K, ["b"])
    Kalg, Balg = K.build(), B.build()
    P1 = indec_projective(Kalg, 0)
    assert P1.dims == (1, 2)
    induced = induce_along_quotient(P1, B)
    assert induced.dims == (1, 1)
    assert is_isomorphic(induced, indec_projective(Balg, 0))
    # a module on which b already acts as zero is unchanged
    M = Module.from_dense(Kalg, [1, 1], {"a": [[1]], "b": [[0]]})
    assert induce_along_quotient(M, B).dims == (1, 1)


def test_dimensions_and_duals():
    A = linear_A(3).build()
    P1, I3 = indec_projective(A, 0), indec_injective(A, 2)
    assert projective_dimension(P1) == 0
    assert projective_dimension(simple(A, 0)) == 1
    assert injective_dimension(I3) == 0
    assert is_isomorphic(dual(dual(simple(A, 1))), simple(A, 1))


def test_module_literal_round_trip():
    A = kronecker().build()
    M = parse_module_literal(A, "1,2;a=1 0;b=0 1/2")
    assert M.dims == (1, 2)
    again = parse_module_literal(A, format_module_literal(M))
    assert is_isomorphic(M, again)


# property checks over oracle module families

def family_modules():
    out = []
    for fam, params in [("linear_A", (3,)), ("tilted_A3", ()), ("cyclic_nakayama", (3, 2)),
                        ("cyclic_nakayama", (2, 3))]:
        out += [(fam + str(params), M) for M in oracle_indecomposables(fam, params)]
    K = kronecker().build()
    out += [("kronecker", M) for M in oracle_indecomposables("kronecker", side="both", depth=3, algebra=K)]
    return out


FAMILY = family_modules()


@pytest.mark.parametrize("fam,M", FAMILY, ids=[f"{f}-{M.dims}" for f, M in FAMILY])
def test_presentations_are_exact_and_minimal(fam, M):
    pres = min_projective_presentation(M)
    assert pres.check_exact()
    assert pres.check_radical()


@pytest.mark.parametrize("fam,M", FAMILY, ids=[f"{f}-{M.dims}" for f, M in FAMILY])
def test_tau_vanishes_exactly_on_projectives(fam, M):
    assert is_indecomposable(M)
    assert tau(M).is_zero() == is_projective(M)
    if not is_projective(M):
        assert is_isomorphic(tau_inverse(tau(M)), M)


@pytest.mark.parametrize("fam", ["linear_A(3,)", "tilted_A3()", "cyclic_nakayama(3, 2)", "cyclic_nakayama(2, 3)"])
def test_tau_hom_criteria_agree(fam):
    mods = [M for f, M in FAMILY if f == fam]
    for X in mods:
        for Y in mods:
            tau_route = is_projective(Y) or hom(X, tau(Y)).dim == 0
            assert hom_to_tau_vanishes(X, Y) == tau_route


@pytest.mark.parametrize("fam", ["linear_A(3,)", "cyclic_nakayama(3, 2)", "kronecker"])
def test_decompose_is_idempotent_and_fac_is_a_preorder(fam):
    mods = [M for f, M in FAMILY if f == fam][:6]
    for M in mods:
        parts = decompose(M)
        assert len(parts) == 1 and parts[0][1] == 1
        assert fac_contains(M, M)
    for X in mods:
        for Y in mods:
            for Z in mods:
                if fac_contains(X, Y) and fac_contains(Y, Z):
                    assert fac_contains(X, Z)


def test_induction_preserves_projectives():
    for base, extra in [(kronecker(), ["b"]), (linear_A(3), ["a.b"]), (cyclic_nakayama(3, 3), ["x1.x2"])]:
        B = quotient_by_relations(base, extra)
        A, Balg = base.build(), B.build()
        for i in range(A.n):
            assert is_isomorphic(induce_along_quotient(indec_projective(A, i), B), indec_projective(Balg, i))


entries = st.integers(min_value=-2, max_value=2)


@st.composite
def a3_modules(draw):
    A = linear_A(3).build()
    d = [draw(st.integers(min_value=0, max_value=2)) for _ in range(3)]
    a = [[draw(entries) for _ in range(d[1])] for _ in range(d[0])]
    b = [[draw(entries) for _ in range(d[2])] for _ in range(d[1])]
    return Module.from_dense(A, d, {"a": a, "b": b})


@settings(max_examples=30, deadline=None)
@given(a3_modules())
def test_random_modules_decompose_consistently(M):
    if M.is_zero():
        return
    parts = decompose(M)
    dims = [sum(m * X.dims[v] for X, m in parts) for v in range(3)]
    assert tuple(dims) == M.dims
    rebuilt = direct_sum([X for X, m in parts for _ in range(m)])
    assert is_isomorphic(rebuilt, M)
    pres = min_projective_presentation(M)
    assert pres.check_exact() and pres.check_radical()
    for X, _ in parts:
        assert decompose(X)[0][1] == 1 and len(decompose(X)) == 1
