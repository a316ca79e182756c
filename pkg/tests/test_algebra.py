from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tautilt.algebra import (AlgebraPresentation, Quiver, Relation, parse_algebra_text,
                             quotient_by_idempotent, quotient_by_relations)
from tautilt.errors import (EmptyOrFullVertexSet, MalformedRelation, NotAdmissibleWithinCap,
                            ParseError)
from tautilt.fields import Field
from tautilt.zoo import kronecker, linear_A, tilted_A3


def loop(power, cap=None):
    q = Quiver.from_labels(["1"], [("x", "1", "1")])
    return AlgebraPresentation(q, (Relation.path(q, ".".join(["x"] * power)),), Field(), cap or power + 1)


def test_truncated_loop_basis():
    A = loop(2).build()
    assert A.dim == 2
    assert [p.length for p in A.basis] == [0, 1]


def test_linear_a3_with_zero_relation():
    assert tilted_A3().build().dim == 5
    assert linear_A(3).build().dim == 6


def test_kronecker_quotient_is_a2():
    B = quotient_by_relations(kronecker(), ["b"])
    assert B.build().dim == 3
    assert B.quiver.n == 2 and len(B.quiver.arrows) == 1
    assert B.origin.kind == "relations"


def test_empty_quotient_keeps_basis():
    A = linear_A(2)
    B = quotient_by_relations(A, [])
    assert [p.key for p in B.build().basis] == [p.key for p in A.build().basis]


def test_loop_quotient_lowers_dimension():
    B = quotient_by_relations(loop(3), ["x.x"])
    assert loop(3).build().dim == 3
    assert B.build().dim == 2


def test_idempotent_quotients():
    assert quotient_by_idempotent(linear_A(2), ["1"]).build().dim == 1
    C = quotient_by_idempotent(tilted_A3(), ["2"])
    assert C.build().dim == 2 and not C.quiver.arrows
    assert list(C.quiver.vertices) == ["1", "3"]
    K = quotient_by_idempotent(kronecker(), ["2"])
    assert K.build().dim == 1 and list(K.quiver.vertices) == ["1"]


def test_idempotent_quotient_rejects_bad_sets():
    with pytest.raises(EmptyOrFullVertexSet):
        quotient_by_idempotent(linear_A(2), [])
    with pytest.raises(EmptyOrFullVertexSet):
        quotient_by_idempotent(linear_A(2), ["1", "2"])


def test_malformed_relations():
    q = Quiver.from_labels(["1", "2", "3"], [("a", "1", "2"), ("b", "2", "3")])
    with pytest.raises(MalformedRelation):
        Relation.parse(q, "b.a")
    with pytest.raises(MalformedRelation):
        quotient_by_relations(linear_A(3), ["a - b"])


def test_non_admissible_loop_rejected():
    q = Quiver.from_labels(["1"], [("x", "1", "1")])
    with pytest.raises(NotAdmissibleWithinCap):
        AlgebraPresentation(q, (), Field(), 5).build()


def test_text_round_trip():
    text = """
    # a commutative square
    vertex 1
    vertex 2
    vertex 3
    vertex 4
    arrow a: 1 -> 2
    arrow b: 2 -> 4
    arrow c: 1 -> 3
    arrow d: 3 -> 4
    relation a.b - c.d
    lengthcap 4
    """
    pres = parse_algebra_text(text)
    A = pres.build()
    assert A.dim == 9
    again = parse_algebra_text(pres.to_text())
    assert again.build().dim == 9
    assert again.to_text() == pres.to_text()


def test_parser_rejects_unknown_directive():
    with pytest.raises(ParseError):
        parse_algebra_text("vertex 1\nfrobnicate 2\n")


def test_prime_field_presentation():
    pres = parse_algebra_text("field F3\nvertex 1\nvertex 2\narrow a: 1 -> 2\n")
    assert pres.field.name == "F3"
    assert pres.build().dim == 3


@pytest.mark.parametrize("pres", [linear_A(3), tilted_A3(), kronecker(), loop(3)])
def test_structural_invariants(pres):
    A = pres.build()
    assert A.check_idempotents()
    assert A.check_associativity()
    assert A.radical_power_vanishes(A.loewy_length)
    Aop = A.opposite()
    assert Aop.dim == A.dim and Aop.opposite() is A


# random zero relations on the linear A_4 quiver
words = st.lists(st.sampled_from(["a.b", "b.c", "a.b.c"]), unique=True, max_size=3)


@settings(max_examples=20, deadline=None)
@given(words)
def test_random_quotients_shrink_and_stay_associative(extra):
    base = linear_A(4)
    B = quotient_by_relations(base, extra)
    A = B.build()
    assert A.dim <= base.build().dim
    assert (A.dim == base.build().dim) == (not extra)
    assert A.check_associativity()


@settings(max_examples=15, deadline=None)
@given(st.sampled_from(["1", "2", "3", "4"]), words)
def test_idempotent_quotient_matches_direct_build(drop, extra):
    pres = quotient_by_relations(linear_A(4), extra)
    B = quotient_by_idempotent(pres, [drop]).build()
    # paths of pres avoiding the dropped vertex
    A = pres.build()
    v = pres.quiver.vertex(drop)
    avoiding = [p for p in A.basis if v not in p.vertices_visited(pres.quiver)]
    assert B.dim == len(avoiding)
