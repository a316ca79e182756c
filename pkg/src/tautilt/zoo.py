"""Preset algebra families and independent closed-form oracles."""
from __future__ import annotations

from itertools import combinations
from typing import Sequence

from .algebra import (AlgebraPresentation, Quiver, QuotientData, Relation,
                      quotient_by_relations)
from .errors import BadParams, UnsupportedFamily
from .fields import Field, QQ_FIELD
from .modules import Module, hom, is_projective, tau
from .tilting import TauPair

FAMILIES = ("linear_A", "kronecker", "cyclic_nakayama", "tilted_A3", "cluster_tilted_A3")
MAX_N = 6


def _arrow_name(k: int) -> str:
    return "abcdefghijklmnopqrstuvwxyz"[k]


def linear_A(n: int, field: Field = QQ_FIELD) -> AlgebraPresentation:
    """1 -> 2 -> ... -> n with arrows a, b, c, ..."""
    if not 1 <= n <= MAX_N:
        raise BadParams(f"linear_A needs 1 <= n <= {MAX_N}")
    q = Quiver.from_labels([str(i + 1) for i in range(n)],
                           [(_arrow_name(i), str(i + 1), str(i + 2)) for i in range(n - 1)])
    return AlgebraPresentation(q, (), field, max(n, 2))


def kronecker(field: Field = QQ_FIELD) -> AlgebraPresentation:
    q = Quiver.from_labels(["1", "2"], [("a", "1", "2"), ("b", "1", "2")])
    return AlgebraPresentation(q, (), field, 2)


def cyclic_nakayama(n: int, length: int, field: Field = QQ_FIELD) -> AlgebraPresentation:
    """Oriented n-cycle with arrows x1..xn modulo all paths of the given length."""
    if not 1 <= n <= MAX_N or not 2 <= length <= MAX_N:
        raise BadParams(f"cyclic_nakayama needs 1 <= n <= {MAX_N} and 2 <= length <= {MAX_N}")
    labels = [str(i + 1) for i in range(n)]
    q = Quiver.from_labels(labels, [(f"x{i + 1}", labels[i], labels[(i + 1) % n]) for i in range(n)])
    rels = []
    for start in range(n):
        word = ".".join(f"x{(start + t) % n + 1}" for t in range(length))
        rels.append(Relation.path(q, word))
    return AlgebraPresentation(q, tuple(rels), field, length + 1)


def tilted_A3(field: Field = QQ_FIELD) -> AlgebraPresentation:
    q = Quiver.from_labels(["1", "2", "3"], [("a", "1", "2"), ("b", "2", "3")])
    return AlgebraPresentation(q, (Relation.path(q, "a.b"),), field, 3)


def cluster_tilted_A3(field: Field = QQ_FIELD) -> AlgebraPresentation:
    """The 3-cycle a: 1 -> 2, b: 2 -> 3, c: 3 -> 1 with every length-two path zero."""
    q = Quiver.from_labels(["1", "2", "3"], [("a", "1", "2"), ("b", "2", "3"), ("c", "3", "1")])
    rels = tuple(Relation.path(q, w) for w in ("a.b", "b.c", "c.a"))
    return AlgebraPresentation(q, rels, field, 3)


DOCUMENTED_DIMS = {
    "linear_A": lambda n: n * (n + 1) // 2,
    "kronecker": lambda: 4,
    "cyclic_nakayama": lambda n, length: n * length,
    "tilted_A3": lambda: 5,
    "cluster_tilted_A3": lambda: 6,
}


def preset(family: str, params: Sequence[int] = (), field: Field = QQ_FIELD) -> AlgebraPresentation:
    params = tuple(int(p) for p in params)
    makers = {"linear_A": (linear_A, 1), "kronecker": (kronecker, 0),
              "cyclic_nakayama": (cyclic_nakayama, 2), "tilted_A3": (tilted_A3, 0),
              "cluster_tilted_A3": (cluster_tilted_A3, 0)}
    if family not in makers:
        raise BadParams(f"unknown family {family!r}; known: {', '.join(FAMILIES)}")
    make, arity = makers[family]
    if len(params) != arity:
        raise BadParams(f"{family} takes {arity} parameter(s)")
    return make(*params, field=field)


def parse_preset(text: str) -> tuple[str, tuple[int, ...]]:
    """``"linear_A:3"`` -> ("linear_A", (3,)); ``"cyclic_nakayama:3,2"`` -> (..., (3, 2))."""
    family, _, rest = text.partition(":")
    try:
        params = tuple(int(x) for x in rest.split(",") if x.strip()) if rest else ()
    except ValueError:
        raise BadParams(f"bad preset parameters in {text!r}") from None
    return family.strip(), params


def preset_from_string(text: str, field: Field = QQ_FIELD) -> AlgebraPresentation:
    family, params = parse_preset(text)
    return preset(family, params, field)


def preset_quotient_pair(field: Field = QQ_FIELD) -> tuple[AlgebraPresentation, AlgebraPresentation, QuotientData]:
    """(B, C, data): B cluster-tilted of type A_3 and C = B / <c>, the tilted algebra."""
    B = cluster_tilted_A3(field)
    C = quotient_by_relations(B, ["c"])
    return B, C, C.origin


# oracles -----------------------------------------------------------------

def _interval(A, n: int, i: int, j: int) -> Module:
    """Interval module supported on vertices i..j of a linear quiver (0-based, inclusive)."""
    dims = [1 if i <= v <= j else 0 for v in range(n)]
    mats = {_arrow_name(v): [[1]] for v in range(i, j)}
    return Module.from_dense(A, dims, mats)


def _uniserial(A, n: int, top: int, length: int) -> Module:
    """Uniserial module of the cyclic Nakayama algebra with top at ``top``."""
    dims = [0] * n
    pos = []
    for t in range(length):
        v = (top + t) % n
        pos.append((v, dims[v]))
        dims[v] += 1
    mats = {f"x{v + 1}": [[0] * dims[(v + 1) % n] for _ in range(dims[v])] for v in range(n)}
    for t in range(length - 1):
        (v, r), (w, c) = pos[t], pos[t + 1]
        mats[f"x{v + 1}"][r][c] = 1
    return Module.from_dense(A, dims, {k: m for k, m in mats.items() if m})


def kronecker_preprojective(A, k: int) -> Module:
    """Dimension (k, k+1): a = [I | 0], b = [0 | I]."""
    a = [[int(c == r) for c in range(k + 1)] for r in range(k)]
    b = [[int(c == r + 1) for c in range(k + 1)] for r in range(k)]
    return Module.from_dense(A, [k, k + 1], {"a": a, "b": b})


def kronecker_preinjective(A, k: int) -> Module:
    """Dimension (k+1, k): a = [I ; 0], b = [0 ; I]."""
    a = [[int(c == r) for c in range(k)] for r in range(k + 1)]
    b = [[int(c == r - 1) for c in range(k)] for r in range(k + 1)]
    return Module.from_dense(A, [k + 1, k], {"a": a, "b": b})


def oracle_indecomposables(family: str, params: Sequence[int] = (), *, depth: int = 1,
                           side: str = "preprojective", algebra=None) -> list[Module]:
    """Closed-form indecomposables.

    ``algebra`` may be any built algebra with the same quiver (for instance
    a quotient presentation or a prime field version); by default the preset
    is built over the rationals."""
    params = tuple(params)
    if family == "linear_A":
        (n,) = params
        if n > 4:
            raise UnsupportedFamily("interval oracle is limited to n <= 4")
        A = algebra or linear_A(n).build()
        return [_interval(A, n, i, j) for i in range(n) for j in range(i, n)]
    if family == "tilted_A3":
        A = algebra or tilted_A3().build()
        return [_interval(A, 3, i, j) for i in range(3) for j in range(i, 3) if (i, j) != (0, 2)]
    if family == "cyclic_nakayama":
        n, length = params
        if n > 4 or length > 4:
            raise UnsupportedFamily("Nakayama oracle is limited to n, length <= 4")
        A = algebra or cyclic_nakayama(n, length).build()
        return [_uniserial(A, n, top, l) for top in range(n) for l in range(1, length + 1)]
    if family == "kronecker":
        A = algebra or kronecker().build()
        out = []
        if side in ("preprojective", "both"):
            out += [kronecker_preprojective(A, k) for k in range(depth + 1)]
        if side in ("preinjective", "both"):
            out += [kronecker_preinjective(A, k) for k in range(depth + 1)]
        if not out:
            raise BadParams(f"unknown side {side!r}")
        return out
    raise UnsupportedFamily(f"no indecomposable oracle for {family!r}")


def _tau_hom_zero(X: Module, Y: Module) -> bool:
    """Hom(X, tau Y) = 0, computed through tau and a Hom basis."""
    if is_projective(Y):
        return True
    return hom(X, tau(Y)).dim == 0


def oracle_support_tau_tilting(family: str, params: Sequence[int] = (), *, algebra=None) -> list[TauPair]:
    """Brute force: maximal compatible sets of oracle indecomposables and projective vertices."""
    if family not in ("linear_A", "cyclic_nakayama", "tilted_A3"):
        raise UnsupportedFamily(f"no support tau-tilting oracle for {family!r}")
    mods = oracle_indecomposables(family, params, algebra=algebra)
    A = mods[0].algebra
    n = A.n
    rigid = [M for M in mods if _tau_hom_zero(M, M)]
    items = [("M", k) for k in range(len(rigid))] + [("P", v) for v in range(n)]

    def compatible(x, y) -> bool:
        if x[0] == "P" and y[0] == "P":
            return True
        if x[0] == "P" or y[0] == "P":
            (_, v), (_, k) = (x, y) if x[0] == "P" else (y, x)
            return rigid[k].dims[v] == 0
        X, Y = rigid[x[1]], rigid[y[1]]
        return _tau_hom_zero(X, Y) and _tau_hom_zero(Y, X)

    ok = {(a, b): compatible(items[a], items[b]) for a, b in combinations(range(len(items)), 2)}
    out = []
    for combo in combinations(range(len(items)), n):
        if all(ok[(a, b)] for a, b in combinations(combo, 2)):
            ms = [rigid[items[c][1]] for c in combo if items[c][0] == "M"]
            ps = [items[c][1] for c in combo if items[c][0] == "P"]
            out.append(TauPair.from_modules(A, ms, ps))
    return out
