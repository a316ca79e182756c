"""Support tau-tilting pairs, g-vectors and mutation."""
from __future__ import annotations

import threading
from typing import Iterable, Sequence

from .algebra import Algebra
from .errors import (ExchangeFailure, InvariantViolation, NotIndecomposable,
                     NotTauTilting)
from .linalg import Matrix, Subspace, left_kernel
from .modules import (Module, Morphism, cokernel, decompose,
                      direct_sum, fac_contains, hom, indec_projective,
                      is_isomorphic, is_projective, min_projective_presentation,
                      tau, transpose)

_LOCK = threading.RLock()


class Summand:
    """An indecomposable pair: a tau-rigid module ``(M, 0)`` or a shifted projective ``(0, P(i))``."""

    __slots__ = ("g", "module", "vertex")

    def __init__(self, g: Sequence[int], module: Module | None = None, vertex: int | None = None):
        self.g = tuple(g)
        self.module = module
        self.vertex = vertex

    @property
    def is_shifted(self) -> bool:
        return self.module is None

    def __eq__(self, other):
        return isinstance(other, Summand) and self.g == other.g

    def __hash__(self):
        return hash(self.g)

    def __repr__(self):
        if self.module is None:
            return f"Summand(P({self.vertex})[1], g={self.g})"
        return f"Summand(dims={self.module.dims}, g={self.g})"


def canonical(M: Module) -> Module:
    """The registered representative of a tau-rigid indecomposable, keyed by g-vector."""
    A = M.algebra
    g = min_projective_presentation(M).g_vector
    with _LOCK:
        reg = A.cache.setdefault("registry", {})
        N = reg.get(g)
        if N is None:
            reg[g] = M
            return M
    if N.dims != M.dims:
        raise InvariantViolation(f"two tau-rigid modules share the g-vector {g}")
    return N


def module_summand(M: Module) -> Summand:
    M = canonical(M)
    return Summand(min_projective_presentation(M).g_vector, module=M)


def shifted_projective(A: Algebra, i: int) -> Summand:
    return Summand(tuple(-1 if v == i else 0 for v in range(A.n)), vertex=i)


def projective_vertex(M: Module) -> int | None:
    """i when M is isomorphic to P(i), else None."""
    if not is_projective(M):
        return None
    top = min_projective_presentation(M).top_vertices
    return top[0] if len(top) == 1 else None


class TauPair:
    """A basic pair (M, P): M a list of indecomposables, P a set of vertices.

    Summands are kept sorted by g-vector; slot ``k`` is the k-th of them."""

    def __init__(self, algebra: Algebra, summands: Iterable[Summand]):
        self.algebra = algebra
        self.summands = tuple(sorted(summands, key=lambda s: s.g))
        self.key = tuple(s.g for s in self.summands)
        if len(set(self.key)) != len(self.key):
            raise InvariantViolation("pair is not basic")

    @classmethod
    def from_modules(cls, algebra: Algebra, modules: Iterable[Module] = (),
                     projectives: Iterable[int] = ()) -> TauPair:
        out = []
        for M in modules:
            if M.is_zero():
                continue
            for X, _ in decompose(M):
                out.append(module_summand(X))
        out.extend(shifted_projective(algebra, i) for i in projectives)
        return cls(algebra, out)

    @classmethod
    def free(cls, algebra: Algebra) -> TauPair:
        """(A, 0)."""
        return cls(algebra, [module_summand(indec_projective(algebra, i)) for i in range(algebra.n)])

    @classmethod
    def shifted(cls, algebra: Algebra) -> TauPair:
        """(0, A)."""
        return cls(algebra, [shifted_projective(algebra, i) for i in range(algebra.n)])

    @property
    def modules(self) -> tuple[Module, ...]:
        return tuple(s.module for s in self.summands if not s.is_shifted)

    @property
    def projectives(self) -> frozenset[int]:
        return frozenset(s.vertex for s in self.summands if s.is_shifted)

    @property
    def size(self) -> int:
        return len(self.summands)

    def module_part(self) -> Module:
        mods = self.modules
        return direct_sum(mods) if mods else Module.zero(self.algebra)

    def dim_vectors(self) -> list[tuple[int, ...]]:
        return [s.module.dims for s in self.summands if not s.is_shifted]

    def contains(self, other: TauPair) -> bool:
        return set(other.key) <= set(self.key)

    def slot_of(self, s: Summand) -> int:
        return self.key.index(s.g)

    def __eq__(self, other):
        return isinstance(other, TauPair) and self.algebra is other.algebra and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"TauPair{self.key}"


def g_vector(p: TauPair) -> tuple[int, ...]:
    if p.size != 1:
        raise NotIndecomposable(f"pair has {p.size} summands")
    return p.summands[0].g


def _rigid(X: Module, Y: Module) -> bool:
    """Hom(X, tau Y) = 0."""
    if is_projective(Y):
        return True
    return hom(X, tau(Y)).dim == 0


def check_pair(p: TauPair) -> None:
    """Raise InvariantViolation unless p is a basic tau-rigid pair."""
    A = p.algebra
    cache = A.cache.setdefault("verified", set())
    if p.key in cache:
        return
    mods = p.modules
    for i in p.projectives:
        for M in mods:
            if M.dims[i]:
                raise InvariantViolation(f"Hom(P({i}), M) is nonzero")
    for X in mods:
        for Y in mods:
            if not _rigid(X, Y):
                raise InvariantViolation("module part is not tau-rigid")
    for a in range(len(mods)):
        for b in range(a + 1, len(mods)):
            if mods[a].dims == mods[b].dims and is_isomorphic(mods[a], mods[b]):
                raise InvariantViolation("module part is not basic")
    cache.add(p.key)


def is_tau_tilting(p: TauPair) -> bool:
    check_pair(p)
    return p.size == p.algebra.n


# mutation ----------------------------------------------------------------

def _radical_basis(U: Module) -> list[Morphism]:
    """Basis of rad End(U) for an indecomposable U (trace form kernel)."""
    cache = U.cache
    if "rad_end" in cache:
        return cache["rad_end"]
    E = hom(U, U)
    if E.dim == 1:
        out = []
    else:
        zero = U.algebra.K.zero
        rows = []
        for f in E.basis:
            row = {}
            for j, g in enumerate(E.basis):
                t = zero
                for F in f.then(g).maps:
                    t = t + F.trace(zero)
                if t:
                    row[j] = t
            rows.append(row)
        ker = left_kernel(Matrix.from_rows(rows, E.dim), U.algebra.K.one)
        out = [E.element([x.get(k, zero) for k in range(E.dim)]) for x in ker]
    cache["rad_end"] = out
    return out


def minimal_left_approximation(X: Module, U: Sequence[Module]) -> Morphism | None:
    """Minimal left add(U)-approximation of X, or None if Hom(X, U) = 0.

    The number of copies of U_k equals the dimension of the top of
    Hom(X, U_k) as a module over the endomorphisms of U: maps factoring
    through another U_l or through rad End(U_k) are discarded."""
    chosen: list[Morphism] = []
    for k, Uk in enumerate(U):
        H = hom(X, Uk)
        if H.dim == 0:
            continue
        S = Subspace([], H.dim)
        for l, Ul in enumerate(U):
            if l == k:
                continue
            through = hom(Ul, Uk).basis
            for g in hom(X, Ul).basis:
                for h in through:
                    S.add(_coords(H, g.then(h)))
        for g in H.basis:
            for r in _radical_basis(Uk):
                S.add(_coords(H, g.then(r)))
        one = X.algebra.K.one
        for j in range(H.dim):
            if S.add({j: one}):
                chosen.append(H.basis[j])
    if not chosen:
        return None
    target = direct_sum([f.target for f in chosen])
    maps = []
    for v in range(X.algebra.n):
        rows: dict = {}
        off = 0
        for f in chosen:
            F = f.maps[v]
            for r, row in F.rows.items():
                acc = rows.setdefault(r, {})
                for c, x in row.items():
                    acc[off + c] = x
            off += F.ncols
        maps.append(_matrix(rows, X.dims[v], target.dims[v]))
    return Morphism(X, target, tuple(maps))


def _matrix(rows, nr, nc):
    return Matrix({r: x for r, x in rows.items() if x}, nr, nc)


def _coords(H, f: Morphism) -> dict:
    return {j: x for j, x in enumerate(H.coords(f)) if x}


def left_exchange(A: Algebra, rest: Sequence[Summand], X: Module) -> Summand:
    """Replace the module summand X by the cokernel of its minimal left approximation."""
    U = [s.module for s in rest if not s.is_shifted]
    f = minimal_left_approximation(X, U)
    Y = cokernel(f) if f is not None else Module.zero(A)
    if Y.is_zero():
        taken = {s.vertex for s in rest if s.is_shifted}
        support = {v for M in U for v in range(A.n) if M.dims[v]}
        free = [v for v in range(A.n) if v not in taken and v not in support]
        if len(free) != 1:
            raise ExchangeFailure(f"expected one new projective vertex, found {free}")
        return shifted_projective(A, free[0])
    new = []
    for Z, _ in decompose(Y):
        if not any(Z.dims == M.dims and is_isomorphic(Z, M) for M in U):
            new.append(Z)
    if len(new) != 1:
        raise ExchangeFailure(f"cokernel has {len(new)} summands outside the complement")
    return module_summand(new[0])


def _dagger(A: Algebra, s: Summand) -> Summand:
    """The transpose-duality of indecomposable pairs, landing over the opposite algebra."""
    Aop = A.opposite()
    if s.is_shifted:
        return module_summand(indec_projective(Aop, s.vertex))
    i = projective_vertex(s.module)
    if i is not None:
        return shifted_projective(Aop, i)
    T = transpose(s.module)
    if "tr" not in T.cache:
        T.cache["tr"] = s.module
    return module_summand(T)


def mutate(p: TauPair, slot: int) -> TauPair:
    """The other tau-tilting pair sharing every summand of p except the one in ``slot``."""
    A = p.algebra
    if not is_tau_tilting(p):
        raise NotTauTilting("mutation needs a tau-tilting pair")
    if not 0 <= slot < p.size:
        raise IndexError(f"slot {slot} out of range")
    s = p.summands[slot]
    rest = [t for k, t in enumerate(p.summands) if k != slot]
    rest_mods = [t.module for t in rest if not t.is_shifted]
    if not s.is_shifted and not (rest_mods and fac_contains(direct_sum(rest_mods), s.module)):
        new = left_exchange(A, rest, s.module)
    else:
        # increasing direction: exchange on the opposite side and transport back
        Aop = A.opposite()
        rest_op = [_dagger(A, t) for t in rest]
        s_op = _dagger(A, s)
        rest_op_mods = [t.module for t in rest_op if not t.is_shifted]
        if s_op.is_shifted or (rest_op_mods and fac_contains(direct_sum(rest_op_mods), s_op.module)):
            raise ExchangeFailure("neither side admits a left exchange")
        new_op = left_exchange(Aop, rest_op, s_op.module)
        new = _dagger(Aop, new_op)
    out = TauPair(A, rest + [new])
    if new.g == s.g or out.size != A.n:
        raise ExchangeFailure("mutation did not change the chosen summand")
    try:
        ok = is_tau_tilting(out)
    except InvariantViolation as exc:
        raise ExchangeFailure(f"mutation result failed verification: {exc}") from None
    if not ok:
        raise ExchangeFailure("mutation result is not tau-tilting")
    return out


def new_slot(p: TauPair, q: TauPair) -> int:
    """Slot of q holding the summand not in p (q a mutation of p)."""
    diff = [k for k, g in enumerate(q.key) if g not in p.key]
    if len(diff) != 1:
        raise ValueError("pairs are not mutations of each other")
    return diff[0]


__all__ = ["Summand", "TauPair", "canonical", "check_pair", "g_vector", "is_tau_tilting",
           "left_exchange", "minimal_left_approximation", "module_summand", "mutate",
           "new_slot", "projective_vertex", "shifted_projective"]
