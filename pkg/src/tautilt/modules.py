"""Right modules over bound quiver algebras, given as representations.

A module stores one matrix per arrow.  Vectors are rows and arrows act on
the right: an arrow ``a: i -> j`` is a ``dim M_i x dim M_j`` matrix and a
vector ``v`` in ``M_i`` is sent to ``v @ M_a``.  Morphisms store one matrix
per vertex and also act on the right, so ``f.then(g)`` multiplies the
vertex matrices in the order ``F_i @ G_i``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

from sympy import Poly, Symbol

from .algebra import Algebra, AlgebraPresentation, Path
from .errors import (AlgebraMismatch, InvalidModule, IsomorphismUndecided,
                     NonSplitResidue, NotAQuotient, ParseError, UnsupportedField,
                     ZeroModule)
from .linalg import (Matrix, Subspace, left_kernel, rref, solve_homogeneous,
                     vec_add, vec_times)


class Module:
    """A finite dimensional right module over ``algebra``."""

    def __init__(self, algebra: Algebra, dims: Sequence[int], maps: Sequence[Matrix],
                 *, check: bool = True):
        self.algebra = algebra
        self.dims = tuple(int(d) for d in dims)
        self.maps = tuple(maps)
        offs, t = [], 0
        for d in self.dims:
            offs.append(t)
            t += d
        self.offsets = tuple(offs)
        self.total_dim = t
        self.cache: dict = {}
        if check:
            self.check()

    # construction -------------------------------------------------------
    @classmethod
    def zero(cls, algebra: Algebra) -> Module:
        arrows = algebra.quiver.arrows
        return cls(algebra, [0] * algebra.n, [Matrix.zeros(0, 0) for _ in arrows], check=False)

    @classmethod
    def from_dense(cls, algebra: Algebra, dims: Sequence[int], mats: dict, *, check=True) -> Module:
        """``mats`` maps arrow ids to row lists; missing arrows are zero."""
        q = algebra.quiver
        unknown = set(mats) - set(q.arrow_index)
        if unknown:
            raise InvalidModule(f"unknown arrows {sorted(unknown)}")
        maps = []
        for a in q.arrows:
            ds, dt = dims[a.source], dims[a.target]
            rows = mats.get(a.name)
            if rows is None:
                maps.append(Matrix.zeros(ds, dt))
                continue
            rows = [list(r) for r in rows]
            if ds and (len(rows) != ds or any(len(r) != dt for r in rows)):
                raise InvalidModule(f"arrow {a.name}: expected a {ds}x{dt} matrix")
            maps.append(Matrix.from_dense(rows, algebra.field, ds, dt))
        return cls(algebra, dims, maps, check=check)

    # basic data ----------------------------------------------------------
    @property
    def dim_vector(self) -> tuple[int, ...]:
        return self.dims

    @property
    def field(self):
        return self.algebra.field

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def __repr__(self):
        return f"<Module dims={self.dims}>"

    def arrow_matrix(self, arrow) -> Matrix:
        if isinstance(arrow, str):
            arrow = self.algebra.quiver.arrow_index[arrow]
        return self.maps[arrow]

    def path_matrix(self, path: Path) -> Matrix:
        d = self.dims[path.source]
        M = Matrix.identity(d, self.algebra.K.one)
        for a in path.arrows:
            M = M @ self.maps[a]
        return M

    def act_path(self, v: dict, path: Path) -> dict:
        for a in path.arrows:
            if not v:
                break
            v = vec_times(v, self.maps[a])
        return v

    def act_element(self, v: dict, vertex: int, x: dict) -> dict:
        """``v * x`` for ``v`` in ``M_vertex`` and an algebra element ``x``.

        Returns a dict keyed by target vertex."""
        out: dict[int, dict] = {}
        for b, c in x.items():
            p = self.algebra.basis[b]
            if p.source != vertex:
                continue
            w = self.act_path(v, p)
            if w:
                out[p.target] = vec_add(out.get(p.target, {}), w, c)
        return {t: w for t, w in out.items() if w}

    def relation_matrix(self, terms) -> Matrix:
        """Matrix of a formal combination of parallel paths."""
        s, t = terms[0][1].source, terms[0][1].target
        acc = Matrix.zeros(self.dims[s], self.dims[t])
        for c, p in terms:
            acc = acc + self.path_matrix(p).scale(self.field(c))
        return acc

    def check(self) -> None:
        q = self.algebra.quiver
        if len(self.dims) != q.n or len(self.maps) != len(q.arrows):
            raise InvalidModule("dimension vector or arrow list has the wrong length")
        for a, M in zip(q.arrows, self.maps):
            if M.shape != (self.dims[a.source], self.dims[a.target]):
                raise InvalidModule(f"arrow {a.name}: matrix shape {M.shape} does not match dims")
        pres = self.algebra.presentation
        for r in (pres.relations if pres is not None else ()):
            if not self.relation_matrix(r.terms).is_zero():
                raise InvalidModule(f"relation {r.format(q)} does not act as zero")
        # paths of the Loewy length must act as zero as well
        L = self.algebra.loewy_length
        layer = {v: Matrix.identity(self.dims[v], self.algebra.K.one) for v in range(q.n)}
        for _ in range(L):
            nxt = {}
            for v, M in layer.items():
                for k, a in enumerate(q.arrows):
                    if a.source == v:
                        P = M @ self.maps[k]
                        if not P.is_zero():
                            nxt.setdefault(a.target, []).append(P)
            layer = {}
            for v, Ps in nxt.items():
                S = Subspace([], self.dims[v])
                for P in Ps:
                    for row in P.rows.values():
                        S.add(row)
                if S.dim:
                    layer[v] = Matrix.from_rows(S.basis, self.dims[v])
            if not layer:
                return
        raise InvalidModule("paths of maximal length do not act as zero")

    # global coordinates --------------------------------------------------
    def vertex_of(self, k: int) -> int:
        for v in range(len(self.dims) - 1, -1, -1):
            if k >= self.offsets[v] and self.dims[v]:
                return v
        raise IndexError(k)


@dataclass(frozen=True, eq=False)
class Morphism:
    source: Module
    target: Module
    maps: tuple[Matrix, ...]

    @classmethod
    def zero(cls, M: Module, N: Module) -> Morphism:
        return cls(M, N, tuple(Matrix.zeros(a, b) for a, b in zip(M.dims, N.dims)))

    @classmethod
    def identity(cls, M: Module) -> Morphism:
        one = M.algebra.K.one
        return cls(M, M, tuple(Matrix.identity(d, one) for d in M.dims))

    def then(self, other: Morphism) -> Morphism:
        return Morphism(self.source, other.target,
                        tuple(F @ G for F, G in zip(self.maps, other.maps)))

    def __add__(self, other: Morphism) -> Morphism:
        return Morphism(self.source, self.target,
                        tuple(F + G for F, G in zip(self.maps, other.maps)))

    def scale(self, c) -> Morphism:
        return Morphism(self.source, self.target, tuple(F.scale(c) for F in self.maps))

    def is_zero(self) -> bool:
        return all(F.is_zero() for F in self.maps)

    def is_iso(self) -> bool:
        if self.source.dims != self.target.dims:
            return False
        return all(F.rank() == F.nrows for F in self.maps)

    def check(self) -> bool:
        for k, a in enumerate(self.source.algebra.quiver.arrows):
            left = self.source.maps[k] @ self.maps[a.target]
            right = self.maps[a.source] @ self.target.maps[k]
            if left != right:
                return False
        return True

    def flat(self) -> dict:
        """Entries as one sparse vector (vertex blocks, row-major)."""
        out, base = {}, 0
        for F in self.maps:
            for r, row in F.rows.items():
                for c, x in row.items():
                    out[base + r * F.ncols + c] = x
            base += F.nrows * F.ncols
        return out


def _combine(morphs: Sequence[Morphism], coeffs) -> Morphism:
    M, N = morphs[0].source, morphs[0].target
    out = Morphism.zero(M, N)
    for f, c in zip(morphs, coeffs):
        if c:
            out = out + f.scale(c)
    return out


class HomSpace:
    """Basis of Hom(M, N) with coordinate extraction."""

    def __init__(self, M: Module, N: Module, basis: list[Morphism], free: list[tuple[int, int, int]]):
        self.source = M
        self.target = N
        self.basis = basis
        self._free = free

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coords(self, f: Morphism) -> list:
        zero = self.source.algebra.K.zero
        return [f.maps[v].row(r).get(c, zero) for v, r, c in self._free]

    def element(self, coeffs) -> Morphism:
        if not self.basis:
            return Morphism.zero(self.source, self.target)
        return _combine(self.basis, coeffs)


def _same_algebra(M: Module, N: Module) -> None:
    if M.algebra is not N.algebra:
        raise AlgebraMismatch("modules live over different algebras")


def hom(M: Module, N: Module) -> HomSpace:
    """Hom(M, N) computed from the intertwining equations."""
    _same_algebra(M, N)
    key = id(N)
    cache = M.cache.setdefault("hom", {})
    hit = cache.get(key)
    if hit is not None and hit[0] is N:
        return hit[1]
    space = _hom(M, N)
    cache[key] = (N, space)
    return space


def _hom(M: Module, N: Module) -> HomSpace:
    A = M.algebra
    one = A.K.one
    n = A.n
    base, t = [], 0
    for v in range(n):
        base.append(t)
        t += M.dims[v] * N.dims[v]
    nvars = t
    if nvars == 0:
        return HomSpace(M, N, [], [])
    eqs = []
    for k, a in enumerate(A.quiver.arrows):
        i, j = a.source, a.target
        dMi, dNj, dNi = M.dims[i], N.dims[j], N.dims[i]
        if dMi == 0 or dNj == 0:
            continue
        Ma = M.maps[k]
        NaT = N.maps[k].transpose()
        bi, bj = base[i], base[j]
        for r in range(dMi):
            mrow = Ma.row(r)
            for c in range(dNj):
                eq = {}
                for kk, x in mrow.items():
                    eq[bj + kk * dNj + c] = x
                for kk, x in NaT.row(c).items():
                    idx = bi + r * dNi + kk
                    s = eq[idx] - x if idx in eq else -x
                    if s:
                        eq[idx] = s
                    else:
                        del eq[idx]
                if eq:
                    eqs.append(eq)
    sols, free = solve_homogeneous(eqs, nvars, one)
    decode = []
    for v in range(n):
        dNv = N.dims[v]
        for idx in range(M.dims[v] * dNv):
            decode.append((v, idx // dNv, idx % dNv))
    basis = []
    for x in sols:
        rows = [dict() for _ in range(n)]
        for idx, val in x.items():
            v, r, c = decode[idx]
            rows[v].setdefault(r, {})[c] = val
        basis.append(Morphism(M, N, tuple(Matrix(rows[v], M.dims[v], N.dims[v]) for v in range(n))))
    return HomSpace(M, N, basis, [decode[f] for f in free])


def hom_basis(M: Module, N: Module) -> list[Morphism]:
    return hom(M, N).basis


def hom_dim(M: Module, N: Module) -> int:
    return hom(M, N).dim


# standard modules -------------------------------------------------------

def indec_projective(A: Algebra, i) -> Module:
    """P(i) = e_i A; component j has the basis of path classes from i to j."""
    i = _vertex(A, i)
    key = ("proj", i)
    if key in A.cache:
        return A.cache[key]
    dims = [len(A.paths(i, j)) for j in range(A.n)]
    pos = {b: k for j in range(A.n) for k, b in enumerate(A.paths(i, j))}
    maps = []
    for k, a in enumerate(A.quiver.arrows):
        ab = A.arrow_basis[k]
        rows = {}
        for r, p in enumerate(A.paths(i, a.source)):
            img = {pos[q]: c for q, c in A.times(p, ab).items()}
            if img:
                rows[r] = img
        maps.append(Matrix(rows, dims[a.source], dims[a.target]))
    P = Module(A, dims, maps, check=False)
    A.cache[key] = P
    return P


def indec_injective(A: Algebra, i) -> Module:
    """I(i) = D(A e_i), the dual of a projective over the opposite algebra."""
    i = _vertex(A, i)
    key = ("inj", i)
    if key not in A.cache:
        A.cache[key] = dual(indec_projective(A.opposite(), i))
    return A.cache[key]


def simple(A: Algebra, i) -> Module:
    i = _vertex(A, i)
    dims = [1 if v == i else 0 for v in range(A.n)]
    maps = [Matrix.zeros(dims[a.source], dims[a.target]) for a in A.quiver.arrows]
    return Module(A, dims, maps, check=False)


def regular_module(A: Algebra) -> Module:
    return direct_sum([indec_projective(A, i) for i in range(A.n)])


def _vertex(A: Algebra, i) -> int:
    if isinstance(i, str):
        return A.quiver.vertex(i)
    if not 0 <= i < A.n:
        raise KeyError(f"vertex index {i} out of range")
    return i


def direct_sum(mods: Sequence[Module]) -> Module:
    mods = list(mods)
    if not mods:
        raise ValueError("direct_sum needs at least one module (use Module.zero)")
    A = mods[0].algebra
    for M in mods:
        _same_algebra(mods[0], M)
    if len(mods) == 1:
        return mods[0]
    n = A.n
    dims = [sum(M.dims[v] for M in mods) for v in range(n)]
    maps = []
    for k, a in enumerate(A.quiver.arrows):
        rows, ro, co = {}, 0, 0
        for M in mods:
            for r, row in M.maps[k].rows.items():
                rows[ro + r] = {co + c: x for c, x in row.items()}
            ro += M.dims[a.source]
            co += M.dims[a.target]
        maps.append(Matrix(rows, dims[a.source], dims[a.target]))
    return Module(A, dims, maps, check=False)


def dual(M: Module) -> Module:
    """D M = Hom_k(M, k), a module over the opposite algebra."""
    if "dual" in M.cache:
        return M.cache["dual"]
    D = Module(M.algebra.opposite(), M.dims, [F.transpose() for F in M.maps], check=False)
    D.cache["dual"] = M
    M.cache["dual"] = D
    return D


# sub and quotient modules ----------------------------------------------

def generate_submodule(M: Module, gens: Sequence[tuple[int, dict]]) -> list[Subspace]:
    """Per-vertex subspaces of the submodule generated by ``(vertex, vector)`` pairs."""
    q = M.algebra.quiver
    spaces = [Subspace([], d) for d in M.dims]
    out_arrows = [[k for k, a in enumerate(q.arrows) if a.source == v] for v in range(q.n)]
    stack = list(gens)
    while stack:
        v, x = stack.pop()
        if not x:
            continue
        S = spaces[v]
        before = S.dim
        if not S.add(x):
            continue
        new = S.basis[before]
        for k in out_arrows[v]:
            y = vec_times(new, M.maps[k])
            if y:
                stack.append((q.arrows[k].target, y))
    return spaces


def submodule(M: Module, spaces: Sequence[Subspace]) -> Module:
    """The submodule with the given per-vertex reduced-echelon subspaces."""
    maps = []
    for k, a in enumerate(M.algebra.quiver.arrows):
        S, T = spaces[a.source], spaces[a.target]
        rows = {}
        for r, b in enumerate(S.basis):
            img = vec_times(b, M.maps[k])
            if img:
                if T.reduce(img):
                    raise InvalidModule("subspaces are not closed under the arrows")
                rows[r] = T.coords_dict(img)
        maps.append(Matrix(rows, S.dim, T.dim))
    return Module(M.algebra, [S.dim for S in spaces], maps, check=False)


def quotient(M: Module, spaces: Sequence[Subspace]) -> Module:
    """M modulo a submodule; the quotient basis is the non-pivot standard vectors."""
    comp = [S.complement() for S in spaces]
    pos = [{c: k for k, c in enumerate(cs)} for cs in comp]
    maps = []
    for k, a in enumerate(M.algebra.quiver.arrows):
        T = spaces[a.target]
        rows = {}
        for r, c in enumerate(comp[a.source]):
            img = M.maps[k].row(c)
            if img:
                img = T.reduce(img)
                if img:
                    rows[r] = {pos[a.target][j]: x for j, x in img.items()}
        maps.append(Matrix(rows, len(comp[a.source]), len(comp[a.target])))
    return Module(M.algebra, [len(cs) for cs in comp], maps, check=False)


def kernel_spaces(f: Morphism) -> list[Subspace]:
    one = f.source.algebra.K.one
    return [Subspace(left_kernel(F, one), F.nrows) for F in f.maps]


def image_spaces(f: Morphism) -> list[Subspace]:
    return [Subspace(list(F.rows.values()), F.ncols) for F in f.maps]


def kernel(f: Morphism) -> Module:
    return submodule(f.source, kernel_spaces(f))


def cokernel(f: Morphism) -> Module:
    return quotient(f.target, image_spaces(f))


def radical_spaces(M: Module) -> list[Subspace]:
    """Per vertex, the span of the images of all arrows ending there (M rad A)."""
    spaces = [Subspace([], d) for d in M.dims]
    acc: list[list] = [[] for _ in M.dims]
    for k, a in enumerate(M.algebra.quiver.arrows):
        acc[a.target].extend(M.maps[k].rows.values())
    return [Subspace(vs, M.dims[v]) if vs else spaces[v] for v, vs in enumerate(acc)]


def top_generators(M: Module) -> list[tuple[int, dict]]:
    """Standard basis vectors whose classes form a basis of M / M rad A."""
    one = M.algebra.K.one
    out = []
    for v, S in enumerate(radical_spaces(M)):
        out.extend((v, {c: one}) for c in S.complement())
    return out


# projective presentations -------------------------------------------------

def projective_sum_layout(A: Algebra, vertices: Sequence[int]):
    """Per vertex j, the list of ``(summand index, basis index)`` spanning (sum P)_j."""
    layout = [[] for _ in range(A.n)]
    for m, i in enumerate(vertices):
        for j in range(A.n):
            layout[j].extend((m, b) for b in A.paths(i, j))
    return layout


def projective_sum(A: Algebra, vertices: Sequence[int]) -> Module:
    if not vertices:
        return Module.zero(A)
    return direct_sum([indec_projective(A, i) for i in vertices])


def projective_map(A: Algebra, src: Sequence[int], tgt: Sequence[int],
                   elements: Sequence[Sequence[dict]]) -> Morphism:
    """Map sum P(src) -> sum P(tgt) sending generator l to ``(elements[l][m])_m``.

    ``elements[l][m]`` must lie in e_{tgt[m]} A e_{src[l]}."""
    P1, P0 = projective_sum(A, src), projective_sum(A, tgt)
    lay1, lay0 = projective_sum_layout(A, src), projective_sum_layout(A, tgt)
    pos0 = [{mb: k for k, mb in enumerate(lay)} for lay in lay0]
    maps = []
    for j in range(A.n):
        rows = {}
        for r, (l, q) in enumerate(lay1[j]):
            row = {}
            for m, u in enumerate(elements[l]):
                if not u:
                    continue
                for ub, c in u.items():
                    for b, d in A.times(ub, q).items():
                        idx = pos0[j][(m, b)]
                        s = row[idx] + c * d if idx in row else c * d
                        if s:
                            row[idx] = s
                        else:
                            del row[idx]
            if row:
                rows[r] = row
        maps.append(Matrix(rows, len(lay1[j]), len(lay0[j])))
    return Morphism(P1, P0, tuple(maps))


def projective_map_cokernel(A: Algebra, src, tgt, elements) -> Module:
    if not tgt:
        return Module.zero(A)
    if not src:
        return projective_sum(A, tgt)
    return cokernel(projective_map(A, src, tgt, elements))


@dataclass(eq=False)
class ProjectivePresentation:
    """``sum P(relation_vertices) -> sum P(top_vertices) -> M -> 0``.

    ``elements[l][m]`` is the component in e_{top[m]} A e_{rel[l]} of the
    image of the l-th generator of P1."""

    module: Module
    top_vertices: tuple[int, ...]
    relation_vertices: tuple[int, ...]
    elements: tuple[tuple[dict, ...], ...]
    cover: Morphism | None
    syzygy_spaces: list[Subspace] | None
    minimal: bool

    @property
    def a(self) -> tuple[int, ...]:
        return _count(self.top_vertices, self.module.algebra.n)

    @property
    def b(self) -> tuple[int, ...]:
        return _count(self.relation_vertices, self.module.algebra.n)

    @property
    def g_vector(self) -> tuple[int, ...]:
        return tuple(x - y for x, y in zip(self.a, self.b))

    def connecting_morphism(self) -> Morphism:
        A = self.module.algebra
        return projective_map(A, self.relation_vertices, self.top_vertices, self.elements)

    def syzygy(self) -> Module:
        return submodule(self.cover.source, self.syzygy_spaces)

    def check_exact(self) -> bool:
        """im(P1 -> P0) = ker(P0 -> M) and P0 -> M onto, by rank comparison."""
        f = self.connecting_morphism()
        for j, (F, G) in enumerate(zip(f.maps, self.cover.maps)):
            if (F @ G).nnz():
                return False
            if G.rank() != self.module.dims[j]:
                return False
            if F.rank() != G.nrows - G.rank():
                return False
        return True

    def check_radical(self) -> bool:
        A = self.module.algebra
        idem = set(A.idempotents)
        return all(not (set(u) & idem) for row in self.elements for u in row)


def _count(vertices, n) -> tuple[int, ...]:
    out = [0] * n
    for v in vertices:
        out[v] += 1
    return tuple(out)


def min_projective_presentation(M: Module) -> ProjectivePresentation:
    if M.is_zero():
        raise ZeroModule("the zero module has no minimal presentation")
    if "pres" in M.cache:
        return M.cache["pres"]
    A = M.algebra
    gens = top_generators(M)
    top = [v for v, _ in gens]
    layout = projective_sum_layout(A, top)
    P0 = projective_sum(A, top)
    maps = []
    for j in range(A.n):
        rows = {}
        for r, (m, b) in enumerate(layout[j]):
            img = M.act_path(gens[m][1], A.basis[b])
            if img:
                rows[r] = img
        maps.append(Matrix(rows, len(layout[j]), M.dims[j]))
    cover = Morphism(P0, M, tuple(maps))
    ker = kernel_spaces(cover)
    K = submodule(P0, ker)
    elements = []
    rel_vertices = []
    for v, x in top_generators(K):
        # back to P0 coordinates: x is a coordinate vector in the kernel basis
        y = {}
        for k, c in x.items():
            y = vec_add(y, ker[v].basis[k], c)
        u = [dict() for _ in top]
        for idx, c in y.items():
            m, b = layout[v][idx]
            u[m][b] = c
        rel_vertices.append(v)
        elements.append(tuple(u))
    pres = ProjectivePresentation(M, tuple(top), tuple(rel_vertices), tuple(elements),
                                  cover, ker, True)
    pres.minimal = pres.check_radical()
    M.cache["pres"] = pres
    return pres


def g_vector_of_module(M: Module) -> tuple[int, ...]:
    return min_projective_presentation(M).g_vector


def is_projective(M: Module) -> bool:
    if M.is_zero():
        return True
    return not min_projective_presentation(M).relation_vertices


def projective_dimension(M: Module, limit: int = 12) -> int | None:
    """Projective dimension, or None when it exceeds ``limit``."""
    d = 0
    while d <= limit:
        if is_projective(M):
            return d
        M = min_projective_presentation(M).syzygy()
        d += 1
    return None


def injective_dimension(M: Module, limit: int = 12) -> int | None:
    return projective_dimension(dual(M), limit)


def transpose(M: Module) -> Module:
    """Tr M over the opposite algebra, the cokernel of the dualised presentation."""
    if "tr" in M.cache:
        return M.cache["tr"]
    A = M.algebra
    if M.is_zero():
        T = Module.zero(A.opposite())
    else:
        pres = min_projective_presentation(M)
        elems = [tuple(pres.elements[l][m] for l in range(len(pres.relation_vertices)))
                 for m in range(len(pres.top_vertices))]
        T = projective_map_cokernel(A.opposite(), pres.top_vertices, pres.relation_vertices, elems)
    M.cache["tr"] = T
    return T


def tau(M: Module) -> Module:
    """Auslander-Reiten translate D Tr M."""
    if M.is_zero():
        raise ZeroModule("tau of the zero module")
    if "tau" not in M.cache:
        M.cache["tau"] = dual(transpose(M))
    return M.cache["tau"]


def tau_inverse(M: Module) -> Module:
    if M.is_zero():
        raise ZeroModule("tau inverse of the zero module")
    if "tau_inv" not in M.cache:
        M.cache["tau_inv"] = transpose(dual(M))
    return M.cache["tau_inv"]


def is_tau_rigid(M: Module) -> bool:
    if M.is_zero():
        return True
    T = tau(M)
    return T.is_zero() or hom_dim(M, T) == 0


def hom_to_tau_vanishes(X: Module, Y: Module) -> bool:
    """Whether Hom(X, tau Y) = 0, without computing tau.

    With P1 -> P0 -> Y a minimal presentation this holds exactly when the
    induced map Hom(P0, X) -> Hom(P1, X) is onto; Hom(P(i), X) = X_i."""
    _same_algebra(X, Y)
    if X.is_zero() or Y.is_zero():
        return True
    pres = min_projective_presentation(Y)
    if not pres.relation_vertices:
        return True
    A = X.algebra
    col_off, t = [], 0
    for v in pres.relation_vertices:
        col_off.append(t)
        t += X.dims[v]
    if t == 0:
        return True
    rows = []
    for m, a in enumerate(pres.top_vertices):
        for r in range(X.dims[a]):
            vec = {r: A.K.one}
            row = {}
            for l, u in enumerate(pres.elements):
                if not u[m]:
                    continue
                img = X.act_element(vec, a, u[m]).get(pres.relation_vertices[l], {})
                for c, x in img.items():
                    row[col_off[l] + c] = x
            if row:
                rows.append(row)
    return len(rref(rows)[1]) == t


def fac_contains(N: Module, M: Module) -> bool:
    """Whether M is a quotient of a direct sum of copies of N."""
    _same_algebra(N, M)
    if M.is_zero():
        return True
    H = hom(N, M)
    for v in range(M.algebra.n):
        if not M.dims[v]:
            continue
        S = Subspace([], M.dims[v])
        for f in H.basis:
            for row in f.maps[v].rows.values():
                S.add(row)
                if S.dim == M.dims[v]:
                    break
            if S.dim == M.dims[v]:
                break
        if S.dim < M.dims[v]:
            return False
    return True


# endomorphisms and decomposition -------------------------------------------

_X = Symbol("x")


def _min_poly(f: Morphism):
    """Minimal polynomial of an endomorphism, coefficients low degree first."""
    M = f.source
    one = M.algebra.K.one
    powers = [Morphism.identity(M)]
    S = Subspace([], sum(d * d for d in M.dims))
    S.add(powers[0].flat())
    while True:
        nxt = powers[-1].then(f)
        flat = nxt.flat()
        if not S.reduce(flat):
            vecs = [p.flat() for p in powers] + [flat]
            ker = left_kernel(Matrix.from_rows(vecs, S.dim_ambient), one)
            coeffs = ker[0]
            lead = coeffs[len(powers)]
            return [coeffs.get(k, M.algebra.K.zero) / lead for k in range(len(powers) + 1)]
        S.add(flat)
        powers.append(nxt)


def _poly_eval(f: Morphism, coeffs) -> Morphism:
    M = f.source
    out = Morphism.zero(M, M)
    ident = Morphism.identity(M)
    for c in reversed(coeffs):
        out = out.then(f) + ident.scale(c)
    return out


def _split_by(f: Morphism):
    """Coprime factorisation of the minimal polynomial, if it has one."""
    K = f.source.algebra.K
    coeffs = _min_poly(f)
    poly = Poly(list(reversed(coeffs)), _X, domain=K)
    _, factors = poly.factor_list()
    if len(factors) < 2:
        return None
    p1 = factors[0][0] ** factors[0][1]
    rest = Poly(1, _X, domain=K)
    for g, e in factors[1:]:
        rest = rest * g ** e
    return [list(reversed(p1.all_coeffs())), list(reversed(rest.all_coeffs()))]


def _trace_form_rank(M: Module, basis: list[Morphism]) -> int:
    zero = M.algebra.K.zero
    rows = []
    for f in basis:
        row = {}
        for j, g in enumerate(basis):
            t = zero
            for F in f.then(g).maps:
                t = t + F.trace(zero)
            if t:
                row[j] = t
        rows.append(row)
    return len(rref(rows)[1])


def _candidates(basis: list[Morphism]):
    yield from basis
    k = len(basis)
    for i in range(k):
        for j in range(i + 1, k):
            for c in (1, 2, -1, 3):
                yield basis[i] + basis[j].scale(basis[0].source.field(c))
    for coeffs in product(range(-1, 3), repeat=min(k, 6)):
        if sum(1 for c in coeffs if c) >= 3:
            yield _combine(basis[:len(coeffs)],
                           [basis[0].source.field(c) for c in coeffs])


def is_indecomposable(M: Module) -> bool:
    return len(decompose(M)) == 1 and decompose(M)[0][1] == 1


def _split(M: Module) -> list[Module]:
    """Split M into modules with local endomorphism rings (unordered)."""
    if M.is_zero():
        return []
    E = hom(M, M).basis
    if len(E) == 1:
        return [M]
    rank = _trace_form_rank(M, E)
    if rank == 1:
        return [M]
    for f in _candidates(E):
        parts = _split_by(f)
        if parts is None:
            continue
        out = []
        for coeffs in parts:
            g = _poly_eval(f, coeffs)
            out.extend(_split(kernel(g)))
        return out
    raise NonSplitResidue(
        f"no splitting element found in an endomorphism ring with semisimple quotient of dimension {rank}")


def decompose(M: Module) -> list[tuple[Module, int]]:
    """Indecomposable summands up to isomorphism, with multiplicities."""
    if M.algebra.field.char != 0:
        raise UnsupportedField("decomposition needs characteristic zero")
    if "decomp" in M.cache:
        return M.cache["decomp"]
    groups: list[list] = []
    for X in _split(M):
        for g in groups:
            if is_isomorphic(g[0], X):
                g[1] += 1
                break
        else:
            groups.append([X, 1])
    groups.sort(key=lambda g: (g[0].dims, ))
    out = [(X, m) for X, m in groups]
    if len(out) == 1 and out[0][1] == 1:
        out = [(M, 1)]
    M.cache["decomp"] = out
    return out


def summands(M: Module) -> list[Module]:
    """Indecomposable summands with repetition."""
    return [X for X, m in decompose(M) for _ in range(m)]


def is_isomorphic(M: Module, N: Module) -> bool:
    """Isomorphism test.

    Searches for an invertible composite among Hom basis elements; when that
    is inconclusive and End(M) is not local, compares Krull-Schmidt
    decompositions (characteristic zero only)."""
    _same_algebra(M, N)
    if M is N:
        return True
    if M.dims != N.dims:
        return False
    if M.is_zero():
        return True
    F, G = hom(M, N).basis, hom(N, M).basis
    if not F or not G:
        return False
    for f in F:
        if f.is_iso():
            return True
    for f in F:
        for g in G:
            if f.then(g).is_iso():
                return True
    if len(hom(M, M).basis) == 1:
        # End(M) = k, so any nonzero composition would have been invertible
        return False
    rank = _trace_form_rank(M, hom(M, M).basis)
    if rank == 1:
        # local endomorphism ring: a composite through N is invertible or radical
        return False
    if M.algebra.field.char != 0:
        raise IsomorphismUndecided("decomposable inputs need characteristic zero")
    return _same_summands(decompose(M), decompose(N))


def _same_summands(xs, ys) -> bool:
    left = list(ys)
    for X, m in xs:
        hit = next((k for k, (Y, n) in enumerate(left) if n == m and is_isomorphic(X, Y)), None)
        if hit is None:
            return False
        left.pop(hit)
    return not left


# quotients and induction -------------------------------------------------

def _lifted_relations(quotient_pres: AlgebraPresentation):
    """Kernel generators of parent -> quotient, as formal path combinations in the parent."""
    data = quotient_pres.origin
    parent = data.parent
    back = {new: old for old, new in enumerate(data.arrow_map) if new is not None}
    vback = {new: old for old, new in enumerate(data.vertex_map) if new is not None}
    gens = []
    for k, new in enumerate(data.arrow_map):
        if new is None and data.kind == "relations":
            a = parent.quiver.arrows[k]
            gens.append(((Fraction(1), Path(a.source, a.target, (k,))),))
    for r in quotient_pres.relations:
        terms = tuple((c, Path(vback[p.source], vback[p.target], tuple(back[a] for a in p.arrows)))
                      for c, p in r.terms)
        gens.append(terms)
    return gens


def _check_quotient_of(M: Module, B: AlgebraPresentation) -> None:
    data = B.origin
    if data is None or M.algebra.presentation is None or data.parent != M.algebra.presentation:
        raise NotAQuotient("target presentation is not a quotient of the module's algebra")


def induce_along_quotient(M: Module, B: AlgebraPresentation) -> Module:
    """M (x)_A B = M / M ker(A -> B), read as a B-module."""
    _check_quotient_of(M, B)
    data = B.origin
    Balg = B.build()
    gens = []
    if data.kind == "idempotent":
        one = M.algebra.K.one
        for v, new in enumerate(data.vertex_map):
            if new is None:
                gens.extend((v, {c: one}) for c in range(M.dims[v]))
    else:
        for terms in _lifted_relations(B):
            R = M.relation_matrix(terms)
            t = terms[0][1].target
            gens.extend((t, row) for row in R.rows.values())
    Q = quotient(M, generate_submodule(M, gens))
    return _reindex(Q, B, Balg)


def _reindex(Q: Module, B: AlgebraPresentation, Balg: Algebra) -> Module:
    data = B.origin
    dims = [0] * Balg.n
    for v, new in enumerate(data.vertex_map):
        if new is not None:
            dims[new] = Q.dims[v]
    maps = [None] * len(Balg.quiver.arrows)
    for k, new in enumerate(data.arrow_map):
        if new is not None:
            maps[new] = Q.maps[k]
    return Module(Balg, dims, maps, check=True)


def inflate(M: Module, parent: Algebra) -> Module:
    """Restriction of scalars along A -> A/I: killed arrows act as zero."""
    data = M.algebra.presentation.origin if M.algebra.presentation is not None else None
    if data is None or data.parent != parent.presentation:
        raise NotAQuotient("module algebra is not a quotient of the given algebra")
    dims = [0] * parent.n
    for v, new in enumerate(data.vertex_map):
        if new is not None:
            dims[v] = M.dims[new]
    maps = []
    for k, a in enumerate(parent.quiver.arrows):
        new = data.arrow_map[k]
        maps.append(M.maps[new] if new is not None else Matrix.zeros(dims[a.source], dims[a.target]))
    return Module(parent, dims, maps, check=True)


def section_image(C: Algebra, B: Algebra, x: dict) -> dict:
    """Image of a C-element under the arrow-preserving map C -> B (C a quotient of B)."""
    data = C.presentation.origin
    back = {new: old for old, new in enumerate(data.arrow_map) if new is not None}
    vback = {new: old for old, new in enumerate(data.vertex_map) if new is not None}
    out: dict = {}
    for b, c in x.items():
        p = C.basis[b]
        q = Path(vback[p.source], vback[p.target], tuple(back[a] for a in p.arrows))
        out = vec_add(out, B.path_element(q), c)
    return out


def check_section(C: Algebra, B: Algebra) -> None:
    """The arrow inclusion C -> B is an algebra map iff C's relations hold in B."""
    data = C.presentation.origin if C.presentation is not None else None
    if data is None or data.parent != B.presentation or data.kind != "relations":
        raise NotAQuotient("C is not a relation quotient of B")
    for r in C.presentation.relations:
        back = {new: old for old, new in enumerate(data.arrow_map) if new is not None}
        img = B.element([(c, Path(p.source, p.target, tuple(back[a] for a in p.arrows)))
                         for c, p in r.terms])
        if img:
            raise NotAQuotient("arrow inclusion does not respect the relations")


def induce_along_section(M: Module, B: Algebra) -> Module:
    """M (x)_C B for C = B/I with the arrow inclusion C -> B, via a presentation of M."""
    C = M.algebra
    check_section(C, B)
    pres = min_projective_presentation(M)
    data = C.presentation.origin
    vback = {new: old for old, new in enumerate(data.vertex_map) if new is not None}
    src = [vback[v] for v in pres.relation_vertices]
    tgt = [vback[v] for v in pres.top_vertices]
    elems = [tuple(section_image(C, B, u) for u in row) for row in pres.elements]
    return projective_map_cokernel(B, src, tgt, elems)


# literal format ----------------------------------------------------------

def parse_module_literal(A: Algebra, text: str) -> Module:
    """``DIMS;ARROW=ROWS;...`` with rows separated by ``|`` and entries by spaces or commas."""
    parts = [p.strip() for p in text.strip().split(";") if p.strip()]
    if not parts:
        raise ParseError("empty module literal")
    try:
        dims = [int(x) for x in re.split(r"[,\s]+", parts[0]) if x]
    except ValueError:
        raise ParseError(f"bad dimension vector {parts[0]!r}") from None
    if len(dims) != A.n:
        raise ParseError(f"dimension vector needs {A.n} entries")
    mats = {}
    for p in parts[1:]:
        name, eq, body = p.partition("=")
        if not eq:
            raise ParseError(f"expected ARROW=ROWS, got {p!r}")
        rows = []
        for r in body.split("|"):
            r = r.strip()
            if r:
                try:
                    rows.append([Fraction(x) for x in re.split(r"[,\s]+", r) if x])
                except ValueError:
                    raise ParseError(f"bad matrix entry in {r!r}") from None
        if rows:
            # an empty body, like an omitted arrow, means the zero map
            mats[name.strip()] = rows
    try:
        return Module.from_dense(A, dims, mats)
    except InvalidModule as exc:
        raise ParseError(str(exc)) from None


def format_module_literal(M: Module) -> str:
    parts = [",".join(str(d) for d in M.dims)]
    f = M.field
    for a, F in zip(M.algebra.quiver.arrows, M.maps):
        if F.is_zero():
            continue
        rows = ["  ".join(f.format(x) for x in r) for r in F.to_dense(f.zero)]
        parts.append(f"{a.name}=" + "|".join(rows))
    return ";".join(parts)
