"""Endomorphism algebra presentations and tau-tilting reduction."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .algebra import (AlgebraPresentation, Path, Quiver, Relation,
                      quotient_by_idempotent)
from .errors import (IncompleteGraph, NotBasic, PresentationFailure,
                     UnsupportedField)
from .exchange import ExchangeGraph, containing_nodes, explore, fac_maximal_completion
from .linalg import Matrix, Subspace, solve_homogeneous
from .modules import (Module, Morphism, decompose, direct_sum, generate_submodule, hom,
                      is_isomorphic, quotient)
from .tilting import TauPair, check_pair
from .tilting import _radical_basis as radical_of_end

MAX_LENGTH = 24


@dataclass
class EndomorphismPresentation:
    """End(T) for T = T_1 + ... + T_m presented by a quiver with relations.

    Vertex k is the idempotent of T_k.  An arrow k -> l stands for the
    morphism ``arrow_maps[a]: T_l -> T_k``; a right module Hom(T, X) is
    acted on by precomposition, so the arrow sends Hom(T_k, X) to Hom(T_l, X)."""

    presentation: AlgebraPresentation
    summands: list[Module]
    arrow_maps: list[Morphism]


def _end_summands(T) -> list[Module]:
    if isinstance(T, Module):
        if T.algebra.field.char != 0:
            raise UnsupportedField("endomorphism presentations need characteristic zero")
        parts = decompose(T)
        if any(m > 1 for _, m in parts):
            raise NotBasic("module has a repeated summand")
        return [X for X, _ in parts]
    mods = list(T)
    for a in range(len(mods)):
        for b in range(a + 1, len(mods)):
            if mods[a].dims == mods[b].dims and is_isomorphic(mods[a], mods[b]):
                raise NotBasic("summands are not pairwise non-isomorphic")
    return mods


def _radical_basis(T: Sequence[Module], l: int, k: int) -> list[Morphism]:
    """Basis of the radical part of Hom(T_l, T_k)."""
    H = hom(T[l], T[k])
    if l != k:
        return list(H.basis)
    return radical_of_end(T[k])


def endomorphism_presentation(T) -> EndomorphismPresentation:
    summands = _end_summands(T)
    if not summands:
        raise PresentationFailure("empty module")
    m = len(summands)
    A = summands[0].algebra
    one = A.K.one
    rad = {(k, l): _radical_basis(summands, l, k) for k in range(m) for l in range(m)}

    def coords(l, k, f):
        H = hom(summands[l], summands[k])
        return {j: x for j, x in enumerate(H.coords(f)) if x}

    # arrows k -> l: radical maps T_l -> T_k modulo products of two radical maps
    arrows, arrow_maps = [], []
    for k in range(m):
        for l in range(m):
            H = hom(summands[l], summands[k])
            sq = Subspace([], H.dim)
            for j in range(m):
                for f in rad[(j, l)]:          # T_l -> T_j
                    for g in rad[(k, j)]:      # T_j -> T_k
                        sq.add(coords(l, k, f.then(g)))
            for f in rad[(k, l)]:
                if sq.add(coords(l, k, f)):
                    arrows.append((f"h{len(arrows) + 1}", str(k + 1), str(l + 1)))
                    arrow_maps.append(f)
    quiver = Quiver.from_labels([str(k + 1) for k in range(m)], arrows)

    # a path k0 -> k1 -> ... maps to a morphism T_last -> T_k0
    layers = [[(Path(v, v, ()), Morphism.identity(summands[v])) for v in range(m)]]
    L = None
    for length in range(1, MAX_LENGTH + 1):
        nxt = []
        for p, f in layers[-1]:
            for a_idx, a in enumerate(quiver.arrows):
                if a.source == p.target:
                    nxt.append((Path(p.source, a.target, p.arrows + (a_idx,)),
                                arrow_maps[a_idx].then(f)))
        layers.append(nxt)
        if all(f.is_zero() for _, f in nxt):
            L = length
            break
    if L is None:
        raise PresentationFailure("radical of the endomorphism ring is not nilpotent within the bound")
    relations = []
    blocks: dict = {}
    for layer in layers[2:]:
        for p, f in layer:
            blocks.setdefault((p.source, p.target), []).append((p, f))
    for (s, t), items in sorted(blocks.items()):
        H = hom(summands[t], summands[s])
        cols = [coords(t, s, f) for _, f in items]
        # kernel of the map sending path j to its coordinate vector
        eqs: dict[int, dict] = {}
        for j, c in enumerate(cols):
            for r, x in c.items():
                eqs.setdefault(r, {})[j] = x
        ker, _ = solve_homogeneous(list(eqs.values()), len(items), one)
        for v in ker:
            terms = tuple((A.field.to_fraction(x), items[j][0]) for j, x in sorted(v.items()))
            relations.append(Relation(terms))
    pres = AlgebraPresentation(quiver, tuple(relations), A.field, max(L, 2))
    B = pres.build()
    end_dim = sum(hom(X, Y).dim for X in summands for Y in summands)
    if B.dim != end_dim:
        raise PresentationFailure(f"presented algebra has dimension {B.dim}, expected {end_dim}")
    _verify_structure(B, summands, arrow_maps, coords)
    return EndomorphismPresentation(pres, summands, arrow_maps)


def _verify_structure(B, summands, arrow_maps, coords) -> None:
    """Basis paths map to independent morphisms and products are respected."""
    images = []
    for p in B.basis:
        f = Morphism.identity(summands[p.source])
        for a in p.arrows:
            f = arrow_maps[a].then(f)
        images.append(f)
    for (s, t), idx in B.by_pair.items():
        vecs = [coords(t, s, images[i]) for i in idx]
        if Subspace(vecs, hom(summands[t], summands[s]).dim).dim != len(idx):
            raise PresentationFailure("basis paths are linearly dependent in End(T)")
    for (i, j), prod in B.mult.items():
        p, q = B.basis[i], B.basis[j]
        lhs = images[j].then(images[i])
        rhs = Morphism.zero(summands[q.target], summands[p.source])
        for k, c in prod.items():
            rhs = rhs + images[k].scale(c)
        if coords(q.target, p.source, lhs) != coords(q.target, p.source, rhs):
            raise PresentationFailure("structure constants disagree with composition")


def present_endomorphism_algebra(T) -> AlgebraPresentation:
    return endomorphism_presentation(T).presentation


# reduction -------------------------------------------------------------------

@dataclass
class Reduction:
    """Result of reducing at a tau-rigid pair U.

    ``presentation`` is None when U is already tau-tilting (the reduced
    algebra has no vertices); then every node maps to None, the empty pair."""

    presentation: AlgebraPresentation | None
    node_map: dict
    completion: TauPair
    endomorphism: EndomorphismPresentation | None = None
    kept: list[int] = field(default_factory=list)

    def __iter__(self):
        yield self.presentation
        yield self.node_map


def torsion_free_part(U: Module, X: Module) -> Module:
    """X modulo its largest submodule in Fac U (the trace of U in X)."""
    if U.is_zero() or X.is_zero():
        return X
    gens = []
    for f in hom(U, X).basis:
        for v, F in enumerate(f.maps):
            gens.extend((v, row) for row in F.rows.values())
    return quotient(X, generate_submodule(X, gens))


def hom_functor(ep: EndomorphismPresentation, kept: list[int], B, X: Module) -> Module:
    """Hom(T, X) restricted to the kept summands, as a module over B."""
    spaces = [hom(ep.summands[k], X) for k in kept]
    pos = {k: i for i, k in enumerate(kept)}
    dims = [S.dim for S in spaces]
    origin = B.presentation.origin
    maps = [None] * len(B.quiver.arrows)
    src_arrows = ep.presentation.quiver.arrows
    for a_idx, new in enumerate(origin.arrow_map if origin is not None else range(len(src_arrows))):
        if new is None:
            continue
        a = src_arrows[a_idx]
        k, l = pos[a.source], pos[a.target]
        h = ep.arrow_maps[a_idx]
        rows = {}
        for r, phi in enumerate(spaces[k].basis):
            c = spaces[l].coords(h.then(phi))
            c = {j: x for j, x in enumerate(c) if x}
            if c:
                rows[r] = c
        maps[new] = Matrix(rows, dims[k], dims[l])
    return Module(B, dims, maps, check=True)


def tau_reduction(g: ExchangeGraph, u: TauPair) -> Reduction:
    if not g.complete:
        raise IncompleteGraph("reduction needs a complete exchange graph")
    check_pair(u)
    comp = fac_maximal_completion(g, u)
    A = g.algebra
    keys = containing_nodes(g, u)
    u_mods = list(u.modules)
    if u.size == A.n:
        return Reduction(None, {k: None for k in keys}, comp)
    T = list(comp.modules)
    ep = endomorphism_presentation(T)
    drop = [k for k, X in enumerate(ep.summands) if any(X is Y for Y in u_mods)]
    kept = [k for k in range(len(T)) if k not in drop]
    if drop:
        pres = quotient_by_idempotent(ep.presentation, [str(k + 1) for k in drop])
    else:
        pres = AlgebraPresentation(ep.presentation.quiver, ep.presentation.relations,
                                   ep.presentation.field, ep.presentation.length_cap)
    B = pres.build()
    U = _sum(u_mods, A)
    node_map = {}
    for k in keys:
        X = _sum(list(g.nodes[k].modules), A)
        FX = hom_functor(ep, kept, B, torsion_free_part(U, X))
        proj = [v for v in range(B.n) if FX.dims[v] == 0]
        node_map[k] = TauPair.from_modules(B, [FX] if not FX.is_zero() else [], proj)
    return Reduction(pres, node_map, comp, ep, kept)


def _sum(mods, A):
    return direct_sum(mods) if mods else Module.zero(A)


def verify_reduction(g: ExchangeGraph, u: TauPair, red: Reduction) -> dict:
    """Compare the reduced subgraph with an independent exploration over B."""
    keys = containing_nodes(g, u)
    if red.presentation is None:
        ok = len(keys) == 1
        return {"isomorphic": ok, "nodes": len(keys), "reduced_nodes": 1 if ok else 0,
                "edges": 0, "reduced_edges": 0}
    B = red.presentation.build()
    gB = explore(TauPair.free(B))
    images = {k: red.node_map[k].key for k in keys}
    bijective = (len(set(images.values())) == len(keys)
                 and set(images.values()) == set(gB.nodes))
    sub_edges = {frozenset((e.a, e.b)) for e in g.edges if e.a in images and e.b in images}
    mapped = {frozenset((images[a], images[b])) for a, b in map(tuple, sub_edges)}
    edges_ok = mapped == gB.edge_set()
    return {"isomorphic": bijective and edges_ok and gB.complete,
            "nodes": len(keys), "reduced_nodes": len(gB.nodes),
            "edges": len(sub_edges), "reduced_edges": len(gB.edges),
            "reduced_algebra_vertices": B.n, "reduced_algebra_dim": B.dim}
