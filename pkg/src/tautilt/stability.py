"""Brute-force King semistability over small prime fields."""
from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Sequence

from .errors import CapExceeded, UnsupportedField
from .linalg import Subspace, vec_times
from .modules import Module

MAX_PRIME = 3
MAX_TOTAL_DIM = 10
MAX_SUBMODULES = 200_000


def _check_caps(M: Module) -> None:
    p = M.algebra.field.char
    if p == 0 or p > MAX_PRIME:
        raise UnsupportedField("brute-force stability needs F_2 or F_3")
    if M.total_dim > MAX_TOTAL_DIM:
        raise CapExceeded(f"total dimension {M.total_dim} exceeds {MAX_TOTAL_DIM}")


def _projective_points(d: int, K) -> list[dict]:
    """Nonzero vectors of K^d whose first nonzero entry is one."""
    p = K.mod
    out = []
    for lead in range(d):
        for tail in product(range(p), repeat=d - lead - 1):
            v = {lead: K.one}
            for j, x in enumerate(tail):
                if x:
                    v[lead + 1 + j] = K(x)
            out.append(v)
    return out


def _freeze(spaces) -> tuple:
    """Canonical key: reduced echelon rows sorted by pivot (``Subspace.add`` appends)."""
    return tuple(tuple(sorted(tuple(sorted((j, int(x)) for j, x in row.items())) for row in S.basis))
                 for S in spaces)


def _extend(M: Module, spaces, v: int, x: dict) -> list[Subspace]:
    """The submodule generated by ``spaces`` (already a submodule) and x at vertex v."""
    q = M.algebra.quiver
    out = [Subspace([dict(r) for r in S.basis], S.dim_ambient, reduced=True) for S in spaces]
    stack = [(v, x)]
    while stack:
        w, y = stack.pop()
        S = out[w]
        before = S.dim
        if not S.add(y):
            continue
        new = S.basis[before]
        for k, a in enumerate(q.arrows):
            if a.source == w:
                z = vec_times(new, M.maps[k])
                if z:
                    stack.append((a.target, z))
    return out


def submodules(M: Module) -> list[tuple]:
    """All submodules, each as per-vertex reduced echelon bases (frozen).

    Every submodule is a sum of cyclic ones, so the cyclic submodules are
    closed under sums to a fixpoint.  Extending a submodule S by x only
    depends on the line through x modulo S, so only normalised vectors on
    the non-pivot columns of S are tried."""
    _check_caps(M)
    if "submodules" in M.cache:
        return M.cache["submodules"]
    K = M.algebra.K
    zero = tuple(() for _ in M.dims)
    found = {zero: [Subspace([], d) for d in M.dims]}
    frontier = list(found.values())
    while frontier:
        nxt = []
        for spaces in frontier:
            for v, S in enumerate(spaces):
                # x modulo S has a unique representative on the non-pivot columns
                comp = S.complement()
                for pt in _projective_points(len(comp), K):
                    merged = _extend(M, spaces, v, {comp[i]: c for i, c in pt.items()})
                    key = _freeze(merged)
                    if key not in found:
                        found[key] = merged
                        nxt.append(merged)
                        if len(found) > MAX_SUBMODULES:
                            raise CapExceeded("too many submodules")
        frontier = nxt
    M.cache["submodules"] = out = list(found)
    return out


def submodule_dim_vectors(M: Module) -> set[tuple[int, ...]]:
    return {tuple(len(S) for S in sub) for sub in submodules(M)}


def pairing(theta: Sequence, d: Sequence[int]) -> Fraction:
    return sum((Fraction(t) * x for t, x in zip(theta, d)), Fraction(0))


def is_theta_semistable(M: Module, theta: Sequence) -> bool:
    if len(theta) != M.algebra.n:
        raise ValueError("stability vector has the wrong length")
    if pairing(theta, M.dims) != 0:
        _check_caps(M)
        return False
    return all(pairing(theta, d) <= 0 for d in submodule_dim_vectors(M))
