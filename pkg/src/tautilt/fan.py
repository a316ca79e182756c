"""Cones of tau-tilting pairs: membership, fan checks, coverage and containment."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np
from scipy.stats import norm, qmc

from .errors import RankMismatch, SingularCone
from .exchange import ExchangeGraph
from .fields import fraction_str

INTERIOR, BOUNDARY, OUTSIDE = "interior", "boundary", "outside"
DENOMINATOR_LIMIT = 10 ** 6


def _det(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    M = [[Fraction(x) for x in r] for r in rows]
    n = len(M)
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if M[r][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            M[c], M[p] = M[p], M[c]
            det = -det
        det *= M[c][c]
        for r in range(c + 1, n):
            if M[r][c]:
                f = M[r][c] / M[c][c]
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return det


def _inverse(rows: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    n = len(rows)
    M = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)]
         for i, r in enumerate(rows)]
    for c in range(n):
        p = next(r for r in range(c, n) if M[r][c])
        M[c], M[p] = M[p], M[c]
        inv = 1 / M[c][c]
        M[c] = [x * inv for x in M[c]]
        for r in range(n):
            if r != c and M[r][c]:
                f = M[r][c]
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return [r[n:] for r in M]


@dataclass(frozen=True)
class Cone:
    """Simplicial cone spanned by the rows of ``generators``."""

    generators: tuple[tuple[int, ...], ...]
    key: tuple = ()
    _inv: tuple = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        gens = tuple(tuple(int(x) for x in g) for g in self.generators)
        object.__setattr__(self, "generators", gens)
        if not self.key:
            object.__setattr__(self, "key", gens)
        if not gens or any(len(g) != len(gens) for g in gens):
            raise SingularCone("a cone needs n generators in dimension n")
        if _det(gens) == 0:
            raise SingularCone(f"generators {gens} are linearly dependent")
        object.__setattr__(self, "_inv", tuple(tuple(r) for r in _inverse(gens)))

    @classmethod
    def from_pair(cls, p) -> Cone:
        return cls(p.key, p.key)

    @property
    def n(self) -> int:
        return len(self.generators)

    @property
    def determinant(self) -> int:
        return int(_det(self.generators))

    def coordinates(self, theta: Sequence) -> list[Fraction]:
        """k with theta = sum k_i g_i."""
        th = [Fraction(x) for x in theta]
        if len(th) != self.n:
            raise RankMismatch("vector length does not match the cone dimension")
        return [sum((th[i] * self._inv[i][j] for i in range(self.n)), Fraction(0))
                for j in range(self.n)]


def cone_membership(c: Cone, theta: Sequence) -> str:
    k = c.coordinates(theta)
    if all(x > 0 for x in k):
        return INTERIOR
    if all(x >= 0 for x in k):
        return BOUNDARY
    return OUTSIDE


# fan check ------------------------------------------------------------------

def strict_system_feasible(rows: Iterable[Sequence[Fraction]]) -> bool:
    """Whether ``a . x > 0`` for all rows has a solution (Fourier-Motzkin)."""
    rows = [tuple(Fraction(x) for x in r) for r in rows]
    if not rows:
        return True
    n = len(rows[0])
    for var in range(n):
        pos, neg, rest = [], [], []
        for r in rows:
            (pos if r[var] > 0 else neg if r[var] < 0 else rest).append(r)
        new = set(rest)
        for p in pos:
            for q in neg:
                comb = tuple(a * -q[var] + b * p[var] for a, b in zip(p, q))
                new.add(_normalise(comb))
        rows = list(new)
        if any(all(x == 0 for x in r) for r in rows):
            return False
    return not any(all(x == 0 for x in r) for r in rows)


def _normalise(r):
    m = max((abs(x) for x in r), default=Fraction(0))
    return tuple(x / m for x in r) if m else r


def interiors_meet(c1: Cone, c2: Cone) -> bool:
    # theta in the interior of c iff theta @ inv(G) > 0 componentwise
    rows = []
    for c in (c1, c2):
        for j in range(c.n):
            rows.append(tuple(c._inv[i][j] for i in range(c.n)))
    return strict_system_feasible(rows)


def _normal(shared: Sequence[Sequence[int]], n: int) -> list[Fraction]:
    """A nonzero vector orthogonal to n-1 independent vectors (cofactor expansion)."""
    out = []
    for j in range(n):
        minor = [[Fraction(x) for k, x in enumerate(g) if k != j] for g in shared]
        out.append((-1) ** j * _det(minor))
    return out


@dataclass
class FanReport:
    cones: int
    pairs_checked: int
    violations: list[dict]

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {"cones": self.cones, "pairs_checked": self.pairs_checked,
                "ok": self.ok, "violations": self.violations}


def check_fan(g: ExchangeGraph) -> FanReport:
    keys = list(g.nodes)
    cones = {}
    violations = []
    for k in keys:
        try:
            c = Cone(k, k)
        except SingularCone:
            violations.append({"kind": "singular", "nodes": [_key_str(k)]})
            continue
        if abs(c.determinant) != 1:
            violations.append({"kind": "determinant", "nodes": [_key_str(k)],
                               "value": fraction_str(c.determinant)})
        cones[k] = c
    ckeys = list(cones)
    pairs = 0
    for a, b in combinations(ckeys, 2):
        pairs += 1
        if interiors_meet(cones[a], cones[b]):
            violations.append({"kind": "overlap", "nodes": [_key_str(a), _key_str(b)]})
    edges = g.edge_set()
    for e in g.edges:
        shared = set(e.a) & set(e.b)
        if len(shared) != g.n - 1:
            violations.append({"kind": "edge_not_facet", "nodes": [_key_str(e.a), _key_str(e.b)]})
            continue
        nu = _normal(sorted(shared), g.n)
        (xa,) = set(e.a) - shared
        (xb,) = set(e.b) - shared
        sa = sum(Fraction(x) * y for x, y in zip(xa, nu))
        sb = sum(Fraction(x) * y for x, y in zip(xb, nu))
        if not (sa * sb < 0):
            violations.append({"kind": "same_side", "nodes": [_key_str(e.a), _key_str(e.b)]})
    done = {k for k in keys if len(g.explored.get(k, ())) == g.n}
    for a, b in combinations(keys, 2):
        if len(set(a) & set(b)) == g.n - 1 and frozenset((a, b)) not in edges:
            if a in done or b in done:
                violations.append({"kind": "facet_without_edge",
                                   "nodes": [_key_str(a), _key_str(b)]})
    return FanReport(len(keys), pairs, violations)


def _key_str(k) -> list[list[int]]:
    return [list(v) for v in k]


# sampling ------------------------------------------------------------------

def _rational(x: float) -> Fraction:
    return Fraction(x).limit_denominator(DENOMINATOR_LIMIT)


def sphere_directions(n: int, count: int, seed: int = 0) -> list[tuple[Fraction, ...]]:
    """Deterministic low-discrepancy rational directions (scrambled Halton)."""
    if n == 1:
        return [(Fraction(1 if k % 2 == 0 else -1),) for k in range(count)]
    if n == 2:
        u = qmc.Halton(d=1, scramble=True, seed=seed).random(count)[:, 0]
        pts = np.stack([np.cos(2 * math.pi * u), np.sin(2 * math.pi * u)], axis=1)
    else:
        u = qmc.Halton(d=n, scramble=True, seed=seed).random(count)
        u = np.clip(u, 1e-12, 1 - 1e-12)
        pts = norm.ppf(u)
        pts = pts / np.linalg.norm(pts, axis=1, keepdims=True)
    out = []
    for p in pts:
        v = tuple(_rational(float(x)) for x in p)
        if any(v):
            out.append(v)
    return out


def interior_weights(n: int, count: int, seed: int = 0) -> list[tuple[Fraction, ...]]:
    u = qmc.Halton(d=n, scramble=True, seed=seed).random(count)
    out = []
    for row in u:
        out.append(tuple(max(_rational(float(x)), Fraction(1, DENOMINATOR_LIMIT)) for x in row))
    return out


def near_ray(s: Sequence[Fraction], ray: Sequence, radius) -> bool:
    """Whether the unit directions of s and ray are closer than ``radius`` (chord length).

    Exact: |s^ - r^| < rho  iff  s.r > 0 and (s.r)^2 > c^2 |s|^2 |r|^2, c = 1 - rho^2/2."""
    r = [Fraction(x) for x in ray]
    rho = Fraction(radius)
    c = 1 - rho * rho / 2
    dot = sum(a * b for a, b in zip(s, r))
    ss = sum(a * a for a in s)
    rr = sum(b * b for b in r)
    if c <= 0:
        return dot * dot < c * c * ss * rr or dot > 0
    return dot > 0 and dot * dot > c * c * ss * rr


def _excluded(s, excluded) -> bool:
    return any(near_ray(s, ray, rad) for ray, rad in excluded)


@dataclass
class CoverageReport:
    seed: int
    samples: int
    exclusions: list
    considered: int
    covered: int
    uncovered: list

    @property
    def fraction(self) -> Fraction:
        if self.considered == 0:
            return Fraction(0)
        return Fraction(self.covered, self.considered)

    def to_dict(self) -> dict:
        return {
            "seed": self.seed, "samples": self.samples,
            "exclusions": [{"ray": [fraction_str(x) for x in r], "radius": fraction_str(rad)}
                           for r, rad in self.exclusions],
            "considered": self.considered, "covered": self.covered,
            "fraction": fraction_str(self.fraction),
            "uncovered": [[fraction_str(x) for x in s] for s in self.uncovered],
        }


def graph_cones(g: ExchangeGraph) -> list[Cone]:
    return [Cone(k, k) for k in g.nodes]


def coverage(g: ExchangeGraph, directions: int, excluded: Sequence = (), *, seed: int = 0) -> CoverageReport:
    """Fraction of sampled directions (outside the exclusion zones) in some explored cone."""
    if directions < 1:
        raise ValueError("need at least one sample direction")
    excluded = [(tuple(Fraction(x) for x in r), Fraction(rad)) for r, rad in excluded]
    cones = graph_cones(g)
    considered = covered = 0
    uncovered = []
    for s in sphere_directions(g.n, directions, seed):
        if _excluded(s, excluded):
            continue
        considered += 1
        if any(cone_membership(c, s) != OUTSIDE for c in cones):
            covered += 1
        else:
            uncovered.append(s)
    return CoverageReport(seed, directions, excluded, considered, covered, uncovered)


@dataclass
class ContainmentReport:
    seed: int
    samples_per_cone: int
    exclusions: list
    cones: list[dict]

    @property
    def unwitnessed(self) -> list:
        return [c["cone"] for c in self.cones if not c["witnessed"]]

    @property
    def all_witnessed(self) -> bool:
        return not self.unwitnessed

    def to_dict(self) -> dict:
        return {"seed": self.seed, "samples_per_cone": self.samples_per_cone,
                "exclusions": [{"ray": [fraction_str(x) for x in r], "radius": fraction_str(rad)}
                               for r, rad in self.exclusions],
                "cones": self.cones, "all_witnessed": self.all_witnessed}


def chamber_containment(gA: ExchangeGraph, gB: ExchangeGraph, samples: int,
                        excluded: Sequence = (), *, seed: int = 0) -> ContainmentReport:
    """For each B-cone, look for a sampled interior point inside some A-cone interior."""
    if gA.n != gB.n:
        raise RankMismatch(f"|A| = {gA.n} but |B| = {gB.n}")
    excluded = [(tuple(Fraction(x) for x in r), Fraction(rad)) for r, rad in excluded]
    a_cones = graph_cones(gA)
    out = []
    weights = interior_weights(gB.n, samples * 4, seed)
    for kB in sorted(gB.nodes):
        cB = Cone(kB, kB)
        record = {"cone": _key_str(kB), "witnessed": False, "witness": None, "a_cone": None,
                  "sampled": 0}
        for w in weights:
            if record["sampled"] >= samples:
                break
            theta = tuple(sum((wi * g[j] for wi, g in zip(w, cB.generators)), Fraction(0))
                          for j in range(gB.n))
            if _excluded(theta, excluded):
                continue
            record["sampled"] += 1
            hit = next((c for c in a_cones if cone_membership(c, theta) == INTERIOR), None)
            if hit is not None:
                record.update(witnessed=True, witness=[fraction_str(x) for x in theta],
                              a_cone=_key_str(hit.key))
                break
        out.append(record)
    return ContainmentReport(seed, samples, excluded, out)
