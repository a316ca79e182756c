"""Bound quiver algebras: quivers, relations, presentations and their bases.

Conventions: vertices are referred to by label in the public API and by
position internally.  A path is written left to right in the order its
arrows are traversed, so ``a.b`` means "a, then b" and the product of two
path classes is concatenation.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Iterable, Sequence

from .errors import (EmptyOrFullVertexSet, MalformedRelation,
                     NotAdmissibleWithinCap, ParseError)
from .fields import Field, QQ_FIELD, fraction_str
from .linalg import rref


@dataclass(frozen=True)
class Arrow:
    name: str
    source: int
    target: int


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]

    def __post_init__(self):
        if len(self.vertices) < 1:
            raise ValueError("a quiver needs at least one vertex")
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("vertex labels must be distinct")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise ValueError("arrow ids must be distinct")
        n = len(self.vertices)
        for a in self.arrows:
            if not (0 <= a.source < n and 0 <= a.target < n):
                raise ValueError(f"arrow {a.name} has an invalid endpoint")

    @classmethod
    def from_labels(cls, vertices: Sequence, arrows: Iterable[tuple]) -> Quiver:
        """``arrows`` are ``(id, source_label, target_label)`` triples."""
        vertices = tuple(str(v) for v in vertices)
        pos = {v: i for i, v in enumerate(vertices)}
        out = []
        for name, s, t in arrows:
            s, t = str(s), str(t)
            if s not in pos or t not in pos:
                raise ValueError(f"arrow {name}: unknown endpoint")
            out.append(Arrow(str(name), pos[s], pos[t]))
        return cls(vertices, tuple(out))

    @property
    def n(self) -> int:
        return len(self.vertices)

    @cached_property
    def vertex_index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def arrow_index(self) -> dict[str, int]:
        return {a.name: i for i, a in enumerate(self.arrows)}

    def vertex(self, label) -> int:
        try:
            return self.vertex_index[str(label)]
        except KeyError:
            raise KeyError(f"unknown vertex {label!r}") from None

    def opposite(self) -> Quiver:
        return Quiver(self.vertices,
                      tuple(Arrow(a.name, a.target, a.source) for a in self.arrows))

    def path(self, word: str | Sequence[str]) -> Path:
        """Path from a ``.``-separated arrow word, or ``e<label>`` for a trivial path."""
        if isinstance(word, str):
            word = word.strip()
            if word.startswith("e") and word[1:] in self.vertex_index and word not in self.arrow_index:
                v = self.vertex_index[word[1:]]
                return Path(v, v, ())
            word = word.split(".")
        ids = []
        for w in word:
            if w not in self.arrow_index:
                raise MalformedRelation(f"unknown arrow {w!r}")
            ids.append(self.arrow_index[w])
        return Path.from_arrows(self, ids)


@dataclass(frozen=True, order=True)
class Path:
    source: int
    target: int
    arrows: tuple[int, ...]

    @classmethod
    def from_arrows(cls, quiver: Quiver, ids: Sequence[int]) -> Path:
        if not ids:
            raise MalformedRelation("empty arrow sequence")
        arr = quiver.arrows
        for x, y in zip(ids, ids[1:]):
            if arr[x].target != arr[y].source:
                raise MalformedRelation(
                    f"arrows {arr[x].name} and {arr[y].name} are not composable")
        return cls(arr[ids[0]].source, arr[ids[-1]].target, tuple(ids))

    @property
    def length(self) -> int:
        return len(self.arrows)

    @property
    def key(self):
        return (len(self.arrows), self.arrows, self.source)

    def __mul__(self, other: Path) -> Path | None:
        if self.target != other.source:
            return None
        return Path(self.source, other.target, self.arrows + other.arrows)

    def reversed(self) -> Path:
        return Path(self.target, self.source, self.arrows[::-1])

    def vertices_visited(self, quiver: Quiver) -> set[int]:
        out = {self.source, self.target}
        for a in self.arrows:
            out.add(quiver.arrows[a].source)
            out.add(quiver.arrows[a].target)
        return out

    def word(self, quiver: Quiver) -> str:
        if not self.arrows:
            return "e" + quiver.vertices[self.source]
        return ".".join(quiver.arrows[a].name for a in self.arrows)


@dataclass(frozen=True)
class Relation:
    """Formal combination ``sum c_k p_k`` of parallel paths."""

    terms: tuple[tuple[Fraction, Path], ...]

    @classmethod
    def parse(cls, quiver: Quiver, text: str) -> Relation:
        return cls(tuple(_parse_terms(quiver, text)))

    @classmethod
    def path(cls, quiver: Quiver, word: str) -> Relation:
        return cls(((Fraction(1), quiver.path(word)),))

    @property
    def source(self) -> int:
        return self.terms[0][1].source

    @property
    def target(self) -> int:
        return self.terms[0][1].target

    def format(self, quiver: Quiver) -> str:
        parts = []
        for k, (c, p) in enumerate(self.terms):
            sign = "-" if c < 0 else "+"
            body = p.word(quiver) if abs(c) == 1 else f"{fraction_str(abs(c))}*{p.word(quiver)}"
            if k == 0:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(f"{sign} {body}")
        return " ".join(parts)


def check_relation(quiver: Quiver, rel: Relation, *, min_length: int = 2) -> None:
    if not rel.terms:
        raise MalformedRelation("empty relation")
    s, t = rel.source, rel.target
    seen = set()
    for c, p in rel.terms:
        if not c:
            raise MalformedRelation("zero coefficient in relation")
        if (p.source, p.target) != (s, t):
            raise MalformedRelation("relation terms are not parallel")
        if p.length < min_length:
            raise MalformedRelation(
                f"path {p.word(quiver)} has length {p.length} < {min_length}")
        if p in seen:
            raise MalformedRelation(f"path {p.word(quiver)} repeated in a relation")
        seen.add(p)
        for a in p.arrows:
            if not 0 <= a < len(quiver.arrows):
                raise MalformedRelation("relation uses an unknown arrow")


_TERM = re.compile(r"\s*([+-])?\s*(?:(\d+(?:/\d+)?)\s*\*\s*)?([A-Za-z_][\w']*(?:\.[A-Za-z_][\w']*)*)\s*")


def _parse_terms(quiver: Quiver, text: str):
    pos, first, out = 0, True, []
    text = text.strip()
    if not text:
        raise MalformedRelation("empty relation")
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos or (not first and m.group(1) is None):
            raise MalformedRelation(f"cannot parse relation near {text[pos:]!r}")
        coef = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        if m.group(1) == "-":
            coef = -coef
        out.append((coef, quiver.path(m.group(3))))
        pos, first = m.end(), False
    return out


@dataclass(frozen=True)
class QuotientData:
    """How a quotient presentation was obtained from its parent.

    ``vertex_map`` / ``arrow_map`` send each parent vertex / arrow to its
    index in the quotient, or ``None`` when it is killed.
    """

    parent: AlgebraPresentation
    vertex_map: tuple
    arrow_map: tuple
    kind: str


@dataclass(frozen=True)
class AlgebraPresentation:
    quiver: Quiver
    relations: tuple[Relation, ...] = ()
    field: Field = QQ_FIELD
    length_cap: int = 8
    origin: QuotientData | None = dc_field(default=None, compare=False, hash=False, repr=False)

    def build(self) -> Algebra:
        return self.algebra

    @cached_property
    def algebra(self) -> Algebra:
        return build_algebra(self.quiver, self.relations, self.length_cap,
                             field=self.field, presentation=self)

    def opposite(self) -> AlgebraPresentation:
        rels = tuple(Relation(tuple((c, p.reversed()) for c, p in r.terms))
                     for r in self.relations)
        return AlgebraPresentation(self.quiver.opposite(), rels, self.field, self.length_cap)

    def with_field(self, field: Field) -> AlgebraPresentation:
        return AlgebraPresentation(self.quiver, self.relations, field, self.length_cap)

    def to_text(self) -> str:
        return format_algebra_text(self)


class Algebra:
    """A finite dimensional basic algebra kQ/I with a path-class basis.

    Elements are sparse dicts ``{basis index: coefficient}``.  Basis indices
    ``0..n-1`` are the trivial paths ``e_1..e_n``.
    """

    def __init__(self, quiver: Quiver, field: Field, basis: Sequence[Path],
                 mult: dict, loewy_length: int, presentation: AlgebraPresentation | None):
        self.quiver = quiver
        self.field = field
        self.basis = tuple(basis)
        self.index = {p: i for i, p in enumerate(self.basis)}
        self.mult = mult
        self.loewy_length = loewy_length
        self.presentation = presentation
        n = quiver.n
        self.idempotents = tuple(self.index[Path(v, v, ())] for v in range(n))
        self.arrow_basis = tuple(self.index.get(Path(a.source, a.target, (k,)))
                                 for k, a in enumerate(quiver.arrows))
        by_pair: dict[tuple[int, int], list[int]] = {(s, t): [] for s in range(n) for t in range(n)}
        for i, p in enumerate(self.basis):
            by_pair[(p.source, p.target)].append(i)
        self.by_pair = by_pair
        self._opposite: Algebra | None = None
        self.cache: dict = {}

    def __repr__(self):
        return f"<Algebra n={self.n} dim={self.dim} over {self.field.name}>"

    @property
    def n(self) -> int:
        return self.quiver.n

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def K(self):
        return self.field.domain

    @property
    def radical_indices(self) -> list[int]:
        return [i for i, p in enumerate(self.basis) if p.length >= 1]

    def paths(self, s: int, t: int) -> list[int]:
        """Basis indices of path classes from ``s`` to ``t``."""
        return self.by_pair[(s, t)]

    def times(self, i: int, j: int) -> dict:
        return self.mult.get((i, j), {})

    def multiply(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for i, a in x.items():
            for j, b in y.items():
                for k, c in self.mult.get((i, j), {}).items():
                    v = out.get(k, 0) + a * b * c if k in out else a * b * c
                    out[k] = v
        return {k: v for k, v in out.items() if v}

    def path_element(self, path: Path) -> dict:
        x = {self.idempotents[path.source]: self.K.one}
        for a in path.arrows:
            x = self.multiply(x, {self.arrow_basis[a]: self.K.one})
        return x

    def element(self, terms: Iterable[tuple]) -> dict:
        out: dict = {}
        for c, p in terms:
            for k, v in self.path_element(p).items():
                out[k] = out.get(k, 0) + self.field(c) * v if k in out else self.field(c) * v
        return {k: v for k, v in out.items() if v}

    def opposite(self) -> Algebra:
        """A^op on the reversed basis: ``b_i^op * b_j^op = (b_j b_i)^op``."""
        if self._opposite is None:
            mult = {(j, i): v for (i, j), v in self.mult.items()}
            pres = self.presentation.opposite() if self.presentation is not None else None
            op = Algebra(self.quiver.opposite(), self.field,
                         [p.reversed() for p in self.basis], mult, self.loewy_length, pres)
            op._opposite = self
            self._opposite = op
        return self._opposite

    # invariants -------------------------------------------------------
    def check_idempotents(self) -> bool:
        one = self.K.one
        for i, ei in enumerate(self.idempotents):
            for j, ej in enumerate(self.idempotents):
                expect = {ei: one} if i == j else {}
                if self.times(ei, ej) != expect:
                    return False
        unit = {e: one for e in self.idempotents}
        for b in range(self.dim):
            if self.multiply(unit, {b: one}) != {b: one} or self.multiply({b: one}, unit) != {b: one}:
                return False
        return True

    def check_associativity(self) -> bool:
        one = self.K.one
        for i, j, k in product(range(self.dim), repeat=3):
            left = self.multiply(self.times(i, j), {k: one})
            right = self.multiply({i: one}, self.times(j, k))
            if left != right:
                return False
        return True

    def radical_power_vanishes(self, L: int) -> bool:
        """Whether every product of ``L`` radical basis elements is zero."""
        rad = self.radical_indices
        layer = {i: None for i in rad}
        for _ in range(L - 1):
            nxt = {}
            for i in layer:
                for j in rad:
                    for k in self.times(i, j):
                        nxt[k] = None
            layer = nxt
            if not layer:
                return True
        return not layer


def _all_paths(quiver: Quiver, cap: int) -> list[list[Path]]:
    by_len = [[Path(v, v, ()) for v in range(quiver.n)]]
    out_arrows = [[k for k, a in enumerate(quiver.arrows) if a.source == v] for v in range(quiver.n)]
    for _ in range(cap):
        nxt = []
        for p in by_len[-1]:
            for k in out_arrows[p.target]:
                nxt.append(Path(p.source, quiver.arrows[k].target, p.arrows + (k,)))
        by_len.append(nxt)
    return by_len


def build_algebra(quiver: Quiver, relations: Sequence[Relation], length_cap: int,
                  field: Field = QQ_FIELD,
                  presentation: AlgebraPresentation | None = None) -> Algebra:
    """Basis and structure constants of kQ/I for an admissible ideal I.

    Works in kQ modulo paths longer than ``length_cap``: the ideal is spanned
    block by block (fixed source and target) by all products ``u r v`` and
    put in echelon form with longer paths first, so the surviving basis
    consists of the smallest paths in (length, arrow ids) order.  Fails unless
    every path of some length ``L <= length_cap`` lies in the ideal.
    """
    if length_cap < 2:
        raise ValueError("length_cap must be at least 2")
    if presentation is None:
        presentation = AlgebraPresentation(quiver, tuple(relations), field, length_cap)
    for r in relations:
        check_relation(quiver, r)
    by_len = _all_paths(quiver, length_cap)
    paths = [p for layer in by_len for p in layer]
    ending = {v: [p for p in paths if p.target == v] for v in range(quiver.n)}
    starting = {v: [p for p in paths if p.source == v] for v in range(quiver.n)}

    K = field.domain
    blocks: dict[tuple[int, int], list[Path]] = {}
    for p in paths:
        blocks.setdefault((p.source, p.target), []).append(p)
    col_of: dict[tuple[int, int], dict[Path, int]] = {}
    for st, ps in blocks.items():
        ps.sort(key=lambda p: p.key, reverse=True)
        col_of[st] = {p: k for k, p in enumerate(ps)}

    gens: dict[tuple[int, int], list[dict]] = {}
    for r in relations:
        terms = [(field(c), p) for c, p in r.terms]
        lmin = min(p.length for _, p in terms)
        for u in ending[r.source]:
            if u.length + lmin > length_cap:
                continue
            for v in starting[r.target]:
                if u.length + lmin + v.length > length_cap:
                    continue
                st = (u.source, v.target)
                vec = {}
                for c, p in terms:
                    w = u * p * v
                    if w.length <= length_cap:
                        vec[col_of[st][w]] = c
                gens.setdefault(st, []).append(vec)

    reductions: dict[Path, dict[Path, object]] = {}
    for st, ps in blocks.items():
        rows, pivots = rref(gens.get(st, []))
        pivset = set(pivots)
        for k, p in enumerate(ps):
            if k not in pivset:
                reductions[p] = {p: K.one}
        for row, piv in zip(rows, pivots):
            reductions[ps[piv]] = {ps[j]: -c for j, c in row.items() if j != piv}

    loewy = None
    for L in range(1, length_cap + 1):
        if all(not reductions[p] for p in by_len[L]):
            loewy = L
            break
    if loewy is None:
        raise NotAdmissibleWithinCap(
            f"no path length <= {length_cap} at which all paths lie in the ideal")

    basis = sorted((p for p in paths if reductions[p] == {p: K.one} and p.length < loewy),
                   key=lambda p: p.key)
    index = {p: i for i, p in enumerate(basis)}

    def reduce(p: Path) -> dict:
        if p.length >= loewy:
            return {}
        return {index[q]: c for q, c in reductions[p].items()}

    mult = {}
    for i, p in enumerate(basis):
        for j, q in enumerate(basis):
            w = p * q
            if w is None:
                continue
            red = reduce(w)
            if red:
                mult[(i, j)] = red
    return Algebra(quiver, field, basis, mult, loewy, presentation)


# quotients ---------------------------------------------------------------

def quotient_by_relations(pres: AlgebraPresentation,
                          extra: Sequence[Relation | str]) -> AlgebraPresentation:
    """Append relations.  A relation consisting of a single arrow kills that arrow."""
    q = pres.quiver
    extra = [Relation.parse(q, r) if isinstance(r, str) else r for r in extra]
    killed = set()
    keep = []
    for r in extra:
        if any(p.length < 2 for _, p in r.terms):
            if len(r.terms) == 1 and r.terms[0][1].length == 1:
                killed.add(r.terms[0][1].arrows[0])
                continue
            raise MalformedRelation("length-one terms are only supported as single-arrow kills")
        check_relation(q, r)
        keep.append(r)
    arrow_map = []
    new_arrows = []
    for k, a in enumerate(q.arrows):
        if k in killed:
            arrow_map.append(None)
        else:
            arrow_map.append(len(new_arrows))
            new_arrows.append(a)
    quiver = Quiver(q.vertices, tuple(new_arrows))
    rels = _restrict_relations(quiver, list(pres.relations) + keep, arrow_map,
                               tuple(range(q.n)))
    origin = QuotientData(pres, tuple(range(q.n)), tuple(arrow_map), "relations")
    return AlgebraPresentation(quiver, rels, pres.field, pres.length_cap, origin)


def quotient_by_idempotent(pres: AlgebraPresentation, dropped: Iterable) -> AlgebraPresentation:
    """Presentation of A/<sum of e_i over the dropped vertices>."""
    q = pres.quiver
    drop = {q.vertex(v) for v in dropped}
    if not drop or len(drop) >= q.n:
        raise EmptyOrFullVertexSet("dropped vertices must form a nonempty proper subset")
    vertex_map, verts = [], []
    for v, label in enumerate(q.vertices):
        if v in drop:
            vertex_map.append(None)
        else:
            vertex_map.append(len(verts))
            verts.append(label)
    arrow_map, arrows = [], []
    for a in q.arrows:
        if a.source in drop or a.target in drop:
            arrow_map.append(None)
        else:
            arrow_map.append(len(arrows))
            arrows.append(Arrow(a.name, vertex_map[a.source], vertex_map[a.target]))
    quiver = Quiver(tuple(verts), tuple(arrows))
    rels = _restrict_relations(quiver, pres.relations, arrow_map, tuple(vertex_map))
    origin = QuotientData(pres, tuple(vertex_map), tuple(arrow_map), "idempotent")
    return AlgebraPresentation(quiver, rels, pres.field, pres.length_cap, origin)


def _restrict_relations(quiver: Quiver, relations, arrow_map, vertex_map) -> tuple[Relation, ...]:
    out = []
    for r in relations:
        terms = []
        for c, p in r.terms:
            ids = [arrow_map[a] for a in p.arrows]
            if any(i is None for i in ids):
                continue
            if vertex_map[p.source] is None or vertex_map[p.target] is None:
                continue
            terms.append((c, Path(vertex_map[p.source], vertex_map[p.target], tuple(ids))))
        if not terms:
            continue
        rel = Relation(tuple(terms))
        if len(terms) == 1 and terms[0][1].length < 2:
            raise MalformedRelation("restricted relation degenerates to a short path")
        check_relation(quiver, rel)
        if rel not in out:
            out.append(rel)
    return tuple(out)


# text format -------------------------------------------------------------

_ARROW_LINE = re.compile(r"^(\S+)\s*:\s*(\S+)\s*->\s*(\S+)$")


def parse_algebra_text(text: str) -> AlgebraPresentation:
    """Parse the line-oriented algebra format (see README)."""
    vertices, arrows, rel_lines = [], [], []
    field, cap = QQ_FIELD, None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "vertex":
            if not rest or " " in rest:
                raise ParseError(f"line {lineno}: bad vertex line")
            vertices.append(rest)
        elif head == "arrow":
            m = _ARROW_LINE.match(rest)
            if not m:
                raise ParseError(f"line {lineno}: expected 'arrow <id>: <src> -> <tgt>'")
            arrows.append(m.groups())
        elif head == "relation":
            rel_lines.append((lineno, rest))
        elif head == "field":
            field = Field.parse(rest)
        elif head == "lengthcap":
            if not rest.isdigit():
                raise ParseError(f"line {lineno}: lengthcap needs a positive integer")
            cap = int(rest)
        else:
            raise ParseError(f"line {lineno}: unknown directive {head!r}")
    if not vertices:
        raise ParseError("no vertices declared")
    try:
        quiver = Quiver.from_labels(vertices, arrows)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    rels = []
    for lineno, body in rel_lines:
        try:
            rels.append(Relation.parse(quiver, body))
        except MalformedRelation as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
    if cap is None:
        cap = 8
    return AlgebraPresentation(quiver, tuple(rels), field, cap)


def format_algebra_text(pres: AlgebraPresentation) -> str:
    q = pres.quiver
    lines = [f"field {pres.field.name}", f"lengthcap {pres.length_cap}"]
    lines += [f"vertex {v}" for v in q.vertices]
    lines += [f"arrow {a.name}: {q.vertices[a.source]} -> {q.vertices[a.target]}" for a in q.arrows]
    lines += [f"relation {r.format(q)}" for r in pres.relations]
    return "\n".join(lines) + "\n"
