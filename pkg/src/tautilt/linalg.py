"""Sparse exact linear algebra over a :class:`~tautilt.fields.Field`.

Vectors are row vectors stored as ``{column: value}`` dicts without zero
entries; a :class:`Matrix` is a dict of such rows.  All maps act on the
right: ``v -> v @ A``.  Elimination is delegated to sympy's sparse RREF
(``sdm_irref``), whose cost depends only on the nonzero pattern.
"""
from __future__ import annotations

from sympy.polys.matrices.sdm import sdm_irref


class Matrix:
    """Immutable sparse matrix with field-element entries."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: dict[int, dict[int, object]], nrows: int, ncols: int):
        self.rows = rows
        self.nrows = nrows
        self.ncols = ncols

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> Matrix:
        return cls({}, nrows, ncols)

    @classmethod
    def identity(cls, n: int, one) -> Matrix:
        return cls({i: {i: one} for i in range(n)}, n, n)

    @classmethod
    def from_dense(cls, data, K, nrows: int | None = None, ncols: int | None = None) -> Matrix:
        data = [list(r) for r in data]
        nrows = len(data) if nrows is None else nrows
        ncols = (len(data[0]) if data else 0) if ncols is None else ncols
        rows = {}
        for i, r in enumerate(data):
            d = {j: K(x) for j, x in enumerate(r) if x}
            d = {j: x for j, x in d.items() if x}
            if d:
                rows[i] = d
        return cls(rows, nrows, ncols)

    @classmethod
    def from_rows(cls, vecs: list[dict], ncols: int) -> Matrix:
        return cls({i: v for i, v in enumerate(vecs) if v}, len(vecs), ncols)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def row(self, i: int) -> dict:
        return self.rows.get(i, {})

    def row_list(self) -> list[dict]:
        return [self.rows.get(i, {}) for i in range(self.nrows)]

    def is_zero(self) -> bool:
        return not self.rows

    def nnz(self) -> int:
        return sum(len(r) for r in self.rows.values())

    def to_dense(self, zero) -> list[list]:
        out = [[zero] * self.ncols for _ in range(self.nrows)]
        for i, r in self.rows.items():
            for j, v in r.items():
                out[i][j] = v
        return out

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.shape == other.shape
                and self.rows == other.rows)

    def __hash__(self):
        return hash((self.shape, tuple(sorted((i, tuple(sorted(r.items())))
                                              for i, r in self.rows.items()))))

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols}, nnz={self.nnz()})"

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        orows = other.rows
        out = {}
        for i, r in self.rows.items():
            acc = {}
            for k, a in r.items():
                rk = orows.get(k)
                if rk is None:
                    continue
                for j, b in rk.items():
                    acc[j] = acc[j] + a * b if j in acc else a * b
            acc = {j: v for j, v in acc.items() if v}
            if acc:
                out[i] = acc
        return Matrix(out, self.nrows, other.ncols)

    def __add__(self, other: Matrix) -> Matrix:
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        out = {i: dict(r) for i, r in self.rows.items()}
        for i, r in other.rows.items():
            acc = out.setdefault(i, {})
            for j, v in r.items():
                s = acc[j] + v if j in acc else v
                if s:
                    acc[j] = s
                else:
                    acc.pop(j, None)
            if not acc:
                del out[i]
        return Matrix(out, self.nrows, self.ncols)

    def __neg__(self) -> Matrix:
        return Matrix({i: {j: -v for j, v in r.items()} for i, r in self.rows.items()},
                      self.nrows, self.ncols)

    def __sub__(self, other: Matrix) -> Matrix:
        return self + (-other)

    def scale(self, c) -> Matrix:
        if not c:
            return Matrix.zeros(self.nrows, self.ncols)
        return Matrix({i: {j: c * v for j, v in r.items()} for i, r in self.rows.items()},
                      self.nrows, self.ncols)

    def transpose(self) -> Matrix:
        out: dict[int, dict] = {}
        for i, r in self.rows.items():
            for j, v in r.items():
                out.setdefault(j, {})[i] = v
        return Matrix(out, self.ncols, self.nrows)

    T = property(transpose)

    def trace(self, zero):
        t = zero
        for i, r in self.rows.items():
            v = r.get(i)
            if v:
                t = t + v
        return t

    def select_rows(self, idx) -> Matrix:
        idx = list(idx)
        return Matrix({k: self.rows[i] for k, i in enumerate(idx) if i in self.rows},
                      len(idx), self.ncols)

    def select_cols(self, idx) -> Matrix:
        idx = list(idx)
        pos = {j: k for k, j in enumerate(idx)}
        out = {}
        for i, r in self.rows.items():
            d = {pos[j]: v for j, v in r.items() if j in pos}
            if d:
                out[i] = d
        return Matrix(out, self.nrows, len(idx))

    def rank(self) -> int:
        return len(rref(self.row_list())[1])


def vec_times(v: dict, A: Matrix) -> dict:
    """Row vector times matrix."""
    acc: dict = {}
    arows = A.rows
    for k, a in v.items():
        rk = arows.get(k)
        if rk is None:
            continue
        for j, b in rk.items():
            acc[j] = acc[j] + a * b if j in acc else a * b
    return {j: x for j, x in acc.items() if x}


def vec_add(u: dict, v: dict, c=None) -> dict:
    """``u + c*v`` (``c`` defaults to one)."""
    out = dict(u)
    for j, x in v.items():
        y = x if c is None else c * x
        s = out[j] + y if j in out else y
        if s:
            out[j] = s
        else:
            out.pop(j, None)
    return out


def vec_scale(v: dict, c) -> dict:
    if not c:
        return {}
    return {j: c * x for j, x in v.items()}


def shift(v: dict, offset: int) -> dict:
    return {j + offset: x for j, x in v.items()}


def rref(vecs: list[dict]) -> tuple[list[dict], list[int]]:
    """Reduced row echelon form of the span of ``vecs``.

    Returns the nonzero RREF rows (ordered by pivot) and their pivot columns.
    """
    A = {i: v for i, v in enumerate(vecs) if v}
    if not A:
        return [], []
    R, pivots, _ = sdm_irref(A)
    return [R[i] for i in range(len(pivots))], list(pivots)


class Subspace:
    """A subspace of K^dim in reduced echelon form.

    Coordinates of a vector lying in the subspace are simply its entries
    at the pivot columns, which keeps all submodule bookkeeping sparse.
    """

    __slots__ = ("dim_ambient", "basis", "pivots", "_pivpos")

    def __init__(self, vecs: list[dict], dim_ambient: int, *, reduced: bool = False):
        if reduced:
            basis, pivots = list(vecs), [min(v) for v in vecs]
        elif not vecs:
            basis, pivots = [], []
        else:
            basis, pivots = rref(vecs)
        self.dim_ambient = dim_ambient
        self.basis = basis
        self.pivots = pivots
        self._pivpos = {p: k for k, p in enumerate(pivots)}

    @classmethod
    def whole(cls, n: int, one) -> Subspace:
        return cls([{i: one} for i in range(n)], n, reduced=True)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def reduce(self, v: dict) -> dict:
        """Remainder of ``v`` modulo the subspace (zero at every pivot)."""
        out = dict(v)
        pivpos = self._pivpos
        for p, c in v.items():
            k = pivpos.get(p)
            if k is None:
                continue
            # RREF rows vanish on every other pivot, so one pass suffices
            for j, x in self.basis[k].items():
                s = out[j] - c * x if j in out else -c * x
                if s:
                    out[j] = s
                else:
                    del out[j]
        return out

    def add(self, v: dict) -> bool:
        """Extend the subspace by ``v`` keeping reduced echelon form; False if already inside."""
        r = self.reduce(v)
        if not r:
            return False
        p = min(r)
        inv = r[p] ** -1
        r = {j: x * inv for j, x in r.items()}
        for k, row in enumerate(self.basis):
            c = row.get(p)
            if c:
                self.basis[k] = vec_add(row, r, -c)
        self._pivpos[p] = len(self.basis)
        self.basis.append(r)
        self.pivots.append(p)
        return True

    def contains(self, v: dict) -> bool:
        return not self.reduce(v)

    def coords(self, v: dict) -> list:
        """Coordinates of ``v`` (assumed to lie in the subspace)."""
        return [v.get(p) for p in self.pivots]

    def coords_dict(self, v: dict) -> dict:
        return {k: v[p] for k, p in enumerate(self.pivots) if p in v and v[p]}

    def complement(self) -> list[int]:
        """Standard basis indices spanning a complement."""
        piv = set(self.pivots)
        return [j for j in range(self.dim_ambient) if j not in piv]

    def basis_matrix(self) -> Matrix:
        return Matrix.from_rows(self.basis, self.dim_ambient)


def span(vecs: list[dict], dim: int) -> Subspace:
    return Subspace(vecs, dim)


def solve_homogeneous(eqs: list[dict], nvars: int, one) -> tuple[list[dict], list[int]]:
    """Basis of ``{x : e.x = 0 for e in eqs}``.

    Each basis vector has a one at its own free variable and zeros at all other
    free variables, so the free-variable entries of any solution are its
    coordinates in this basis.  Returns ``(basis, free_vars)``.
    """
    R, pivots = rref(eqs)
    piv = set(pivots)
    free = [j for j in range(nvars) if j not in piv]
    # column -> list of (pivot, coefficient) for pivot rows that involve it
    involved: dict[int, list] = {}
    for r, p in zip(R, pivots):
        for j, c in r.items():
            if j != p:
                involved.setdefault(j, []).append((p, c))
    basis = []
    for f in free:
        x = {f: one}
        for p, c in involved.get(f, ()):
            x[p] = -c
        basis.append(x)
    return basis, free


def left_kernel(A: Matrix, one) -> list[dict]:
    """Basis of ``{v : v @ A = 0}``."""
    basis, _ = solve_homogeneous(A.transpose().row_list(), A.nrows, one)
    return basis


def image_span(A: Matrix) -> Subspace:
    """Row space of A, i.e. the image of ``v -> v @ A``."""
    return Subspace(list(A.rows.values()), A.ncols)


def determinant(rows: list[list], K):
    """Determinant of a small dense matrix by exact elimination."""
    n = len(rows)
    M = [[K.convert(x) for x in r] for r in rows]
    det = K.one
    for c in range(n):
        p = next((r for r in range(c, n) if M[r][c]), None)
        if p is None:
            return K.zero
        if p != c:
            M[c], M[p] = M[p], M[c]
            det = -det
        det = det * M[c][c]
        inv = K.one / M[c][c]
        for r in range(c + 1, n):
            if M[r][c]:
                f = M[r][c] * inv
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return det


def solve_square(rows: list[list], rhs: list, K) -> list | None:
    """Solve ``x @ rows = rhs`` for a small dense square system; None if singular."""
    n = len(rows)
    # augmented system in column form: A^T x = rhs
    M = [[K.convert(rows[j][i]) for j in range(n)] + [K.convert(rhs[i])] for i in range(n)]
    for c in range(n):
        p = next((r for r in range(c, n) if M[r][c]), None)
        if p is None:
            return None
        M[c], M[p] = M[p], M[c]
        inv = K.one / M[c][c]
        M[c] = [x * inv for x in M[c]]
        for r in range(n):
            if r != c and M[r][c]:
                f = M[r][c]
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return [M[i][n] for i in range(n)]
