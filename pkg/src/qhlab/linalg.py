"""Exact linear algebra over the rationals.

Matrices are ``flint.fmpq_mat`` values; vectors are single-column matrices.
Subspaces are stored in reduced row echelon form, so two subspaces are equal
exactly when their basis matrices are equal.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from flint import fmpq, fmpq_mat

Scalar = fmpq
Matrix = fmpq_mat


def scalar(x) -> fmpq:
    """Coerce ints, Fractions and ``"p/q"`` strings to an exact scalar."""
    if isinstance(x, fmpq):
        return x
    if isinstance(x, str):
        x = Fraction(x)
    if isinstance(x, Fraction):
        return fmpq(x.numerator, x.denominator)
    if isinstance(x, bool) or not isinstance(x, int):
        raise TypeError(f"not an exact scalar: {x!r}")
    return fmpq(x)


def matrix(rows: Sequence[Sequence], ncols: int | None = None) -> Matrix:
    rows = [list(r) for r in rows]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    flat = [scalar(x) for r in rows for x in r]
    return fmpq_mat(len(rows), ncols, flat)


def zeros(r: int, c: int) -> Matrix:
    return fmpq_mat(r, c)


def identity(n: int) -> Matrix:
    m = fmpq_mat(n, n)
    for i in range(n):
        m[i, i] = 1
    return m


def column(values: Iterable) -> Matrix:
    vals = [scalar(v) for v in values]
    return fmpq_mat(len(vals), 1, vals)


def unit_vector(n: int, i: int) -> Matrix:
    v = fmpq_mat(n, 1)
    v[i, 0] = 1
    return v


def col(m: Matrix, j: int) -> Matrix:
    return fmpq_mat(m.nrows(), 1, [m[i, j] for i in range(m.nrows())])


def columns(m: Matrix) -> list[Matrix]:
    return [col(m, j) for j in range(m.ncols())]


def rows_of(m: Matrix) -> list[list[fmpq]]:
    return m.tolist()


def is_zero(m: Matrix) -> bool:
    return all(x == 0 for x in m.entries())


def hstack(mats: Sequence[Matrix], nrows: int | None = None) -> Matrix:
    if not mats:
        return fmpq_mat(nrows or 0, 0)
    r = mats[0].nrows()
    c = sum(m.ncols() for m in mats)
    lists = [m.tolist() for m in mats]
    flat = [x for i in range(r) for rows in lists for x in rows[i]]
    return fmpq_mat(r, c, flat)


def vstack(mats: Sequence[Matrix], ncols: int | None = None) -> Matrix:
    if not mats:
        return fmpq_mat(0, ncols or 0)
    c = mats[0].ncols()
    flat = [x for m in mats for x in m.entries()]
    return fmpq_mat(sum(m.nrows() for m in mats), c, flat)


def submatrix(m: Matrix, rows: Sequence[int], cols: Sequence[int]) -> Matrix:
    return fmpq_mat(len(rows), len(cols), [m[i, j] for i in rows for j in cols])


def block_diag(mats: Sequence[Matrix]) -> Matrix:
    r = sum(m.nrows() for m in mats)
    c = sum(m.ncols() for m in mats)
    out = fmpq_mat(r, c)
    i0 = j0 = 0
    for m in mats:
        for i in range(m.nrows()):
            for j in range(m.ncols()):
                x = m[i, j]
                if x != 0:
                    out[i0 + i, j0 + j] = x
        i0 += m.nrows()
        j0 += m.ncols()
    return out


def lin_comb(coeffs: Sequence, mats: Sequence[Matrix], shape: tuple[int, int]) -> Matrix:
    out = fmpq_mat(*shape)
    for c, m in zip(coeffs, mats):
        if c != 0:
            out = out + m * c
    return out


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the pivot column of each nonzero row."""
    if m.nrows() == 0 or m.ncols() == 0:
        return fmpq_mat(m.nrows(), m.ncols()), []
    r, rank = m.rref()
    pivots = []
    ncols = m.ncols()
    for i in range(rank):
        j = pivots[-1] + 1 if pivots else 0
        while r[i, j] == 0:
            j += 1
        pivots.append(j)
        assert j < ncols
    return r, pivots


def rank(m: Matrix) -> int:
    if m.nrows() == 0 or m.ncols() == 0:
        return 0
    return m.rank()


def kernel(m: Matrix) -> "Subspace":
    """Right null space ``{v : m v = 0}``."""
    n = m.ncols()
    r, pivots = rref(m)
    pivset = set(pivots)
    vecs = []
    for f in range(n):
        if f in pivset:
            continue
        v = [fmpq(0)] * n
        v[f] = fmpq(1)
        for i, p in enumerate(pivots):
            v[p] = -r[i, f]
        vecs.append(v)
    return Subspace.from_rows(fmpq_mat(len(vecs), n, [x for v in vecs for x in v]), n)


def solve(m: Matrix, v: Matrix) -> Matrix | None:
    """Some ``x`` with ``m x = v``, or ``None`` when the system is inconsistent."""
    n = m.ncols()
    if v.nrows() != m.nrows():
        raise ValueError("right-hand side has the wrong length")
    k = v.ncols()
    r, pivots = rref(hstack([m, v], m.nrows()))
    if any(p >= n for p in pivots):
        return None
    x = fmpq_mat(n, k)
    for i, p in enumerate(pivots):
        for j in range(k):
            x[p, j] = r[i, n + j]
    return x


def kron(a: Matrix, b: Matrix) -> Matrix:
    """Kronecker product; index ``(i, k)`` of the product space is ``i * dim_b + k``."""
    ar, ac, br, bc = a.nrows(), a.ncols(), b.nrows(), b.ncols()
    al, bl = a.tolist(), b.tolist()
    flat = [x * y for arow in al for brow in bl for x in arow for y in brow]
    return fmpq_mat(ar * br, ac * bc, flat)


def vec_entries(v: Matrix) -> list[fmpq]:
    return v.entries()


class Subspace:
    """A subspace of ``Q^n`` with canonical (reduced echelon) basis rows."""

    __slots__ = ("ambient_dim", "basis", "pivots", "_hash")

    def __init__(self, basis: Matrix, pivots: list[int], ambient_dim: int):
        self.ambient_dim = ambient_dim
        self.basis = basis
        self.pivots = pivots
        self._hash = None

    @classmethod
    def from_rows(cls, rows: Matrix, ambient_dim: int | None = None) -> "Subspace":
        n = rows.ncols() if ambient_dim is None else ambient_dim
        r, pivots = rref(rows)
        k = len(pivots)
        return cls(fmpq_mat(k, n, r.entries()[: k * n]), pivots, n)

    @classmethod
    def from_columns(cls, cols: Matrix, ambient_dim: int | None = None) -> "Subspace":
        n = cols.nrows() if ambient_dim is None else ambient_dim
        return cls.from_rows(cols.transpose(), n)

    @classmethod
    def span(cls, vectors: Sequence[Matrix], ambient_dim: int) -> "Subspace":
        return cls.from_columns(hstack(list(vectors), ambient_dim), ambient_dim)

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(fmpq_mat(0, n), [], n)

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(identity(n), list(range(n)), n)

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def columns(self) -> Matrix:
        """Basis vectors as the columns of an ``n x dim`` matrix."""
        return self.basis.transpose()

    def vectors(self) -> list[Matrix]:
        return columns(self.columns())

    def coords(self, v: Matrix) -> Matrix:
        """Coordinates of ``v`` (assumed to lie in the subspace) in the basis."""
        return fmpq_mat(self.dim, v.ncols(), [v[p, j] for p in self.pivots for j in range(v.ncols())])

    def selector(self) -> Matrix:
        """The ``dim x n`` matrix computing coordinates."""
        s = fmpq_mat(self.dim, self.ambient_dim)
        for i, p in enumerate(self.pivots):
            s[i, p] = 1
        return s

    def contains(self, v: Matrix) -> bool:
        if self.dim == 0:
            return is_zero(v)
        return is_zero(v - self.columns() * self.coords(v))

    def __le__(self, other: "Subspace") -> bool:
        if self.dim > other.dim:
            return False
        return all(other.contains(v) for v in self.vectors())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.ambient_dim == other.ambient_dim
            and self.pivots == other.pivots
            and self.basis == other.basis
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ambient_dim, tuple(self.pivots), tuple(str(x) for x in self.basis.entries())))
        return self._hash

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.from_rows(vstack([self.basis, other.basis], self.ambient_dim), self.ambient_dim)

    def intersect(self, other: "Subspace") -> "Subspace":
        # x = S a = T b  <=>  [S | -T] (a, b) = 0
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.ambient_dim)
        s, t = self.columns(), other.columns()
        k = kernel(hstack([s, -t]))
        if k.dim == 0:
            return Subspace.zero(self.ambient_dim)
        a = submatrix(k.columns(), range(self.dim), range(k.dim))
        return Subspace.from_columns(s * a, self.ambient_dim)

    def free_columns(self) -> list[int]:
        piv = set(self.pivots)
        return [j for j in range(self.ambient_dim) if j not in piv]

    def quotient_maps(self) -> tuple[Matrix, Matrix]:
        """Projection ``Q^n -> Q^n / self`` and a section, in complement coordinates.

        The complement is spanned by the unit vectors at non-pivot positions.
        """
        n = self.ambient_dim
        free = self.free_columns()
        pi = fmpq_mat(len(free), n)
        sigma = fmpq_mat(n, len(free))
        for a, c in enumerate(free):
            pi[a, c] = 1
            sigma[c, a] = 1
            for r, p in enumerate(self.pivots):
                x = self.basis[r, c]
                if x != 0:
                    pi[a, p] = -x
        return pi, sigma


def image(m: Matrix) -> Subspace:
    return Subspace.from_columns(m, m.nrows())


def left_inverse_on_image(m: Matrix) -> Matrix:
    """A matrix ``g`` with ``g m = I`` for ``m`` of full column rank."""
    k = m.ncols()
    r, pivots = rref(m.transpose())
    if len(pivots) != k:
        raise ValueError("matrix does not have full column rank")
    sub = submatrix(m, pivots, range(k))
    inv = sub.inv()
    g = fmpq_mat(k, m.nrows())
    for a in range(k):
        for b, p in enumerate(pivots):
            g[a, p] = inv[a, b]
    return g
