"""Finite-dimensional algebras given by structure constants."""

from __future__ import annotations

from functools import cached_property
from typing import Hashable, Sequence

from . import linalg as la
from .errors import NotAlgebra, NotSplit
from .linalg import Matrix, Subspace


class Algebra:
    """A unital associative algebra over Q.

    ``lmats[i]`` is the matrix of left multiplication by the i-th basis
    element, so the product ``b_i b_j`` has coordinates ``lmats[i][:, j]``.
    The algebra carries a complete list of primitive orthogonal idempotents,
    each tagged with the label of its simple module; equivalent idempotents
    share a label.
    """

    def __init__(
        self,
        lmats: Sequence[Matrix],
        unit: Matrix,
        idempotents: Sequence[Matrix] | None = None,
        idem_labels: Sequence[Hashable] | None = None,
        basis_labels: Sequence[str] | None = None,
        name: str = "",
        verify: bool = True,
    ):
        self.lmats = list(lmats)
        self.dim = len(self.lmats)
        self.unit = unit
        if idempotents is None:
            idempotents, idem_labels = [unit], [1]
        self.idempotents = list(idempotents)
        self.idem_labels = list(idem_labels if idem_labels is not None else range(1, len(self.idempotents) + 1))
        self.basis_labels = list(basis_labels) if basis_labels is not None else [f"b{i}" for i in range(self.dim)]
        self.name = name
        self.meta: dict = {}
        self._opposite: Algebra | None = None
        if verify:
            self.verify()

    # -- elements ---------------------------------------------------------
    def basis(self, i: int) -> Matrix:
        return la.unit_vector(self.dim, i)

    def element(self, coeffs: dict[str, object]) -> Matrix:
        v = la.zeros(self.dim, 1)
        for lab, c in coeffs.items():
            v[self.basis_labels.index(lab), 0] += la.scalar(c)
        return v

    def left_matrix(self, x: Matrix) -> Matrix:
        out = la.zeros(self.dim, self.dim)
        for i in range(self.dim):
            c = x[i, 0]
            if c != 0:
                out = out + self.lmats[i] * c
        return out

    def right_matrix(self, y: Matrix) -> Matrix:
        return la.hstack([m * y for m in self.lmats], self.dim)

    def mul(self, x: Matrix, y: Matrix) -> Matrix:
        return self.left_matrix(x) * y

    # -- verification -----------------------------------------------------
    def verify(self) -> None:
        n = self.dim
        if self.unit.nrows() != n:
            raise NotAlgebra("unit has the wrong length")
        ident = la.identity(n)
        if self.left_matrix(self.unit) != ident or self.right_matrix(self.unit) != ident:
            raise NotAlgebra("unit is not a two-sided identity")
        # L(b_i) L(b_j) must equal L(b_i b_j) for all i, j
        stacked = la.zeros(n * n, n)
        for k, m in enumerate(self.lmats):
            for r, x in enumerate(m.entries()):
                if x != 0:
                    stacked[r, k] = x
        for i, li in enumerate(self.lmats):
            expected = stacked * li
            for j, lj in enumerate(self.lmats):
                prod = (li * lj).entries()
                if any(prod[r] != expected[r, j] for r in range(n * n)):
                    raise NotAlgebra(f"not associative at basis pair ({i}, {j})")
        total = la.zeros(n, 1)
        for a, e in enumerate(self.idempotents):
            total = total + e
            for b, f in enumerate(self.idempotents):
                p = self.mul(e, f)
                if a == b and p != e:
                    raise NotAlgebra(f"idempotent {a} is not idempotent")
                if a != b and not la.is_zero(p):
                    raise NotAlgebra(f"idempotents {a}, {b} are not orthogonal")
        if total != self.unit:
            raise NotAlgebra("idempotents do not sum to the unit")

    # -- labels -----------------------------------------------------------
    @cached_property
    def labels(self) -> list:
        """Distinct simple labels in order of first appearance."""
        seen = []
        for lab in self.idem_labels:
            if lab not in seen:
                seen.append(lab)
        return seen

    def idempotent_of(self, label) -> Matrix:
        return self.idempotents[self.idem_labels.index(label)]

    def idempotent_indices(self, label) -> list[int]:
        return [k for k, lab in enumerate(self.idem_labels) if lab == label]

    # -- subspaces ----------------------------------------------------------
    def corner(self, e: Matrix, f: Matrix) -> Subspace:
        """The subspace ``e A f``."""
        return la.image(self.left_matrix(e) * self.right_matrix(f))

    def product_space(self, s: Subspace, t: Subspace) -> Subspace:
        vecs = [self.left_matrix(x) * t.columns() for x in s.vectors()]
        return la.image(la.hstack(vecs, self.dim)) if vecs else Subspace.zero(self.dim)

    def two_sided_ideal(self, vectors: Sequence[Matrix]) -> Subspace:
        """The ideal ``A X A`` generated by the given elements."""
        if not vectors:
            return Subspace.zero(self.dim)
        cols = [self.left_matrix(self.mul(self.basis(i), v)) for v in vectors for i in range(self.dim)]
        return la.image(la.hstack(cols, self.dim))

    @cached_property
    def radical(self) -> Subspace:
        """Jacobson radical as the kernel of the trace form (characteristic 0)."""
        n = self.dim
        traces = la.matrix([[sum((m[i, i] for i in range(n)), la.scalar(0)) for m in self.lmats]], n)
        form = la.vstack([traces * m for m in self.lmats], n)
        rad = la.kernel(form)
        power = rad
        for _ in range(n + 1):
            if power.dim == 0:
                break
            power = self.product_space(power, rad)
        else:
            raise NotAlgebra("trace-form radical is not nilpotent")
        return rad

    @cached_property
    def radical_square(self) -> Subspace:
        return self.product_space(self.radical, self.radical)

    def residue_dim(self, e: Matrix, f: Matrix) -> int:
        """``dim e (A / rad A) f``."""
        m = self.left_matrix(e) * self.right_matrix(f)
        return la.rank(m) - la.rank(m * self.radical.columns()) if self.radical.dim else la.rank(m)

    def is_semisimple(self) -> bool:
        return self.radical.dim == 0

    # -- structure --------------------------------------------------------
    @cached_property
    def generators(self) -> list[tuple[int, int, Matrix]]:
        """Non-idempotent generators ``(j, i, g)`` with ``g`` in ``e_j A e_i``.

        Together with the idempotents they generate the algebra.
        """
        gens: list[tuple[int, int, Matrix]] = []
        rad, rad2 = self.radical, self.radical_square
        idems = self.idempotents
        for j, ej in enumerate(idems):
            lj = self.left_matrix(ej)
            for i, ei in enumerate(idems):
                ri = self.right_matrix(ei)
                piece = la.image(lj * ri * rad.columns()) if rad.dim else Subspace.zero(self.dim)
                low = la.image(lj * ri * rad2.columns()) if rad2.dim else Subspace.zero(self.dim)
                for v in _complement_vectors(piece, low):
                    gens.append((j, i, v))
        span = self._generated([g for _, _, g in gens])
        if span.dim < self.dim:
            for j, ej in enumerate(idems):
                for i, ei in enumerate(idems):
                    for v in self.corner(ej, ei).vectors():
                        if not span.contains(v):
                            gens.append((j, i, v))
                            span = self._generated([g for _, _, g in gens])
        if span.dim < self.dim:
            raise NotAlgebra("idempotents and corners do not generate the algebra")
        return gens

    def _generated(self, gens: Sequence[Matrix]) -> Subspace:
        cur = la.image(la.hstack(list(self.idempotents) + list(gens), self.dim))
        mats = [self.left_matrix(g) for g in gens]
        while True:
            cols = [cur.columns()] + [m * cur.columns() for m in mats]
            nxt = la.image(la.hstack(cols, self.dim))
            if nxt.dim == cur.dim:
                return cur
            cur = nxt

    def equivalence_classes(self) -> list[list[int]]:
        """Idempotent indices grouped by isomorphism of their simple tops."""
        classes: list[list[int]] = []
        for k, e in enumerate(self.idempotents):
            for cls in classes:
                if self.residue_dim(self.idempotents[cls[0]], e) != 0:
                    cls.append(k)
                    break
            else:
                classes.append([k])
        return classes

    def opposite(self) -> "Algebra":
        if self._opposite is None:
            n = self.dim
            ops = []
            for i in range(n):
                m = la.zeros(n, n)
                for j, lj in enumerate(self.lmats):
                    for k in range(n):
                        x = lj[k, i]
                        if x != 0:
                            m[k, j] = x
                ops.append(m)
            op = Algebra(
                ops,
                self.unit,
                self.idempotents,
                self.idem_labels,
                self.basis_labels,
                name=f"{self.name}^op" if self.name else "",
                verify=False,
            )
            op._opposite = self
            self._opposite = op
        return self._opposite

    def same_as(self, other: "Algebra") -> bool:
        if self is other:
            return True
        return (
            self.dim == other.dim
            and self.lmats == other.lmats
            and self.unit == other.unit
            and self.idempotents == other.idempotents
            and self.idem_labels == other.idem_labels
        )

    def __repr__(self) -> str:
        return f"Algebra({self.name or 'anonymous'}, dim={self.dim}, simples={len(self.labels)})"


def _complement_vectors(big: Subspace, small: Subspace) -> list[Matrix]:
    """Vectors of ``big`` whose classes form a basis of ``big / small``."""
    out = []
    cur = small
    for v in big.vectors():
        if not cur.contains(v):
            out.append(v)
            cur = cur + Subspace.span([v], big.ambient_dim)
    return out


def assert_split(a: Algebra) -> None:
    """Raise ``NotSplit`` unless every distinguished idempotent has residue field Q."""
    for k, e in enumerate(a.idempotents):
        d = a.residue_dim(e, e)
        if d != 1:
            raise NotSplit(
                f"idempotent {a.idem_labels[k]!r} has a residue algebra of dimension {d}",
                witness=e,
            )
    classes = a.equivalence_classes()
    for cls in classes:
        labs = {a.idem_labels[k] for k in cls}
        if len(labs) != 1:
            raise NotSplit(f"equivalent idempotents carry different labels {sorted(map(str, labs))}")
    if len(classes) != len(a.labels):
        raise NotSplit("inequivalent idempotents share a label")


def lift_idempotents(a: Algebra, candidates: Sequence[Matrix] | None = None) -> list[Matrix]:
    """Lift orthogonal idempotents of ``A / rad A`` to orthogonal idempotents of ``A``.

    Each candidate only needs to be idempotent modulo the radical. Lifting
    happens inside the corner left over by the previously lifted ones, which
    keeps the result pairwise orthogonal.
    """
    assert_split(a)
    cands = list(a.idempotents if candidates is None else candidates)
    lifted: list[Matrix] = []
    used = la.zeros(a.dim, 1)
    for idx, c in enumerate(cands):
        rest = a.unit - used
        if idx == len(cands) - 1 and _congruent_mod_radical(a, c, rest):
            e = rest
        else:
            e = a.mul(a.mul(rest, c), rest)
            for _ in range(a.dim + 2):
                e2 = a.mul(e, e)
                if e2 == e:
                    break
                e = e2 * 3 - a.mul(e2, e) * 2
            else:
                raise NotSplit("idempotent lifting did not converge", witness=c)
        if la.is_zero(e):
            raise NotSplit("candidate is zero modulo the radical", witness=c)
        lifted.append(e)
        used = used + e
    return lifted


def _congruent_mod_radical(a: Algebra, x: Matrix, y: Matrix) -> bool:
    return a.radical.contains(x - y)


def tensor_algebras(a: Algebra, b: Algebra) -> Algebra:
    """``A (x) B`` on the lexicographic product basis."""
    lm = [la.kron(x, y) for x in a.lmats for y in b.lmats]
    idems = [la.kron(e, f) for e in a.idempotents for f in b.idempotents]
    labs = [(_flat(x), _flat(y)) for x in a.idem_labels for y in b.idem_labels]
    labs = [_join(x, y) for x, y in labs]
    names = [f"{x}⊗{y}" for x in a.basis_labels for y in b.basis_labels]
    out = Algebra(
        lm,
        la.kron(a.unit, b.unit),
        idems,
        labs,
        names,
        name=f"{a.name}⊗{b.name}" if a.name or b.name else "",
        verify=False,
    )
    out.meta["tensor_factors"] = (a, b)
    return out


def _flat(x):
    return x if isinstance(x, tuple) else (x,)


def _join(x, y):
    return x + y


def quotient_algebra(a: Algebra, ideal: Subspace) -> tuple[Algebra, Matrix]:
    """``A / I`` for a two-sided ideal, with the projection matrix."""
    pi, sigma = ideal.quotient_maps()
    q = pi.nrows()
    lm = [pi * a.left_matrix(la.col(sigma, k)) * sigma for k in range(q)]
    idems, labs = [], []
    for e, lab in zip(a.idempotents, a.idem_labels):
        pe = pi * e
        if not la.is_zero(pe):
            idems.append(pe)
            labs.append(lab)
    names = [a.basis_labels[c] for c in ideal.free_columns()]
    out = Algebra(lm, pi * a.unit, idems, labs, names, name=f"{a.name}/I" if a.name else "", verify=False)
    return out, pi


def subalgebra(
    a: Algebra,
    space: Subspace,
    idempotents: Sequence[Matrix] | None = None,
    idem_labels: Sequence[Hashable] | None = None,
    name: str = "",
) -> tuple[Algebra, Matrix]:
    """The subalgebra on a multiplicatively closed subspace, with its inclusion.

    Idempotents are given in ambient coordinates; by default the distinguished
    idempotents of ``A`` lying in the subspace are used.
    """
    basis = space.columns()
    k = space.dim
    if not space.contains(a.unit):
        raise NotAlgebra("subspace does not contain the unit")
    lm = []
    for i in range(k):
        prod = a.left_matrix(la.col(basis, i)) * basis
        if not all(space.contains(v) for v in la.columns(prod)):
            raise NotAlgebra("subspace is not closed under multiplication")
        lm.append(space.coords(prod))
    if idempotents is None:
        pairs = [(e, lab) for e, lab in zip(a.idempotents, a.idem_labels) if space.contains(e)]
        idempotents = [p[0] for p in pairs]
        idem_labels = [p[1] for p in pairs]
    idems = [space.coords(e) for e in idempotents]
    names = []
    for v in space.vectors():
        nz = [a.basis_labels[r] for r in range(a.dim) if v[r, 0] != 0]
        names.append(nz[0] if len(nz) == 1 else "+".join(nz))
    out = Algebra(lm, space.coords(a.unit), idems, idem_labels, names, name=name)
    return out, basis


def field_algebra() -> Algebra:
    """The one-dimensional algebra Q."""
    one = la.matrix([[1]])
    return Algebra([one], one, [one], [1], ["1"], name="k", verify=False)


def semisimple_algebra(n: int, labels: Sequence[Hashable] | None = None) -> Algebra:
    """``Q^n`` with its coordinate idempotents."""
    lm = []
    for i in range(n):
        m = la.zeros(n, n)
        m[i, i] = 1
        lm.append(m)
    idems = [la.unit_vector(n, i) for i in range(n)]
    labs = list(labels) if labels is not None else list(range(1, n + 1))
    unit = la.column([1] * n)
    return Algebra(lm, unit, idems, labs, [f"e{l}" for l in labs], name=f"k^{n}", verify=False)


def cartan_matrix(a: Algebra) -> list[list[int]]:
    """Entry ``(i, j)`` is ``dim e_i A e_j`` (multiplicity of ``L_i`` in ``P_j``)."""
    reps = [a.idempotent_of(lab) for lab in a.labels]
    return [[a.corner(ei, ej).dim for ej in reps] for ei in reps]
