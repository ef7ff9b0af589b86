"""Finite-dimensional left modules, module maps and bimodules."""

from __future__ import annotations

import random
from collections import Counter
from functools import cached_property
from typing import Hashable, Sequence

from . import linalg as la
from .algebra import Algebra, tensor_algebras
from .errors import AlgebraMismatch, NotEmbedding, NotModule, NotSubmodule
from .linalg import Matrix, Subspace


class Module:
    """A left module given by one action matrix per basis element of the algebra."""

    def __init__(self, algebra: Algebra, actions: Sequence[Matrix], verify: bool = True, name: str = ""):
        self.algebra = algebra
        self.actions = list(actions)
        if len(self.actions) != algebra.dim:
            raise NotModule("need one action matrix per basis element")
        self.dim = self.actions[0].nrows() if self.actions else 0
        self.name = name
        self.meta: dict = {}
        if verify:
            self.verify()

    @cached_property
    def _stacked(self) -> Matrix:
        m, n = self.dim, self.algebra.dim
        out = la.zeros(m * m, n)
        for k, act in enumerate(self.actions):
            for r, x in enumerate(act.entries()):
                if x != 0:
                    out[r, k] = x
        return out

    def act(self, x: Matrix) -> Matrix:
        """Action matrix of an arbitrary algebra element."""
        m = self.dim
        return la.Matrix(m, m, (self._stacked * x).entries())

    def verify(self) -> None:
        a = self.algebra
        m = self.dim
        if self.act(a.unit) != la.identity(m):
            raise NotModule("unit does not act as the identity")
        if m == 0:
            return
        gens = list(a.idempotents) + [g for _, _, g in a.generators]
        wide = la.hstack(self.actions, m)
        for g in gens:
            lhs = self.act(g) * wide
            rhs = self._stacked * a.left_matrix(g)
            for j in range(a.dim):
                for r in range(m):
                    for c in range(m):
                        if lhs[r, j * m + c] != rhs[r * m + c, j]:
                            raise NotModule("actions do not respect the multiplication")

    @cached_property
    def rad_actions(self) -> list[Matrix]:
        return [self.act(r) for r in self.algebra.radical.vectors()]

    @cached_property
    def generator_actions(self) -> list[Matrix]:
        a = self.algebra
        return [self.act(e) for e in a.idempotents] + [self.act(g) for _, _, g in a.generators]

    @cached_property
    def _adapted(self):
        """Basis adapted to the idempotent decomposition ``M = (+) e_k M``."""
        a = self.algebra
        blocks = [la.image(self.act(e)) for e in a.idempotents]
        sizes = [b.dim for b in blocks]
        offsets = [sum(sizes[:k]) for k in range(len(sizes))]
        t = la.hstack([b.columns() for b in blocks], self.dim)
        tinv = t.inv() if self.dim else t
        gen_blocks = []
        for j, i, g in a.generators:
            full = tinv * self.act(g) * t
            rows = range(offsets[j], offsets[j] + sizes[j])
            cols = range(offsets[i], offsets[i] + sizes[i])
            gen_blocks.append(la.submatrix(full, rows, cols))
        return t, tinv, sizes, offsets, gen_blocks

    def __repr__(self) -> str:
        return f"Module({self.name or 'anonymous'}, dim={self.dim})"


class ModuleMap:
    def __init__(self, source: Module, target: Module, matrix: Matrix, verify: bool = False):
        self.source = source
        self.target = target
        self.matrix = matrix
        if verify and not is_homomorphism(source, target, matrix):
            raise NotModule("matrix does not intertwine the actions")

    def kernel(self) -> Subspace:
        return la.kernel(self.matrix)

    def image(self) -> Subspace:
        return la.image(self.matrix)

    def is_injective(self) -> bool:
        return la.rank(self.matrix) == self.source.dim

    def is_surjective(self) -> bool:
        return la.rank(self.matrix) == self.target.dim

    def __repr__(self) -> str:
        return f"ModuleMap({self.source.dim} -> {self.target.dim})"


def is_homomorphism(m: Module, n: Module, f: Matrix) -> bool:
    return all(
        fn * f == f * fm for fm, fn in zip(m.generator_actions, n.generator_actions)
    )


def _same_algebra(m: Module, n: Module) -> None:
    if not m.algebra.same_as(n.algebra):
        raise AlgebraMismatch("modules are over different algebras")


# -- basic constructions ----------------------------------------------------

def regular_module(a: Algebra) -> Module:
    return Module(a, a.lmats, verify=False, name="A")


def zero_module(a: Algebra) -> Module:
    return Module(a, [la.zeros(0, 0)] * a.dim, verify=False, name="0")


def restrict(m: Module, sub: Subspace) -> tuple[Module, Matrix]:
    """The submodule on an invariant subspace, with its inclusion matrix."""
    s = sub.columns()
    acts = []
    for act in m.actions:
        img = act * s
        acts.append(sub.coords(img))
    out = Module(m.algebra, acts, verify=False)
    return out, s


def is_submodule(m: Module, sub: Subspace) -> bool:
    s = sub.columns()
    return all(sub.contains(la.col(g * s, k)) for g in m.generator_actions for k in range(sub.dim))


def submodule_generated(m: Module, vectors: Sequence[Matrix]) -> tuple[Module, ModuleMap]:
    """Smallest submodule containing the vectors."""
    sub = span_closure(m, vectors)
    out, inc = restrict(m, sub)
    return out, ModuleMap(out, m, inc)


def span_closure(m: Module, vectors: Sequence[Matrix]) -> Subspace:
    if not vectors:
        return Subspace.zero(m.dim)
    cur = la.image(la.hstack(list(vectors), m.dim))
    while True:
        cols = [cur.columns()] + [g * cur.columns() for g in m.generator_actions]
        nxt = la.image(la.hstack(cols, m.dim))
        if nxt.dim == cur.dim:
            return cur
        cur = nxt


def quotient(m: Module, sub: Subspace) -> tuple[Module, ModuleMap]:
    """``M / sub`` with the projection map."""
    if not is_submodule(m, sub):
        raise NotSubmodule("subspace is not closed under the action")
    pi, sigma = sub.quotient_maps()
    acts = [pi * act * sigma for act in m.actions]
    out = Module(m.algebra, acts, verify=False)
    return out, ModuleMap(m, out, pi)


def direct_sum(mods: Sequence[Module], algebra: Algebra | None = None) -> Module:
    a = algebra if algebra is not None else mods[0].algebra
    acts = [la.block_diag([md.actions[k] for md in mods]) for k in range(a.dim)]
    return Module(a, acts, verify=False)


def module_from_subspace_of_algebra(a: Algebra, space: Subspace) -> Module:
    """A left ideal (or left submodule of the regular module) as a module."""
    return restrict(regular_module(a), space)[0]


def projective_module(a: Algebra, label: Hashable) -> Module:
    """``P(label) = A e`` in the basis given by the canonical basis of ``A e``."""
    e = a.idempotent_of(label)
    return projective_from_idempotent(a, e, name=f"P({label})")


def projective_from_idempotent(a: Algebra, e: Matrix, name: str = "") -> Module:
    space = la.image(a.right_matrix(e))
    mod, inc = restrict(regular_module(a), space)
    mod.name = name
    mod.meta["generator"] = space.coords(e)
    mod.meta["idempotent"] = e
    mod.meta["basis_in_algebra"] = inc
    return mod


def simple_module(a: Algebra, label: Hashable) -> Module:
    p = projective_module(a, label)
    s = top(p)[0]
    s.name = f"L({label})"
    return s


# -- radical layers -----------------------------------------------------------

def radical_subspace(m: Module, sub: Subspace | None = None) -> Subspace:
    """``rad(A) X`` for a submodule ``X`` (default ``M``)."""
    if m.dim == 0 or not m.rad_actions:
        return Subspace.zero(m.dim)
    base = sub.columns() if sub is not None else la.identity(m.dim)
    if base.ncols() == 0:
        return Subspace.zero(m.dim)
    return la.image(la.hstack([r * base for r in m.rad_actions], m.dim))


def socle_subspace(m: Module) -> Subspace:
    if not m.rad_actions:
        return Subspace.full(m.dim)
    return la.kernel(la.vstack(m.rad_actions, m.dim))


def top(m: Module) -> tuple[Module, ModuleMap]:
    return quotient(m, radical_subspace(m))


def socle(m: Module) -> tuple[Module, ModuleMap]:
    sub = socle_subspace(m)
    out, inc = restrict(m, sub)
    return out, ModuleMap(out, m, inc)


def multiplicities(m: Module, sub: Subspace | None = None) -> dict:
    """Composition multiplicity of each simple label in ``sub`` (default ``M``)."""
    a = m.algebra
    out = {}
    base = sub.columns() if sub is not None else None
    for lab in a.labels:
        act = m.act(a.idempotent_of(lab))
        out[lab] = la.rank(act * base) if base is not None else la.rank(act)
    return out


def composition_factors(m: Module) -> Counter:
    return Counter({k: v for k, v in multiplicities(m).items() if v})


def radical_series(m: Module) -> list[Subspace]:
    series = [Subspace.full(m.dim)]
    while series[-1].dim:
        series.append(radical_subspace(m, series[-1]))
    return series


def socle_series(m: Module) -> list[Subspace]:
    """``0 = soc_0 < soc_1 < ...`` with ``soc_{k+1} / soc_k = soc(M / soc_k)``."""
    series = [Subspace.zero(m.dim)]
    while series[-1].dim < m.dim:
        q, proj = quotient(m, series[-1])
        if q.rad_actions:
            series.append(la.kernel(la.vstack([r * proj.matrix for r in q.rad_actions], m.dim)))
        else:
            series.append(Subspace.full(m.dim))
    return series


def _layers(m: Module, series: list[Subspace]) -> list[Counter]:
    out = []
    for big, small in zip(series, series[1:]):
        hi = multiplicities(m, big)
        lo = multiplicities(m, small)
        out.append(Counter({lab: hi[lab] - lo[lab] for lab in m.algebra.labels if hi[lab] - lo[lab]}))
    return out


def loewy_layers(m: Module) -> list[Counter]:
    """Radical layers from the top, each a multiset of simple labels."""
    return _layers(m, radical_series(m))


def socle_layers(m: Module) -> list[Counter]:
    """Socle layers from the top (so comparable with ``loewy_layers``)."""
    series = socle_series(m)
    return _layers(m, list(reversed(series)))


def loewy_length(m: Module) -> int:
    return len(radical_series(m)) - 1


# -- homomorphisms ------------------------------------------------------------

def hom_basis(m: Module, n: Module) -> list[Matrix]:
    """Basis of ``Hom_A(M, N)`` as ``dim N x dim M`` matrices."""
    _same_algebra(m, n)
    if m.dim == 0 or n.dim == 0:
        return []
    tm, tminv, ms, mo, mg = m._adapted
    tn, tninv, ns, no, ng = n._adapted
    voff, nvar = [], 0
    for k in range(len(ms)):
        voff.append(nvar)
        nvar += ns[k] * ms[k]
    rows: list[dict[int, object]] = []
    for (j, i, _), gm, gn in zip(m.algebra.generators, mg, ng):
        # gn F_i - F_j gm = 0 as an ns[j] x ms[i] system
        for r in range(ns[j]):
            for c in range(ms[i]):
                row: dict[int, object] = {}
                for s in range(ns[i]):
                    x = gn[r, s]
                    if x != 0:
                        key = voff[i] + s * ms[i] + c
                        row[key] = row.get(key, 0) + x
                for t in range(ms[j]):
                    x = gm[t, c]
                    if x != 0:
                        key = voff[j] + r * ms[j] + t
                        row[key] = row.get(key, 0) - x
                if row:
                    rows.append(row)
    sys = la.zeros(len(rows), nvar)
    for r, row in enumerate(rows):
        for k, x in row.items():
            sys[r, k] = x
    ker = la.kernel(sys)
    out = []
    for v in ker.vectors():
        d = la.zeros(n.dim, m.dim)
        for k in range(len(ms)):
            for r in range(ns[k]):
                for c in range(ms[k]):
                    x = v[voff[k] + r * ms[k] + c, 0]
                    if x != 0:
                        d[no[k] + r, mo[k] + c] = x
        out.append(tn * d * tminv)
    return out


def hom_space(m: Module, n: Module) -> list[ModuleMap]:
    return [ModuleMap(m, n, f) for f in hom_basis(m, n)]


def hom_dim(m: Module, n: Module) -> int:
    return len(hom_basis(m, n))


def end_dim(m: Module) -> int:
    return hom_dim(m, m)


def find_isomorphism(m: Module, n: Module, seed: int = 0, trials: int = 5) -> Matrix | None:
    """An invertible intertwiner ``M -> N`` if one is found.

    Deterministic rejections first (dimensions, composition factors, hom
    dimensions); then random integer combinations of a hom basis are tested
    for invertibility. A nonzero determinant polynomial vanishes at a random
    point of ``[-2^31, 2^31]^k`` with probability at most ``dim / 2^32``.
    """
    _same_algebra(m, n)
    if m.dim != n.dim:
        return None
    if m.dim == 0:
        return la.zeros(0, 0)
    if composition_factors(m) != composition_factors(n):
        return None
    mn = hom_basis(m, n)
    if len(mn) != len(hom_basis(n, m)):
        return None
    if not mn:
        return None
    rng = random.Random(seed)
    for _ in range(trials):
        coeffs = [rng.randint(-(2**31), 2**31) for _ in mn]
        f = la.lin_comb(coeffs, mn, (n.dim, m.dim))
        if la.rank(f) == m.dim:
            return f
    return None


def is_isomorphic(m: Module, n: Module, seed: int = 0) -> bool:
    return find_isomorphism(m, n, seed) is not None


def top_multiplicities(m: Module) -> dict:
    whole = multiplicities(m)
    rad = multiplicities(m, radical_subspace(m))
    return {lab: whole[lab] - rad[lab] for lab in m.algebra.labels}


def is_projective(m: Module) -> bool:
    """Projective iff its dimension equals that of its projective cover."""
    a = m.algebra
    cover = sum(
        mult * la.image(a.right_matrix(a.idempotent_of(lab))).dim
        for lab, mult in top_multiplicities(m).items()
    )
    return cover == m.dim


# -- duality ------------------------------------------------------------------

def dual(m: Module) -> Module:
    """``Hom_Q(M, Q)`` as a module over the opposite algebra (transposed actions)."""
    out = Module(m.algebra.opposite(), [act.transpose() for act in m.actions], verify=False)
    out.name = f"D({m.name})" if m.name else ""
    return out


# -- embeddings and induction -------------------------------------------------

class Embedding:
    """An injective unital algebra homomorphism ``B -> A`` given by its matrix."""

    def __init__(self, sub: Algebra, big: Algebra, matrix: Matrix, verify: bool = True):
        self.sub = sub
        self.big = big
        self.matrix = matrix
        if verify:
            self.verify()

    def verify(self) -> None:
        b, a, e = self.sub, self.big, self.matrix
        if e.nrows() != a.dim or e.ncols() != b.dim:
            raise NotEmbedding("embedding matrix has the wrong shape")
        if e * b.unit != a.unit:
            raise NotEmbedding("embedding is not unital")
        if la.rank(e) != b.dim:
            raise NotEmbedding("embedding is not injective")
        for i in range(b.dim):
            xi = la.col(e, i)
            lhs = a.left_matrix(xi) * e
            rhs = e * b.lmats[i]
            if lhs != rhs:
                raise NotEmbedding(f"embedding is not multiplicative at basis element {i}")

    def image_of(self, x: Matrix) -> Matrix:
        return self.matrix * x

    @cached_property
    def image_space(self) -> Subspace:
        return la.image(self.matrix)


def identity_embedding(a: Algebra) -> Embedding:
    return Embedding(a, a, la.identity(a.dim), verify=False)


def induce(a: Algebra, emb: Embedding, m: Module) -> Module:
    """``A (x)_B M`` as a quotient of ``A (x) M``; ``meta['f_map']`` holds ``n -> 1 (x) n``."""
    if not emb.big.same_as(a):
        raise NotEmbedding("embedding does not land in the given algebra")
    if not emb.sub.same_as(m.algebra):
        raise NotEmbedding("module is not over the embedded subalgebra")
    b = emb.sub
    d, n = m.dim, a.dim
    ident_m = la.identity(d)
    ident_a = la.identity(n)
    rel = []
    bgens = list(b.idempotents) + [g for _, _, g in b.generators]
    for g in bgens:
        rel.append(la.kron(a.right_matrix(emb.image_of(g)), ident_m) - la.kron(ident_a, m.act(g)))
    relspace = la.image(la.hstack(rel, n * d)) if rel else Subspace.zero(n * d)
    pi, sigma = relspace.quotient_maps()
    acts = [pi * la.kron(lm, ident_m) * sigma for lm in a.lmats]
    out = Module(a, acts, verify=False, name=f"A⊗_B {m.name}" if m.name else "")
    out.meta["f_map"] = pi * la.kron(a.unit, ident_m)
    out.meta["projection"] = pi
    out.meta["section"] = sigma
    return out


def f_map(a: Algebra, emb: Embedding, m: Module) -> ModuleMap:
    ind = induce(a, emb, m)
    f = ind.meta["f_map"]
    if la.rank(f) != m.dim:
        raise NotEmbedding("the map n -> 1 (x) n is not injective")
    return ModuleMap(m, ind, f)


def restrict_scalars(m: Module, emb: Embedding) -> Module:
    """View an ``A``-module as a ``B``-module along the embedding."""
    acts = [m.act(la.col(emb.matrix, k)) for k in range(emb.sub.dim)]
    return Module(emb.sub, acts, verify=False)


# -- bimodules ----------------------------------------------------------------

_ENVELOPES: dict[tuple[int, int], tuple[Algebra, Algebra, Algebra]] = {}


def bimodule_algebra(c: Algebra, d: Algebra) -> Algebra:
    """``C (x) D^op``; bimodules over ``(C, D)`` are left modules over it."""
    key = (id(c), id(d))
    hit = _ENVELOPES.get(key)
    if hit is not None and hit[0] is c and hit[1] is d:
        return hit[2]
    env = tensor_algebras(c, d.opposite())
    env.meta["sides"] = (c, d)
    _ENVELOPES[key] = (c, d, env)
    return env


def sides(m: Module) -> tuple[Algebra, Algebra]:
    s = m.algebra.meta.get("sides")
    if s is None:
        raise AlgebraMismatch("module is not a bimodule")
    return s


def left_action(m: Module, x: Matrix) -> Matrix:
    c, d = sides(m)
    return m.act(la.kron(x, d.unit))


def right_action(m: Module, y: Matrix) -> Matrix:
    """Matrix of ``v -> v y`` for ``y`` in the right algebra."""
    c, d = sides(m)
    return m.act(la.kron(c.unit, y))


def bimodule_from_actions(c: Algebra, d: Algebra, left: Sequence[Matrix], right: Sequence[Matrix], verify: bool = True) -> Module:
    """Bimodule from left actions of ``C`` and right actions of ``D`` (per basis element)."""
    env = bimodule_algebra(c, d)
    acts = [lx * ry for lx in left for ry in right]
    if verify:
        for lx in left:
            for ry in right:
                if lx * ry != ry * lx:
                    raise NotModule("left and right actions do not commute")
    return Module(env, acts, verify=verify)


def left_module(m: Module) -> Module:
    c, _ = sides(m)
    return Module(c, [left_action(m, c.basis(k)) for k in range(c.dim)], verify=False)


def right_module(m: Module) -> Module:
    """The right structure as a left module over the opposite of the right algebra."""
    _, d = sides(m)
    return Module(d.opposite(), [right_action(m, d.basis(k)) for k in range(d.dim)], verify=False)


def regular_bimodule(a: Algebra) -> Module:
    rights = [a.right_matrix(a.basis(k)) for k in range(a.dim)]
    return bimodule_from_actions(a, a, a.lmats, rights, verify=False)


def tensor_over_algebra(m: Module, n: Module) -> tuple[Module, Matrix, Matrix]:
    """``M (x)_A N`` for bimodules over ``(C, A)`` and ``(A, D)``.

    Returns the bimodule over ``(C, D)`` together with the projection from the
    plain tensor product and a section of it.
    """
    c, a1 = sides(m)
    a2, d = sides(n)
    if not a1.same_as(a2):
        raise AlgebraMismatch("middle algebras differ")
    dm, dn = m.dim, n.dim
    im, in_ = la.identity(dm), la.identity(dn)
    rel = []
    for g in list(a1.idempotents) + [g for _, _, g in a1.generators]:
        rel.append(la.kron(right_action(m, g), in_) - la.kron(im, left_action(n, g)))
    relspace = la.image(la.hstack(rel, dm * dn)) if rel and dm * dn else Subspace.zero(dm * dn)
    pi, sigma = relspace.quotient_maps()
    lefts = [pi * la.kron(left_action(m, c.basis(k)), in_) * sigma for k in range(c.dim)]
    rights = [pi * la.kron(im, right_action(n, d.basis(k))) * sigma for k in range(d.dim)]
    out = bimodule_from_actions(c, d, lefts, rights, verify=False)
    return out, pi, sigma


def as_left_bimodule(m: Module) -> Module:
    """A left ``C``-module as a ``(C, Q)``-bimodule."""
    from .algebra import field_algebra

    k = _FIELD[0] if _FIELD else None
    if k is None:
        k = field_algebra()
        _FIELD.append(k)
    return bimodule_from_actions(m.algebra, k, m.actions, [la.identity(m.dim)], verify=False)


_FIELD: list[Algebra] = []


def layers_as_lists(layers: list[Counter], labels: Sequence) -> list[list]:
    """Expand multisets into sorted label lists (label order of the algebra)."""
    out = []
    for layer in layers:
        row = []
        for lab in labels:
            row.extend([lab] * layer.get(lab, 0))
        out.append(row)
    return out
