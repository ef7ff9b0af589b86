"""Projective resolutions, Ext groups and exact Borel subalgebras."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from . import linalg as la
from . import modules as md
from .algebra import Algebra, _complement_vectors
from .errors import NotEmbedding
from .linalg import Matrix, Subspace
from .modules import Embedding, Module, ModuleMap
from .order import SimpleOrder
from .qh import DeltaSystem, is_directed


# -- sums of indecomposable projectives ----------------------------------------

class ProjectiveSum:
    """``⊕_s A ε_s`` as a module, remembering the generator ``ε_s`` of each summand."""

    def __init__(self, a: Algebra, idempotents: list[Matrix], labels: list):
        self.algebra = a
        self.idempotents = list(idempotents)
        self.labels = list(labels)
        self.spaces = [la.image(a.right_matrix(e)) for e in self.idempotents]
        self.offsets = []
        off = 0
        for sp in self.spaces:
            self.offsets.append(off)
            off += sp.dim
        self.dim = off
        reg = md.regular_module(a)
        blocks = [md.restrict(reg, sp)[0] for sp in self.spaces]
        if blocks:
            self.module = md.direct_sum(blocks, a)
        else:
            self.module = md.zero_module(a)
        self.module.meta["projective_sum"] = self

    def __len__(self) -> int:
        return len(self.idempotents)

    def block(self, v: Matrix, s: int) -> Matrix:
        o = self.offsets[s]
        return la.submatrix(v, range(o, o + self.spaces[s].dim), range(v.ncols()))

    def generator(self, s: int) -> Matrix:
        v = la.zeros(self.dim, 1)
        c = self.spaces[s].coords(self.idempotents[s])
        for k in range(c.nrows()):
            v[self.offsets[s] + k, 0] = c[k, 0]
        return v

    def to_tuple(self, v: Matrix) -> list[Matrix]:
        """Coordinates to one algebra element per summand."""
        return [sp.columns() * self.block(v, s) for s, sp in enumerate(self.spaces)]

    def from_tuple(self, xs: list[Matrix]) -> Matrix:
        parts = [sp.coords(x) for sp, x in zip(self.spaces, xs)]
        return la.vstack(parts, 1) if parts else la.zeros(0, 1)

    def map_from_images(self, target: Module, images: list[Matrix]) -> Matrix:
        """The module map sending ``ε_s`` to ``images[s]``."""
        cols = []
        for sp, img in zip(self.spaces, images):
            for u in sp.vectors():
                cols.append(target.act(u) * img)
        return la.hstack(cols, target.dim) if cols else la.zeros(target.dim, 0)

    def names(self) -> list[str]:
        return [f"P({lab})" for lab in self.labels]


def projective_cover(m: Module) -> tuple[ProjectiveSum, ModuleMap]:
    """Projective cover of ``M`` with its surjection (kernel inside the radical)."""
    a = m.algebra
    rad = md.radical_subspace(m)
    idems, labels, gens = [], [], []
    for lab in a.labels:
        e = a.idempotent_of(lab)
        em = la.image(m.act(e))
        erad = la.image(m.act(e) * rad.columns()) if rad.dim else Subspace.zero(m.dim)
        for v in _complement_vectors(em, erad):
            idems.append(e)
            labels.append(lab)
            gens.append(v)
    p = ProjectiveSum(a, idems, labels)
    return p, ModuleMap(p.module, m, p.map_from_images(m, gens))


@dataclass
class Resolution:
    """``... -> P_1 -> P_0 -> M``; ``maps[0]`` is the augmentation, ``maps[n]`` is ``P_n -> P_{n-1}``."""

    module: Module
    terms: list
    maps: list
    capped: bool = False

    @property
    def length(self) -> int:
        return len(self.terms) - 1

    def term_labels(self) -> list[list]:
        return [list(p.labels) for p in self.terms]

    def is_complex(self) -> bool:
        return all(la.is_zero(self.maps[n - 1] * self.maps[n]) for n in range(1, len(self.maps)))

    def is_exact(self) -> bool:
        if la.rank(self.maps[0]) != self.module.dim:
            return False
        for n in range(1, len(self.maps)):
            if la.kernel(self.maps[n - 1]).dim != la.rank(self.maps[n]):
                return False
        return self.capped or la.kernel(self.maps[-1]).dim == 0

    def is_minimal(self) -> bool:
        for n in range(1, len(self.maps)):
            rad = md.radical_subspace(self.terms[n - 1].module)
            if not la.image(self.maps[n]) <= rad:
                return False
        return True


def minimal_resolution(m: Module, max_deg: int | None = None) -> Resolution:
    """Iterated projective covers of kernels. Stops at a zero kernel or at ``max_deg``.

    The default cap is ``dim A``. Hitting the cap sets ``capped`` instead of raising.
    """
    cap = m.algebra.dim if max_deg is None else max_deg
    p0, eps = projective_cover(m)
    terms, maps = [p0], [eps.matrix]
    ker = la.kernel(eps.matrix)
    capped = False
    while ker.dim:
        if len(terms) > cap:
            capped = True
            break
        kmod, inc = md.restrict(terms[-1].module, ker)
        p, c = projective_cover(kmod)
        d = inc * c.matrix
        terms.append(p)
        maps.append(d)
        ker = la.kernel(d)
    return Resolution(m, terms, maps, capped)


# -- cochains and Ext -------------------------------------------------------------

class HomFromProjective:
    """``Hom(⊕ A ε_s, Y) ≅ ⊕ ε_s Y`` with explicit bases."""

    def __init__(self, p: ProjectiveSum, y: Module):
        self.p = p
        self.y = y
        self.spaces = [la.image(y.act(e)) for e in p.idempotents]
        self.dim = sum(sp.dim for sp in self.spaces)

    def basis(self) -> list[Matrix]:
        out = []
        zero = la.zeros(self.y.dim, 1)
        for s, sp in enumerate(self.spaces):
            for v in sp.vectors():
                imgs = [v if t == s else zero for t in range(len(self.spaces))]
                out.append(self.p.map_from_images(self.y, imgs))
        return out

    def coords(self, f: Matrix) -> Matrix:
        parts = [sp.coords(f * self.p.generator(s)) for s, sp in enumerate(self.spaces)]
        return la.vstack(parts, 1) if parts else la.zeros(0, 1)


@dataclass
class ExtGroup:
    degree: int
    dim: int
    representatives: list  # cocycle matrices P_n -> Y
    _cocycles: Subspace | None = None
    _pi: Matrix | None = None
    _hom: HomFromProjective | None = None

    def class_of(self, f: Matrix) -> Matrix:
        """Coordinates of the class of a cocycle ``f: P_n -> Y`` in the chosen basis."""
        if self.dim == 0:
            return la.zeros(0, 1)
        c = self._hom.coords(f)
        return self._pi * self._cocycles.coords(c)


def ext_group(res: Resolution, y: Module, n: int) -> ExtGroup:
    if n > res.length:
        return ExtGroup(n, 0, [])
    cur = HomFromProjective(res.terms[n], y)
    basis = cur.basis()

    def delta(src: HomFromProjective, src_basis, k):
        # cochain map Hom(P_k) -> Hom(P_{k+1})
        nxt = HomFromProjective(res.terms[k + 1], y)
        cols = [nxt.coords(f * res.maps[k + 1]) for f in src_basis]
        return la.hstack(cols, nxt.dim) if cols else la.zeros(nxt.dim, 0)

    if n < res.length:
        z = la.kernel(delta(cur, basis, n))
    else:
        z = Subspace.full(cur.dim)
    if n > 0:
        prev = HomFromProjective(res.terms[n - 1], y)
        bmat = delta(prev, prev.basis(), n - 1)
        bsp = la.image(bmat) if bmat.ncols() else Subspace.zero(cur.dim)
    else:
        bsp = Subspace.zero(cur.dim)
    inner = Subspace.from_columns(z.coords(bsp.columns()), z.dim) if bsp.dim else Subspace.zero(z.dim)
    pi, sigma = inner.quotient_maps()
    reps_coords = z.columns() * sigma
    reps = []
    for k in range(reps_coords.ncols()):
        v = la.col(reps_coords, k)
        f = la.zeros(y.dim, res.terms[n].dim)
        for c, b in zip(la.vec_entries(v), basis):
            if c != 0:
                f = f + b * c
        reps.append(f)
    return ExtGroup(n, len(reps), reps, z, pi, cur)


@dataclass
class ExtTable:
    labels: list
    max_degree: int
    dims: dict  # (n, source label, target label) -> dim
    groups: dict = field(default_factory=dict)
    resolutions: dict = field(default_factory=dict)

    def dim(self, n: int, i, j) -> int:
        return self.dims.get((n, i, j), 0)

    def total(self, n: int, source=None) -> int:
        return sum(d for (k, i, _), d in self.dims.items() if k == n and (source is None or i == source))


def ext_table(family: dict, max_deg: int | None = None) -> ExtTable:
    """Ext between the members of a labelled family of modules (all degrees up to resolution length)."""
    labels = list(family)
    res = {lab: minimal_resolution(family[lab], max_deg) for lab in labels}
    top_deg = max(r.length for r in res.values()) if res else 0
    dims, groups = {}, {}
    for i in labels:
        for j in labels:
            for n in range(top_deg + 1):
                g = ext_group(res[i], family[j], n)
                dims[(n, i, j)] = g.dim
                groups[(n, i, j)] = g
    return ExtTable(labels, top_deg, dims, groups, res)


def standard_family(ds: DeltaSystem) -> dict:
    return {lab: ds.standard(lab) for lab in ds.algebra.labels}


def simple_family(a: Algebra) -> dict:
    return {lab: md.simple_module(a, lab) for lab in a.labels}


# -- exact Borel subalgebras ------------------------------------------------------------

class BorelEmbedding:
    """A subalgebra ``B -> A`` together with the order on the simples of ``A``."""

    def __init__(self, emb: Embedding, order: SimpleOrder, max_deg: int | None = None, seed: int = 0):
        self.emb = emb
        self.seed = seed
        self.big = emb.big
        self.sub = emb.sub
        self.order = order
        self.max_deg = max_deg
        self.delta = DeltaSystem(self.big, order)
        self._verdict: BorelVerdict | None = None
        self._ext_maps: dict = {}
        self._b_res: dict = {}

    @property
    def phi(self) -> dict:
        v = self.verdict
        return v.phi

    @property
    def verdict(self) -> "BorelVerdict":
        if self._verdict is None:
            self._verdict = check_exact_borel(self, seed=self.seed)
        return self._verdict


@dataclass
class BorelVerdict:
    right_projective: bool
    induces_standards: bool
    directed: bool
    phi: dict
    isos: dict
    induced: dict
    reason: str = ""

    @property
    def ok(self) -> bool:
        return self.right_projective and self.induces_standards and self.directed

    def __bool__(self) -> bool:
        return self.ok


def _right_module_over_sub(be: BorelEmbedding) -> Module:
    a, b = be.big, be.sub
    acts = [a.right_matrix(be.emb.image_of(b.basis(k))) for k in range(b.dim)]
    return Module(b.opposite(), acts, verify=False)


def check_exact_borel(be: BorelEmbedding, order: SimpleOrder | None = None, seed: int = 0) -> BorelVerdict:
    """Right projectivity, induced simples versus standards, and directedness of ``B``."""
    if order is not None and order != be.order:
        be = BorelEmbedding(be.emb, order, be.max_deg, seed)
    a, b = be.big, be.sub
    if la.rank(be.emb.matrix) != b.dim:
        raise NotEmbedding("embedding is not injective")
    right_proj = md.is_projective(_right_module_over_sub(be))
    phi, isos, induced = {}, {}, {}
    reason = "" if right_proj else "A is not projective as a right module over B"
    induces = True
    for lb in b.labels:
        ind = md.induce(a, be.emb, md.simple_module(b, lb))
        induced[lb] = ind
        tops = {lab: k for lab, k in md.top_multiplicities(ind).items() if k}
        if list(tops.values()) != [1]:
            induces = False
            reason = reason or f"A⊗_B L({lb}) does not have a simple top"
            continue
        la_ = next(iter(tops))
        iso = md.find_isomorphism(ind, be.delta.standard(la_), seed=seed)
        if iso is None:
            induces = False
            reason = reason or f"A⊗_B L({lb}) is not isomorphic to Δ({la_})"
            continue
        phi[lb] = la_
        isos[lb] = iso
    if induces and sorted(map(repr, phi.values())) != sorted(map(repr, a.labels)):
        induces = False
        reason = reason or "the induced standards do not give a bijection of simples"
    directed = False
    if induces:
        inv = {v: k for k, v in phi.items()}
        border = SimpleOrder(b.labels, [(inv[x], inv[y]) for x, y in be.order.pairs()])
        directed = is_directed(b, border)
        if not directed:
            reason = reason or "B is not directed under the transported order"
    v = BorelVerdict(right_proj, induces, directed, phi, isos, induced, reason)
    if order is None:
        be._verdict = v
    return v


def is_strong(be: BorelEmbedding) -> bool:
    """True iff the primitive idempotents of ``B`` stay primitive in ``A``."""
    a = be.big
    return all(a.residue_dim(x, x) == 1 for x in (be.emb.image_of(e) for e in be.sub.idempotents))


@dataclass
class ExtMap:
    degree: int
    source_dim: int
    target_dim: int
    rank: int
    blocks: dict  # (LB, LB') -> matrix

    @property
    def injective(self) -> bool:
        return self.rank == self.source_dim

    @property
    def surjective(self) -> bool:
        return self.rank == self.target_dim

    @property
    def bijective(self) -> bool:
        return self.injective and self.surjective


def _lift(target_map: Matrix, space: Subspace, rhs: Matrix, rng) -> Matrix:
    """A vector ``x`` in ``space`` with ``target_map x = rhs``; optionally perturbed within the kernel."""
    w = space.columns()
    y = la.solve(target_map * w, rhs)
    if y is None:
        raise ArithmeticError("comparison map does not lift")
    if rng is not None:
        for k in la.kernel(target_map * w).vectors():
            y = y + k * rng.randint(-3, 3)
    return w * y


class _InducedResolution:
    """``A ⊗_B Q`` for a minimal ``B``-resolution ``Q`` of a simple, augmented onto ``Δ``."""

    def __init__(self, be: BorelEmbedding, lb):
        a, b, emb = be.big, be.sub, be.emb
        v = be.verdict
        q = be._b_resolution(lb)
        self.q = q
        self.terms = [ProjectiveSum(a, [emb.image_of(e) for e in p.idempotents], list(p.labels)) for p in q.terms]
        self.target = be.delta.standard(v.phi[lb])
        ind = v.induced[lb]
        theta = v.isos[lb]
        self.fmap = ind.meta["f_map"]
        # augmentation: ε_s -> θ(1 ⊗ aug(gen_s))
        imgs = [theta * self.fmap * (q.maps[0] * q.terms[0].generator(s)) for s in range(len(q.terms[0]))]
        self.maps = [self.terms[0].map_from_images(self.target, imgs)]
        for n in range(1, len(q.terms)):
            src, tgt = q.terms[n], q.terms[n - 1]
            imgs = []
            for t in range(len(src)):
                comps = tgt.to_tuple(q.maps[n] * src.generator(t))
                imgs.append(self.terms[n - 1].from_tuple([emb.image_of(x) for x in comps]))
            self.maps.append(self.terms[n].map_from_images(self.terms[n - 1].module, imgs))

    def check(self) -> bool:
        if la.rank(self.maps[0]) != self.target.dim:
            return False
        for n in range(1, len(self.maps)):
            if not la.is_zero(self.maps[n - 1] * self.maps[n]):
                return False
            if la.kernel(self.maps[n - 1]).dim != la.rank(self.maps[n]):
                return False
        return la.kernel(self.maps[-1]).dim == 0


def _b_resolution(self: BorelEmbedding, lb) -> Resolution:
    if lb not in self._b_res:
        self._b_res[lb] = minimal_resolution(md.simple_module(self.sub, lb), self.max_deg)
    return self._b_res[lb]


BorelEmbedding._b_resolution = _b_resolution


def _comparison(be: BorelEmbedding, p: Resolution, x: _InducedResolution, upto: int, rng) -> list[Matrix]:
    """Chain map from the minimal resolution ``P`` into ``X`` over the identity of ``Δ``."""
    maps = []
    for n in range(min(upto, p.length) + 1):
        pn = p.terms[n]
        if n >= len(x.terms):
            maps.append(la.zeros(0, pn.dim))
            continue
        xn = x.terms[n]
        imgs = []
        for t in range(len(pn)):
            g = pn.generator(t)
            rhs = p.maps[0] * g if n == 0 else maps[n - 1] * (p.maps[n] * g)
            space = la.image(xn.module.act(pn.idempotents[t]))
            imgs.append(_lift(x.maps[n], space, rhs, rng))
        maps.append(pn.map_from_images(xn.module, imgs))
    return maps


def induced_ext_map(be: BorelEmbedding, n: int, perturb_seed: int | None = None) -> ExtMap:
    """``Ext^n_B(L, L) -> Ext^n_A(Δ, Δ)``, ``[f] -> [id ⊗ f]``, summed over all simples."""
    key = (n, perturb_seed)
    if key in be._ext_maps:
        return be._ext_maps[key]
    v = be.verdict
    if not v.ok:
        raise ValueError(f"not an exact Borel subalgebra: {v.reason}")
    rng = random.Random(perturb_seed) if perturb_seed is not None else None
    b = be.sub
    a_res = {}
    blocks = {}
    src_total = tgt_total = rank_total = 0
    for lb in b.labels:
        la_ = v.phi[lb]
        if la_ not in a_res:
            a_res[la_] = minimal_resolution(be.delta.standard(la_), be.max_deg)
        p = a_res[la_]
        x = _InducedResolution(be, lb)
        comp = _comparison(be, p, x, n, rng) if n <= p.length else []
        q = x.q
        for lb2 in b.labels:
            lt = v.phi[lb2]
            src = ext_group(q, md.simple_module(b, lb2), n)
            tgt = ext_group(p, be.delta.standard(lt), n)
            cols = []
            if src.dim and tgt.dim:
                ind2 = v.induced[lb2]
                theta2 = v.isos[lb2]
                for f in src.representatives:
                    imgs = [theta2 * ind2.meta["f_map"] * (f * q.terms[n].generator(s)) for s in range(len(q.terms[n]))]
                    g = x.terms[n].map_from_images(be.delta.standard(lt), imgs)
                    cols.append(tgt.class_of(g * comp[n]))
            mat = la.hstack(cols, tgt.dim) if cols else la.zeros(tgt.dim, src.dim)
            blocks[(lb, lb2)] = mat
            src_total += src.dim
            tgt_total += tgt.dim
            rank_total += la.rank(mat) if mat.nrows() and mat.ncols() else 0
    out = ExtMap(n, src_total, tgt_total, rank_total, blocks)
    be._ext_maps[key] = out
    return out


def verify_induced_resolutions(be: BorelEmbedding) -> bool:
    """The induced complexes are projective resolutions of the standard modules."""
    return all(_InducedResolution(be, lb).check() for lb in be.sub.labels)


def resolution_bound(be: BorelEmbedding) -> int:
    """Largest degree with possibly nonzero Ext on either side."""
    b_len = max(be._b_resolution(lb).length for lb in be.sub.labels)
    a_len = max(minimal_resolution(be.delta.standard(x), be.max_deg).length for x in be.big.labels)
    return max(b_len, a_len)


@dataclass
class RegularityReport:
    regular: bool
    homological: bool
    degrees: list  # (n, source dim, target dim, rank)


def regularity_report(be: BorelEmbedding) -> RegularityReport:
    rows = []
    for n in range(1, resolution_bound(be) + 1):
        m = induced_ext_map(be, n)
        rows.append((n, m.source_dim, m.target_dim, m.rank))
    regular = all(s == t == r for _, s, t, r in rows)
    homological = all((r == t) if n == 1 else (s == t == r) for n, s, t, r in rows)
    return RegularityReport(regular, homological, rows)


def is_regular(be: BorelEmbedding) -> bool:
    return regularity_report(be).regular


def is_homological(be: BorelEmbedding) -> bool:
    return regularity_report(be).homological
