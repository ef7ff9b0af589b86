"""Tensor products, species tensor algebras and triangular matrix rings, with their Borel subalgebras."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce

from . import linalg as la
from . import modules as md
from .algebra import Algebra, subalgebra, tensor_algebras
from .errors import (
    BQNotBorel,
    ConstructionError,
    CyclicQuiver,
    InputNotBorel,
    InputNotQH,
    IsoWitnessInvalid,
    MNotFiltered,
    NotAlgebra,
)
from .homology import BorelEmbedding, check_exact_borel, is_strong, projective_cover
from .linalg import Matrix, Subspace
from .modules import Embedding, Module
from .order import SimpleOrder, tensor_order
from .presentation import Path, Quiver, enumerate_paths, path_algebra, trivial_path
from .qh import DeltaSystem, has_delta_filtration, is_directed, is_quasi_hereditary


# -- tensor products --------------------------------------------------------------

def _flat(x) -> tuple:
    return x if isinstance(x, tuple) else (x,)


def tensor_label(x, y) -> tuple:
    return _flat(x) + _flat(y)


def tensor_modules(m: Module, m2: Module, algebra: Algebra) -> Module:
    """``M ⊗ M'`` over ``A ⊗ A'`` (the algebra must be ``tensor_algebras(A, A')``)."""
    acts = [la.kron(x, y) for x in m.actions for y in m2.actions]
    return Module(algebra, acts, verify=False)


@dataclass
class TensorQH:
    algebra: Algebra
    order: SimpleOrder
    delta: DeltaSystem
    standards_match: bool


def tensor_qh(a: Algebra, o: SimpleOrder, a2: Algebra, o2: SimpleOrder, seed: int = 0) -> TensorQH:
    """``A ⊗ A'`` with the product order; checks quasi-heredity and ``Δ ≅ Δ ⊗ Δ'``."""
    for alg, order in ((a, o), (a2, o2)):
        v = is_quasi_hereditary(alg, order)
        if not v:
            raise InputNotQH(f"{alg.name or 'input'} is not quasi-hereditary: {v.reason}")
    aa = tensor_algebras(a, a2)
    oo = tensor_order(o, o2)
    ds = DeltaSystem(aa, oo)
    if not is_quasi_hereditary(aa, oo):
        raise ConstructionError("tensor product is not quasi-hereditary")
    d1, d2 = DeltaSystem(a, o), DeltaSystem(a2, o2)
    match = all(
        md.is_isomorphic(ds.standard(tensor_label(x, y)), tensor_modules(d1.standard(x), d2.standard(y), aa), seed)
        for x in a.labels
        for y in a2.labels
    )
    if not match:
        raise ConstructionError("a standard module of the tensor product is not a tensor of standards")
    return TensorQH(aa, oo, ds, match)


def tensor_borel(be: BorelEmbedding, be2: BorelEmbedding) -> tuple[BorelEmbedding, bool]:
    """``B ⊗ B'`` inside ``A ⊗ A'``; returns the embedding and whether it is strong."""
    for b in (be, be2):
        if not b.verdict:
            raise InputNotBorel(f"input is not an exact Borel subalgebra: {b.verdict.reason}")
    aa = tensor_algebras(be.big, be2.big)
    bb = tensor_algebras(be.sub, be2.sub)
    emb = Embedding(bb, aa, la.kron(be.emb.matrix, be2.emb.matrix))
    out = BorelEmbedding(emb, tensor_order(be.order, be2.order))
    if not out.verdict:
        raise ConstructionError(f"tensor of Borel subalgebras fails the exact Borel check: {out.verdict.reason}")
    strong = is_strong(be) and is_strong(be2)
    if strong != is_strong(out):
        raise ConstructionError("strongness of the tensor product disagrees with its factors")
    return out, strong


def predict_tensor_regular(a: Algebra, o: SimpleOrder, a2: Algebra, o2: SimpleOrder) -> tuple[bool, str | None]:
    """Case analysis for regularity of ``B ⊗ B'`` given regular ``B``, ``B'``.

    Cases: ``a`` both directed, ``b`` both opposites directed,
    ``c`` first factor semisimple, ``d`` second factor semisimple.
    """
    if is_directed(a, o) and is_directed(a2, o2):
        return True, "a"
    if is_directed(a.opposite(), o) and is_directed(a2.opposite(), o2):
        return True, "b"
    if a.is_semisimple():
        return True, "c"
    if a2.is_semisimple():
        return True, "d"
    return False, None


# -- species ---------------------------------------------------------------------------

@dataclass
class SpeciesSpec:
    """Vertex algebras with orders and one bimodule over ``(A_t, A_s)`` per arrow."""

    quiver: Quiver
    algebras: dict
    orders: dict
    bimodules: dict
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        vs = list(self.quiver.vertices)
        if vs != list(range(1, len(vs) + 1)):
            raise ConstructionError("species vertices must be 1..n in order")
        if not self.quiver.is_acyclic():
            raise CyclicQuiver("species quiver has an oriented cycle")
        for v in vs:
            if v not in self.algebras or v not in self.orders:
                raise ConstructionError(f"vertex {v} has no algebra or order")
        for lab, s, t in self.quiver.arrows:
            m = self.bimodules.get(lab)
            if m is None:
                raise ConstructionError(f"arrow {lab!r} has no bimodule")
            c, d = md.sides(m)
            if not (c.same_as(self.algebras[t]) and d.same_as(self.algebras[s])):
                raise ConstructionError(f"bimodule of arrow {lab!r} is not over (A_{t}, A_{s})")


class SpeciesData:
    """The tensor algebra of a species, block by block along paths."""

    def __init__(self, spec: SpeciesSpec):
        self.spec = spec
        q = spec.quiver
        self.paths = enumerate_paths(q, len(q.vertices))
        self._plain: dict = {}
        self.pi: dict = {}
        self.sigma: dict = {}
        self.dims: dict = {}
        for p in self.paths:
            if p.arrows:
                self._build_path(p)
            else:
                self.dims[p] = spec.algebras[p.source].dim
        self.offsets = {}
        off = 0
        for p in self.paths:
            self.offsets[p] = off
            off += self.dims[p]
        self.dim = off
        self._bimods: dict = {}

    def factors(self, p: Path) -> list[Module]:
        return [self.spec.bimodules[a] for a in p.arrows]

    def _build_path(self, p: Path) -> None:
        q = self.spec.quiver
        fs = self.factors(p)
        dims = [f.dim for f in fs]
        total = reduce(lambda x, y: x * y, dims, 1)
        rels = []
        for r in range(len(fs) - 1):
            mid = self.spec.algebras[q.arrow(p.arrows[r])[1]]
            before = reduce(lambda x, y: x * y, dims[:r], 1)
            after = reduce(lambda x, y: x * y, dims[r + 2:], 1)
            ib, ia = la.identity(before), la.identity(after)
            for g in list(mid.idempotents) + [g for _, _, g in mid.generators]:
                core = la.kron(md.right_action(fs[r], g), la.identity(dims[r + 1])) - la.kron(
                    la.identity(dims[r]), md.left_action(fs[r + 1], g)
                )
                rels.append(la.kron(la.kron(ib, core), ia))
        space = la.image(la.hstack(rels, total)) if rels and total else Subspace.zero(total)
        pi, sigma = space.quotient_maps()
        self._plain[p] = total
        self.pi[p] = pi
        self.sigma[p] = sigma
        self.dims[p] = pi.nrows()

    def left_act(self, p: Path, x: Matrix) -> Matrix:
        """Action of ``x`` in ``A_{t(p)}`` on ``M_p``."""
        if not p.arrows:
            return self.spec.algebras[p.source].left_matrix(x)
        fs = self.factors(p)
        rest = reduce(lambda u, v: u * v, [f.dim for f in fs[1:]], 1)
        return self.pi[p] * la.kron(md.left_action(fs[0], x), la.identity(rest)) * self.sigma[p]

    def right_act(self, p: Path, y: Matrix) -> Matrix:
        """Action of ``y`` in ``A_{s(p)}`` on ``M_p`` from the right."""
        if not p.arrows:
            return self.spec.algebras[p.source].right_matrix(y)
        fs = self.factors(p)
        front = reduce(lambda u, v: u * v, [f.dim for f in fs[:-1]], 1)
        return self.pi[p] * la.kron(la.identity(front), md.right_action(fs[-1], y)) * self.sigma[p]

    def bimodule(self, p: Path) -> Module:
        """``M_p`` as a bimodule over ``(A_{t(p)}, A_{s(p)})``."""
        if p not in self._bimods:
            at, as_ = self.spec.algebras[p.target], self.spec.algebras[p.source]
            if not p.arrows:
                self._bimods[p] = md.regular_bimodule(at)
            else:
                lefts = [self.left_act(p, at.basis(k)) for k in range(at.dim)]
                rights = [self.right_act(p, as_.basis(k)) for k in range(as_.dim)]
                self._bimods[p] = md.bimodule_from_actions(at, as_, lefts, rights, verify=False)
        return self._bimods[p]

    def block(self, p: Path) -> range:
        return range(self.offsets[p], self.offsets[p] + self.dims[p])

    def embed(self, p: Path, v: Matrix) -> Matrix:
        out = la.zeros(self.dim, v.ncols())
        o = self.offsets[p]
        for r in range(v.nrows()):
            for c in range(v.ncols()):
                if v[r, c] != 0:
                    out[o + r, c] = v[r, c]
        return out

    def product_block(self, p: Path, u: int, q: Path) -> tuple[Path, Matrix] | None:
        """Left multiplication by basis vector ``u`` of ``M_p`` restricted to ``M_q``."""
        r = p.compose(q)
        if r is None:
            return None
        if not p.arrows and not q.arrows:
            alg = self.spec.algebras[p.source]
            return r, alg.lmats[u]
        if not p.arrows:
            return r, self.left_act(q, self.spec.algebras[p.source].basis(u))
        if not q.arrows:
            alg = self.spec.algebras[q.source]
            e = la.unit_vector(self.dims[p], u)
            cols = [self.right_act(p, alg.basis(k)) * e for k in range(alg.dim)]
            return r, la.hstack(cols, self.dims[p])
        return r, self.pi[r] * la.kron(la.col(self.sigma[p], u), self.sigma[q])


def species_data(spec: SpeciesSpec) -> SpeciesData:
    if "data" not in spec._cache:
        spec._cache["data"] = SpeciesData(spec)
    return spec._cache["data"]


def _species_order(spec: SpeciesSpec, labels: list) -> SimpleOrder:
    less = []
    for x in labels:
        for y in labels:
            if x[0] < y[0] or (x[0] == y[0] and spec.orders[x[0]].lt(x[1], y[1])):
                less.append((x, y))
    return SimpleOrder(labels, less)


def species_algebra(spec: SpeciesSpec, name: str = "") -> tuple[Algebra, SimpleOrder]:
    """The tensor algebra ``⊕_p M_p`` with idempotents ``(vertex, label)`` and the vertex-major order."""
    if "algebra" in spec._cache:
        return spec._cache["algebra"]
    data = species_data(spec)
    n = data.dim
    lmats = []
    blabels = []
    for p in data.paths:
        for u in range(data.dims[p]):
            m = la.zeros(n, n)
            for q in data.paths:
                hit = data.product_block(p, u, q)
                if hit is None:
                    continue
                r, blk = hit
                ro, co = data.offsets[r], data.offsets[q]
                for i in range(blk.nrows()):
                    for j in range(blk.ncols()):
                        if blk[i, j] != 0:
                            m[ro + i, co + j] = blk[i, j]
            lmats.append(m)
            if p.arrows:
                blabels.append(f"{p.name}[{u}]")
            else:
                blabels.append(f"{p.source}:{spec.algebras[p.source].basis_labels[u]}")
    idems, labels = [], []
    unit = la.zeros(n, 1)
    for v in spec.quiver.vertices:
        alg = spec.algebras[v]
        tp = trivial_path(v)
        for e, lab in zip(alg.idempotents, alg.idem_labels):
            idems.append(data.embed(tp, e))
            labels.append((v, lab))
        unit = unit + data.embed(tp, alg.unit)
    out = Algebra(lmats, unit, idems, labels, blabels, name=name or "T(species)")
    out.meta["species"] = data
    # radical: radicals of the vertex algebras plus every nontrivial path block
    vecs = []
    for p in data.paths:
        if p.arrows:
            vecs.extend(la.unit_vector(n, k) for k in data.block(p))
        else:
            rad = spec.algebras[p.source].radical
            vecs.extend(data.embed(p, v) for v in rad.vectors())
    expected = Subspace.span(vecs, n) if vecs else Subspace.zero(n)
    if expected != out.radical:
        raise ConstructionError("radical of the species algebra differs from the block description")
    order = _species_order(spec, out.labels)
    spec._cache["algebra"] = (out, order)
    return out, order


def _allowed_paths(data: SpeciesData, i: int) -> list[Path]:
    q = data.spec.quiver
    return [p for p in data.paths if p.source == i and max(p.vertices(q)) <= i]


def species_standard_oracle(spec: SpeciesSpec, vertex: int, label) -> Module:
    """``⊕ M_p ⊗_{A_i} Δ_j`` over paths from ``i`` avoiding larger vertices, with truncated action."""
    alg, _ = species_algebra(spec)
    data = species_data(spec)
    ai = spec.algebras[vertex]
    delta = md.as_left_bimodule(DeltaSystem(ai, spec.orders[vertex]).standard(label))
    d = delta.dim
    allowed = _allowed_paths(data, vertex)
    parts = {}
    for p in allowed:
        x, pi, sigma = md.tensor_over_algebra(data.bimodule(p), delta)
        parts[p] = (x.dim, pi, sigma)
    offs, off = {}, 0
    for p in allowed:
        offs[p] = off
        off += parts[p][0]
    ident = la.identity(d)
    acts = []
    for k in range(alg.dim):
        m = la.zeros(off, off)
        lk = alg.lmats[k]
        for p in allowed:
            for r in allowed:
                blk = la.submatrix(lk, data.block(r), data.block(p))
                if la.is_zero(blk):
                    continue
                piece = parts[r][1] * la.kron(blk, ident) * parts[p][2]
                for i in range(piece.nrows()):
                    for j in range(piece.ncols()):
                        if piece[i, j] != 0:
                            m[offs[r] + i, offs[p] + j] = piece[i, j]
        acts.append(m)
    out = Module(alg, acts, verify=True, name=f"Δ({vertex},{label})")
    return out


@dataclass
class SpeciesQHVerdict:
    vertex_qh: dict
    hypotheses_ok: bool
    failures: list
    directed_quiver: bool
    filtration_ok: bool | None
    filtration_failure: str | None
    direct: bool | None = None

    @property
    def sufficient(self) -> bool:
        return all(self.vertex_qh.values()) and (self.hypotheses_ok or bool(self.filtration_ok))


def species_qh_criterion(spec: SpeciesSpec, direct: bool = False) -> SpeciesQHVerdict:
    """Projectivity hypotheses per arrow, plus the filtration criterion for directed quivers."""
    q = spec.quiver
    data = species_data(spec)
    vertex_qh = {v: bool(is_quasi_hereditary(spec.algebras[v], spec.orders[v])) for v in q.vertices}
    need_right, need_left = set(), set()
    for p in data.paths:
        if not p.arrows:
            continue
        vs = p.vertices(q)
        if max(vs) == p.source:
            need_right.update(p.arrows)
        if max(vs) == p.target:
            need_left.update(p.arrows)
    failures = []
    for lab, s, t in q.arrows:
        m = spec.bimodules[lab]
        if lab in need_right and not md.is_projective(md.right_module(m)):
            failures.append(f"M_{lab} is not projective as a right A_{s}-module")
        if lab in need_left and not md.is_projective(md.left_module(m)):
            failures.append(f"M_{lab} is not projective as a left A_{t}-module")
    directed = all(s < t for _, s, t in q.arrows)
    filtration_ok, filtration_fail = None, None
    if directed:
        filtration_ok = True
        for p in data.paths:
            if not p.arrows:
                continue
            ds = DeltaSystem(spec.algebras[p.target], spec.orders[p.target])
            if has_delta_filtration(md.left_module(data.bimodule(p)), ds) is None:
                filtration_ok, filtration_fail = False, p.name
                break
    out = SpeciesQHVerdict(vertex_qh, not failures, failures, directed, filtration_ok, filtration_fail)
    if direct:
        alg, order = species_algebra(spec)
        out.direct = bool(is_quasi_hereditary(alg, order))
    return out


# -- Borel subalgebras of species ------------------------------------------------

def default_borel_paths(quiver: Quiver) -> list[Path]:
    """Trivial paths plus every path all of whose arrows increase the vertex number."""
    inc = {lab for lab, s, t in quiver.arrows if s < t}
    return [p for p in enumerate_paths(quiver, len(quiver.vertices)) if all(a in inc for a in p.arrows)]


def check_path_borel(quiver: Quiver, paths: list[Path]) -> BorelEmbedding:
    """The span of the paths must be an exact Borel subalgebra of ``kQ`` under the vertex order."""
    kq = path_algebra(quiver, name="kQ")
    for v in quiver.vertices:
        if trivial_path(v) not in paths:
            raise BQNotBorel(f"trivial path at {v} missing from the path basis")
    red = kq.meta["reduce_path"]
    space = Subspace.span([red(p) for p in paths], kq.dim)
    try:
        sub, inc = subalgebra(kq, space)
    except NotAlgebra as exc:
        raise BQNotBorel(f"paths do not span a subalgebra: {exc}") from None
    be = BorelEmbedding(Embedding(sub, kq, inc), SimpleOrder.chain(list(quiver.vertices)))
    if not be.verdict:
        raise BQNotBorel(f"paths do not give an exact Borel subalgebra of kQ: {be.verdict.reason}")
    return be


def _regular_over_borel(be: BorelEmbedding) -> Module:
    """``A`` as a bimodule over ``(A, B)``."""
    a, b = be.big, be.sub
    rights = [a.right_matrix(be.emb.image_of(b.basis(k))) for k in range(b.dim)]
    return md.bimodule_from_actions(a, b, a.lmats, rights, verify=False)


def induce_bimodule(be: BorelEmbedding, n: Module) -> tuple[Module, Matrix, Matrix, Matrix]:
    """``A ⊗_B N`` for a bimodule ``N`` over ``(B, C)``, with ``f_N`` and the projection and section of the plain tensor."""
    x, pi, sigma = md.tensor_over_algebra(_regular_over_borel(be), n)
    f = pi * la.kron(be.big.unit, la.identity(n.dim))
    return x, f, pi, sigma


def restrict_right(m: Module, emb: Embedding) -> Module:
    """A bimodule over ``(C, A)`` seen over ``(C, B)`` along ``B -> A``."""
    c, _ = md.sides(m)
    b = emb.sub
    lefts = [md.left_action(m, c.basis(k)) for k in range(c.dim)]
    rights = [md.right_action(m, emb.image_of(b.basis(k))) for k in range(b.dim)]
    return md.bimodule_from_actions(c, b, lefts, rights, verify=False)


def verify_witness(be_t: BorelEmbedding, emb_s: Embedding, m: Module, n: Module, phi: Matrix) -> None:
    """``phi: A_t ⊗_{B_t} N -> M`` must be a bijective bimodule map over ``(A_t, B_s)``."""
    c, d = md.sides(n)
    if not (c.same_as(be_t.sub) and d.same_as(emb_s.sub)):
        raise IsoWitnessInvalid("witness bimodule is not over the Borel subalgebras")
    x = induce_bimodule(be_t, n)[0]
    if phi.nrows() != m.dim or phi.ncols() != x.dim or la.rank(phi) != m.dim or x.dim != m.dim:
        raise IsoWitnessInvalid("witness map is not bijective")
    a = be_t.big
    for k in range(a.dim):
        if phi * md.left_action(x, a.basis(k)) != md.left_action(m, a.basis(k)) * phi:
            raise IsoWitnessInvalid("witness map is not left linear")
    b = emb_s.sub
    for k in range(b.dim):
        if phi * md.right_action(x, b.basis(k)) != md.right_action(m, emb_s.image_of(b.basis(k))) * phi:
            raise IsoWitnessInvalid("witness map is not right linear")


def projective_bimodule_split(be_t: BorelEmbedding, m: Module, emb_s: Embedding) -> tuple[Module, Matrix] | None:
    """Find ``N`` over ``(B_t, B_s)`` inside ``M`` with ``A_t ⊗_{B_t} N ≅ M`` by multiplication.

    Candidates are the sub-bimodules generated by a top of ``M`` as a left module
    (over the Borel subalgebras, then with the full right algebra), and ``M`` itself.
    Returns ``None`` when no candidate works.
    """
    a, b = be_t.big, be_t.sub
    c, d = md.sides(m)
    bs = emb_s.sub
    restricted = md.bimodule_from_actions(
        b,
        bs,
        [md.left_action(m, be_t.emb.image_of(b.basis(k))) for k in range(b.dim)],
        [md.right_action(m, emb_s.image_of(bs.basis(k))) for k in range(bs.dim)],
        verify=False,
    )
    wide = md.bimodule_from_actions(
        b,
        d,
        [md.left_action(m, be_t.emb.image_of(b.basis(k))) for k in range(b.dim)],
        [md.right_action(m, d.basis(k)) for k in range(d.dim)],
        verify=False,
    )
    left = md.left_module(m)
    p, cover = projective_cover(left)
    gens = [cover.matrix * p.generator(s) for s in range(len(p))]
    candidates = []
    for space in (md.span_closure(restricted, gens), md.span_closure(wide, gens), Subspace.full(m.dim)):
        if space not in candidates:
            candidates.append(space)
    for space in candidates:
        n, inc = md.restrict(restricted, space)
        x, _, pi, sigma = induce_bimodule(be_t, n)
        if x.dim != m.dim:
            continue
        plain = la.hstack([md.left_action(m, a.basis(k)) * inc for k in range(a.dim)], m.dim)
        phi = plain * sigma
        if not la.is_zero(plain - phi * pi):
            continue
        if la.rank(phi) != m.dim:
            continue
        return n, phi
    return None


@dataclass
class SpeciesBorel:
    embedding: BorelEmbedding
    paths: list
    witnesses: dict
    borel_species: SpeciesSpec
    kq_borel: BorelEmbedding


def species_borel(
    spec: SpeciesSpec,
    borels: dict,
    paths: list[Path] | None = None,
    witnesses: dict | None = None,
) -> SpeciesBorel:
    """Assemble ``B`` from vertex Borels and per-path witnesses ``(N_β, φ_β)``.

    ``borels`` maps each vertex to a ``BorelEmbedding`` of its algebra. Missing
    witnesses are searched with ``projective_bimodule_split``.
    """
    q = spec.quiver
    paths = default_borel_paths(q) if paths is None else list(paths)
    kq_be = check_path_borel(q, paths)
    alg, order = species_algebra(spec)
    data = species_data(spec)
    for v in q.vertices:
        be = borels[v]
        if not be.big.same_as(spec.algebras[v]):
            raise ConstructionError(f"Borel subalgebra at vertex {v} is not inside A_{v}")
        if not be.verdict:
            raise InputNotBorel(f"vertex {v}: {be.verdict.reason}")
    witnesses = dict(witnesses or {})
    arrows_b = [p for p in paths if p.arrows]
    found = {}
    for p in arrows_b:
        m = data.bimodule(p)
        be_t, emb_s = borels[p.target], borels[p.source].emb
        if p in witnesses:
            n, phi = witnesses[p]
        else:
            hit = projective_bimodule_split(be_t, m, emb_s)
            if hit is None:
                raise IsoWitnessInvalid(f"no witness found for path {p.name}; supply one")
            n, phi = hit
        verify_witness(be_t, emb_s, m, n, phi)
        found[p] = (n, phi)
    # the species of Borel subalgebras on the quiver of chosen paths
    names = {p: p.name for p in arrows_b}
    qb = Quiver(tuple(q.vertices), tuple((names[p], p.source, p.target) for p in arrows_b))
    border = {}
    for v in q.vertices:
        be = borels[v]
        inv = {x: y for y, x in be.phi.items()}
        border[v] = SimpleOrder(be.sub.labels, [(inv[x], inv[y]) for x, y in be.order.pairs()])
    bspec = SpeciesSpec(qb, {v: borels[v].sub for v in q.vertices}, border, {names[p]: found[p][0] for p in arrows_b})
    balg, _ = species_algebra(bspec, name="B")
    bdata = species_data(bspec)
    by_name = {names[p]: p for p in arrows_b}
    # per chosen path: N_β -> plain tensor of M_β
    g = {}
    for p in arrows_b:
        n, phi = found[p]
        f = induce_bimodule(borels[p.target], n)[1]
        g[p] = data.sigma[p] * phi * f
    cols = la.zeros(alg.dim, balg.dim)
    for r in bdata.paths:
        if not r.arrows:
            blk = borels[r.source].emb.matrix
            target = trivial_path(r.source)
        else:
            pieces = [by_name[a] for a in r.arrows]
            target = Path(r.source, r.target, tuple(x for pc in pieces for x in pc.arrows))
            blk = data.pi[target] * reduce(la.kron, [g[pc] for pc in pieces]) * bdata.sigma[r]
        ro, co = data.offsets[target], bdata.offsets[r]
        for i in range(blk.nrows()):
            for j in range(blk.ncols()):
                if blk[i, j] != 0:
                    cols[ro + i, co + j] = blk[i, j]
    emb = Embedding(balg, alg, cols)
    out = BorelEmbedding(emb, order)
    if not out.verdict:
        raise ConstructionError(f"assembled subalgebra fails the exact Borel check: {out.verdict.reason}")
    return SpeciesBorel(out, paths, found, bspec, kq_be)


# -- triangular matrix rings ----------------------------------------------------------

@dataclass
class TriangularSpec:
    """``[[A_2, M], [0, A_1]]`` with ``M`` over ``(A_2, A_1)``."""

    a1: Algebra
    o1: SimpleOrder
    a2: Algebra
    o2: SimpleOrder
    m: Module

    def species(self) -> SpeciesSpec:
        q = Quiver((1, 2), (("m", 1, 2),))
        return SpeciesSpec(q, {1: self.a1, 2: self.a2}, {1: self.o1, 2: self.o2}, {"m": self.m})


def triangular_matrix(t: TriangularSpec) -> tuple[Algebra, SimpleOrder, SpeciesSpec]:
    """The triangular matrix ring as the species on ``1 -> 2``; needs ``M`` standardly filtered on the left."""
    if has_delta_filtration(md.left_module(t.m), DeltaSystem(t.a2, t.o2)) is None:
        raise MNotFiltered("M is not standardly filtered as a left module")
    spec = t.species()
    alg, order = species_algebra(spec, name="triangular")
    crit = species_qh_criterion(spec)
    if not crit.filtration_ok:
        raise ConstructionError("triangular matrix ring has no standard filtration")
    return alg, order, spec


def triangular_borel(
    t: TriangularSpec,
    be1: BorelEmbedding,
    be2: BorelEmbedding,
    n: Module | None = None,
    phi: Matrix | None = None,
) -> SpeciesBorel:
    """``[[B_2, N], [0, B_1]]`` embedded by ``ι_2``, ``f_N`` and ``ι_1``."""
    _, _, spec = triangular_matrix(t)
    arrow = Path(1, 2, ("m",))
    wit = {arrow: (n, phi)} if n is not None else None
    return species_borel(spec, {1: be1, 2: be2}, None, wit)
