"""Standard and costandard modules, filtrations and quasi-heredity."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable

from . import linalg as la
from . import modules as md
from .algebra import Algebra, assert_split, quotient_algebra
from .linalg import Matrix, Subspace
from .modules import Module
from .order import SimpleOrder, tensor_order  # noqa: F401  (re-exported)


def standard_module(a: Algebra, order: SimpleOrder, label: Hashable) -> Module:
    """``P(L) / sum of images of all P(L') -> P(L)`` with ``L'`` not below ``L``."""
    p = md.projective_module(a, label)
    vecs = []
    for e, lab in zip(a.idempotents, a.idem_labels):
        if not order.le(lab, label):
            act = p.act(e)
            vecs.extend(la.image(act).vectors())
    sub = md.span_closure(p, vecs)
    out = md.quotient(p, sub)[0] if sub.dim else p
    out.name = f"Δ({label})"
    return out


def costandard_module(a: Algebra, order: SimpleOrder, label: Hashable) -> Module:
    """Dual of the standard module over the opposite algebra, same order."""
    out = md.dual(standard_module(a.opposite(), order, label))
    out.name = f"∇({label})"
    return out


class DeltaSystem:
    """Standard and costandard modules of an algebra with a fixed order (computed lazily)."""

    def __init__(self, algebra: Algebra, order: SimpleOrder):
        if set(order.labels) != set(algebra.labels):
            raise ValueError("order labels do not match the simple labels of the algebra")
        self.algebra = algebra
        self.order = order
        self._delta: dict = {}
        self._nabla: dict = {}
        self._op: DeltaSystem | None = None

    def standard(self, label) -> Module:
        if label not in self._delta:
            self._delta[label] = standard_module(self.algebra, self.order, label)
        return self._delta[label]

    def costandard(self, label) -> Module:
        if label not in self._nabla:
            self._nabla[label] = md.dual(self.opposite().standard(label))
            self._nabla[label].name = f"∇({label})"
        return self._nabla[label]

    def opposite(self) -> "DeltaSystem":
        if self._op is None:
            self._op = DeltaSystem(self.algebra.opposite(), self.order)
            self._op._op = self
        return self._op

    def module(self, label, which: str = "delta") -> Module:
        return self.standard(label) if which == "delta" else self.costandard(label)


@dataclass
class Filtration:
    """Submodules from the bottom up; step ``k`` has subquotient ``X(label)^mult``."""

    module: Module
    kind: str
    steps: list = field(default_factory=list)  # (Subspace, label, multiplicity)

    def labels(self) -> list:
        return [(lab, mult) for _, lab, mult in self.steps]

    def multiplicity(self) -> dict:
        out: dict = {}
        for _, lab, mult in self.steps:
            out[lab] = out.get(lab, 0) + mult
        return out


def has_delta_filtration(m: Module, ds: DeltaSystem, which: str = "delta") -> Filtration | None:
    """A filtration of ``M`` by standard (``"delta"``) or costandard (``"nabla"``) modules.

    Standard filtrations are peeled from the bottom: for the largest label ``L``
    (in a linear extension) occurring in what is left, the trace of ``P(L)``
    must be a direct sum of copies of ``Δ(L)``. Every standard filtration can
    be reordered to have this shape, so a failure is definitive.
    Costandard filtrations are obtained from standard filtrations of the dual.
    """
    if which == "nabla":
        return _nabla_filtration(m, ds)
    if which != "delta":
        raise ValueError("which must be 'delta' or 'nabla'")
    a = ds.algebra
    if not m.algebra.same_as(a):
        raise ValueError("module is not over the algebra of the delta system")
    lin = ds.order.linear_extension()
    steps = []
    cur = m
    proj = la.identity(m.dim)
    while cur.dim:
        mult = md.multiplicities(cur)
        lab = [x for x in lin if mult[x]][-1]
        trace = md.span_closure(cur, la.image(cur.act(a.idempotent_of(lab))).vectors())
        tmod, _ = md.restrict(cur, trace)
        tm = md.multiplicities(tmod)
        if any(tm[x] and not ds.order.le(x, lab) for x in a.labels):
            return None
        k = md.top_multiplicities(tmod)[lab]
        if tmod.dim != k * ds.standard(lab).dim:
            return None
        nxt, q = md.quotient(cur, trace)
        proj = q.matrix * proj
        steps.append((la.kernel(proj), lab, k))
        cur = nxt
    return Filtration(m, "delta", steps)


def _nabla_filtration(m: Module, ds: DeltaSystem) -> Filtration | None:
    f = has_delta_filtration(md.dual(m), ds.opposite(), "delta")
    if f is None:
        return None
    # annihilators of the dual filtration, reversed
    subs = [s for s, _, _ in f.steps]
    anns = []
    for s in subs:
        anns.append(la.kernel(s.basis) if s.dim else Subspace.full(m.dim))
    steps = []
    labs = [(lab, k) for _, lab, k in f.steps]
    # ann(X_t) = 0 < ann(X_{t-1}) < ... < ann(X_0) = M
    chain = list(reversed(anns[:-1])) + [Subspace.full(m.dim)]
    for sub, (lab, k) in zip(chain, reversed(labs)):
        steps.append((sub, lab, k))
    return Filtration(m, "nabla", steps)


@dataclass
class QHVerdict:
    ok: bool
    delta_system: DeltaSystem
    end_dims: dict
    filtration: Filtration | None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def is_quasi_hereditary(a: Algebra, order: SimpleOrder) -> QHVerdict:
    """One-dimensional endomorphisms of standards plus a standard filtration of ``A``."""
    assert_split(a)
    ds = DeltaSystem(a, order)
    ends = {lab: md.end_dim(ds.standard(lab)) for lab in a.labels}
    bad = [lab for lab, d in ends.items() if d != 1]
    if bad:
        return QHVerdict(False, ds, ends, None, f"End(Δ({bad[0]})) has dimension {ends[bad[0]]}")
    filt = has_delta_filtration(md.regular_module(a), ds)
    if filt is None:
        return QHVerdict(False, ds, ends, None, "the regular module has no standard filtration")
    return QHVerdict(True, ds, ends, filt)


@dataclass
class HeredityChain:
    ok: bool
    chain: list  # (label, dim of heredity ideal in the current quotient)
    failure: str = ""

    def __bool__(self) -> bool:
        return self.ok


def _sum_of(vectors, n):
    out = la.zeros(n, 1)
    for v in vectors:
        out = out + v
    return out


def heredity_chain(a: Algebra, order: SimpleOrder) -> HeredityChain:
    """Search for a heredity chain compatible with the order.

    At each step ``J = A e A`` for the idempotents of a maximal remaining label;
    ``J rad(A) J = 0`` and projectivity of ``J`` as a right module are checked,
    then the search continues in ``A / J``. All maximal labels are tried.
    A chain for a linear refinement is not enough when the order is partial:
    the module ``A'e`` must have no composition factor incomparable to the label.
    """
    assert_split(a)
    memo: dict[frozenset, tuple[bool, list, str]] = {}

    def attempt(remaining: frozenset) -> tuple[bool, list, str]:
        if not remaining:
            return True, [], ""
        if remaining in memo:
            return memo[remaining]
        removed = [e for e, lab in zip(a.idempotents, a.idem_labels) if lab not in remaining]
        ideal = a.two_sided_ideal(removed)
        quo, _ = quotient_algebra(a, ideal) if ideal.dim else (a, None)
        last = ""
        result = None
        for lab in order.maximal([x for x in order.labels if x in remaining]):
            es = [e for e, l in zip(quo.idempotents, quo.idem_labels) if l == lab]
            if not es:
                last = f"idempotent of {lab!r} vanishes in the quotient"
                continue
            e = _sum_of(es, quo.dim)
            # the standard module A'e of this step may only involve labels below lab
            clash = [
                l for l in remaining
                if l != lab and not order.le(l, lab)
                and any(quo.corner(f, e).dim for f, m in zip(quo.idempotents, quo.idem_labels) if m == l)
            ]
            if clash:
                last = f"the standard module of {lab!r} involves the incomparable label {clash[0]!r}"
                continue
            j = quo.two_sided_ideal([e])
            jrj = quo.product_space(quo.product_space(j, quo.radical), j)
            if jrj.dim:
                last = f"J rad J ≠ 0 for the ideal of {lab!r}"
                continue
            jmod = md.restrict(md.regular_module(quo.opposite()), j)[0]
            if not md.is_projective(jmod):
                last = f"the ideal of {lab!r} is not projective as a right module"
                continue
            ok, rest, why = attempt(remaining - {lab})
            if ok:
                result = (True, [(lab, j.dim)] + rest, "")
                break
            last = why
        if result is None:
            result = (False, [], last)
        memo[remaining] = result
        return result

    ok, chain, why = attempt(frozenset(a.labels))
    return HeredityChain(ok, chain, why)


def is_directed(a: Algebra, order: SimpleOrder, ds: DeltaSystem | None = None) -> bool:
    """True iff every standard module is simple."""
    ds = ds or DeltaSystem(a, order)
    return all(sum(md.multiplicities(ds.standard(lab)).values()) == 1 for lab in a.labels)
