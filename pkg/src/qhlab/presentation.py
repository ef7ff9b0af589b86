"""Quivers, paths, relations and bound quiver algebras.

Paths compose right to left: the word ``("a", "b")`` is the path that
traverses ``b`` first and then ``a`` (written ``ab``).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable, Sequence

from . import linalg as la
from .algebra import Algebra
from .errors import InvalidRelation, PresentationSyntaxError, SemanticError, TruncationNotSaturated
from .linalg import Subspace
from .order import SimpleOrder


@dataclass(frozen=True)
class Quiver:
    vertices: tuple
    arrows: tuple  # of (label, source, target)

    def __post_init__(self):
        labels = [a[0] for a in self.arrows]
        if len(set(labels)) != len(labels):
            raise SemanticError("arrow labels must be unique")
        if len(set(self.vertices)) != len(self.vertices):
            raise SemanticError("vertex labels must be unique")
        vs = set(self.vertices)
        for lab, s, t in self.arrows:
            if s not in vs or t not in vs:
                raise SemanticError(f"arrow {lab!r} refers to an unknown vertex")

    def arrow(self, label) -> tuple:
        for a in self.arrows:
            if a[0] == label:
                return a
        raise SemanticError(f"unknown arrow {label!r}")

    def is_acyclic(self) -> bool:
        return len(enumerate_paths(self, len(self.vertices) + 1)) == len(enumerate_paths(self, len(self.vertices)))


@dataclass(frozen=True)
class Path:
    source: Hashable
    target: Hashable
    arrows: tuple = ()

    def __len__(self) -> int:
        return len(self.arrows)

    @property
    def name(self) -> str:
        if not self.arrows:
            return f"e{self.source}"
        if all(len(str(a)) == 1 for a in self.arrows):
            return "".join(str(a) for a in self.arrows)
        return "·".join(str(a) for a in self.arrows)

    def key(self) -> tuple:
        return (len(self.arrows), tuple(str(a) for a in self.arrows), str(self.source))

    def vertices(self, quiver: Quiver) -> list:
        """Vertices passed through, in traversal order."""
        out = [self.source]
        for lab in reversed(self.arrows):
            out.append(quiver.arrow(lab)[2])
        return out

    def compose(self, other: "Path") -> "Path | None":
        """``self * other`` (``other`` first), or ``None`` if not composable."""
        if other.target != self.source:
            return None
        return Path(other.source, self.target, self.arrows + other.arrows)


def path_from_word(quiver: Quiver, word: Sequence) -> Path:
    """Build a path from arrow labels written left to right (last traversed first)."""
    if not word:
        raise InvalidRelation("empty path word")
    arrows = [quiver.arrow(lab) for lab in word]
    for left, right in zip(arrows, arrows[1:]):
        if right[2] != left[1]:
            raise InvalidRelation(f"arrows {left[0]!r} and {right[0]!r} are not composable")
    return Path(arrows[-1][1], arrows[0][2], tuple(word))


def trivial_path(v) -> Path:
    return Path(v, v, ())


def enumerate_paths(quiver: Quiver, max_len: int) -> list[Path]:
    """All paths of length at most ``max_len``: by length, then lexicographically."""
    layer = [trivial_path(v) for v in quiver.vertices]
    out = list(layer)
    for _ in range(max_len):
        nxt = []
        for p in layer:
            for lab, s, t in quiver.arrows:
                if s == p.target:
                    nxt.append(Path(p.source, t, (lab,) + p.arrows))
        nxt.sort(key=Path.key)
        out.extend(nxt)
        layer = nxt
        if not layer:
            break
    return out


@dataclass(frozen=True)
class Relation:
    terms: tuple  # of (Fraction, tuple of arrow labels)


@dataclass(frozen=True)
class PresentationSpec:
    quiver: Quiver
    relations: tuple = ()
    degree_bound: int = 1

    def __post_init__(self):
        if self.degree_bound < 1:
            raise SemanticError("degree bound must be at least 1")


def _relation_paths(q: Quiver, rel: Relation) -> list[tuple[Fraction, Path]]:
    terms = [(Fraction(c), path_from_word(q, w)) for c, w in rel.terms if Fraction(c) != 0]
    if not terms:
        raise InvalidRelation("relation has no nonzero coefficient")
    s, t = terms[0][1].source, terms[0][1].target
    for _, p in terms:
        if p.source != s or p.target != t:
            raise InvalidRelation("relation paths are not parallel")
    return terms


def bound_quiver_algebra(spec: PresentationSpec, name: str = "") -> Algebra:
    """``kQ / I`` truncated at the certified degree bound."""
    q, d = spec.quiver, spec.degree_bound
    paths = enumerate_paths(q, d)
    index = {p: k for k, p in enumerate(paths)}
    n = len(paths)
    rels = [_relation_paths(q, r) for r in spec.relations]
    gens = []
    for terms in rels:
        s, t = terms[0][1].source, terms[0][1].target
        for u in paths:
            if u.source != t:
                continue
            for v in paths:
                if v.target != s:
                    continue
                vec = la.zeros(n, 1)
                ok = True
                for c, p in terms:
                    w = u.compose(p).compose(v)
                    if len(w) > d:
                        ok = False
                        break
                    vec[index[w], 0] += la.scalar(c)
                if ok and not la.is_zero(vec):
                    gens.append(vec)
    # reversed coordinates so that pivots (leading terms) are the largest paths
    rev = list(reversed(range(n)))
    rows = la.matrix([[g[r, 0] for r in rev] for g in gens], n) if gens else la.zeros(0, n)
    ideal = Subspace.from_rows(rows, n)
    for k, p in enumerate(paths):
        if len(p) == d:
            if not ideal.contains(la.unit_vector(n, rev.index(k))):
                raise TruncationNotSaturated(f"path {p.name} of length {d} is not in the ideal")
    pi, _ = ideal.quotient_maps()
    free_rev = ideal.free_columns()
    basis_idx = sorted(rev[c] for c in free_rev)
    # coordinates: reorder projection rows to ascending path order
    order = [free_rev.index(rev.index(k)) for k in basis_idx]
    pi = la.submatrix(pi, order, range(n))
    basis = [paths[k] for k in basis_idx]
    nb = len(basis)

    def reduce(p: Path | None):
        if p is None or len(p) >= d:
            return la.zeros(nb, 1)
        return la.col(pi, rev.index(index[p]))

    lmats = []
    for bi in basis:
        m = la.zeros(nb, nb)
        for j, bj in enumerate(basis):
            v = reduce(bi.compose(bj))
            for r in range(nb):
                if v[r, 0] != 0:
                    m[r, j] = v[r, 0]
        lmats.append(m)
    unit = la.zeros(nb, 1)
    idems = []
    for v in q.vertices:
        e = reduce(trivial_path(v))
        idems.append(e)
        unit = unit + e
    alg = Algebra(lmats, unit, idems, list(q.vertices), [p.name for p in basis], name=name)
    alg.meta["quiver"] = q
    alg.meta["paths"] = basis
    alg.meta["reduce_path"] = reduce
    alg.meta["presentation"] = spec
    return alg


def path_algebra(quiver: Quiver, name: str = "") -> Algebra:
    """Path algebra of an acyclic quiver (no relations)."""
    if not quiver.is_acyclic():
        raise SemanticError("path algebra without relations needs an acyclic quiver")
    longest = max(len(p) for p in enumerate_paths(quiver, len(quiver.vertices)))
    return bound_quiver_algebra(PresentationSpec(quiver, (), longest + 1), name=name)


def path_element(alg: Algebra, word: Sequence, vertex=None) -> la.Matrix:
    """Coordinates of a path (given by arrow labels) in a bound quiver algebra."""
    q = alg.meta["quiver"]
    p = trivial_path(vertex) if not word else path_from_word(q, word)
    return alg.meta["reduce_path"](p)


# -- text format --------------------------------------------------------------

def _coeff_to_json(c: Fraction):
    return c.numerator if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _coeff_from_json(x, where: str) -> Fraction:
    if isinstance(x, bool):
        raise SemanticError(f"{where}: coefficient must be a number or 'p/q' string")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x)
        except ValueError:
            raise SemanticError(f"{where}: bad coefficient {x!r}") from None
    raise SemanticError(f"{where}: coefficient must be exact (int or 'p/q' string)")


def presentation_from_obj(obj: dict, where: str = "algebra") -> tuple[PresentationSpec, SimpleOrder]:
    if not isinstance(obj, dict):
        raise SemanticError(f"{where}: expected an object")
    qobj = obj.get("quiver")
    if not isinstance(qobj, dict):
        raise SemanticError(f"{where}.quiver: missing or not an object")
    verts = qobj.get("vertices")
    if not isinstance(verts, list) or not verts:
        raise SemanticError(f"{where}.quiver.vertices: expected a nonempty list")
    arrows = []
    for k, a in enumerate(qobj.get("arrows", [])):
        if not (isinstance(a, list) and len(a) == 3):
            raise SemanticError(f"{where}.quiver.arrows[{k}]: expected [label, source, target]")
        lab, s, t = a
        if s not in verts or t not in verts:
            raise SemanticError(f"{where}.quiver.arrows[{k}]: unknown vertex in arrow {lab!r}")
        arrows.append((lab, s, t))
    quiver = Quiver(tuple(verts), tuple(arrows))
    rels = []
    for k, r in enumerate(obj.get("relations", [])):
        if not isinstance(r, list) or not r:
            raise SemanticError(f"{where}.relations[{k}]: expected a nonempty list of [coeff, path] terms")
        terms = []
        for t_idx, term in enumerate(r):
            if not (isinstance(term, list) and len(term) == 2 and isinstance(term[1], list)):
                raise SemanticError(f"{where}.relations[{k}][{t_idx}]: expected [coeff, [arrow labels]]")
            c = _coeff_from_json(term[0], f"{where}.relations[{k}][{t_idx}]")
            for lab in term[1]:
                if lab not in [a[0] for a in arrows]:
                    raise SemanticError(f"{where}.relations[{k}][{t_idx}]: unknown arrow {lab!r}")
            terms.append((c, tuple(term[1])))
        rel = Relation(tuple(terms))
        try:
            _relation_paths(quiver, rel)
        except InvalidRelation as exc:
            raise SemanticError(f"{where}.relations[{k}]: {exc}") from None
        rels.append(rel)
    d = obj.get("degree_bound")
    if d is None:
        d = _default_degree(quiver)
    if not isinstance(d, int) or isinstance(d, bool) or d < 1:
        raise SemanticError(f"{where}.degree_bound: expected a positive integer")
    spec = PresentationSpec(quiver, tuple(rels), d)
    less = []
    for k, pr in enumerate(obj.get("order", [])):
        if not (isinstance(pr, list) and len(pr) == 2) or pr[0] not in verts or pr[1] not in verts:
            raise SemanticError(f"{where}.order[{k}]: expected [less, greater] with known vertices")
        less.append((pr[0], pr[1]))
    try:
        order = SimpleOrder(list(verts), less)
    except ValueError as exc:
        raise SemanticError(f"{where}.order: {exc}") from None
    return spec, order


def _default_degree(quiver: Quiver) -> int:
    if quiver.is_acyclic():
        return max(len(p) for p in enumerate_paths(quiver, len(quiver.vertices))) + 1
    raise SemanticError("degree_bound is required for quivers with oriented cycles")


def parse_presentation(text: str) -> tuple[PresentationSpec, SimpleOrder]:
    """Parse one algebra entry of the JSON input format."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PresentationSyntaxError(exc.msg, exc.lineno, exc.colno) from None
    return presentation_from_obj(obj)


def presentation_to_obj(spec: PresentationSpec, order: SimpleOrder | None = None) -> dict:
    obj = {
        "quiver": {
            "vertices": list(spec.quiver.vertices),
            "arrows": [[lab, s, t] for lab, s, t in spec.quiver.arrows],
        },
        "relations": [[[_coeff_to_json(c), list(w)] for c, w in r.terms] for r in spec.relations],
        "degree_bound": spec.degree_bound,
    }
    if order is not None:
        obj["order"] = [[a, b] for a, b in order.cover_pairs()]
    return obj


def serialize_presentation(spec: PresentationSpec, order: SimpleOrder | None = None) -> str:
    return json.dumps(presentation_to_obj(spec, order), ensure_ascii=False, indent=2)
