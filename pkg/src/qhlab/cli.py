"""Command-line front end: problem files in, deterministic reports out."""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path as FsPath

from . import linalg as la
from . import modules as md
from .algebra import Algebra, assert_split, cartan_matrix, field_algebra, semisimple_algebra, subalgebra, tensor_algebras
from .constructions import (
    SpeciesSpec,
    TriangularSpec,
    default_borel_paths,
    predict_tensor_regular,
    species_algebra,
    species_borel,
    species_data,
    species_qh_criterion,
    species_standard_oracle,
    tensor_borel,
    tensor_qh,
    triangular_borel,
    triangular_matrix,
)
from .errors import QHLabError, SemanticError, PresentationSyntaxError
from .homology import (
    BorelEmbedding,
    ext_table,
    is_strong,
    minimal_resolution,
    regularity_report,
)
from .modules import Embedding, Module
from .order import SimpleOrder, tensor_order
from .presentation import Path, Quiver, bound_quiver_algebra, path_from_word, presentation_from_obj, trivial_path
from .qh import DeltaSystem, has_delta_filtration, heredity_chain, is_quasi_hereditary

REPORT_VERSION = 1

COMMANDS = [
    "check-qh",
    "standard",
    "costandard",
    "loewy",
    "ext",
    "check-borel",
    "check-regular",
    "tensor",
    "species-build",
    "species-check",
    "species-borel",
    "triangular",
]


class InputError(QHLabError):
    """Problem file is malformed; carries a location string."""


# -- JSON <-> labels ----------------------------------------------------------------

def label_from_json(x):
    if isinstance(x, list):
        return tuple(label_from_json(y) for y in x)
    return x


def label_to_json(x):
    if isinstance(x, tuple):
        return [label_to_json(y) for y in x]
    return x


def scalar_to_json(c) -> int | str:
    f = Fraction(int(c.p), int(c.q))
    return f.numerator if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def matrix_to_json(m) -> list:
    return [[scalar_to_json(m[i, j]) for j in range(m.ncols())] for i in range(m.nrows())]


def matrix_from_json(obj, rows: int, cols: int, where: str):
    if not isinstance(obj, list) or len(obj) != rows or any(not isinstance(r, list) or len(r) != cols for r in obj):
        raise InputError(f"{where}: expected a {rows}x{cols} matrix")
    try:
        return la.matrix(obj, cols)
    except (ValueError, TypeError, ZeroDivisionError):
        raise InputError(f"{where}: matrix entries must be integers or 'p/q' strings") from None


def _vertex_key(obj: dict, v, where: str):
    for k in (str(v), v):
        if k in obj:
            return obj[k]
    raise InputError(f"{where}: missing entry for vertex {v}")


# -- problem file -----------------------------------------------------------------------

class Problem:
    """Resolves names in a problem file lazily, caching every built object."""

    def __init__(self, doc: dict, seed: int = 0, max_degree: int | None = None):
        if not isinstance(doc, dict):
            raise InputError("$: expected a JSON object")
        self.doc = doc
        self.seed = seed
        self.max_degree = max_degree
        self._alg: dict = {}
        self._ord: dict = {}
        self._emb: dict = {}
        self._sp: dict = {}

    def _section(self, key: str) -> dict:
        sec = self.doc.get(key, {})
        if not isinstance(sec, dict):
            raise InputError(f"$.{key}: expected an object")
        return sec

    # algebras
    def algebra(self, name: str) -> Algebra:
        if name not in self._alg:
            self._build_algebra(name)
        return self._alg[name]

    def order(self, name: str) -> SimpleOrder:
        self.algebra(name)
        return self._ord[name]

    def _build_algebra(self, name: str) -> None:
        sec = self._section("algebras")
        if not isinstance(name, str) or name not in sec:
            raise InputError(f"$.algebras: unknown algebra {name!r}")
        obj = sec[name]
        where = f"$.algebras.{name}"
        if not isinstance(obj, dict):
            raise InputError(f"{where}: expected an object")
        if "quiver" in obj:
            try:
                spec, order = presentation_from_obj(obj, where)
                alg = bound_quiver_algebra(spec, name=name)
            except QHLabError as exc:
                raise InputError(str(exc)) from None
        elif "semisimple" in obj:
            n = obj["semisimple"]
            if not isinstance(n, int) or n < 1:
                raise InputError(f"{where}.semisimple: expected a positive integer")
            alg = field_algebra() if n == 1 else semisimple_algebra(n)
            alg.name = name
            order = SimpleOrder.discrete(alg.labels)
        elif "tensor" in obj:
            parts = obj["tensor"]
            if not isinstance(parts, list) or len(parts) != 2:
                raise InputError(f"{where}.tensor: expected two algebra names")
            alg = tensor_algebras(self.algebra(parts[0]), self.algebra(parts[1]))
            alg.name = name
            order = tensor_order(self.order(parts[0]), self.order(parts[1]))
        elif "species" in obj:
            alg, order = species_algebra(self.species(obj["species"]))
        elif "opposite" in obj:
            base = self.algebra(obj["opposite"])
            alg = base.opposite()
            order = self.order(obj["opposite"])
        else:
            raise InputError(f"{where}: expected one of quiver, semisimple, tensor, species, opposite")
        if "order" in obj and "quiver" not in obj:
            order = self._order_from(obj["order"], alg, f"{where}.order")
        try:
            assert_split(alg)
        except QHLabError as exc:
            raise InputError(f"{where}: {exc}") from None
        self._alg[name] = alg
        self._ord[name] = order

    def _order_from(self, pairs, alg: Algebra, where: str) -> SimpleOrder:
        if not isinstance(pairs, list):
            raise InputError(f"{where}: expected a list of [less, greater] pairs")
        labels = alg.labels
        less = []
        for k, pr in enumerate(pairs):
            if not (isinstance(pr, list) and len(pr) == 2):
                raise InputError(f"{where}[{k}]: expected [less, greater]")
            a, b = label_from_json(pr[0]), label_from_json(pr[1])
            if a not in labels or b not in labels:
                raise InputError(f"{where}[{k}]: unknown simple label")
            less.append((a, b))
        try:
            return SimpleOrder(labels, less)
        except ValueError as exc:
            raise InputError(f"{where}: {exc}") from None

    def element(self, alg: Algebra, obj, where: str):
        """An algebra element: a basis label, ``{label: coeff}`` or a coordinate list."""
        if isinstance(obj, str):
            obj = {obj: 1}
        if isinstance(obj, dict):
            for lab in obj:
                if lab not in alg.basis_labels:
                    raise InputError(f"{where}: unknown basis element {lab!r}")
            try:
                return alg.element(obj)
            except (ValueError, TypeError, ZeroDivisionError):
                raise InputError(f"{where}: bad coefficient") from None
        if isinstance(obj, list) and len(obj) == alg.dim:
            return matrix_from_json([[x] for x in obj], alg.dim, 1, where)
        raise InputError(f"{where}: expected a basis label, a {{label: coeff}} object or a coordinate list")

    # embeddings
    def embedding(self, name: str) -> BorelEmbedding:
        if name not in self._emb:
            self._emb[name] = self._build_embedding(name)
        return self._emb[name]

    def _build_embedding(self, name: str) -> BorelEmbedding:
        sec = self._section("embeddings")
        if not isinstance(name, str) or name not in sec:
            raise InputError(f"$.embeddings: unknown embedding {name!r}")
        obj = sec[name]
        where = f"$.embeddings.{name}"
        if not isinstance(obj, dict):
            raise InputError(f"{where}: expected an object")
        kw = dict(max_deg=self.max_degree, seed=self.seed)
        try:
            if "tensor" in obj:
                parts = obj["tensor"]
                if not isinstance(parts, list) or len(parts) != 2:
                    raise InputError(f"{where}.tensor: expected two embedding names")
                out, _ = tensor_borel(self.embedding(parts[0]), self.embedding(parts[1]))
                return BorelEmbedding(out.emb, out.order, **kw)
            if "identity" in obj:
                a = self.algebra(obj["identity"])
                return BorelEmbedding(md.identity_embedding(a), self.order(obj["identity"]), **kw)
            big_name = obj.get("big")
            big = self.algebra(big_name)
            order = self.order(big_name)
            if "span" in obj:
                elems = [self.element(big, x, f"{where}.span[{k}]") for k, x in enumerate(obj["span"])]
                sub, inc = subalgebra(big, la.Subspace.span(elems, big.dim), name=name)
                return BorelEmbedding(Embedding(sub, big, inc), order, **kw)
            if "images" in obj:
                sub = self.algebra(obj.get("sub"))
                return BorelEmbedding(Embedding(sub, big, self._images(sub, big, obj["images"], where)), order, **kw)
        except QHLabError as exc:
            if isinstance(exc, InputError):
                raise
            raise InputError(f"{where}: {exc}") from None
        raise InputError(f"{where}: expected one of span, images, tensor, identity")

    def _images(self, sub: Algebra, big: Algebra, imgs, where: str):
        """Extend images of vertices and arrows of a quiver algebra multiplicatively."""
        q = sub.meta.get("quiver")
        if q is None or not isinstance(imgs, dict):
            raise InputError(f"{where}.images: needs a quiver algebra as sub and an object of images")
        gen = {}
        for v in q.vertices:
            key = f"e{v}"
            if key not in imgs:
                raise InputError(f"{where}.images: missing image of {key}")
            gen[key] = self.element(big, imgs[key], f"{where}.images.{key}")
        for lab, _, _ in q.arrows:
            if str(lab) not in imgs:
                raise InputError(f"{where}.images: missing image of arrow {lab}")
            gen[str(lab)] = self.element(big, imgs[str(lab)], f"{where}.images.{lab}")
        cols = []
        for p in sub.meta["paths"]:
            if not p.arrows:
                cols.append(gen[f"e{p.source}"])
            else:
                x = gen[str(p.arrows[0])]
                for a in p.arrows[1:]:
                    x = big.mul(x, gen[str(a)])
                cols.append(x)
        return la.hstack(cols, big.dim)

    # bimodules
    def bimodule(self, obj, c: Algebra, d: Algebra, where: str) -> Module:
        """Bimodule over ``(C, D)`` from explicit actions or a shorthand."""
        if not isinstance(obj, dict):
            raise InputError(f"{where}: expected an object")
        if "actions" in obj:
            act = obj["actions"]
            dim = obj.get("dim")
            if not isinstance(act, dict) or not isinstance(dim, int):
                raise InputError(f"{where}: explicit bimodules need dim and actions.left / actions.right")
            lefts = [matrix_from_json(m, dim, dim, f"{where}.actions.left[{k}]") for k, m in enumerate(act.get("left", []))]
            rights = [matrix_from_json(m, dim, dim, f"{where}.actions.right[{k}]") for k, m in enumerate(act.get("right", []))]
            if len(lefts) != c.dim or len(rights) != d.dim:
                raise InputError(f"{where}: need one left matrix per basis element of the left algebra and likewise on the right")
            try:
                return md.bimodule_from_actions(c, d, lefts, rights, verify=True)
            except QHLabError as exc:
                raise InputError(f"{where}: {exc}") from None
        if "zero" in obj:
            return md.bimodule_from_actions(c, d, [la.zeros(0, 0)] * c.dim, [la.zeros(0, 0)] * d.dim, verify=False)
        if "regular" in obj or "span" in obj:
            reg = self._regular_bimodule(c, d, where)
            if "regular" in obj:
                return reg
            base = c if c.dim > 1 or d.dim == 1 else d
            elems = [self.element(base, x, f"{where}.span[{k}]") for k, x in enumerate(obj["span"])]
            space = la.Subspace.span(elems, base.dim)
            if not md.is_submodule(reg, space):
                raise InputError(f"{where}.span: not a sub-bimodule of the regular bimodule")
            return md.restrict(reg, space)[0]
        if "free" in obj:
            r = obj["free"]
            if not isinstance(r, int) or r < 0:
                raise InputError(f"{where}.free: expected a nonnegative integer")
            one = md.bimodule_from_actions(
                c, d,
                [la.kron(c.lmats[k], la.identity(d.dim)) for k in range(c.dim)],
                [la.kron(la.identity(c.dim), d.right_matrix(d.basis(k))) for k in range(d.dim)],
                verify=False,
            )
            if r == 0:
                return self.bimodule({"zero": True}, c, d, where)
            return md.direct_sum([one] * r)
        if "simple" in obj:
            pair = obj["simple"]
            if not (isinstance(pair, list) and len(pair) == 2):
                raise InputError(f"{where}.simple: expected [left label, right label]")
            lc, ld = label_from_json(pair[0]), label_from_json(pair[1])
            if lc not in c.labels or ld not in d.labels:
                raise InputError(f"{where}.simple: unknown simple label")
            sc, sd = md.simple_module(c, lc), md.simple_module(d.opposite(), ld)
            lefts = [la.kron(sc.act(c.basis(k)), la.identity(sd.dim)) for k in range(c.dim)]
            rights = [la.kron(la.identity(sc.dim), sd.act(d.basis(k))) for k in range(d.dim)]
            return md.bimodule_from_actions(c, d, lefts, rights, verify=True)
        raise InputError(f"{where}: expected one of actions, zero, regular, span, free, simple")

    @staticmethod
    def _regular_bimodule(c: Algebra, d: Algebra, where: str) -> Module:
        if c.same_as(d):
            return md.bimodule_from_actions(c, d, c.lmats, [c.right_matrix(c.basis(k)) for k in range(c.dim)], verify=False)
        if d.dim == 1:
            return md.bimodule_from_actions(c, d, c.lmats, [la.identity(c.dim) * d.lmats[0][0, 0]], verify=False)
        if c.dim == 1:
            return md.bimodule_from_actions(c, d, [la.identity(d.dim) * c.lmats[0][0, 0]], [d.right_matrix(d.basis(k)) for k in range(d.dim)], verify=False)
        raise InputError(f"{where}: regular bimodule needs equal algebras or a one-dimensional side")

    # species
    def species(self, name: str) -> SpeciesSpec:
        if name not in self._sp:
            self._sp[name] = self._build_species(name)
        return self._sp[name]

    def _species_obj(self, name: str) -> dict:
        sec = self._section("species")
        if not isinstance(name, str) or name not in sec or not isinstance(sec[name], dict):
            raise InputError(f"$.species: unknown species {name!r}")
        return sec[name]

    def _build_species(self, name: str) -> SpeciesSpec:
        obj = self._species_obj(name)
        where = f"$.species.{name}"
        try:
            spec, _ = presentation_from_obj({"quiver": obj.get("quiver"), "degree_bound": 1}, f"{where}")
        except SemanticError as exc:
            raise InputError(str(exc)) from None
        q = spec.quiver
        va = obj.get("vertex_algebras")
        if not isinstance(va, dict):
            raise InputError(f"{where}.vertex_algebras: expected an object")
        algs, orders = {}, {}
        for v in q.vertices:
            ent = _vertex_key(va, v, f"{where}.vertex_algebras")
            if isinstance(ent, str):
                algs[v], orders[v] = self.algebra(ent), self.order(ent)
            elif isinstance(ent, dict) and "algebra" in ent:
                algs[v] = self.algebra(ent["algebra"])
                orders[v] = (
                    self._order_from(ent["order"], algs[v], f"{where}.vertex_algebras.{v}.order")
                    if "order" in ent
                    else self.order(ent["algebra"])
                )
            else:
                raise InputError(f"{where}.vertex_algebras.{v}: expected an algebra name or {{algebra, order}}")
        ab = obj.get("arrow_bimodules", {})
        if not isinstance(ab, dict):
            raise InputError(f"{where}.arrow_bimodules: expected an object")
        bims = {}
        for lab, s, t in q.arrows:
            if lab not in ab:
                raise InputError(f"{where}.arrow_bimodules: missing bimodule for arrow {lab}")
            bims[lab] = self.bimodule(ab[lab], algs[t], algs[s], f"{where}.arrow_bimodules.{lab}")
        try:
            return SpeciesSpec(q, algs, orders, bims)
        except QHLabError as exc:
            raise InputError(f"{where}: {exc}") from None

    def species_paths(self, name: str) -> list[Path] | None:
        obj = self._species_obj(name)
        if "borel_paths" not in obj:
            return None
        q = self.species(name).quiver
        out = []
        for k, w in enumerate(obj["borel_paths"]):
            where = f"$.species.{name}.borel_paths[{k}]"
            try:
                if isinstance(w, dict) and "vertex" in w:
                    out.append(trivial_path(w["vertex"]))
                elif isinstance(w, list) and w:
                    out.append(path_from_word(q, w))
                else:
                    raise InputError(f"{where}: expected a list of arrow labels or {{vertex}}")
            except QHLabError as exc:
                if isinstance(exc, InputError):
                    raise
                raise InputError(f"{where}: {exc}") from None
        return out

    def species_borels(self, name: str, where: str) -> dict:
        obj = self._species_obj(name)
        spec = self.species(name)
        bor = obj.get("borels")
        if not isinstance(bor, dict):
            raise InputError(f"{where}: species {name} declares no borels")
        out = {}
        for v in spec.quiver.vertices:
            be = self.embedding(_vertex_key(bor, v, f"$.species.{name}.borels"))
            out[v] = BorelEmbedding(be.emb, spec.orders[v], self.max_degree, self.seed)
        return out

    def module(self, alg: Algebra, order: SimpleOrder, obj, where: str) -> Module:
        if not isinstance(obj, dict) or len(obj) != 1:
            raise InputError(f"{where}: expected one of projective, standard, costandard, simple, regular")
        kind, lab = next(iter(obj.items()))
        if kind == "regular":
            return md.regular_module(alg)
        lab = label_from_json(lab)
        if lab not in alg.labels:
            raise InputError(f"{where}.{kind}: unknown simple label {lab!r}")
        if kind == "projective":
            return md.projective_module(alg, lab)
        if kind == "simple":
            return md.simple_module(alg, lab)
        ds = DeltaSystem(alg, order)
        if kind == "standard":
            return ds.standard(lab)
        if kind == "costandard":
            return ds.costandard(lab)
        if kind == "radical_of_standard":
            m = ds.standard(lab)
            return md.restrict(m, md.radical_subspace(m))[0]
        raise InputError(f"{where}: unknown module kind {kind!r}")


# -- reports ----------------------------------------------------------------------------

def _labels(xs) -> list:
    return [label_to_json(x) for x in xs]


def _layers(layers, alg: Algebra) -> list:
    return [_labels(row) for row in md.layers_as_lists(layers, alg.labels)]


def _filtration(f) -> list | None:
    if f is None:
        return None
    return [{"label": label_to_json(lab), "multiplicity": k} for _, lab, k in f.steps]


def _arg(args: dict, key: str, where: str, default=None, required=True):
    if key in args:
        return args[key]
    if required and default is None:
        raise InputError(f"{where}.args: missing {key!r}")
    return default


def cmd_check_qh(pb: Problem, args: dict, where: str) -> tuple[bool, dict]:
    name = _arg(args, "algebra", where)
    alg = pb.algebra(name)
    order = pb._order_from(args["order"], alg, f"{where}.args.order") if "order" in args else pb.order(name)
    v = is_quasi_hereditary(alg, order)
    h = heredity_chain(alg, order)
    res = {
        "algebra": name,
        "dim": alg.dim,
        "order": [[label_to_json(a), label_to_json(b)] for a, b in order.cover_pairs()],
        "quasi_hereditary": v.ok,
        "heredity_chain_found": h.ok,
        "deciders_agree": v.ok == h.ok,
        "end_dims": [{"label": label_to_json(k), "dim": d} for k, d in v.end_dims.items()],
        "standard_dims": [{"label": label_to_json(k), "dim": v.delta_system.standard(k).dim} for k in alg.labels],
        "filtration_of_regular": _filtration(v.filtration),
        "heredity_chain": [{"label": label_to_json(lab), "ideal_dim": d} for lab, d in h.chain],
    }
    if not v.ok:
        res["reason"] = v.reason
    if not h.ok:
        res["heredity_failure"] = h.failure
    return v.ok and h.ok, res


def _module_report(m: Module, alg: Algebra) -> dict:
    return {
        "dim": m.dim,
        "composition_factors": [
            {"label": label_to_json(k), "multiplicity": c} for k, c in md.multiplicities(m).items() if c
        ],
        "loewy_layers": _layers(md.loewy_layers(m), alg),
        "socle_layers": _layers(md.socle_layers(m), alg),
        "end_dim": md.end_dim(m),
    }


def _cmd_std(pb: Problem, args: dict, where: str, which: str) -> tuple[bool, dict]:
    name = _arg(args, "algebra", where)
    alg, order = pb.algebra(name), pb.order(name)
    ds = DeltaSystem(alg, order)
    labels = [label_from_json(args["label"])] if "label" in args else alg.labels
    out = []
    for lab in labels:
        if lab not in alg.labels:
            raise InputError(f"{where}.args.label: unknown simple label")
        m = ds.standard(lab) if which == "delta" else ds.costandard(lab)
        rep = _module_report(m, alg)
        rep["label"] = label_to_json(lab)
        out.append(rep)
    return True, {"algebra": name, "modules": out}


def cmd_standard(pb, args, where):
    return _cmd_std(pb, args, where, "delta")


def cmd_costandard(pb, args, where):
    return _cmd_std(pb, args, where, "nabla")


def cmd_loewy(pb: Problem, args: dict, where: str) -> tuple[bool, dict]:
    name = _arg(args, "algebra", where)
    alg, order = pb.algebra(name), pb.order(name)
    m = pb.module(alg, order, _arg(args, "module", where), f"{where}.args.module")
    rep = _module_report(m, alg)
    rep["layer_sizes"] = [len(x) for x in rep["loewy_layers"]]
    rep["algebra"] = name
    res = {"algebra": name, **rep}
    if "filtration" in args:
        ds = DeltaSystem(alg, order)
        which = args["filtration"]
        if which not in ("delta", "nabla"):
            raise InputError(f"{where}.args.filtration: expected delta or nabla")
        res[f"{which}_filtration"] = _filtration(has_delta_filtration(m, ds, which))
    return True, res


def cmd_ext(pb: Problem, args: dict, where: str) -> tuple[bool, dict]:
    name = _arg(args, "algebra", where)
    alg, order = pb.algebra(name), pb.order(name)
    family = args.get("family", "standard")
    ds = DeltaSystem(alg, order)
    if family == "standard":
        fam = {lab: ds.standard(lab) for lab in alg.labels}
    elif family == "costandard":
        fam = {lab: ds.costandard(lab) for lab in alg.labels}
    elif family == "simple":
        fam = {lab: md.simple_module(alg, lab) for lab in alg.labels}
    else:
        raise InputError(f"{where}.args.family: expected standard, costandard or simple")
    tab = ext_table(fam, pb.max_degree)
    degrees = []
    for n in range(tab.max_degree + 1):
        rows = [
            {"source": label_to_json(i), "target": label_to_json(j), "dim": tab.dim(n, i, j)}
            for i in alg.labels
            for j in alg.labels
            if tab.dim(n, i, j)
        ]
        degrees.append({"degree": n, "total": tab.total(n), "nonzero": rows})
    res = {
        "algebra": name,
        "family": family,
        "degrees": degrees,
        "resolutions": [
            {"module": label_to_json(lab), "terms": [_labels(t) for t in r.term_labels()], "minimal": r.is_minimal(), "capped": r.capped}
            for lab, r in tab.resolutions.items()
        ],
    }
    capped = [lab for lab, r in tab.resolutions.items() if r.capped]
    if capped:
        res["warning"] = "degree cap reached before the resolution terminated"
    return True, res


def _borel_report(be: BorelEmbedding) -> dict:
    v = be.verdict
    res = {
        "big_dim": be.big.dim,
        "sub_dim": be.sub.dim,
        "exact_borel": v.ok,
        "right_projective": v.right_projective,
        "induces_standards": v.induces_standards,
        "directed": v.directed,
        "phi": [{"sub": label_to_json(k), "big": label_to_json(x)} for k, x in v.phi.items()],
    }
    if not v.ok:
        res["reason"] = v.reason
    else:
        res["strong"] = is_strong(be)
    return res


def cmd_check_borel(pb: Problem, args: dict, where: str) -> tuple[bool, dict]:
    name = _arg(args, "embedding", where)
    be = pb.embedding(name)
    res = {"embedding": name, **_borel_report(be)}
    return be.verdict.ok, res


def _regularity(be: BorelEmbedding) -> dict:
    rep = regularity_report(be)
    return {
        "regular": rep.regular,
        "homological": rep.homological,
        "ext_maps": [{"degree": n, "source_dim": s, "target_dim": t, "rank": r} for n, s, t, r in rep.degrees],
    }


def cmd_check_regular(pb: Problem, args: dict, where: str) -> tuple[bool, dict]:
    name = _arg(args, "embedding", where)
    be = pb.embedding(name)
    res = {"embedding": name, **_borel_report(be)}
    if not be.verdict.ok:
        return False, res
    res.update(_regularity(be))
    return res["regular"], res


def cmd_tensor(pb: Problem, args: dict, where: str) -> tuple[bool, dict]:
    names = _arg(args, "algebras", where)
    if not (isinstance(names, list) and len(names) == 2):
        raise InputError(f"{where}.args.algebras: expected two algebra names")
    a, o = pb.algebra(names[0]), pb.order(names[0])
    a2, o2 = pb.algebra(names[1]), pb.order(names[1])
    t = tensor_qh(a, o, a2, o2, seed=pb.seed)
    ds = t.delta
    res = {
        "algebras": names,
        "dim": t.algebra.dim,
        "standard_dims": [{"label": label_to_json(k), "dim": ds.standard(k).dim} for k in t.algebra.labels],
        "quasi_hereditary": True,
        "standards_are_tensors": t.standards_match,
    }
    ok = True
    if "borels" in args:
        bn = args["borels"]
        if not (isinstance(bn, list) and len(bn) == 2):
            raise InputError(f"{where}.args.borels: expected two embedding names")
        be, be2 = pb.embedding(bn[0]), pb.embedding(bn[1])
        out, strong = tensor_borel(be, be2)
        res["borel"] = _borel_report(out)
        res["strong_is_conjunction"] = strong == is_strong(out)
        reg = _regularity(out)
        res["borel"].update(reg)
        r1, r2 = regularity_report(be).regular, regularity_report(be2).regular
        res["factors_regular"] = [r1, r2]
        if r1 and r2:
            pred, case = predict_tensor_regular(a, o, a2, o2)
            res["predicted_regular"] = pred
            res["prediction_case"] = case
            ok = ok and pred == reg["regular"]
        ok = ok and out.verdict.ok and res["strong_is_conjunction"]
    return ok, res


def _species_report(spec: SpeciesSpec) -> dict:
    alg, order = species_algebra(spec)
    data = species_data(spec)
    return {
        "dim": alg.dim,
        "simples": _labels(alg.labels),
        "radical_dim": alg.radical.dim,
        "blocks": [{"path": p.name, "dim": data.dims[p]} for p in data.paths],
        "cartan": cartan_matrix(alg),
        "order": [[label_to_json(a), label_to_json(b)] for a, b in order.cover_pairs()],
    }


def cmd_species_build(pb: Problem, args: dict, where: str) -> tuple[bool, dict]:
    name = _arg(args, "species", where)
    return True, {"species": name, **_species_report(pb.species(name))}


def cmd_species_check(pb: Problem, args: dict, where: str) -> tuple[bool, dict]:
    name = _arg(args, "species", where)
    spec = pb.species(name)
    crit = species_qh_criterion(spec, direct=bool(args.get("direct", True)))
    alg, order = species_algebra(spec)
    ds = DeltaSystem(alg, order)
    agree = all(
        md.is_isomorphic(species_standard_oracle(spec, lab[0], lab[1]), ds.standard(lab), pb.seed) for lab in alg.labels
    )
    res = {
        "species": name,
        "dim": alg.dim,
        "vertex_algebras_qh": [{"vertex": v, "qh": b} for v, b in crit.vertex_qh.items()],
        "projectivity_hypotheses": crit.hypotheses_ok,
        "hypothesis_failures": crit.failures,
        "directed_quiver": crit.directed_quiver,
        "filtration_criterion": crit.filtration_ok,
        "filtration_failure_path": crit.filtration_failure,
        "sufficient": crit.sufficient,
        "quasi_hereditary": crit.direct,
        "oracle_agrees": agree,
        "regular_module_filtered": has_delta_filtration(md.regular_module(alg), ds) is not None,
    }
    ok = crit.sufficient and agree and (crit.direct is None or crit.direct)
    return ok, res


def cmd_species_borel(pb: Problem, args: dict, where: str) -> tuple[bool, dict]:
    name = _arg(args, "species", where)
    spec = pb.species(name)
    borels = pb.species_borels(name, where)
    paths = pb.species_paths(name)
    sb = species_borel(spec, borels, paths)
    be = BorelEmbedding(sb.embedding.emb, sb.embedding.order, pb.max_degree, pb.seed)
    res = {
        "species": name,
        "paths": [p.name for p in sb.paths],
        "default_paths": paths is None,
        **_borel_report(be),
    }
    if be.verdict.ok and args.get("regularity", True):
        res.update(_regularity(be))
    return be.verdict.ok, res


def cmd_triangular(pb: Problem, args: dict, where: str) -> tuple[bool, dict]:
    n1, n2 = _arg(args, "a1", where), _arg(args, "a2", where)
    a1, a2 = pb.algebra(n1), pb.algebra(n2)
    o1 = pb._order_from(args["o1"], a1, f"{where}.args.o1") if "o1" in args else pb.order(n1)
    o2 = pb._order_from(args["o2"], a2, f"{where}.args.o2") if "o2" in args else pb.order(n2)
    m = pb.bimodule(_arg(args, "bimodule", where), a2, a1, f"{where}.args.bimodule")
    t = TriangularSpec(a1, o1, a2, o2, m)
    alg, order, spec = triangular_matrix(t)
    v = is_quasi_hereditary(alg, order)
    res = {"a1": n1, "a2": n2, "dim": alg.dim, "simples": _labels(alg.labels), "quasi_hereditary": v.ok}
    ok = v.ok
    if "borels" in args:
        bn = args["borels"]
        if not (isinstance(bn, list) and len(bn) == 2):
            raise InputError(f"{where}.args.borels: expected two embedding names [for a1, for a2]")
        be1 = BorelEmbedding(pb.embedding(bn[0]).emb, o1, pb.max_degree, pb.seed)
        be2 = BorelEmbedding(pb.embedding(bn[1]).emb, o2, pb.max_degree, pb.seed)
        sb = triangular_borel(t, be1, be2)
        res["borel"] = _borel_report(sb.embedding)
        ok = ok and sb.embedding.verdict.ok
    return ok, res


HANDLERS = {
    "check-qh": cmd_check_qh,
    "standard": cmd_standard,
    "costandard": cmd_costandard,
    "loewy": cmd_loewy,
    "ext": cmd_ext,
    "check-borel": cmd_check_borel,
    "check-regular": cmd_check_regular,
    "tensor": cmd_tensor,
    "species-build": cmd_species_build,
    "species-check": cmd_species_check,
    "species-borel": cmd_species_borel,
    "triangular": cmd_triangular,
}


def run(command: str, doc: dict, seed: int = 0, max_degree: int | None = None, timing: bool = False) -> dict:
    """Execute the checks of a problem file matching ``command`` (``run`` executes all)."""
    pb = Problem(doc, seed, max_degree)
    checks = doc.get("checks", [])
    if not isinstance(checks, list):
        raise InputError("$.checks: expected a list")
    selected = []
    for k, c in enumerate(checks):
        where = f"$.checks[{k}]"
        if not isinstance(c, dict) or c.get("command") not in HANDLERS:
            raise InputError(f"{where}: expected {{command, args}} with a known command")
        if command in ("run", c["command"]):
            args = c.get("args", {})
            if not isinstance(args, dict):
                raise InputError(f"{where}.args: expected an object")
            expect = c.get("expect")
            if expect is not None and not isinstance(expect, bool):
                raise InputError(f"{where}.expect: expected true or false")
            selected.append((where, c["command"], args, expect))
    if not selected:
        raise InputError(f"$.checks: no check for command {command!r}")
    results = []
    for where, cmd, args, expect in selected:
        start = time.perf_counter()
        try:
            ok, res = HANDLERS[cmd](pb, args, where)
        except InputError:
            raise
        except QHLabError as exc:
            ok, res = False, {"error": type(exc).__name__, "message": str(exc)}
        entry = {"command": cmd, "args": args, "verdict": ok}
        if expect is not None:
            entry["expect"] = expect
        entry["pass"] = ok if expect is None else ok == expect
        entry["result"] = res
        if timing:
            entry["seconds"] = round(time.perf_counter() - start, 3)
        results.append(entry)
    return {
        "report_version": REPORT_VERSION,
        "command": command,
        "seed": seed,
        "max_degree": max_degree,
        "all_pass": all(r["pass"] for r in results),
        "checks": results,
    }


# -- rendering ---------------------------------------------------------------------------

def render_json(report: dict) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False, sort_keys=False) + "\n"


def _fmt(v) -> str:
    return json.dumps(v, ensure_ascii=False, separators=(", ", ": "))


def render_text(report: dict) -> str:
    lines = [f"qhlab report v{report['report_version']} (seed {report['seed']})"]
    for c in report["checks"]:
        tag = "PASS" if c["pass"] else "FAIL"
        note = f" (verdict {str(c['verdict']).lower()}, expected)" if "expect" in c and c["pass"] else ""
        lines.append(f"[{tag}] {c['command']} {_fmt(c['args'])}{note}")
        for k, v in c["result"].items():
            lines.append(f"    {k}: {_fmt(v)}")
    lines.append("all checks passed" if report["all_pass"] else "some checks failed")
    return "\n".join(lines) + "\n"


def _dot_id(x) -> str:
    return json.dumps(str(x), ensure_ascii=False)


def emit_dot(quiver: Quiver | None = None, layers: list | None = None, name: str = "Q") -> str:
    """DOT text for a quiver, or for Loewy layers (one rank per layer)."""
    out = [f"digraph {name} {{"]
    if quiver is not None:
        for v in quiver.vertices:
            out.append(f"  {_dot_id(v)};")
        for lab, s, t in quiver.arrows:
            out.append(f"  {_dot_id(s)} -> {_dot_id(t)} [label={_dot_id(lab)}];")
    if layers is not None:
        ids = []
        for k, row in enumerate(layers):
            ids.append([f"L{k}_{i}" for i in range(len(row))])
            for nid, lab in zip(ids[-1], row):
                out.append(f"  {nid} [label={_dot_id(label_from_json(lab))}];")
            if row:
                out.append("  { rank=same; " + " ".join(ids[-1]) + " }")
        for upper, lower in zip(ids, ids[1:]):
            for u in upper:
                for w in lower:
                    out.append(f"  {u} -> {w};")
    out.append("}")
    return "\n".join(out) + "\n"


def render_dot(report: dict, pb: Problem) -> str:
    parts = []
    for c in report["checks"]:
        res = c["result"]
        if "loewy_layers" in res:
            parts.append(emit_dot(layers=res["loewy_layers"], name="Loewy"))
        elif "algebra" in c["args"]:
            alg = pb.algebra(c["args"]["algebra"])
            parts.append(emit_dot(quiver=alg.meta.get("quiver"), name="Q"))
        elif "species" in c["args"]:
            parts.append(emit_dot(quiver=pb.species(c["args"]["species"]).quiver, name="Q"))
        else:
            parts.append(emit_dot(name="Q"))
    return "".join(parts)


# -- shorthand expansion -------------------------------------------------------------------

def expand_bimodules(doc: dict) -> dict:
    """Replace bimodule shorthands in species by explicit action matrices."""
    pb = Problem(doc)
    out = json.loads(json.dumps(doc))
    for name, obj in pb._section("species").items():
        spec = pb.species(name)
        ab = out["species"][name].get("arrow_bimodules", {})
        for lab, s, t in spec.quiver.arrows:
            m = spec.bimodules[lab]
            c, d = md.sides(m)
            ab[lab] = {
                "dim": m.dim,
                "actions": {
                    "left": [matrix_to_json(md.left_action(m, c.basis(k))) for k in range(c.dim)],
                    "right": [matrix_to_json(md.right_action(m, d.basis(k))) for k in range(d.dim)],
                },
            }
    return out


# -- entry point --------------------------------------------------------------------------

def _load(path: str) -> dict:
    try:
        text = FsPath(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise PresentationSyntaxError(f"{path}: {exc.msg}", exc.lineno, exc.colno) from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qhlab", description="Quasi-hereditary algebras and exact Borel subalgebras over Q.")
    p.add_argument("command", choices=COMMANDS + ["run", "expand-bimodules"])
    p.add_argument("file")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-degree", type=int, default=None)
    p.add_argument("--format", choices=["text", "json", "dot"], default="text")
    p.add_argument("--timing", action="store_true", help="add wall-clock seconds per check (breaks byte-identical output)")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        doc = _load(args.file)
        if args.command == "expand-bimodules":
            sys.stdout.write(render_json(expand_bimodules(doc)))
            return 0
        report = run(args.command, doc, args.seed, args.max_degree, args.timing)
        if args.format == "json":
            sys.stdout.write(render_json(report))
        elif args.format == "dot":
            sys.stdout.write(render_dot(report, Problem(doc, args.seed, args.max_degree)))
        else:
            sys.stdout.write(render_text(report))
    except PresentationSyntaxError as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return 2
    except (InputError, SemanticError) as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return 2
    return 0 if report["all_pass"] else 1


if __name__ == "__main__":
    sys.exit(main())
