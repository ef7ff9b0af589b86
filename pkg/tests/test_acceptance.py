"""Acceptance suite: one check per criterion, each printing a single PASS or FAIL line.

Run under pytest (``pytest tests/test_acceptance.py -v``) or directly
(``python tests/test_acceptance.py``) for just the summary lines.
"""

import json
import subprocess
import sys
from pathlib import Path

import pytest

from qhlab import modules as md
from qhlab.algebra import tensor_algebras
from qhlab.cli import Problem
from qhlab.constructions import (
    TriangularSpec,
    predict_tensor_regular,
    species_algebra,
    species_borel,
    species_data,
    species_qh_criterion,
    species_standard_oracle,
    tensor_borel,
    triangular_borel,
    triangular_matrix,
)
from qhlab.homology import (
    BorelEmbedding,
    check_exact_borel,
    ext_table,
    is_strong,
    minimal_resolution,
    regularity_report,
    standard_family,
)
from qhlab.order import SimpleOrder
from qhlab.presentation import Path as QPath
from qhlab.qh import DeltaSystem, has_delta_filtration, heredity_chain, is_quasi_hereditary, tensor_order

sys.path.insert(0, str(Path(__file__).resolve().parent))
from conftest import EXAMPLES, load_example, base_algebra, span_borel  # noqa: E402


def sizes(layers):
    return [sum(c.values()) for c in layers]


def base_tensor():
    a, o = base_algebra()
    aa = tensor_algebras(a, a)
    return a, o, aa, DeltaSystem(aa, tensor_order(o, o))


def criterion_1():
    """Base example: dimensions, Loewy shapes, both deciders, strong regular Borel."""
    a, o = base_algebra()
    assert a.dim == 5
    assert [dict(c) for c in md.loewy_layers(md.projective_module(a, 1))] == [{1: 1}, {2: 1}, {1: 1}]
    assert [dict(c) for c in md.loewy_layers(md.projective_module(a, 2))] == [{2: 1}, {1: 1}]
    ds = DeltaSystem(a, o)
    assert (ds.standard(1).dim, ds.standard(2).dim) == (1, 2)
    assert is_quasi_hereditary(a, o).ok and heredity_chain(a, o).ok
    be = span_borel(a, o, ["e1", "e2", "α"])
    assert check_exact_borel(be).ok and is_strong(be) and regularity_report(be).regular


def criterion_2():
    """Tensor example: standards, Loewy layers, Hom and Ext tables, resolutions."""
    _, _, aa, ds = base_tensor()
    assert aa.dim == 25
    assert [ds.standard(l).dim for l in aa.labels] == [1, 2, 2, 4]
    assert sizes(md.loewy_layers(md.projective_module(aa, (1, 1)))) == [1, 2, 3, 2, 1]
    fam = standard_family(ds)
    homs = {(i, j): md.hom_dim(fam[i], fam[j]) for i in fam for j in fam if i != j}
    nonzero = {k: v for k, v in homs.items() if v}
    assert nonzero == {
        ((1, 1), (1, 2)): 1,
        ((1, 1), (2, 1)): 1,
        ((1, 2), (2, 2)): 1,
        ((2, 1), (2, 2)): 1,
        ((1, 1), (2, 2)): 1,
    }
    table = ext_table(fam)
    ext1 = {(i, j): table.dim(1, i, j) for i in fam for j in fam if table.dim(1, i, j)}
    assert ext1 == {
        ((1, 1), (1, 2)): 1,
        ((1, 1), (2, 1)): 1,
        ((1, 2), (2, 2)): 1,
        ((2, 1), (2, 2)): 1,
        ((1, 1), (2, 2)): 2,
    }
    assert table.total(2) == 1
    terms = {l: [sorted(t) for t in minimal_resolution(fam[l]).term_labels()] for l in fam}
    assert terms == {
        (1, 1): [[(1, 1)], [(1, 2), (2, 1)], [(2, 2)]],
        (1, 2): [[(1, 2)], [(2, 2)]],
        (2, 1): [[(2, 1)], [(2, 2)]],
        (2, 2): [[(2, 2)]],
    }


def criterion_3():
    """Tensor Borel is not regular; the radical of the top standard has no costandard filtration."""
    a, o, aa, ds = base_tensor()
    be = span_borel(a, o, ["e1", "e2", "α"])
    bb, _ = tensor_borel(be, be)
    assert not regularity_report(bb).regular
    d22 = ds.standard((2, 2))
    rad, _ = md.restrict(d22, md.radical_subspace(d22))
    assert has_delta_filtration(rad, ds, "nabla") is None


def tensor_corpus():
    doc = load_example("tensor_corpus.json")
    pb = Problem(doc)
    for c in doc["checks"]:
        x, y = c["args"]["borels"]
        yield c["args"]["algebras"], pb.embedding(x), pb.embedding(y)


def criterion_4():
    """Tensor of exact Borels is exact Borel, strong iff both factors are strong."""
    pairs = list(tensor_corpus())
    assert len(pairs) >= 6
    # base example, directed, opposite-directed and semisimple algebras all occur
    assert {"A", "kQ", "kQop", "K2"} <= {n for names, _, _ in pairs for n in names}
    for _, b1, b2 in pairs:
        out, strong = tensor_borel(b1, b2)
        assert check_exact_borel(out).ok
        assert strong == (is_strong(b1) and is_strong(b2)) == is_strong(out)


def criterion_5():
    """Direct regularity of the tensor Borel matches the case analysis, with every case witnessed."""
    cases = set()
    for _, b1, b2 in tensor_corpus():
        if not (regularity_report(b1).regular and regularity_report(b2).regular):
            continue
        out, _ = tensor_borel(b1, b2)
        pred, case = predict_tensor_regular(b1.big, b1.order, b2.big, b2.order)
        assert regularity_report(out).regular == pred
        cases.add(case)
    assert {"a", "b", "c", "d", None} <= cases


def criterion_6():
    """Künneth: Ext of tensor standards is the convolution of the factor tables."""
    a, o, _, ds = base_tensor()
    small = ext_table(standard_family(DeltaSystem(a, o)))
    big = ext_table(standard_family(ds))
    for x in a.labels:
        for y in a.labels:
            for x2 in a.labels:
                for y2 in a.labels:
                    for n in range(big.max_degree + 1):
                        rhs = sum(small.dim(i, x, x2) * small.dim(n - i, y, y2) for i in range(n + 1))
                        assert big.dim(n, (x, y), (x2, y2)) == rhs


SPECIES = ["species_three_vertex.json", "species_a3_counterexample.json", "species_diamond.json", "species_final.json"]


def criterion_7():
    """Species radical formula and standard-module oracle agreement."""
    for name in SPECIES:
        spec = Problem(load_example(name)).species("S")
        alg, order = species_algebra(spec)
        data = species_data(spec)
        formula = sum(spec.algebras[v].radical.dim for v in spec.quiver.vertices)
        formula += sum(data.dims[p] for p in data.paths if p.arrows)
        assert alg.radical.dim == formula
        assert len(alg.idempotents) == sum(len(spec.algebras[v].idempotents) for v in spec.quiver.vertices)
        ds = DeltaSystem(alg, order)
        for v, lab in alg.labels:
            assert md.is_isomorphic(species_standard_oracle(spec, v, lab), ds.standard((v, lab)))


def criterion_8():
    """Three-vertex counterexample: one-dimensional length-two block, no standard filtration."""
    spec = Problem(load_example("species_a3_counterexample.json")).species("S")
    alg, order = species_algebra(spec)
    data = species_data(spec)
    long = [p for p in data.paths if len(p.arrows) == 2]
    assert [p.name for p in long] == ["βα"] and data.dims[long[0]] == 1
    crit = species_qh_criterion(spec)
    assert crit.filtration_ok is False and crit.filtration_failure == "βα"
    assert has_delta_filtration(md.regular_module(alg), DeltaSystem(alg, order)) is None


def criterion_9():
    """Diamond species: dimension 10, four simples, quasi-hereditary."""
    spec = Problem(load_example("species_diamond.json")).species("S")
    alg, order = species_algebra(spec)
    assert alg.dim == 10 and len(alg.labels) == 4
    assert is_quasi_hereditary(alg, order).ok


def criterion_10():
    """Final species example: dimension 7, exact Borel, regularity recorded in a byte-stable golden report."""
    pb = Problem(load_example("species_final.json"))
    spec = pb.species("S")
    assert species_algebra(spec)[0].dim == 7
    sb = species_borel(spec, pb.species_borels("S", "$"))
    assert check_exact_borel(sb.embedding).ok
    golden = json.loads((EXAMPLES / "golden" / "species_final.report.json").read_text(encoding="utf-8"))
    recorded = next(c for c in golden["checks"] if c["command"] == "species-borel")["result"]["regular"]
    assert regularity_report(sb.embedding).regular == recorded
    cmd = [sys.executable, "-m", "qhlab.cli", "run", str(EXAMPLES / "species_final.json"), "--format", "json"]
    runs = [subprocess.run(cmd, capture_output=True).stdout for _ in range(2)]
    assert runs[0] == runs[1] == (EXAMPLES / "golden" / "species_final.report.json").read_bytes()


def criterion_11():
    """Triangular Borels are exact on at least three instances; the ring equals the species algebra."""
    doc = load_example("triangular.json")
    pb = Problem(doc)
    passed = 0
    for k, c in enumerate(doc["checks"]):
        args = c["args"]
        if "borels" not in args:
            continue
        a1, a2 = pb.algebra(args["a1"]), pb.algebra(args["a2"])
        o1 = pb._order_from(args["o1"], a1, "$") if "o1" in args else pb.order(args["a1"])
        o2 = pb._order_from(args["o2"], a2, "$") if "o2" in args else pb.order(args["a2"])
        m = pb.bimodule(args["bimodule"], a2, a1, "$")
        t = TriangularSpec(a1, o1, a2, o2, m)
        alg, order, spec = triangular_matrix(t)
        fresh, forder = species_algebra(t.species())
        assert alg.lmats == fresh.lmats and alg.labels == fresh.labels and alg.unit == fresh.unit
        e1, e2 = (BorelEmbedding(pb.embedding(n).emb, oo) for n, oo in zip(args["borels"], (o1, o2)))
        sb = triangular_borel(t, e1, e2)
        assert check_exact_borel(sb.embedding).ok
        assert QPath(1, 2, ("m",)) in sb.witnesses or m.dim == 0
        passed += 1
    assert passed >= 3


def criterion_12():
    """The two quasi-heredity deciders agree on every corpus pair, including failing orders."""
    doc = load_example("qh_corpus.json")
    pb = Problem(doc)
    count, failing = 0, 0
    for c in doc["checks"]:
        args = c["args"]
        a = pb.algebra(args["algebra"])
        o = pb._order_from(args["order"], a, "$") if "order" in args else pb.order(args["algebra"])
        v1, v2 = is_quasi_hereditary(a, o).ok, heredity_chain(a, o).ok
        assert v1 == v2, args
        count += 1
        failing += not v1
    assert count >= 20 and failing >= 1


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
            criterion_7, criterion_8, criterion_9, criterion_10, criterion_11, criterion_12]


def evaluate(fn):
    n = fn.__name__.split("_")[1]
    summary = fn.__doc__.strip().splitlines()[0]
    try:
        fn()
    except Exception as exc:  # noqa: BLE001
        return False, f"criterion {n:>2}: FAIL  {summary}  ({type(exc).__name__}: {exc})"
    return True, f"criterion {n:>2}: PASS  {summary}"


@pytest.mark.parametrize("fn", CRITERIA, ids=[f.__name__ for f in CRITERIA])
def test_criterion(fn, capsys):
    ok, line = evaluate(fn)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [evaluate(fn) for fn in CRITERIA]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
