import itertools
import json

import pytest

from qhlab import modules as md
from qhlab.algebra import semisimple_algebra, tensor_algebras
from qhlab.order import SimpleOrder
from qhlab.presentation import bound_quiver_algebra, parse_presentation
from qhlab.qh import (
    DeltaSystem,
    has_delta_filtration,
    heredity_chain,
    is_directed,
    is_quasi_hereditary,
    tensor_order,
)

import oracles
from conftest import NAT, OPP, kq2


def algebra(obj):
    spec, order = parse_presentation(json.dumps(obj))
    return bound_quiver_algebra(spec), order


A3 = {"quiver": {"vertices": [1, 2, 3], "arrows": [["x", 1, 2], ["y", 2, 3]]}}
A3_RAD2 = dict(A3, relations=[[[1, ["y", "x"]]]], degree_bound=2)
CYC3 = {
    "quiver": {"vertices": [1, 2, 3], "arrows": [["a", 1, 2], ["b", 2, 3], ["c", 3, 1]]},
    "relations": [[[1, ["b", "a"]]], [[1, ["c", "b"]]], [[1, ["a", "c"]]]],
    "degree_bound": 2,
}
KRON = {"quiver": {"vertices": [1, 2], "arrows": [["a", 1, 2], ["b", 1, 2]]}}


def base_tensor(base):
    a, o = base
    return tensor_algebras(a, a), tensor_order(o, o)


def test_base_standards_and_costandards(base):
    a, o = base
    ds = DeltaSystem(a, o)
    assert [ds.standard(l).dim for l in a.labels] == [1, 2]
    assert md.is_isomorphic(ds.standard(1), md.simple_module(a, 1))
    assert ds.standard(2).actions == md.projective_module(a, 2).actions
    assert [ds.costandard(l).dim for l in a.labels] == [1, 2]


def test_standard_dims_match_oracle(base):
    a, o = base
    aa, oo = base_tensor(base)
    for alg, order in [(a, o), (a, o.reversed()), (aa, oo), (algebra(CYC3)[0], SimpleOrder([1, 2, 3]))]:
        ds = DeltaSystem(alg, order)
        for lab in alg.labels:
            assert ds.standard(lab).dim == oracles.standard_dim(alg, order, lab)


def test_tensor_standards_and_costandard(base):
    aa, oo = base_tensor(base)
    ds = DeltaSystem(aa, oo)
    assert [ds.standard(l).dim for l in aa.labels] == [1, 2, 2, 4]
    n22 = ds.costandard((2, 2))
    assert [sum(c.values()) for c in md.loewy_layers(n22)] == [1, 2, 1]
    assert ds.standard((2, 2)).dim == md.projective_module(aa, (2, 2)).dim == 4
    assert sorted(md.composition_factors(ds.standard((2, 2)))) == [(1, 1), (1, 2), (2, 1), (2, 2)]


def test_costandard_is_dual_of_opposite_standard(base):
    a, o = base
    ds = DeltaSystem(a, o)
    for lab in a.labels:
        assert md.is_isomorphic(ds.costandard(lab), md.dual(DeltaSystem(a.opposite(), o).standard(lab)))
        # and the other way round
        assert md.is_isomorphic(md.dual(ds.costandard(lab)), ds.opposite().standard(lab))


def test_minimal_costandard_is_simple(base):
    a, o = base
    assert md.is_isomorphic(DeltaSystem(a, o).costandard(1), md.simple_module(a, 1))


def test_maximal_label_standard_is_projective(base):
    aa, oo = base_tensor(base)
    ds = DeltaSystem(aa, oo)
    assert ds.standard((2, 2)).actions == md.projective_module(aa, (2, 2)).actions


def test_filtration_of_standard_is_single_step(base):
    a, o = base
    ds = DeltaSystem(a, o)
    f = has_delta_filtration(ds.standard(2), ds)
    assert f.labels() == [(2, 1)]


def test_filtration_accounting(base):
    a, o = base
    v = is_quasi_hereditary(a, o)
    assert v.ok
    total = sum(v.delta_system.standard(l).dim * k for l, k in v.filtration.multiplicity().items())
    assert total == a.dim
    assert v.filtration.labels() == [(2, 2), (1, 1)]


def test_nabla_filtration_of_injectives(base):
    a, o = base
    ds = DeltaSystem(a, o)
    inj = md.dual(md.regular_module(a.opposite()))
    f = has_delta_filtration(inj, ds, "nabla")
    assert f is not None
    assert sum(ds.costandard(l).dim * k for l, k in f.labels()) == a.dim
    # the chain of submodules grows to the whole module
    dims = [s.dim for s, _, _ in f.steps]
    assert dims == sorted(dims) and dims[-1] == a.dim


def test_radical_of_top_standard_has_no_nabla_filtration(base):
    aa, oo = base_tensor(base)
    ds = DeltaSystem(aa, oo)
    d22 = ds.standard((2, 2))
    rad, _ = md.restrict(d22, md.radical_subspace(d22))
    assert rad.dim == 3
    assert has_delta_filtration(rad, ds, "nabla") is None


def test_base_deciders(base):
    a, o = base
    assert is_quasi_hereditary(a, o).ok
    h = heredity_chain(a, o)
    assert h.ok and h.chain == [(2, 4), (1, 1)]
    rev = is_quasi_hereditary(a, o.reversed())
    assert not rev.ok and rev.end_dims[1] == 2
    assert not heredity_chain(a, o.reversed()).ok


def test_tensor_is_quasi_hereditary(base):
    aa, oo = base_tensor(base)
    assert is_quasi_hereditary(aa, oo).ok
    assert len(heredity_chain(aa, oo).chain) == 4


def test_semisimple_chain_length():
    k3 = semisimple_algebra(3)
    for pairs in oracles.all_posets([1, 2, 3]):
        h = heredity_chain(k3, SimpleOrder([1, 2, 3], pairs))
        assert h.ok and len(h.chain) == 3


@pytest.mark.parametrize("obj", [A3, A3_RAD2, CYC3, KRON], ids=["A3", "A3rad2", "cyc3", "kronecker"])
def test_deciders_agree_on_every_poset(obj):
    a, _ = algebra(obj)
    for pairs in oracles.all_posets(a.labels):
        o = SimpleOrder(a.labels, pairs)
        assert is_quasi_hereditary(a, o).ok == heredity_chain(a, o).ok, pairs


def test_deciders_agree_on_base_posets(base):
    a, _ = base
    verdicts = {}
    for pairs in oracles.all_posets(a.labels):
        o = SimpleOrder(a.labels, pairs)
        verdicts[tuple(pairs)] = is_quasi_hereditary(a, o).ok
        assert verdicts[tuple(pairs)] == heredity_chain(a, o).ok
    # only 1 < 2 works; the discrete order is not adapted
    assert verdicts == {(): False, ((1, 2),): True, ((2, 1),): False}


def test_hereditary_algebras_are_qh_for_every_total_order():
    for obj in (A3, KRON):
        a, _ = algebra(obj)
        for perm in itertools.permutations(a.labels):
            pairs = list(zip(perm, perm[1:]))
            assert is_quasi_hereditary(a, SimpleOrder(a.labels, pairs)).ok, perm


def test_hereditary_algebra_rejects_non_adapted_partial_order():
    # 1 -> 2 -> 3 with only 3 < 1: P(3) has factor 2, incomparable to 3
    a, _ = algebra(A3)
    o = SimpleOrder(a.labels, [(3, 1)])
    assert not is_quasi_hereditary(a, o).ok and not heredity_chain(a, o).ok


def test_directedness(base):
    a, o = base
    kq = kq2()
    assert is_directed(kq, NAT)
    assert not is_directed(kq, OPP) and is_directed(kq.opposite(), OPP)
    assert not is_directed(a, o)
    ds = DeltaSystem(kq, NAT)
    assert all(ds.standard(l).dim == 1 for l in kq.labels)


def test_tensor_order_shape():
    o = tensor_order(NAT, NAT)
    assert o.minimal() == [(1, 1)] and o.maximal() == [(2, 2)]
    assert not o.lt((1, 2), (2, 1)) and not o.lt((2, 1), (1, 2))
    single = tensor_order(NAT, SimpleOrder([1]))
    assert sorted(single.pairs()) == [((1, 1), (2, 1))]
