import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qhlab.errors import InvalidRelation, PresentationSyntaxError, SemanticError, TruncationNotSaturated
from qhlab.presentation import (
    PresentationSpec,
    Quiver,
    Relation,
    bound_quiver_algebra,
    enumerate_paths,
    parse_presentation,
    path_algebra,
    path_from_word,
    serialize_presentation,
)

import oracles
from conftest import BASE

BASE_Q = Quiver((1, 2), (("α", 1, 2), ("β", 2, 1)))
DIAMOND = Quiver((1, 2, 3, 4), (("a", 4, 1), ("b", 4, 2), ("c", 1, 3), ("d", 2, 3)))


def names(paths):
    return [p.name for p in paths]


def test_a2_paths_stop_at_one_arrow():
    q = Quiver((1, 2), (("α", 1, 2),))
    assert names(enumerate_paths(q, 5)) == ["e1", "e2", "α"]


def test_cyclic_quiver_paths_up_to_two():
    assert sorted(names(enumerate_paths(BASE_Q, 2))) == sorted(["e1", "e2", "α", "β", "αβ", "βα"])


def test_diamond_has_ten_paths():
    assert len(enumerate_paths(DIAMOND, 2)) == 10


@settings(max_examples=40, deadline=None)
@given(
    st.integers(1, 4).flatmap(
        lambda n: st.tuples(
            st.just(n),
            st.lists(st.tuples(st.integers(1, n), st.integers(1, n)), max_size=4),
        )
    ),
    st.integers(0, 4),
)
def test_path_count_matches_dynamic_programming(data, max_len):
    n, pairs = data
    arrows = tuple((f"x{k}", s, t) for k, (s, t) in enumerate(pairs))
    q = Quiver(tuple(range(1, n + 1)), arrows)
    assert len(enumerate_paths(q, max_len)) == oracles.count_paths(q.vertices, arrows, max_len)


def test_path_count_monotone_and_stabilizes_iff_acyclic():
    counts = [len(enumerate_paths(DIAMOND, k)) for k in range(6)]
    assert counts == sorted(counts) and counts[-1] == counts[-2]
    cyc = [len(enumerate_paths(BASE_Q, k)) for k in range(6)]
    assert all(a < b for a, b in zip(cyc, cyc[1:]))
    assert DIAMOND.is_acyclic() and not BASE_Q.is_acyclic()


def test_word_order_is_right_to_left():
    p = path_from_word(BASE_Q, ["β", "α"])
    assert (p.source, p.target) == (1, 1)
    assert p.vertices(BASE_Q) == [1, 2, 1]
    with pytest.raises(InvalidRelation):
        path_from_word(Quiver((1, 2, 3), (("x", 1, 2), ("y", 2, 3))), ["x", "y"])


def test_base_algebra_basis():
    spec, order = parse_presentation(json.dumps(BASE))
    a = bound_quiver_algebra(spec)
    assert a.dim == 5
    assert a.basis_labels == ["e1", "e2", "α", "β", "βα"]
    assert order.lt(1, 2)


def test_a2_and_diamond_dimensions():
    assert path_algebra(Quiver((1, 2), (("α", 1, 2),))).dim == 3
    spec = PresentationSpec(DIAMOND, (), 3)
    assert bound_quiver_algebra(spec).dim == 10


def test_commutativity_relation_reduces_dimension():
    spec = PresentationSpec(DIAMOND, (Relation(((1, ("c", "a")), (-1, ("d", "b")))),), 3)
    a = bound_quiver_algebra(spec)
    assert a.dim == 9
    # the two long paths become equal, the smaller one survives
    assert "ca" in a.basis_labels and "db" not in a.basis_labels


def test_truncation_not_saturated():
    obj = dict(BASE, relations=[], degree_bound=3)
    with pytest.raises(TruncationNotSaturated):
        bound_quiver_algebra(parse_presentation(json.dumps(obj))[0])


def test_empty_relation_list_is_valid():
    obj = {"quiver": {"vertices": [1, 2], "arrows": [["a", 1, 2]]}, "relations": []}
    spec, _ = parse_presentation(json.dumps(obj))
    assert spec.relations == () and bound_quiver_algebra(spec).dim == 3


def test_cyclic_quiver_requires_degree_bound():
    obj = dict(BASE)
    obj.pop("degree_bound")
    with pytest.raises(SemanticError):
        parse_presentation(json.dumps(obj))


@pytest.mark.parametrize(
    "mutate",
    [
        lambda o: o["quiver"]["arrows"].append(["γ", 1, 9]),
        lambda o: o.update(relations=[[[1, ["δ"]]]]),
        lambda o: o.update(relations=[[[1, ["α"]], [1, ["β"]]]]),
        lambda o: o.update(order=[[1, 2], [2, 1]]),
        lambda o: o.update(degree_bound=0),
    ],
)
def test_semantic_errors(mutate):
    obj = json.loads(json.dumps(BASE))
    mutate(obj)
    with pytest.raises(SemanticError):
        parse_presentation(json.dumps(obj))


def test_syntax_error_has_location():
    text = '{\n  "quiver": {"vertices": [1, 2],,}\n}'
    with pytest.raises(PresentationSyntaxError) as info:
        parse_presentation(text)
    assert info.value.line == 2 and info.value.column > 1


def test_round_trip():
    spec, order = parse_presentation(json.dumps(BASE))
    spec2, order2 = parse_presentation(serialize_presentation(spec, order))
    assert spec2 == spec
    assert sorted(order2.pairs()) == sorted(order.pairs())
