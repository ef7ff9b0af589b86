from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qhlab import linalg as la

import oracles

small = st.integers(-3, 3)
rat = st.builds(Fraction, st.integers(-4, 4), st.integers(1, 3))


@st.composite
def matrices(draw, max_r=5, max_c=5, elem=small):
    r = draw(st.integers(1, max_r))
    c = draw(st.integers(1, max_c))
    rows = draw(st.lists(st.lists(elem, min_size=c, max_size=c), min_size=r, max_size=r))
    return la.matrix(rows, c)


@settings(max_examples=60, deadline=None)
@given(matrices(elem=rat))
def test_rank_matches_sympy(m):
    assert la.rank(m) == oracles.rank(m)


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_kernel_is_annihilated_and_complete(m):
    k = la.kernel(m)
    assert k.dim == oracles.nullity(m)
    for v in k.vectors():
        assert la.is_zero(m * v)


@settings(max_examples=40, deadline=None)
@given(matrices())
def test_rref_pivots_are_unit_columns(m):
    r, piv = la.rref(m)
    for i, p in enumerate(piv):
        for k in range(m.nrows()):
            assert r[k, p] == (1 if k == i else 0)
    assert len(piv) == oracles.rank(m)


@settings(max_examples=40, deadline=None)
@given(matrices(), st.lists(small, min_size=5, max_size=5))
def test_solve_consistent_systems(m, xs):
    x = la.column(xs[: m.ncols()])
    b = m * x
    sol = la.solve(m, b)
    assert sol is not None and m * sol == b


def test_solve_inconsistent_returns_none():
    m = la.matrix([[1, 1], [2, 2]])
    assert la.solve(m, la.column([1, 0])) is None


@settings(max_examples=40, deadline=None)
@given(matrices(max_r=4, max_c=4), matrices(max_r=4, max_c=4))
def test_intersection_dimension_formula(a, b):
    n = 4
    pad = lambda m: la.hstack([m.transpose(), la.zeros(m.ncols(), n - m.nrows())]).transpose() if m.nrows() < n else m
    s, t = la.image(pad(a)), la.image(pad(b))
    both = s + t
    assert s.intersect(t).dim == s.dim + t.dim - both.dim
    for v in s.intersect(t).vectors():
        assert s.contains(v) and t.contains(v)


@settings(max_examples=40, deadline=None)
@given(matrices(max_r=5, max_c=3))
def test_quotient_maps_section_and_kernel(m):
    s = la.image(m)
    pi, sigma = s.quotient_maps()
    assert pi * sigma == la.identity(m.nrows() - s.dim)
    assert la.is_zero(pi * s.columns()) if s.dim else True


def test_subspace_canonical_equality():
    v1, v2 = la.column([1, 2, 0]), la.column([0, 1, 1])
    s = la.Subspace.span([v1, v2], 3)
    t = la.Subspace.span([v1 + v2, v1 - v2 * 3], 3)
    assert s == t and hash(s) == hash(t)


def test_kron_index_convention():
    a = la.matrix([[1, 2], [3, 4]])
    b = la.matrix([[0, 1], [1, 0]])
    k = la.kron(a, b)
    assert k[1, 0] == 1 and k[2, 3] == 4 and k[3, 3] == 0


def test_left_inverse_on_image():
    m = la.matrix([[1, 0], [2, 1], [0, 3]])
    assert la.left_inverse_on_image(m) * m == la.identity(2)
    with pytest.raises(ValueError):
        la.left_inverse_on_image(la.matrix([[1, 2], [2, 4]]))


def test_scalar_coercion():
    assert la.scalar("3/6") == la.scalar(Fraction(1, 2))
    with pytest.raises(TypeError):
        la.scalar(0.5)
