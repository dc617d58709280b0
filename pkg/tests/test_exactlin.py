from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from koszulkit import exactlin as el

import oracles

small = st.integers(-3, 3).map(Fraction)


def matrices(max_rows=6, max_cols=6):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


@given(matrices())
def test_rank_matches_oracle_and_transpose(a):
    m = el.Matrix.from_dense(a)
    cols = [{i: a[i][j] for i in range(len(a)) if a[i][j]} for j in range(len(a[0]))]
    assert el.rank(m) == oracles.rank(cols)
    assert el.rank(m) == el.rank(m.transpose())


@given(matrices())
def test_rank_nullity(a):
    m = el.Matrix.from_dense(a)
    r, ker, img = el.rank_kernel_image(m)
    assert r + ker.dim == m.cols
    assert img.dim == r
    for v in ker.vectors():
        assert not m.apply(v)


@given(st.integers(1, 6).flatmap(lambda n: st.tuples(
    st.just(n),
    st.lists(st.dictionaries(st.integers(0, n - 1), small, max_size=n), max_size=4),
    st.lists(st.dictionaries(st.integers(0, n - 1), small, max_size=n), max_size=4))))
def test_subspace_dimension_formula(data):
    n, xs, ys = data
    a, b = el.Subspace.span(n, xs), el.Subspace.span(n, ys)
    s, i = el.subspace_sum(a, b), el.subspace_intersect(a, b)
    assert s.dim + i.dim == a.dim + b.dim
    assert i <= a and i <= b and a <= s and b <= s


@given(matrices(5, 5))
def test_invert_square(a):
    n = min(len(a), len(a[0]))
    sq = [row[:n] for row in a[:n]]
    m = el.Matrix.from_dense(sq)
    if el.rank(m) < n:
        return
    assert (el.invert(m) @ m) == el.Matrix.identity(n)


def test_chain_complex_rejects_d_squared():
    d1 = el.Matrix.from_dense([[1]])
    d2 = el.Matrix.from_dense([[1]])
    cx = el.ChainComplexData({0: 1, 1: 1, 2: 1}, {1: d1, 2: d2})
    with pytest.raises(el.ChainComplexError):
        cx.check()


def test_shape_mismatch():
    with pytest.raises(el.DimensionMismatchError):
        el.ChainComplexData({0: 2, 1: 1}, {1: el.Matrix.from_dense([[1, 0]])})


def test_homology_of_a_circle():
    # two vertices, two edges
    d1 = el.Matrix.from_dense([[-1, 1], [1, -1]])
    h = el.homology(el.ChainComplexData({0: 2, 1: 2}, {1: d1}))
    assert h.betti == {0: 1, 1: 1}
    assert h.euler() == 0


@settings(max_examples=25, deadline=None)
@given(matrices(5, 5))
def test_prime_field_rank_agrees_on_small_integers(a):
    from koszulkit import _modp
    m = el.Matrix.from_dense(a)
    assert _modp.rank_modp(m) == el.rank(m)
