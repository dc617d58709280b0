from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from koszulkit import symgroup as sg
from koszulkit import trees as tr
from koszulkit.trees import GeneratorSymbol

import oracles

GENS = [GeneratorSymbol.regular("m"), GeneratorSymbol.trivial("mu"), GeneratorSymbol.sign("br"),
        GeneratorSymbol.trivial("t", arity=3)]
SIG = tr.signature(GENS)


@st.composite
def trees(draw, max_leaves=6):
    n = draw(st.integers(1, max_leaves))
    labels = draw(st.permutations(list(range(1, n + 1))))

    def build(ls):
        if len(ls) == 1:
            return ls[0]
        g = draw(st.sampled_from([g for g in GENS if g.arity <= len(ls)]))
        cuts = sorted(draw(st.lists(st.integers(1, len(ls) - 1), min_size=g.arity - 1,
                                    max_size=g.arity - 1, unique=True)))
        parts, prev = [], 0
        for c in cuts + [len(ls)]:
            parts.append(ls[prev:c])
            prev = c
        j = draw(st.integers(0, g.dim - 1))
        return (g.name, j, tuple(build(p) for p in parts))

    return build(labels)


perms = st.integers(1, 5).flatmap(lambda n: st.permutations(list(range(1, n + 1))).map(tuple))


@given(trees())
def test_encode_parse_round_trip(t):
    assert tr.parse_tree(tr.encode_tree(t, SIG), SIG) == t


@given(trees())
def test_canonical_form_is_idempotent(t):
    x = tr.canonicalize(t, SIG)
    assert all(tr.is_canonical(s) for s in x.terms)
    again = tr.element(SIG, x.terms) if x.terms else x
    assert again == x


@given(trees(5), st.data())
def test_symmetric_action_is_an_action(t, data):
    x = tr.canonicalize(t, SIG)
    n = x.arity
    s = tuple(data.draw(st.permutations(list(range(1, n + 1)))))
    u = tuple(data.draw(st.permutations(list(range(1, n + 1)))))
    lhs = tr.apply_permutation(tr.apply_permutation(x, s), u)
    assert lhs == tr.apply_permutation(x, sg.compose(u, s))


@given(trees(3), trees(3), trees(3), st.data())
def test_sequential_grafting_axiom(a, b, c, data):
    x, y, z = (tr.canonicalize(t, SIG) for t in (a, b, c))
    i = data.draw(st.integers(1, x.arity))
    j = data.draw(st.integers(i, i + y.arity - 1))
    assert tr.graft(tr.graft(x, i, y), j, z) == tr.graft(x, i, tr.graft(y, j - i + 1, z))


@given(trees(3), trees(3), trees(3), st.data())
def test_parallel_grafting_axiom(a, b, c, data):
    x, y, z = (tr.canonicalize(t, SIG) for t in (a, b, c))
    if x.arity < 2:
        return
    i, j = sorted(data.draw(st.lists(st.integers(1, x.arity), min_size=2, max_size=2, unique=True)))
    lhs = tr.graft(tr.graft(x, j, z), i, y)
    rhs = tr.graft(tr.graft(x, i, y), j + y.arity - 1, z)
    assert lhs == rhs


@given(perms, perms)
def test_sign_is_multiplicative(p, q):
    if len(p) != len(q):
        return
    assert sg.sign(sg.compose(p, q)) == sg.sign(p) * sg.sign(q)
    assert sg.compose(p, sg.inverse(p)) == sg.identity(len(p))


def test_sign_representation():
    x = tr.element(SIG, {("br", 0, (1, 2)): 1})
    assert tr.apply_permutation(x, (2, 1)) == x.scale(-1)
    y = tr.element(SIG, {("mu", 0, (1, 2)): 1})
    assert tr.apply_permutation(y, (2, 1)) == y


def test_regular_representation_swaps_basis():
    x = tr.element(SIG, {("m", 0, (2, 1)): 1})
    assert x.terms == {("m", 1, (1, 2)): Fraction(1)}


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_free_operad_counts(n):
    mu = GeneratorSymbol.trivial("mu")
    assert len(tr.enumerate_free_basis([mu], n)) == oracles.free_symmetric_binary(n)


@pytest.mark.parametrize("text,err", [
    ("m(1, 2", tr.TreeStructureError),
    ("m(1, 2, 3)", tr.ArityMismatchError),
    ("q(1, 2)", tr.TreeStructureError),
    ("m(1 2)", tr.TreeStructureError),
    ("m#5(1, 2)", tr.TreeStructureError),
    ("", tr.TreeStructureError),
])
def test_parse_errors(text, err):
    with pytest.raises(err):
        tr.parse_tree(text, SIG)


def test_bad_leaf_labels():
    with pytest.raises(tr.TreeStructureError):
        tr.canonicalize(("mu", 0, (1, 3)), SIG)


def test_explicit_matrices_checked():
    with pytest.raises(tr.SymmetryError):
        GeneratorSymbol.from_matrices("f", 2, {(2, 1): [[2]]})
    g = GeneratorSymbol.from_matrices("f", 2, {(2, 1): [[0, 1], [1, 0]]})
    assert g.dim == 2 and g.kind == "explicit"
