from fractions import Fraction

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from koszulkit import algebra as al
from koszulkit import presets as ps

import oracles
from helpers import AS_WORDS, algebra, coalgebra, dual_algebra

W = 4


def _as_pres(ngens, rels, W, name="r"):
    names = "xyz"[:ngens]
    terms = [[(Fraction(c), "m", 0, (names[a], names[b])) for (a, b), c in r.items()] for r in rels]
    return al.AlgebraPresentation(ps.load_preset("as", W + 1), [(g, 0) for g in names], terms, W, name)


@pytest.mark.parametrize("name", sorted(AS_WORDS))
def test_as_examples_against_tensor_oracle(name):
    g, rels = AS_WORDS[name]
    ref = oracles.QuadraticAlgebra(g, rels, W + 1)
    # internal weight w is w + 1 letters
    assert algebra(name, W).dims() == ref.dims()[1:]
    assert dual_algebra(name, W).dims() == ref.dual().dims()[1:]
    assert coalgebra(name, W).dims() == [len(ref.coalgebra(n)) for n in range(1, W + 2)]


def test_commutative_examples():
    # S(x, y)/(x²) has monomials y^b and x·y^b in every degree
    assert algebra("com-x2", W).dims() == [2] * (W + 1)
    assert algebra("com-free", W).dims() == [n + 2 for n in range(W + 1)]
    # Com^! = Lie: free Lie algebra on the dual generators modulo the orthogonal
    assert dual_algebra("com-x2", W).dims() == [2, 1, 0, 0, 0]


def test_abelian_lie_examples():
    assert algebra("lie-ab1", W).dims() == [1, 0, 0, 0, 0]
    assert algebra("lie-ab2", W).dims() == [2, 0, 0, 0, 0]
    # the dual is free graded-commutative on odd letters: an exterior algebra
    assert dual_algebra("lie-ab2", W).dims() == [2, 1, 0, 0, 0]
    assert dual_algebra("lie-ab1", W).dims() == [1, 0, 0, 0, 0]


def test_module_coalgebra_dims():
    # weight 0 holds the module generator, then the exterior coalgebra of V
    assert coalgebra("module", W).dims() == [1, 2, 1, 0, 0]


@pytest.mark.parametrize("name", list(ps.EXAMPLES))
def test_varkappa_maurer_cartan(name):
    assert al.mc_check_varkappa(coalgebra(name, W)).zero


@pytest.mark.parametrize("name", ["x2", "kxy", "nk", "com-x2", "lie-ab2"])
def test_varkappa_mutation_detected(name):
    rep = al.mc_check_varkappa(coalgebra(name, 3), mutate=True)
    assert not rep.zero


@pytest.mark.parametrize("name", [n for n in ps.EXAMPLES if n != "module"])
def test_double_dual_presentation(name):
    pres = ps.load_example(name, 3)
    dd = al.koszul_dual_presentation(al.koszul_dual_presentation(pres))
    assert al.build_algebra(dd).dims() == algebra(name, 3).dims()


relations = st.lists(
    st.dictionaries(st.tuples(st.integers(0, 1), st.integers(0, 1)), st.integers(-2, 2).filter(bool),
                    min_size=1, max_size=3),
    max_size=2)


@settings(max_examples=30, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(relations)
def test_random_as_algebras_against_oracle(rels):
    Wr = 3
    pres = _as_pres(2, rels, Wr)
    A = al.build_algebra(pres)
    ref = oracles.QuadraticAlgebra(2, rels, Wr + 1)
    assert A.dims() == ref.dims()[1:]
    Ac = al.koszul_dual_coalgebra(A)
    assert Ac.dims() == [len(ref.coalgebra(n)) for n in range(1, Wr + 2)]
    assert al.mc_check_varkappa(Ac).zero


@pytest.mark.parametrize("rel,msg", [
    ([(1, "q", 0, ("x", "x"))], r"E\(V\)"),
    ([(1, "m", 0, ("x",))], "inputs"),
    ([(1, "m", 3, ("x", "x"))], "basis"),
    ([(1, "m", 0, ("x", "w"))], "unknown generator"),
])
def test_presentation_errors(rel, msg):
    with pytest.raises(al.AlgebraPresentationError, match=msg):
        al.AlgebraPresentation(ps.load_preset("as"), [("x", 0)], [rel], 3)


def test_dual_letters_are_odd():
    dp = al.koszul_dual_presentation(ps.load_example("kxy", 3))
    assert [g for g, _ in dp.generators] == ["x*", "y*"]
    assert dp.degrees == [1, 1]
