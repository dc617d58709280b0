import json
from pathlib import Path

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from koszulkit import algebra as al
from koszulkit import barcobar as bc
from koszulkit import presets as ps

import oracles
from helpers import AS_WORDS, algebra, coalgebra

W = 4
GOLDEN = Path(__file__).parent / "golden"


def classical_first_failure(ngens, rels, W):
    """First internal weight where the classical Koszul complex has homology."""
    ref = oracles.QuadraticAlgebra(ngens, rels, W + 1)
    for n in range(1, W + 2):
        if any(ref.koszul_complex(n)):
            return n - 1
    return None


@pytest.fixture(scope="module")
def bars():
    return {n: bc.build_bar(algebra(n, W), coalgebra(n, W).C) for n in ps.EXAMPLES}


@pytest.mark.parametrize("name", list(ps.EXAMPLES))
def test_bar_differential_squares_to_zero(bars, name):
    bars[name].check()


@pytest.mark.parametrize("name", ["x2", "kxy", "free", "com-x2", "com-free", "lie-ab2", "nk", "module"])
def test_h0_is_the_koszul_dual_coalgebra(bars, name):
    rep = bc.bar_h0_check(bars[name], coalgebra(name, W))
    assert rep.match, rep.counterexample
    assert rep.kernel_dims == coalgebra(name, W).dims()


@pytest.mark.parametrize("name", list(ps.EXAMPLES))
def test_euler_characteristic(bars, name):
    assert bc.bar_homology(bars[name], coalgebra(name, W)).euler_ok


@pytest.mark.parametrize("name", sorted(AS_WORDS))
def test_bar_verdict_matches_classical_koszul_complex(bars, name):
    g, rels = AS_WORDS[name]
    h = bc.bar_homology(bars[name], coalgebra(name, W))
    assert h.first_failure == classical_first_failure(g, rels, W)


@pytest.mark.parametrize("name", list(ps.EXAMPLES))
def test_cobar_agrees_with_bar(bars, name):
    cb = bc.build_cobar_and_check(algebra(name, W), coalgebra(name, W))
    h = bc.bar_homology(bars[name], coalgebra(name, W))
    assert cb.chain_map
    assert cb.algebra_dims == algebra(name, W).dims()
    assert (cb.quasi_iso, cb.first_failure) == (h.koszul, h.first_failure)


def test_nk_bar_betti_golden(bars):
    gold = json.loads((GOLDEN / "nk_w5.json").read_text())
    h = bc.bar_homology(bars["nk"], coalgebra("nk", W))
    assert [h.betti[w] for w in range(W + 1)] == gold["bar_betti"][:W + 1]
    assert algebra("nk", W).dims() == gold["dims"]["A"][:W + 1]


def test_bar_truncation_error():
    A = algebra("kxy", 3)
    C = al.koszul_dual_coalgebra(al.build_algebra(ps.load_example("kxy", 1))).C
    with pytest.raises(Exception) as e:
        bc.build_bar(A, C)
    assert type(e.value).__name__ == "TruncationError"


two_gen_relations = st.lists(
    st.dictionaries(st.tuples(st.integers(0, 1), st.integers(0, 1)), st.integers(-1, 1).filter(bool),
                    min_size=1, max_size=2),
    min_size=1, max_size=2)


@settings(max_examples=25, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(two_gen_relations)
def test_random_bar_verdicts_match_classical(rels):
    Wr = 3
    names = "xy"
    terms = [[(c, "m", 0, (names[a], names[b])) for (a, b), c in r.items()] for r in rels]
    A = al.build_algebra(al.AlgebraPresentation(ps.load_preset("as", Wr + 1), [("x", 0), ("y", 0)], terms, Wr))
    Ac = al.koszul_dual_coalgebra(A)
    bar = bc.build_bar(A, Ac.C)
    assert bc.bar_h0_check(bar, Ac).match
    h = bc.bar_homology(bar, Ac)
    assert h.first_failure == classical_first_failure(2, rels, Wr)
