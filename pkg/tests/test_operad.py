from fractions import Fraction

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from koszulkit import operad as op
from koszulkit import presets as ps
from koszulkit import trees as tr
from koszulkit.trees import GeneratorSymbol

import oracles
from helpers import AS_WORDS, cooperad, operad

PRESETS = ["as", "com", "lie"]


@pytest.mark.parametrize("name", PRESETS)
def test_preset_dims(name):
    _, P = operad(name, 5)
    assert [P.dim(n) for n in range(1, 6)] == [oracles.preset_dims(name, n) for n in range(1, 6)]


@pytest.mark.parametrize("name,dual", [("as", "as"), ("com", "lie"), ("lie", "com")])
def test_dual_operad_dims(name, dual):
    pres, _ = operad(name, 5)
    Q = op.build_truncated_operad(op.koszul_dual_operad(pres))
    assert [Q.dim(n) for n in range(1, 6)] == [oracles.preset_dims(dual, n) for n in range(1, 6)]


@pytest.mark.parametrize("name", PRESETS)
def test_double_dual(name):
    pres, P = operad(name, 5)
    dd = op.koszul_dual_operad(op.koszul_dual_operad(pres))
    assert dd.name == name
    assert op.build_truncated_operad(dd).dims() == P.dims()


@pytest.mark.parametrize("name", PRESETS)
def test_cooperad_matches_direct_kernel(name):
    pres, _ = operad(name, 4)
    C = cooperad(name, 4)
    assert op.direct_cooperad_dims(pres, 4) == C.dims()


@pytest.mark.parametrize("name", PRESETS)
@pytest.mark.parametrize("side", ["left", "right"])
def test_operadic_koszul_complex_acyclic(name, side):
    _, P = operad(name, 4)
    rep = op.operadic_koszul_homology(P, cooperad(name, 4), side, 4)
    assert rep.is_unit(), rep.betti


@pytest.mark.parametrize("name", PRESETS)
def test_kappa_maurer_cartan(name):
    _, P = operad(name, 4)
    assert op.mc_check_kappa(P, cooperad(name, 4)).zero


def test_arity_one_operad_of_polynomial_ring():
    A = ps.load_example("kxy", 4)
    P = op.build_truncated_operad(ps.algebra_as_operad(A))
    g, rels = AS_WORDS["kxy"]
    ref = oracles.QuadraticAlgebra(g, rels, 4)
    assert [P.dim(1, w) for w in range(5)] == ref.dims()
    dual = op.build_truncated_operad(op.koszul_dual_operad(ps.algebra_as_operad(A)))
    assert [dual.dim(1, w) for w in range(5)] == ref.dual().dims()


def test_trivial_operad():
    P = op.build_truncated_operad(ps.trivial_presentation(3))
    assert P.dims() == {1: 1, 2: 0, 3: 0}


def test_unary_needs_weight_bound():
    with pytest.raises(op.PresentationError):
        op.OperadPresentation([GeneratorSymbol.trivial("a", arity=1)], [], 1)


def test_relation_weight_checked():
    mu = GeneratorSymbol.trivial("mu")
    sig = tr.signature([mu])
    with pytest.raises(op.RelationWeightError):
        op.OperadPresentation([mu], [tr.element(sig, {("mu", 0, (1, 2)): 1})], 3)


def test_mixed_arities_unsupported_for_duals():
    gens = [GeneratorSymbol.trivial("mu"), GeneratorSymbol.trivial("t", arity=3)]
    pres = op.OperadPresentation(gens, [], 3)
    with pytest.raises(op.UnsupportedPresentationError):
        op.koszul_dual_operad(pres)


def test_free_operad_dims():
    mu = GeneratorSymbol.trivial("mu")
    P = op.build_truncated_operad(op.OperadPresentation([mu], [], 5))
    assert [P.dim(n) for n in range(1, 6)] == [oracles.free_symmetric_binary(n) for n in range(1, 6)]


def test_truncation_error_reports_bound():
    _, P = operad("com", 3)
    with pytest.raises(op.TruncationError) as e:
        P.dim(5)
    assert e.value.needed is not None


# Random quadratic data on one trivial binary generator: the pairing, the
# sign conventions and the cooperad must be consistent for every relation space.
COM_TREES = [("mu", 0, (("mu", 0, (1, 2)), 3)), ("mu", 0, (("mu", 0, (1, 3)), 2)), ("mu", 0, (1, ("mu", 0, (2, 3))))]


@settings(max_examples=15, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(st.lists(st.lists(st.integers(-2, 2), min_size=3, max_size=3), min_size=0, max_size=2))
def test_random_quadratic_operads_are_consistent(rows):
    mu = GeneratorSymbol.trivial("mu")
    sig = tr.signature([mu])
    rels = []
    for r in rows:
        terms = {t: c for t, c in zip(COM_TREES, r) if c}
        if terms:
            rels.append(tr.element(sig, terms))
    pres = op.OperadPresentation([mu], rels, 4)
    P = op.build_truncated_operad(pres)
    C = op.koszul_dual_cooperad(pres, P)
    # dim R + dim R^⊥ = dim F(E)(3)
    assert P.dim(3, 2) + C.dim(3, 2) == 3
    assert op.direct_cooperad_dims(pres, 4) == C.dims()
    assert op.mc_check_kappa(P, C).zero
    dd = op.koszul_dual_operad(op.koszul_dual_operad(pres))
    assert op.build_truncated_operad(dd).dims() == P.dims()
    # d² = 0 is checked inside; raises on a sign error
    op.operadic_koszul_homology(P, C, "left", 4)
