import pytest

from koszulkit import cotangent as ct
from koszulkit import exactlin as el
from koszulkit import presets as ps

from helpers import BINARY, SPECIALIZATIONS, algebra, coalgebra, dual_algebra, verdict

KOSZUL = {n: e.koszul for n, e in ps.EXAMPLES.items()}


@pytest.mark.parametrize("name", list(ps.EXAMPLES))
def test_criteria_agree_with_deep(name):
    v = verdict(name, 3, deep=True)
    applicable = [x for x in v.criteria.values() if x is not None]
    assert len(set(applicable)) == 1
    assert v.criteria["deep"] is not None
    assert v.koszul == KOSZUL[name]


@pytest.mark.parametrize("name", list(ps.EXAMPLES))
def test_criteria_agree_weight_four(name):
    v = verdict(name, 4)
    assert v.koszul == KOSZUL[name]
    assert len({f for k, f in v.first_failures.items()}) == 1


def test_star_gating_for_com():
    v = verdict("com-x2", 3)
    assert v.criteria["complex"] is None
    assert v.details["star"] is False
    # the raw complex has homology in degree 1 although the algebra is Koszul
    assert v.details["complex_raw"] is False
    assert verdict("com-free", 3).details["complex_raw"] is True


@pytest.mark.parametrize("name", list(ps.EXAMPLES))
def test_twisted_tensor_is_a_complex(name):
    A, Ac = algebra(name, 3), coalgebra(name, 3)
    t = ct.build_coequalizer(A, Ac)
    t.check()
    assert t.relations_stable()


@pytest.mark.parametrize("name", ["x2", "nk"])
def test_untwisted_mutation_breaks_d_squared(name):
    A, Ac = algebra(name, 3), coalgebra(name, 3)
    t = ct.TwistedTensor(A, ct.KoszulSide(A, Ac), mutate="untwisted")
    with pytest.raises(el.ChainComplexError):
        t.check()


@pytest.mark.parametrize("name", BINARY)
def test_duality_of_verdicts(name):
    A = dual_algebra(name, 4)
    v = ct.koszul_criterion(A)
    assert v.koszul == verdict(name, 4).koszul
    assert v.first_failure == verdict(name, 4).first_failure


@pytest.mark.parametrize("name", list(SPECIALIZATIONS))
def test_specialization(name):
    r = ct.specialization_check(algebra(name, 4), SPECIALIZATIONS[name], coalgebra(name, 4))
    assert r.relations_killed and r.invertible and r.intertwined, r.first_failure
    assert r.generic_dims == r.special_dims


@pytest.mark.parametrize("name,kind", [("x2", "as"), ("kxy", "as"), ("free", "as"), ("zero", "as"), ("nk", "as"),
                                       ("com-x2", "com"), ("com-free", "com")])
def test_h0_is_the_kahler_module(name, kind):
    v = verdict(name, 4)
    h0 = [v.details["complex"].betti[w].get(0, 0) for w in range(5)]
    assert h0 == ct.kahler_dims(algebra(name, 4), kind)


def test_module_complex_matches_classical_koszul_resolution():
    import oracles
    ref = oracles.QuadraticAlgebra(2, [{(0, 1): 1, (1, 0): -1}], 5)
    t = ct.build_coequalizer(algebra("module", 5), coalgebra("module", 5))
    for w in range(6):
        # K[x,y]_{w-k} ⊗ Λ^k, graded by k
        dims = [ref.dim(w - k) * len(ref.coalgebra(k)) for k in range(w + 1)]
        assert [t.dim(w, k) for k in range(w + 1)] == dims
        if w:
            assert not any(ref.koszul_complex(w))
        assert t.betti(w) == {k: (1 if (w, k) == (0, 0) else 0) for k in range(w + 1)}
