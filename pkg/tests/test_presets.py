import pytest

from koszulkit import presets as ps


def test_unknown_names():
    with pytest.raises(ps.UnknownPresetError):
        ps.load_preset("ass")
    with pytest.raises(ps.UnknownPresetError):
        ps.load_example("nope")


def test_star_condition():
    assert ps.satisfies_star(ps.load_preset("as"))
    assert ps.satisfies_star(ps.load_preset("lie"))
    assert not ps.satisfies_star(ps.load_preset("com"))
    assert ps.satisfies_star(ps.algebra_as_operad(ps.load_example("kxy", 3)))


@pytest.mark.parametrize("name", ["x2", "kxy", "nk", "zero"])
def test_arity_one_round_trip(name):
    A = ps.load_example(name, 3)
    back = ps.arity_one_algebra(ps.algebra_as_operad(A), 3)
    from koszulkit.algebra import build_algebra
    assert build_algebra(back).dims() == build_algebra(A).dims()


def test_algebra_as_operad_rejects_other_operads():
    with pytest.raises(ps.PresentationError):
        ps.algebra_as_operad(ps.load_example("com-x2", 3))


def test_catalog_is_stable():
    c = ps.catalog()
    assert c == ps.catalog()
    assert [e["name"] for e in c[:3]] == ["as", "com", "lie"]
    assert {e["name"] for e in c if e["kind"] == "algebra"} == set(ps.EXAMPLES)
