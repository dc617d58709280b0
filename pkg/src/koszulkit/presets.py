"""Built-in presentations: As, Com, Lie, example algebras, and associative
algebras viewed as operads concentrated in arity one."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional

from . import trees as tr
from .algebra import AlgebraPresentation
from .operad import OperadPresentation, PresentationError
from .trees import GeneratorSymbol


class UnknownPresetError(KeyError):
    code = "unknown-preset"


def _as(max_arity: int) -> OperadPresentation:
    m = GeneratorSymbol.regular("m")
    sig = tr.signature([m])
    # basis 0 of the regular representation is m(x1, x2)
    assoc = tr.element(sig, {("m", 0, (("m", 0, (1, 2)), 3)): 1, ("m", 0, (1, ("m", 0, (2, 3)))): -1})
    return OperadPresentation([m], [assoc], max_arity, None, "as")


def _com(max_arity: int) -> OperadPresentation:
    mu = GeneratorSymbol.trivial("mu")
    sig = tr.signature([mu])
    assoc = tr.element(sig, {("mu", 0, (("mu", 0, (1, 2)), 3)): 1, ("mu", 0, (1, ("mu", 0, (2, 3)))): -1})
    return OperadPresentation([mu], [assoc], max_arity, None, "com")


def _lie(max_arity: int) -> OperadPresentation:
    br = GeneratorSymbol.sign("br")
    sig = tr.signature([br])
    jacobi = tr.element(sig, {
        ("br", 0, (("br", 0, (1, 2)), 3)): 1,
        ("br", 0, (("br", 0, (2, 3)), 1)): 1,
        ("br", 0, (("br", 0, (3, 1)), 2)): 1,
    })
    return OperadPresentation([br], [jacobi], max_arity, None, "lie")


PRESETS = {"as": _as, "com": _com, "lie": _lie}

# Operads for which A ⊗^P B_κA computes the Kähler module of every algebra, so
# that acyclicity of A ⊗^P A^¡ is itself a Koszul criterion.  For Com this only
# holds for smooth algebras; arity-one operads reduce to resolutions of modules.
STAR = {"as": True, "com": False, "lie": True,
        # duals, through As^! = As, Com^! = Lie and Lie^! = Com
        "as^!": True, "com^!": True, "lie^!": False}


def load_preset(name: str, max_arity: int = 5) -> OperadPresentation:
    try:
        build = PRESETS[name.lower()]
    except KeyError:
        raise UnknownPresetError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None
    return build(max_arity)


def trivial_presentation(max_arity: int = 5) -> OperadPresentation:
    """E = 0: the operad I."""
    return OperadPresentation([], [], max_arity, None, "trivial")


def satisfies_star(pres: OperadPresentation) -> bool:
    """Whether the Koszul-complex criterion is equivalent to the others for this operad."""
    if pres.uniform_arity == 1:
        return True
    return STAR.get(pres.name, False)


# -- associative algebras in arity one ------------------------------------------------

def algebra_as_operad(A: AlgebraPresentation, name: Optional[str] = None) -> OperadPresentation:
    """The quadratic associative algebra A seen as an operad concentrated in arity 1.

    Generators of A become unary operations; a product a·b becomes the tree a(b(-)),
    so algebras over the result are left A-modules.
    """
    if A.operad.name != "as":
        raise PresentationError("algebra_as_operad needs an algebra over the As preset")
    if any(d for _, d in A.generators):
        raise PresentationError("algebra_as_operad needs generators in degree 0")
    gens = [GeneratorSymbol.trivial(g, arity=1) for g, _ in A.generators]
    sig = tr.signature(gens)
    rels = []
    for rel in A.relations:
        terms: Dict = {}
        for c, _, j, (a, b) in rel:
            if j:
                a, b = b, a
            t = (a, 0, ((b, 0, (1,)),))
            terms[t] = terms.get(t, 0) + Fraction(c)
        rels.append(tr.element(sig, terms))
    return OperadPresentation(gens, rels, 1, A.max_weight, name or f"{A.name}-op")


def arity_one_algebra(P: OperadPresentation, max_weight: int) -> AlgebraPresentation:
    """Inverse of ``algebra_as_operad``: read unary generators and relations back as an As-algebra."""
    if P.uniform_arity != 1:
        raise PresentationError("arity_one_algebra needs unary generators")
    rels = []
    for r in P.relations:
        rel = []
        for t, c in sorted(r.terms.items()):
            a, _, ((b, _, _),) = t
            rel.append((Fraction(c), "m", 0, (a, b)))
        rels.append(rel)
    return _asalg([g.name for g in P.generators], rels, max_weight, P.name)


def trivial_module(A: AlgebraPresentation, max_weight: Optional[int] = None) -> AlgebraPresentation:
    """M = (A ⊗ 𝕂e)/A·V over A in arity one: every generator acts by zero."""
    P = algebra_as_operad(A)
    rels = [[(Fraction(1), g, 0, ("e",))] for g, _ in A.generators]
    return AlgebraPresentation(P, [("e", 0)], rels, max_weight or A.max_weight, f"{A.name}-triv")


# -- example algebras ----------------------------------------------------------------------

def _asalg(gens, rels, W, name):
    return AlgebraPresentation(load_preset("as", W + 1), [(g, 0) for g in gens], rels, W, name)


def _x2(W):
    return _asalg(["x"], [[(1, "m", 0, ("x", "x"))]], W, "x2")


def _kxy(W):
    return _asalg(["x", "y"], [[(1, "m", 0, ("x", "y")), (-1, "m", 0, ("y", "x"))]], W, "kxy")


def _free(W):
    return _asalg(["x", "y"], [], W, "free")


def _zero(W):
    rels = [[(1, "m", 0, (a, b))] for a in "xy" for b in "xy"]
    return _asalg(["x", "y"], rels, W, "zero")


def _nk(W):
    # found by seeded random search (tools/search_nonkoszul.py --relations 2); Betti table frozen in tests/golden
    return _asalg(["x", "y", "z"], [
        [(1, "m", 0, ("z", "z")), (-1, "m", 0, ("x", "z"))],
        [(1, "m", 0, ("z", "x")), (1, "m", 0, ("x", "z"))],
    ], W, "nk")


def _com_x2(W):
    return AlgebraPresentation(load_preset("com", W + 1), [("x", 0), ("y", 0)],
                               [[(1, "mu", 0, ("x", "x"))]], W, "com-x2")


def _com_free(W):
    return AlgebraPresentation(load_preset("com", W + 1), [("x", 0), ("y", 0)], [], W, "com-free")


def _lie_ab1(W):
    return AlgebraPresentation(load_preset("lie", W + 1), [("x", 0)], [], W, "lie-ab1")


def _lie_ab2(W):
    return AlgebraPresentation(load_preset("lie", W + 1), [("x", 0), ("y", 0)],
                               [[(1, "br", 0, ("x", "y"))]], W, "lie-ab2")


def _module(W):
    return trivial_module(_kxy(W), W)


@dataclass(frozen=True)
class Example:
    name: str
    build: Callable[[int], AlgebraPresentation]
    koszul: bool
    note: str


EXAMPLES: Dict[str, Example] = {e.name: e for e in [
    Example("x2", _x2, True, "K<x>/(x^2), dual K[x]"),
    Example("kxy", _kxy, True, "K[x,y] as an associative algebra, dual exterior"),
    Example("free", _free, True, "free associative algebra on x, y"),
    Example("zero", _zero, True, "trivial multiplication, dual free"),
    Example("nk", _nk, False, "searched non-Koszul instance"),
    Example("com-x2", _com_x2, True, "S(x,y)/(x^2); Com lacks the Kähler condition"),
    Example("com-free", _com_free, True, "S(x,y)"),
    Example("lie-ab1", _lie_ab1, True, "abelian Lie algebra on one generator"),
    Example("lie-ab2", _lie_ab2, True, "abelian Lie algebra on two generators"),
    Example("module", _module, True, "trivial module over K[x,y], operad in arity 1"),
]}


def load_example(name: str, max_weight: int = 4) -> AlgebraPresentation:
    try:
        ex = EXAMPLES[name.lower()]
    except KeyError:
        raise UnknownPresetError(f"unknown example {name!r}; choose from {sorted(EXAMPLES)}") from None
    return ex.build(max_weight)


def catalog() -> List[Dict[str, object]]:
    """Presets and examples, in a fixed order."""
    out: List[Dict[str, object]] = [{"kind": "operad", "name": n, "star": STAR[n]} for n in sorted(PRESETS)]
    for ex in EXAMPLES.values():
        out.append({"kind": "algebra", "name": ex.name, "koszul": ex.koszul, "note": ex.note})
    return out
