"""Tree monomials of free operads in shuffle-tree normal form.

A tree is a nested tuple: a leaf is an ``int`` label, an internal vertex is
``(generator_name, basis_index, children)``.  The vertex's coefficient space
is the generator's S_k-representation; ``basis_index`` picks a basis vector
of it.  A vertex whose children appear at positions 1..k with minimal leaves
ranked ``σ(1)..σ(k)`` equals ``ρ(σ)`` applied to the same vertex with sorted
children.  Vertices are ordered in preorder for Koszul signs.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from . import symgroup as sg

Tree = Union[int, tuple]


class TreeStructureError(ValueError):
    pass


class ArityMismatchError(TreeStructureError):
    pass


class SymmetryError(ValueError):
    pass


# -- generators ---------------------------------------------------------------

def _matmul(a, b):
    n, m, p = len(a), len(b), len(b[0]) if b else 0
    return tuple(tuple(sum((a[i][k] * b[k][j] for k in range(m)), Fraction(0)) for j in range(p)) for i in range(n))


def _eye(d):
    return tuple(tuple(Fraction(int(i == j)) for j in range(d)) for i in range(d))


@dataclass(frozen=True)
class GeneratorSymbol:
    """A generating operation with its S_arity coefficient representation.

    ``action`` maps every permutation of 1..arity to a dim x dim matrix
    (tuple rows); column j is the image of basis vector j.
    """

    name: str
    arity: int
    degree: int = 0
    dim: int = 1
    action: Mapping[sg.Perm, Tuple[Tuple[Fraction, ...], ...]] = field(default=None, compare=False, repr=False)
    kind: str = "trivial"

    def __post_init__(self):
        if self.arity < 1:
            raise TreeStructureError(f"generator {self.name!r}: arity must be >= 1")
        if self.degree < 0:
            raise TreeStructureError("homological degree must be >= 0")
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_']*", self.name):
            raise TreeStructureError(f"bad generator name {self.name!r}")
        if self.action is None:
            object.__setattr__(self, "action", {p: _eye(self.dim) for p in sg.all_perms(self.arity)})
        self._validate()

    def _validate(self):
        perms = sg.all_perms(self.arity)
        for p in perms:
            m = self.action.get(p)
            if m is None or len(m) != self.dim or any(len(r) != self.dim for r in m):
                raise SymmetryError(f"{self.name}: missing or malformed action of {p}")
        if self.action[sg.identity(self.arity)] != _eye(self.dim):
            raise SymmetryError(f"{self.name}: identity must act trivially")
        if self.arity <= 4:
            for p in perms:
                for q in perms:
                    if _matmul(self.action[p], self.action[q]) != self.action[sg.compose(p, q)]:
                        raise SymmetryError(f"{self.name}: action is not a representation")

    def rho(self, p: sg.Perm, j: int) -> Dict[int, Fraction]:
        m = self.action[p]
        return {i: m[i][j] for i in range(self.dim) if m[i][j]}

    def label(self, j: int) -> str:
        return self.name if self.dim == 1 else f"{self.name}#{j}"

    @classmethod
    def trivial(cls, name, arity=2, degree=0):
        return cls(name, arity, degree, 1, None, "trivial")

    @classmethod
    def sign(cls, name, arity=2, degree=0):
        act = {p: ((Fraction(sg.sign(p)),),) for p in sg.all_perms(arity)}
        return cls(name, arity, degree, 1, act, "sign")

    @classmethod
    def regular(cls, name, arity=2, degree=0):
        perms = sg.all_perms(arity)
        idx = {p: i for i, p in enumerate(perms)}
        d = len(perms)
        act = {}
        for s in perms:
            m = [[Fraction(0)] * d for _ in range(d)]
            for p in perms:
                m[idx[sg.compose(s, p)]][idx[p]] = Fraction(1)
            act[s] = tuple(tuple(r) for r in m)
        return cls(name, arity, degree, d, act, "regular")

    @classmethod
    def from_matrices(cls, name, arity, matrices: Mapping[sg.Perm, Sequence[Sequence[object]]], degree=0):
        """Explicit action given on (at least) the adjacent transpositions."""
        given = {tuple(k): sg.frac_matrix(v) for k, v in matrices.items()}
        dim = len(next(iter(given.values())))
        act = {sg.identity(arity): _eye(dim)}
        frontier = [sg.identity(arity)]
        gens = [(sg.transposition(arity, i), None) for i in range(1, arity)]
        for t, _ in gens:
            if t not in given:
                raise SymmetryError(f"{name}: need the action of {t}")
        while frontier:
            nxt = []
            for p in frontier:
                for t, _ in gens:
                    q = sg.compose(t, p)
                    if q not in act:
                        act[q] = _matmul(given[t], act[p])
                        nxt.append(q)
            frontier = nxt
        for k, v in given.items():
            if act[k] != v:
                raise SymmetryError(f"{name}: inconsistent matrices")
        return cls(name, arity, degree, dim, act, "explicit")

    def dual_twisted(self, name: Optional[str] = None) -> "GeneratorSymbol":
        """E^∨ = E^* ⊗ sgn, on the dual basis."""
        act = {}
        for p in sg.all_perms(self.arity):
            m = self.action[sg.inverse(p)]
            s = sg.sign(p)
            act[p] = tuple(tuple(s * m[j][i] for j in range(self.dim)) for i in range(self.dim))
        kind = {"trivial": "sign", "sign": "trivial"}.get(self.kind, "explicit")
        if self.kind == "regular":
            kind = "explicit"
        return GeneratorSymbol(name or self.name, self.arity, self.degree, self.dim, act, kind)

    def matrices_json(self):
        out = {}
        for i in range(1, self.arity):
            t = sg.transposition(self.arity, i)
            out["".join(map(str, t))] = [[str(x) for x in r] for r in self.action[t]]
        return out


Signature = Dict[str, GeneratorSymbol]


def signature(gens: Iterable[GeneratorSymbol]) -> Signature:
    out = {}
    for g in gens:
        if g.name in out:
            raise TreeStructureError(f"duplicate generator {g.name}")
        out[g.name] = g
    return out


# -- tree basics ----------------------------------------------------------------

def is_leaf(t: Tree) -> bool:
    return isinstance(t, int)


def leaves(t: Tree) -> List[int]:
    if is_leaf(t):
        return [t]
    out = []
    for c in t[2]:
        out.extend(leaves(c))
    return out


def min_leaf(t: Tree) -> int:
    if is_leaf(t):
        return t
    return min(min_leaf(c) for c in t[2])


def tree_arity(t: Tree) -> int:
    return len(leaves(t))


def tree_weight(t: Tree) -> int:
    if is_leaf(t):
        return 0
    return 1 + sum(tree_weight(c) for c in t[2])


def tree_degree(t: Tree, sig: Signature) -> int:
    if is_leaf(t):
        return 0
    return sig[t[0]].degree + sum(tree_degree(c, sig) for c in t[2])


def relabel(t: Tree, f) -> Tree:
    if is_leaf(t):
        return f(t)
    return (t[0], t[1], tuple(relabel(c, f) for c in t[2]))


def check_tree(t: Tree, sig: Signature) -> None:
    if is_leaf(t):
        return
    if not (isinstance(t, tuple) and len(t) == 3):
        raise TreeStructureError(f"malformed vertex {t!r}")
    g = sig.get(t[0])
    if g is None:
        raise TreeStructureError(f"unknown generator {t[0]!r}")
    if len(t[2]) != g.arity:
        raise ArityMismatchError(f"{t[0]} has arity {g.arity} but {len(t[2])} children")
    if not 0 <= t[1] < g.dim:
        raise TreeStructureError(f"{t[0]}: basis index {t[1]} out of range")
    for c in t[2]:
        check_tree(c, sig)


def _check_labels(t: Tree) -> int:
    ls = leaves(t)
    if sorted(ls) != list(range(1, len(ls) + 1)):
        raise TreeStructureError(f"leaf labels {ls} are not a permutation of 1..{len(ls)}")
    return len(ls)


# -- canonical form -------------------------------------------------------------

def canonical_terms(t: Tree, sig: Signature) -> Dict[Tree, Fraction]:
    """Linear combination of canonical trees equal to t."""
    if is_leaf(t):
        return {t: Fraction(1)}
    name, j, children = t
    g = sig[name]
    if len(children) != g.arity:
        raise TreeStructureError(f"{name} has arity {g.arity} but {len(children)} children")
    mins = [min_leaf(c) for c in children]
    pos_rank = sg.standardize(mins)
    order = sorted(range(len(children)), key=lambda i: mins[i])
    degs = [tree_degree(c, sig) for c in children]
    ks = sg.koszul_sign(order, degs)
    coeffs = g.rho(pos_rank, j)
    combos: List[Tuple[Tuple[Tree, ...], Fraction]] = [((), Fraction(ks))]
    for i in order:
        sub = canonical_terms(children[i], sig)
        combos = [(acc + (ct,), c * cc) for acc, c in combos for ct, cc in sub.items()]
    out: Dict[Tree, Fraction] = {}
    for jj, cj in coeffs.items():
        for kids, c in combos:
            key = (name, jj, kids)
            v = out.get(key, 0) + cj * c
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return out


def is_canonical(t: Tree) -> bool:
    if is_leaf(t):
        return True
    mins = [min_leaf(c) for c in t[2]]
    return mins == sorted(mins) and all(is_canonical(c) for c in t[2])


@dataclass(frozen=True)
class TreeMonomial:
    shape: Tree
    coefficient: Fraction = Fraction(1)

    @property
    def arity(self) -> int:
        return tree_arity(self.shape)

    @property
    def weight(self) -> int:
        return tree_weight(self.shape)

    def encode(self, sig: Optional[Signature] = None) -> str:
        return encode_tree(self.shape, sig)


class OperadElement:
    """Finite linear combination of canonical tree monomials of one arity."""

    __slots__ = ("sig", "arity", "terms")

    def __init__(self, sig: Signature, arity: int, terms: Mapping[Tree, object] = ()):
        self.sig = sig
        self.arity = arity
        clean = {}
        for t, c in dict(terms).items():
            c = Fraction(c)
            if c:
                clean[t] = clean.get(t, 0) + c
        self.terms: Dict[Tree, Fraction] = {t: c for t, c in clean.items() if c}
        ws = {tree_weight(t) for t in self.terms}
        if len(ws) > 1:
            raise TreeStructureError("terms of mixed weight")
        for t in self.terms:
            if tree_arity(t) != arity:
                raise TreeStructureError("term arity mismatch")

    @property
    def weight(self) -> Optional[int]:
        for t in self.terms:
            return tree_weight(t)
        return None

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        out = dict(self.terms)
        for t, c in other.terms.items():
            out[t] = out.get(t, 0) + c
        return OperadElement(self.sig, self.arity, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, s):
        return OperadElement(self.sig, self.arity, {t: c * s for t, c in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, OperadElement) and self.arity == other.arity and self.terms == other.terms

    def __hash__(self):
        return hash((self.arity, frozenset(self.terms.items())))

    def __repr__(self):
        return f"OperadElement({self.encode()})"

    def encode(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for t in sorted(self.terms, key=lambda t: encode_tree(t, self.sig)):
            parts.append(f"{_fstr(self.terms[t])}*{encode_tree(t, self.sig)}")
        return " + ".join(parts)


def _fstr(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def canonicalize(t: Union[TreeMonomial, Tree], sig: Signature) -> OperadElement:
    """Shuffle-tree normal form of a single monomial."""
    coef = Fraction(1)
    if isinstance(t, TreeMonomial):
        coef, t = t.coefficient, t.shape
    check_tree(t, sig)
    n = _check_labels(t)
    terms = canonical_terms(t, sig)
    return OperadElement(sig, n, {k: v * coef for k, v in terms.items()})


def element(sig: Signature, terms: Mapping[Tree, object]) -> OperadElement:
    """Build a canonical element from arbitrary (possibly unsorted) trees."""
    out: Dict[Tree, Fraction] = {}
    arity = None
    for t, c in terms.items():
        e = canonicalize(TreeMonomial(t, Fraction(c)), sig)
        if arity is None:
            arity = e.arity
        elif arity != e.arity:
            raise TreeStructureError("terms of different arity")
        for k, v in e.terms.items():
            out[k] = out.get(k, 0) + v
    return OperadElement(sig, arity or 1, out)


def identity_element(sig: Signature) -> OperadElement:
    return OperadElement(sig, 1, {1: 1})


# -- grafting and symmetric action -------------------------------------------------

def _preorder_after_leaf(t: Tree, i: int, sig: Signature) -> int:
    """Total degree of vertices that come after leaf i in preorder."""
    seen = False
    total = 0

    def walk(u):
        nonlocal seen, total
        if is_leaf(u):
            if u == i:
                seen = True
            return
        if seen:
            total += sig[u[0]].degree
        for c in u[2]:
            walk(c)

    walk(t)
    return total


def _graft_tree(x: Tree, i: int, y: Tree, k: int) -> Tree:
    def f(u):
        if is_leaf(u):
            if u < i:
                return u
            if u > i:
                return u + k - 1
            return relabel(y, lambda v: v + i - 1)
        return (u[0], u[1], tuple(f(c) for c in u[2]))

    return f(x)


def graft(x: OperadElement, i: int, y: OperadElement) -> OperadElement:
    """Partial composition x ∘_i y."""
    if not 1 <= i <= x.arity:
        raise IndexError(f"slot {i} outside 1..{x.arity}")
    sig = x.sig
    k = y.arity
    out: Dict[Tree, Fraction] = {}
    for tx, cx in x.terms.items():
        for ty, cy in y.terms.items():
            s = 1
            dy = tree_degree(ty, sig)
            if dy % 2 and _preorder_after_leaf(tx, i, sig) % 2:
                s = -1
            g = _graft_tree(tx, i, ty, k)
            for t, c in canonical_terms(g, sig).items():
                v = out.get(t, 0) + s * cx * cy * c
                if v:
                    out[t] = v
                else:
                    out.pop(t, None)
    return OperadElement(sig, x.arity + k - 1, out)


def apply_permutation(x: OperadElement, sigma: Sequence[int]) -> OperadElement:
    """Relabel leaf l as sigma(l) and renormalize."""
    sigma = tuple(sigma)
    if len(sigma) != x.arity or sorted(sigma) != list(range(1, x.arity + 1)):
        raise ValueError(f"permutation {sigma} does not match arity {x.arity}")
    out: Dict[Tree, Fraction] = {}
    for t, c in x.terms.items():
        r = relabel(t, lambda l: sigma[l - 1])
        for k, v in canonical_terms(r, x.sig).items():
            nv = out.get(k, 0) + c * v
            if nv:
                out[k] = nv
            else:
                out.pop(k, None)
    return OperadElement(x.sig, x.arity, out)


# -- enumeration ------------------------------------------------------------------

def _trees_on(labels: Tuple[int, ...], gens: Sequence[GeneratorSymbol], max_weight: int):
    if len(labels) == 1:
        yield labels[0]
    if max_weight <= 0:
        return
    for g in gens:
        if g.arity > len(labels):
            continue
        for blocks in sg.ordered_set_partitions(labels, g.arity):
            yield from _fill(g, blocks, gens, max_weight - 1)


def _fill(g, blocks, gens, budget):
    def rec(idx, acc, left):
        if idx == len(blocks):
            for j in range(g.dim):
                yield (g.name, j, tuple(acc))
            return
        for t in _trees_on(blocks[idx], gens, left):
            w = tree_weight(t)
            acc.append(t)
            yield from rec(idx + 1, acc, left - w)
            acc.pop()

    yield from rec(0, [], budget)


def enumerate_free_basis(E: Sequence[GeneratorSymbol], n: int, max_weight: Optional[int] = None) -> List[TreeMonomial]:
    """Canonical basis of F(E)(n), sorted by weight then by text encoding.

    Unary generators make arity components infinite, so they need an
    explicit ``max_weight``.
    """
    if n < 1:
        raise ValueError("arity must be >= 1")
    if max_weight is None:
        if any(g.arity == 1 for g in E):
            raise ValueError("unary generators require max_weight")
        max_weight = n - 1
    sig = signature(E)
    trees = list(_trees_on(tuple(range(1, n + 1)), list(E), max_weight))
    trees.sort(key=lambda t: (tree_weight(t), encode_tree(t, sig)))
    return [TreeMonomial(t) for t in trees]


# -- text encoding ---------------------------------------------------------------

def encode_tree(t: Tree, sig: Optional[Signature] = None) -> str:
    if is_leaf(t):
        return str(t)
    name, j, kids = t
    lab = sig[name].label(j) if sig else (name if j == 0 else f"{name}#{j}")
    return f"{lab}({', '.join(encode_tree(c, sig) for c in kids)})"


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_']*)(?:#(?P<idx>\d+))?|(?P<p>[(),]))")


def parse_tree(text: str, sig: Signature) -> Tree:
    pos = 0
    toks = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise TreeStructureError(f"cannot parse tree at column {pos + 1}: {text!r}")
        toks.append(m)
        pos = m.end()
    k = 0

    def parse():
        nonlocal k
        if k >= len(toks):
            raise TreeStructureError("unexpected end of tree")
        m = toks[k]
        k += 1
        if m.group("num"):
            return int(m.group("num"))
        if m.group("name"):
            name = m.group("name")
            j = int(m.group("idx") or 0)
            if k >= len(toks) or toks[k].group("p") != "(":
                raise TreeStructureError(f"expected '(' after {name}")
            k += 1
            kids = [parse()]
            while k < len(toks) and toks[k].group("p") == ",":
                k += 1
                kids.append(parse())
            if k >= len(toks) or toks[k].group("p") != ")":
                raise TreeStructureError("expected ')'")
            k += 1
            return (name, j, tuple(kids))
        raise TreeStructureError(f"unexpected token {m.group(0)!r}")

    t = parse()
    if k != len(toks):
        raise TreeStructureError("trailing input after tree")
    check_tree(t, sig)
    return t
