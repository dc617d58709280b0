"""Quadratic operads: truncated quotients, Koszul dual operad and cooperad,
operadic Koszul complexes and the Maurer-Cartan check for κ.

A truncated operad stores, for every (arity n, weight w), a basis of P(n)
made of "root expansions": a generator basis vector at the root with
children taken from bases of lower components, leaf blocks sorted by their
minima.  The component is the span of all root expansions modulo relations
applied at the root, which is enough because children are already reduced.
Elements of P(n) are dicts ``{(w, idx): Fraction}``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from . import exactlin as el
from . import symgroup as sg
from . import trees as tr
from .trees import GeneratorSymbol, OperadElement

Key = Tuple[int, int]          # (weight, index) inside one arity
PVec = Dict[Key, Fraction]


class PresentationError(ValueError):
    code = "presentation"


class RelationWeightError(PresentationError):
    code = "relation-weight"


class UnsupportedPresentationError(PresentationError):
    code = "unsupported"


class TruncationError(ValueError):
    def __init__(self, message, needed=None):
        super().__init__(message)
        self.needed = needed


class SignConventionError(AssertionError):
    pass


def _add(acc: Dict, key, c) -> None:
    v = acc.get(key, 0) + c
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


# -- presentation ---------------------------------------------------------------

@dataclass
class OperadPresentation:
    generators: List[GeneratorSymbol]
    relations: List[OperadElement]
    max_arity: int = 5
    max_weight: Optional[int] = None
    name: str = "custom"
    closure_added: int = field(default=0, init=False)

    def __post_init__(self):
        self.sig = tr.signature(self.generators)
        for g in self.generators:
            if g.arity == 1 and self.max_weight is None:
                raise PresentationError("unary generators need max_weight")
        for r in self.relations:
            for t in r.terms:
                if tr.tree_weight(t) != 2:
                    raise RelationWeightError(f"relation term {tr.encode_tree(t, self.sig)} has weight {tr.tree_weight(t)}")
        self._close()

    @property
    def binary(self) -> bool:
        return bool(self.generators) and all(g.arity == 2 for g in self.generators)

    @property
    def uniform_arity(self) -> Optional[int]:
        """Common arity of the generators when it is 1 or 2, else None."""
        ar = {g.arity for g in self.generators}
        if len(ar) == 1 and ar <= {1, 2}:
            return ar.pop()
        return None

    def weight_bound(self) -> int:
        if self.max_weight is not None:
            return self.max_weight
        return max(self.max_arity - 1, 0)

    def relation_basis(self, arity: int) -> Tuple[List[tr.Tree], el.Subspace]:
        """Echelon basis of R(arity) in the canonical weight-2 tree basis."""
        basis = [m.shape for m in tr.enumerate_free_basis(self.generators, arity, max_weight=2)
                 if tr.tree_weight(m.shape) == 2]
        index = {t: i for i, t in enumerate(basis)}
        vecs = []
        for r in self.relations:
            if r.arity == arity:
                vecs.append({index[t]: c for t, c in r.terms.items()})
        return basis, el.Subspace.span(len(basis), vecs)

    def _close(self):
        # enforce S_n-stability of R by adding the orbit of every relation
        by_arity: Dict[int, List[OperadElement]] = {}
        for r in self.relations:
            by_arity.setdefault(r.arity, []).append(r)
        added = 0
        out = []
        for a, rels in sorted(by_arity.items()):
            basis, span = self.relation_basis(a)
            index = {t: i for i, t in enumerate(basis)}
            orbit = []
            for r in rels:
                for p in sg.all_perms(a):
                    x = tr.apply_permutation(r, p)
                    orbit.append({index[t]: c for t, c in x.terms.items()})
            closed = el.Subspace.span(len(basis), orbit)
            added += closed.dim - span.dim
            for v in closed.vectors():
                out.append(OperadElement(self.sig, a, {basis[i]: c for i, c in v.items()}))
        self.closure_added = added
        self.relations = out


# -- truncated operad -------------------------------------------------------------

class TruncatedOperad:
    """Components P(n)^{(w)} for n <= max_arity, w <= max_weight."""

    def __init__(self, generators: Sequence[GeneratorSymbol], relations: Sequence[OperadElement],
                 max_arity: int, max_weight: int, name: str = "P"):
        self.name = name
        self.generators = list(generators)
        self.sig = tr.signature(self.generators)
        self.max_arity = max_arity
        self.max_weight = max_weight
        self.relations = list(relations)
        self.xbasis: Dict[Tuple[int, int], List[tuple]] = {}
        self.xindex: Dict[Tuple[int, int], Dict[tuple, int]] = {}
        self.basis: Dict[Tuple[int, int], List[tuple]] = {}
        self.index: Dict[Tuple[int, int], Dict[tuple, int]] = {}
        self.red: Dict[Tuple[int, int], List[PVec]] = {}
        self.deg: Dict[Tuple[int, int], List[int]] = {}
        self._act_memo: Dict = {}
        self._comp_memo: Dict = {}
        self._rel_templates = self._templates()
        self._build()

    # structure -------------------------------------------------------------
    def components(self, n: int) -> List[int]:
        return sorted(w for (m, w) in self.basis if m == n and self.basis[(m, w)])

    def dim(self, n: int, w: Optional[int] = None) -> int:
        self._check(n, 0 if w is None else w)
        if w is None:
            return sum(len(b) for (m, _), b in self.basis.items() if m == n)
        return len(self.basis.get((n, w), ()))

    def dims(self) -> Dict[int, int]:
        return {n: self.dim(n) for n in range(1, self.max_arity + 1)}

    def keys(self, n: int) -> List[Key]:
        return [(w, i) for w in self.components(n) for i in range(len(self.basis[(n, w)]))]

    def degree(self, n: int, key: Key) -> int:
        return self.deg[(n, key[0])][key[1]]

    def has(self, n: int, w: int) -> bool:
        return (n, w) in self.basis

    def _check(self, n, w):
        if n > self.max_arity or w > self.max_weight:
            raise TruncationError(f"{self.name}: component (arity {n}, weight {w}) beyond truncation",
                                  needed=(n, w))

    def identity(self) -> PVec:
        return {(0, 0): Fraction(1)}

    def generator_vec(self, name: str, j: int) -> PVec:
        g = self.sig[name]
        key = (name, j, tuple((i,) for i in range(1, g.arity + 1)), tuple((0, 0) for _ in range(g.arity)))
        return self.reduce_x(g.arity, {(1, self.xindex[(g.arity, 1)][key]): Fraction(1)})

    # construction -------------------------------------------------------------
    def _templates(self):
        """Relation vectors as lists of (coef, root gen, j, slots) with one inner vertex."""
        out = []
        for r in self.relations:
            terms = []
            for t, c in r.terms.items():
                name, j, kids = t
                slots = []
                for ch in kids:
                    if tr.is_leaf(ch):
                        slots.append(("leaf", ch))
                    else:
                        slots.append(("vertex", ch[0], ch[1], tuple(ch[2])))
                terms.append((c, name, j, tuple(slots)))
            out.append((r.arity, terms))
        return out

    def _build(self):
        self.basis[(1, 0)] = ["id"]
        self.index[(1, 0)] = {"id": 0}
        self.red[(1, 0)] = [{(0, 0): Fraction(1)}]
        self.deg[(1, 0)] = [0]
        self.xbasis[(1, 0)] = ["id"]
        self.xindex[(1, 0)] = {"id": 0}
        for w in range(1, self.max_weight + 1):
            for n in range(1, self.max_arity + 1):
                self._build_component(n, w)

    def _child_options(self, block_sizes, total):
        """Weight assignments for children with sizes, summing to total."""
        def rec(i, left):
            if i == len(block_sizes):
                if left == 0:
                    yield ()
                return
            for w in range(0, left + 1):
                if self.basis.get((block_sizes[i], w)):
                    for rest in rec(i + 1, left - w):
                        yield (w,) + rest
        yield from rec(0, total)

    def _build_component(self, n, w):
        xs = []
        for g in self.generators:
            if g.arity > n:
                continue
            for blocks in sg.ordered_set_partitions(range(1, n + 1), g.arity):
                sizes = [len(b) for b in blocks]
                for ws in self._child_options(sizes, w - 1):
                    ranges = [range(len(self.basis[(s, cw)])) for s, cw in zip(sizes, ws)]
                    for idxs in product(*ranges):
                        kids = tuple(zip(ws, idxs))
                        for j in range(g.dim):
                            xs.append((g.name, j, blocks, kids))
        if not xs:
            return
        xs.sort(key=_xsort)
        self.xbasis[(n, w)] = xs
        xi = {k: i for i, k in enumerate(xs)}
        self.xindex[(n, w)] = xi
        # relations at the root
        rows = []
        for arity, terms in self._rel_templates:
            if arity > n:
                continue
            for blocks in sg.ordered_set_partitions(range(1, n + 1), arity):
                sizes = [len(b) for b in blocks]
                for ws in self._child_options(sizes, w - 2):
                    ranges = [range(len(self.basis[(s, cw)])) for s, cw in zip(sizes, ws)]
                    for idxs in product(*ranges):
                        inputs = [(blocks[a], {(ws[a], idxs[a]): Fraction(1)}) for a in range(arity)]
                        row = self._relation_row(n, terms, inputs)
                        if row:
                            rows.append(row)
        rref = el.echelon_rows([{xi_: c for (ww, xi_), c in r.items()} for r in rows])
        pivots = {min(r): r for r in rref}
        free = [i for i in range(len(xs)) if i not in pivots]
        pos = {i: k for k, i in enumerate(free)}
        self.basis[(n, w)] = [xs[i] for i in free]
        self.index[(n, w)] = {xs[i]: k for k, i in enumerate(free)}
        red = []
        for i in range(len(xs)):
            if i in pos:
                red.append({(w, pos[i]): Fraction(1)})
            else:
                r = pivots[i]
                red.append({(w, pos[c]): -v for c, v in r.items() if c != i})
        self.red[(n, w)] = red
        self.deg[(n, w)] = [self._xdeg(k) for k in self.basis[(n, w)]]

    def _xdeg(self, key) -> int:
        if key == "id":
            return 0
        name, j, blocks, kids = key
        d = self.sig[name].degree
        for b, (cw, ci) in zip(blocks, kids):
            d += self.deg[(len(b), cw)][ci]
        return d

    def _relation_row(self, n, terms, inputs) -> Dict[Tuple[int, int], Fraction]:
        out: Dict[Tuple[int, int], Fraction] = {}
        for c, name, j, slots in terms:
            children = []
            for s in slots:
                if s[0] == "leaf":
                    children.append(inputs[s[1] - 1])
                else:
                    _, iname, ij, ileaves = s
                    sub = [inputs[l - 1] for l in ileaves]
                    block = tuple(sorted(x for b, _ in sub for x in b))
                    vec = self.make_root(iname, {ij: Fraction(1)}, sub, reduce=True)
                    children.append((block, vec))
            for k, v in self.make_root(name, {j: Fraction(c)}, children, reduce=False).items():
                _add(out, k, v)
        return out

    def make_root(self, name: str, coeff: Mapping[int, Fraction], children: Sequence[Tuple[tuple, PVec]],
                  reduce: bool = True):
        """Root vertex with children given on arbitrary disjoint leaf blocks.

        Leaf labels of the result are the standardization of the union of the
        blocks.  Returns a P-vector (reduce=True) or an X-vector keyed by
        (weight, x-index).
        """
        g = self.sig[name]
        allleaves = sorted(x for b, _ in children for x in b)
        std = {x: i + 1 for i, x in enumerate(allleaves)}
        n = len(allleaves)
        mins = [min(b) for b, _ in children]
        order = sorted(range(len(children)), key=lambda i: mins[i])
        prank = sg.standardize(mins)
        newcoef: Dict[int, Fraction] = {}
        for j, c in coeff.items():
            for jj, cj in g.rho(prank, j).items():
                _add(newcoef, jj, c * cj)
        blocks = tuple(tuple(sorted(std[x] for x in children[i][0])) for i in order)
        out: Dict = {}
        kid_terms = [list(children[i][1].items()) for i in order]
        for combo in product(*kid_terms):
            c = Fraction(1)
            ws = 0
            degs = []
            for (cw, ci), cv in combo:
                c *= cv
                ws += cw
            # Koszul sign for moving children into sorted order
            if any(self.sig[name].degree for name in self.sig):
                origdeg = [0] * len(children)
                for pos_, i in enumerate(order):
                    (cw, ci), _ = combo[pos_]
                    origdeg[i] = self.deg[(len(children[i][0]), cw)][ci]
                c *= sg.koszul_sign(order, origdeg)
            kids = tuple(k for k, _ in combo)
            wt = ws + 1
            self._check(n, wt)
            for jj, cj in newcoef.items():
                key = (name, jj, blocks, kids)
                xi = self.xindex[(n, wt)][key]
                _add(out, (wt, xi), c * cj)
        if not reduce:
            return out
        return self.reduce_x(n, out)

    def reduce_x(self, n: int, xvec) -> PVec:
        out: PVec = {}
        for (w, xi), c in xvec.items():
            for k, v in self.red[(n, w)][xi].items():
                _add(out, k, c * v)
        return out

    # symmetric action ----------------------------------------------------------
    def act_basis(self, n: int, key: Key, sigma: sg.Perm) -> PVec:
        mk = (n, key, sigma)
        r = self._act_memo.get(mk)
        if r is not None:
            return r
        w, i = key
        if w == 0:
            r = {key: Fraction(1)}
        else:
            name, j, blocks, kids = self.basis[(n, w)][i]
            children = []
            for b, (cw, ci) in zip(blocks, kids):
                img = [sigma[x - 1] for x in b]
                tau = sg.standardize(img)
                children.append((tuple(img), self.act_basis(len(b), (cw, ci), tau)))
            r = self.make_root(name, {j: Fraction(1)}, children)
        self._act_memo[mk] = r
        return r

    def act(self, n: int, vec: PVec, sigma: sg.Perm) -> PVec:
        """Relabel leaf l as sigma(l)."""
        sigma = tuple(sigma)
        if sigma == sg.identity(n):
            return dict(vec)
        out: PVec = {}
        for k, c in vec.items():
            for kk, v in self.act_basis(n, k, sigma).items():
                _add(out, kk, c * v)
        return out

    # composition -----------------------------------------------------------------
    def compose_basis(self, m: int, x: Key, i: int, k: int, y: Key) -> PVec:
        """x ∘_i y for basis elements of P(m), P(k)."""
        mk = (m, x, i, k, y)
        r = self._comp_memo.get(mk)
        if r is not None:
            return r
        if x[0] == 0:
            r = {y: Fraction(1)}
        elif y[0] == 0 and k == 1:
            r = {x: Fraction(1)}
        else:
            name, j, blocks, kids = self.basis[(m, x[0])][x[1]]
            sh = lambda l: l if l < i else l + k - 1
            children = []
            sgn = 1
            dy = self.degree(k, y)
            hit = None
            for t, (b, ck) in enumerate(zip(blocks, kids)):
                if i in b:
                    hit = t
            for t, (b, ck) in enumerate(zip(blocks, kids)):
                if t == hit:
                    r_ = b.index(i) + 1
                    nb = []
                    for l in b:
                        if l == i:
                            nb.extend(range(i, i + k))
                        else:
                            nb.append(sh(l))
                    children.append((tuple(nb), self.compose_basis(len(b), ck, r_, k, y)))
                else:
                    if t > hit and dy % 2 and self.deg[(len(b), ck[0])][ck[1]] % 2:
                        sgn = -sgn
                    children.append((tuple(sh(l) for l in b), {ck: Fraction(1)}))
            r = self.make_root(name, {j: Fraction(sgn)}, children)
        self._comp_memo[mk] = r
        return r

    def compose(self, m: int, x: PVec, i: int, k: int, y: PVec) -> PVec:
        if not 1 <= i <= m:
            raise IndexError(f"slot {i} outside 1..{m}")
        out: PVec = {}
        for kx, cx in x.items():
            for ky, cy in y.items():
                for kk, v in self.compose_basis(m, kx, i, k, ky).items():
                    _add(out, kk, cx * cy * v)
        return out

    def compose_shuffle(self, m: int, x: PVec, k: int, y: PVec, block: Sequence[int]) -> PVec:
        """x ∘ y with y's leaves landing on ``block`` (labels of the result)."""
        n = m + k - 1
        block = tuple(sorted(block))
        rest = [l for l in range(1, n + 1) if l not in block]
        i = sum(1 for l in rest if l < block[0]) + 1
        z = self.compose(m, x, i, k, y)
        sigma = tuple(rest[:i - 1]) + block + tuple(rest[i - 1:])
        return self.act(n, z, sigma)

    def gamma(self, r: int, p: PVec, inputs: Sequence[Tuple[Sequence[int], int, PVec]]) -> PVec:
        """Full composition γ(p; q_1..q_r); input j is (leaf block, arity, vector).

        Blocks are arbitrary disjoint label sets; the result is labelled by
        their standardized union.
        """
        if len(inputs) != r:
            raise ValueError("wrong number of inputs")
        cur = p
        arity = r
        sgn = 1
        for j in range(r - 1, -1, -1):
            _, k, q = inputs[j]
            cur = self.compose(arity, cur, j + 1, k, q)
            arity += k - 1
        if any(g.degree for g in self.generators):
            degs = [_vec_degree(self, k, q) for _, k, q in inputs]
            for a in range(r):
                for b in range(a + 1, r):
                    if degs[a] % 2 and degs[b] % 2:
                        sgn = -sgn
        labels = [x for b, _, _ in inputs for x in b]
        sigma = sg.standardize(labels)
        out = self.act(arity, cur, sigma)
        if sgn == -1:
            out = {k: -v for k, v in out.items()}
        return out

    # matrices ----------------------------------------------------------------------
    def action_matrix(self, n: int, w: int, sigma: sg.Perm) -> el.Matrix:
        d = self.dim(n, w)
        cols = []
        for i in range(d):
            v = self.act_basis(n, (w, i), tuple(sigma))
            cols.append({ii: c for (ww, ii), c in v.items()})
        return el.Matrix.from_columns(d, cols)

    def composition_matrix(self, m: int, wm: int, i: int, k: int, wk: int) -> el.Matrix:
        """∘_i : P(m)^{wm} ⊗ P(k)^{wk} -> P(m+k-1)^{wm+wk}; column index a*dim_k + b."""
        n = m + k - 1
        dm, dk = self.dim(m, wm), self.dim(k, wk)
        dn = self.dim(n, wm + wk)
        cols = []
        for a in range(dm):
            for b in range(dk):
                v = self.compose_basis(m, (wm, a), i, k, (wk, b))
                cols.append({ii: c for (ww, ii), c in v.items()})
        return el.Matrix.from_columns(dn, cols)

    def encode_basis(self, n: int, key: Key) -> str:
        return tr.encode_tree(self.basis_tree(n, key), self.sig)

    def basis_tree(self, n: int, key: Key):
        w, i = key
        if w == 0:
            return 1
        name, j, blocks, kids = self.basis[(n, w)][i]
        ch = []
        for b, ck in zip(blocks, kids):
            sub = self.basis_tree(len(b), ck)
            ch.append(tr.relabel(sub, lambda l, b=b: b[l - 1]))
        return (name, j, tuple(ch))

    def tree_to_vec(self, t) -> PVec:
        """Image in P of a free-operad tree (any order of children)."""
        if tr.is_leaf(t):
            return self.identity()
        name, j, kids = t
        children = []
        for ch in kids:
            ls = tr.leaves(ch)
            std = sg.standardize(ls)
            sub = tr.relabel(ch, lambda l, ls=ls, std=std: std[ls.index(l)])
            children.append((tuple(ls), self.tree_to_vec(sub)))
        return self.make_root(name, {j: Fraction(1)}, children)

    def element_to_vec(self, x: OperadElement) -> PVec:
        out: PVec = {}
        for t, c in x.terms.items():
            for k, v in self.tree_to_vec(t).items():
                _add(out, k, c * v)
        return out


def _xsort(key):
    name, j, blocks, kids = key
    return (name, blocks, kids, j)


def _vec_degree(P: TruncatedOperad, n: int, vec: PVec) -> int:
    for k in vec:
        return P.degree(n, k)
    return 0


def build_truncated_operad(pres: OperadPresentation) -> TruncatedOperad:
    if pres.max_arity < 2 and pres.max_weight is None:
        raise PresentationError("max_arity must be >= 2")
    return TruncatedOperad(pres.generators, pres.relations, pres.max_arity, pres.weight_bound(), pres.name)


# -- Koszul dual operad ------------------------------------------------------------

def dual_name(name: str) -> str:
    return name[:-1] if name.endswith("'") else name + "'"


def shuffle_sign(tree) -> int:
    """Suspension sign of a two-vertex shuffle tree: sgn(unshuffle)·(-1)^{(k-1)(i-1)}."""
    name, j, kids = tree
    inner_pos = [p for p, c in enumerate(kids) if not tr.is_leaf(c)][0]
    inner = kids[inner_pos]
    k = len(inner[2])
    i = inner_pos + 1
    # leaf order when the composite is read as x ∘_i y at consecutive positions
    seq = []
    for p, c in enumerate(kids):
        if p == inner_pos:
            seq.extend(inner[2])
        else:
            seq.append(c)
    return sg.sign(tuple(seq)) * (-1) ** ((k - 1) * (i - 1))


def pairing_weight2(gens: Sequence[GeneratorSymbol], dual_gens: Sequence[GeneratorSymbol], arity: int):
    """Basis lists and pairing matrix between F(E^∨)^{(2)} and F(E)^{(2)} in one arity."""
    eb = [m.shape for m in tr.enumerate_free_basis(gens, arity, max_weight=2) if tr.tree_weight(m.shape) == 2]
    fb = [m.shape for m in tr.enumerate_free_basis(dual_gens, arity, max_weight=2) if tr.tree_weight(m.shape) == 2]
    eidx = {_strip(t, dual=False): i for i, t in enumerate(eb)}
    rows = {}
    for a, f in enumerate(fb):
        key = _strip(f, dual=True)
        b = eidx.get(key)
        if b is not None:
            rows[a] = {b: shuffle_sign(f)}
    return eb, fb, el.Matrix(len(fb), len(eb), rows)


def _strip(t, dual):
    if tr.is_leaf(t):
        return t
    name = dual_name(t[0]) if dual else t[0]
    return (name, t[1], tuple(_strip(c, dual) for c in t[2]))


def koszul_dual_operad(pres: OperadPresentation) -> OperadPresentation:
    """P^! = F(E^∨)/(R^⊥) for generators all binary or all unary."""
    a = pres.uniform_arity
    if a is None:
        raise UnsupportedPresentationError("Koszul dual operad needs generators all binary or all unary")
    dual_gens = [g.dual_twisted(dual_name(g.name)) for g in pres.generators]
    eb, fb, G = pairing_weight2(pres.generators, dual_gens, 2 * a - 1)
    _, R = pres.relation_basis(2 * a - 1)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", el.DegeneratePairingWarning)
        ann = el.annihilator(R, G)
    dsig = tr.signature(dual_gens)
    rels = [OperadElement(dsig, 2 * a - 1, {fb[i]: c for i, c in v.items()}) for v in ann.vectors()]
    name = pres.name + "^!" if not pres.name.endswith("^!") else pres.name[:-2]
    return OperadPresentation(dual_gens, rels, pres.max_arity, pres.max_weight, name)


# -- Koszul dual cooperad ------------------------------------------------------------

class TruncatedCooperad:
    """P^¡ realized as the suspension-twisted linear dual of P^!.

    Basis of C(n) is dual to the basis of P^!(n); the degree of a weight-w
    element is w plus generator degrees.  ``decompose`` holds the partial
    decomposition Δ_(1) as a map c -> list of (block, outer key, inner key,
    coefficient) where the inner cooperation sits on ``block``.
    """

    def __init__(self, dual: TruncatedOperad, operad: TruncatedOperad, full: bool = False):
        self.Q = dual
        self.P = operad
        self.max_arity = dual.max_arity
        self.max_weight = dual.max_weight
        self.name = operad.name + "^¡"
        self.decompose: Dict[Tuple[int, Key], List[Tuple[tuple, Key, Key, Fraction]]] = {}
        self._full = full
        self._built_arity = set()
        self._kappa = self._kappa_map()
        self._topr: Dict[Tuple[int, int], Dict] = {}
        self.sign_mutation = None

    def dim(self, n: int, w: Optional[int] = None) -> int:
        return self.Q.dim(n, w)

    def dims(self) -> Dict[int, int]:
        return self.Q.dims()

    def keys(self, n: int) -> List[Key]:
        return self.Q.keys(n)

    def degree(self, n: int, key: Key) -> int:
        return key[0] + self.Q.degree(n, key)

    def components(self, n):
        return self.Q.components(n)

    def act_basis(self, n: int, key: Key, sigma: sg.Perm) -> PVec:
        """Contragredient of the P^! action twisted by the sign."""
        # (σ·c)(q) = c(σ^{-1}·q); coordinates read off from Q's action columns
        w = key[0]
        inv = sg.inverse(tuple(sigma))
        s = sg.sign(tuple(sigma))
        out: PVec = {}
        for b in range(self.Q.dim(n, w)):
            v = self.Q.act_basis(n, (w, b), inv)
            c = v.get(key)
            if c:
                out[(w, b)] = s * c
        return out

    def act(self, n: int, vec: PVec, sigma: sg.Perm) -> PVec:
        out: PVec = {}
        for k, c in vec.items():
            for kk, v in self.act_basis(n, k, sigma).items():
                _add(out, kk, c * v)
        return out

    def _kappa_map(self) -> Dict[Key, PVec]:
        out = {}
        for n in range(1, self.max_arity + 1):
            if not self.Q.has(n, 1):
                continue
            for i, key in enumerate(self.Q.basis[(n, 1)]):
                name, j = key[0], key[1]
                out[(n, (1, i))] = self.P.generator_vec(dual_name(name), j)
        return out

    def kappa(self, n: int, key: Key) -> PVec:
        """κ: P^¡ -> P, nonzero only on weight 1 (the suspended generators)."""
        if key[0] != 1:
            return {}
        return self._kappa.get((n, key), {})

    def suspension_sign(self, i: int, k: int, block, n: int) -> int:
        rest = [l for l in range(1, n + 1) if l not in block]
        sigma = tuple(rest[:i - 1]) + tuple(block) + tuple(rest[i - 1:])
        s = sg.sign(sigma) * (-1) ** ((k - 1) * (i - 1))
        if self.sign_mutation == "slot" and i == 2:
            s = -s
        return s

    def build_decomposition(self, n: int) -> None:
        if n in self._built_arity:
            return
        self._built_arity.add(n)
        Q = self.Q
        for k in range(1, n + 1):
            m = n - k + 1
            if not self._full and m > 2 and k > 2:
                continue
            for block in combinations(range(1, n + 1), k):
                rest = [l for l in range(1, n + 1) if l not in block]
                i = sum(1 for l in rest if l < block[0]) + 1
                s = self.suspension_sign(i, k, block, n)
                for x in Q.keys(m):
                    for y in Q.keys(k):
                        if x[0] + y[0] > Q.max_weight:
                            continue
                        z = Q.compose_shuffle(m, {x: Fraction(1)}, k, {y: Fraction(1)}, block)
                        for c_key, v in z.items():
                            self.decompose.setdefault((n, c_key), []).append((block, x, y, s * v))

    def top_binary(self, n: int, key: Key) -> List[Tuple[tuple, tuple, Key, Key, Key, Fraction]]:
        """Terms (B1, B2, top, bottom1, bottom2, coef) with a weight-1 binary top."""
        return [(bl[0], bl[1], t, ys[0], ys[1], c)
                for bl, t, ys, c in self.decompose_top(n, key, 2) if t[0] == 1]

    def decompose_top(self, n: int, key: Key, r: int) -> List[Tuple[tuple, Key, tuple, Fraction]]:
        """Component of the full decomposition with a top cooperation of arity r.

        Entries (blocks, top, bottoms, coef); blocks are sorted by minimum and
        bottom j sits on block j.
        """
        cache = self._topr.setdefault((n, r), None)
        if cache is None:
            cache = {}
            Q = self.Q
            for blocks in sg.ordered_set_partitions(range(1, n + 1), r):
                ks = [len(b) for b in blocks]
                seq = tuple(x for b in blocks for x in b)
                e = sum((k - 1) * j for j, k in enumerate(ks))
                e += sum((ks[a] - 1) * (ks[b] - 1) for a in range(r) for b in range(a + 1, r))
                s = sg.sign(seq) * (-1) ** e
                for x in Q.keys(r):
                    for ys in product(*[Q.keys(k) for k in ks]):
                        if x[0] + sum(y[0] for y in ys) > Q.max_weight:
                            continue
                        z = Q.gamma(r, {x: Fraction(1)}, [(b, k, {y: Fraction(1)}) for b, k, y in zip(blocks, ks, ys)])
                        for ck, v in z.items():
                            cache.setdefault(ck, []).append((blocks, x, ys, s * v))
            self._topr[(n, r)] = cache
        return cache.get(key, [])

    def delta1(self, n: int, key: Key) -> List[Tuple[tuple, Key, Key, Fraction]]:
        self.build_decomposition(n)
        return self.decompose.get((n, key), [])


def koszul_dual_cooperad(pres: OperadPresentation, P: Optional[TruncatedOperad] = None,
                         full: bool = False) -> TruncatedCooperad:
    dual = koszul_dual_operad(pres)
    Q = build_truncated_operad(dual)
    if P is None:
        P = build_truncated_operad(pres)
    return TruncatedCooperad(Q, P, full=full)


# -- direct kernel description of P^¡ ------------------------------------------------

def direct_cooperad_dims(pres: OperadPresentation, max_arity: int = 4) -> Dict[int, int]:
    """dim of C(sE, s²R)(n): weight-(n-1) trees on sE all of whose edges lie in s²R."""
    if not pres.binary:
        raise UnsupportedPresentationError("direct description implemented for binary presentations")
    sgens = [GeneratorSymbol(g.name, g.arity, g.degree + 1, g.dim, g.action, g.kind) for g in pres.generators]
    ssig = tr.signature(sgens)
    r_basis, R = pres.relation_basis(3)
    # s²R: same trees, vertices now odd
    sub = R
    q, proj, _ = el.subspace_quotient(el.Subspace.whole(len(r_basis)), sub)
    ridx = {t: i for i, t in enumerate(r_basis)}
    out = {1: 1}
    for n in range(2, max_arity + 1):
        basis = [m.shape for m in tr.enumerate_free_basis(sgens, n)]
        basis = [t for t in basis if tr.tree_weight(t) == n - 1]
        rows: Dict[tuple, Dict[int, Fraction]] = {}
        for col, t in enumerate(basis):
            for ctx, local, s in _edge_contexts(t, ssig):
                loc = tr.canonical_terms(local, ssig)
                vec = {ridx[tt]: c for tt, c in loc.items()}
                img = proj.apply(vec)
                for qi, v in img.items():
                    rows.setdefault((ctx, qi), {})[col] = rows.get((ctx, qi), {}).get(col, 0) + s * v
        m = el.Matrix(len(rows), len(basis), {i: r for i, r in enumerate(rows.values())})
        out[n] = len(basis) - el.rank(m)
    return out


def _edge_contexts(t, sig):
    """For each internal edge: (context key, local 2-vertex tree, sign)."""
    ids = {}
    pre = []

    def number(u, path):
        if tr.is_leaf(u):
            return
        ids[path] = len(pre)
        pre.append((path, u))
        for p, c in enumerate(u[2]):
            number(c, path + (p,))

    number(t, ())
    res = []
    for path, v in pre:
        for p, u in enumerate(v[2]):
            if tr.is_leaf(u):
                continue
            upath = path + (p,)
            inputs = [c for q, c in enumerate(v[2]) if q != p] + list(u[2])
            inputs.sort(key=tr.min_leaf)
            pos = {id(c): a + 1 for a, c in enumerate(inputs)}
            ukids = tuple(pos[id(c)] for c in u[2])
            vkids = tuple((u[0], u[1], ukids) if q == p else pos[id(c)] for q, c in enumerate(v[2]))
            local = (v[0], v[1], vkids)
            # vertex order: original preorder vs [v, u] + inputs in sorted order
            orig = []

            def collect(x, xp, acc):
                if tr.is_leaf(x):
                    return
                acc.append(ids[xp])
                for q, c in enumerate(x[2]):
                    collect(c, xp + (q,), acc)

            collect(v, path, orig)
            target = [ids[path], ids[upath]]
            for c in inputs:
                cp = _find_path(v, path, c)
                collect(c, cp, target)
            order = [orig.index(x) for x in target]
            degs = [sig[pre[x][1][0]].degree for x in orig]
            s = sg.koszul_sign(order, degs)
            ctx = _replace(t, path, ("#", 0, tuple(inputs)))
            res.append((ctx, local, s))
    return res


def _find_path(v, path, target):
    for q, c in enumerate(v[2]):
        if c is target:
            return path + (q,)
        if not tr.is_leaf(c):
            for qq, cc in enumerate(c[2]):
                if cc is target:
                    return path + (q, qq)
    raise KeyError


def _replace(t, path, new):
    if not path:
        return new
    kids = list(t[2])
    kids[path[0]] = _replace(kids[path[0]], path[1:], new)
    return (t[0], t[1], tuple(kids))


# -- operadic Koszul complexes ------------------------------------------------------------

@dataclass
class OperadicKoszulReport:
    side: str
    betti: Dict[int, Dict[int, int]]     # arity -> degree -> Betti
    dims: Dict[int, Dict[int, int]]

    def is_unit(self) -> bool:
        for n, b in self.betti.items():
            expect = {0: 1} if n == 1 else {}
            if {d: v for d, v in b.items() if v} != expect:
                return False
        return True


def _koszul_left_basis(P: TruncatedOperad, C: TruncatedCooperad, n: int):
    """Basis of (P ∘ C)(n): (p key, blocks, c keys), grouped by C-weight."""
    out: Dict[int, List[tuple]] = {}
    for k in range(1, n + 1):
        for pk in P.keys(k):
            for blocks in sg.ordered_set_partitions(range(1, n + 1), k):
                opts = [C.keys(len(b)) for b in blocks]
                for cs in product(*opts):
                    wt = sum(c[0] for c in cs)
                    if pk[0] + wt > min(P.max_weight, C.max_weight) + 0 and pk[0] + wt > n - 1:
                        continue
                    out.setdefault(wt, []).append((k, pk, blocks, cs))
    return out


def _normalize_left(P, C, k, pvec, items):
    """items: list of (block, c arity, c key); returns {(k, pkey, blocks, ckeys): coef}."""
    mins = [min(b) for b, _, _ in items]
    order = sorted(range(len(items)), key=lambda i: mins[i])
    rank = sg.standardize(mins)
    degs = [C.degree(a, ck) for _, a, ck in items]
    s = sg.koszul_sign(order, degs)
    pv = P.act(k, pvec, rank)
    blocks = tuple(tuple(sorted(items[i][0])) for i in order)
    cs = tuple(items[i][2] for i in order)
    return {(k, pk, blocks, cs): s * v for pk, v in pv.items()}


def left_koszul_complex(P: TruncatedOperad, C: TruncatedCooperad, n: int) -> Tuple[el.ChainComplexData, Dict]:
    """(P ∘_κ P^¡)(n) graded by C-weight; d lowers it by one."""
    basis = _koszul_left_basis(P, C, n)
    index = {d: {b: i for i, b in enumerate(bs)} for d, bs in basis.items()}
    diffs = {}
    for d, bs in basis.items():
        if d == 0:
            continue
        cols = []
        for (k, pk, blocks, cs) in bs:
            col: Dict = {}
            pre_deg = 0
            for j, (b, ck) in enumerate(zip(blocks, cs)):
                a = len(b)
                sgn = -1 if pre_deg % 2 else 1
                for (B1, B2, top, y1, y2, coef) in C.top_binary(a, ck):
                    mu = C.kappa(2, top)
                    newp = P.compose(k, {pk: Fraction(1)}, j + 1, 2, mu)
                    items = [(bb, len(bb), cc) for jj, (bb, cc) in enumerate(zip(blocks, cs)) if jj != j]
                    pair = [(tuple(b[l - 1] for l in B1), len(B1), y1),
                            (tuple(b[l - 1] for l in B2), len(B2), y2)]
                    items = items[:j] + pair + items[j:]
                    for key, v in _normalize_left(P, C, k + 1, newp, items).items():
                        _add(col, key, sgn * coef * v)
                pre_deg += C.degree(a, ck)
            cols.append({index[d - 1][key]: v for key, v in col.items()})
        diffs[d] = el.Matrix.from_columns(len(basis.get(d - 1, [])), cols)
    dims = {d: len(bs) for d, bs in basis.items()}
    return el.ChainComplexData(dims, diffs), basis


def right_koszul_complex(P: TruncatedOperad, C: TruncatedCooperad, n: int) -> Tuple[el.ChainComplexData, Dict]:
    """(P^¡ ∘_κ P)(n) graded by C-weight."""
    basis: Dict[int, List[tuple]] = {}
    for k in range(1, n + 1):
        for ck in C.keys(k):
            for blocks in sg.ordered_set_partitions(range(1, n + 1), k):
                opts = [P.keys(len(b)) for b in blocks]
                for ps in product(*opts):
                    basis.setdefault(ck[0], []).append((k, ck, blocks, ps))
    index = {d: {b: i for i, b in enumerate(bs)} for d, bs in basis.items()}
    diffs = {}
    for d, bs in basis.items():
        if d == 0:
            continue
        cols = []
        for (k, ck, blocks, ps) in bs:
            col: Dict = {}
            for (blk, outer, inner, coef) in C.delta1(k, ck):
                if inner[0] != 1 or len(blk) != 2:
                    continue
                mu = C.kappa(2, inner)
                if not mu:
                    continue
                sgn = -1 if C.degree(k - 1, outer) % 2 else 1
                a, b = blk
                merged = tuple(sorted(blocks[a - 1] + blocks[b - 1]))
                q = P.gamma(2, mu, [(blocks[a - 1], len(blocks[a - 1]), {ps[a - 1]: Fraction(1)}),
                                    (blocks[b - 1], len(blocks[b - 1]), {ps[b - 1]: Fraction(1)})])
                # outer's leaves: standardized positions of the remaining inputs with blk merged at min
                slots = [l for l in range(1, k + 1) if l not in blk or l == a]
                items = []
                for l in slots:
                    if l == a:
                        items.append((merged, q))
                    else:
                        items.append((blocks[l - 1], {ps[l - 1]: Fraction(1)}))
                for key, v in _normalize_right(P, C, k - 1, {outer: Fraction(1)}, items).items():
                    _add(col, key, sgn * coef * v)
            cols.append({index[d - 1][key]: v for key, v in col.items()})
        diffs[d] = el.Matrix.from_columns(len(basis.get(d - 1, [])), cols)
    dims = {d: len(bs) for d, bs in basis.items()}
    return el.ChainComplexData(dims, diffs), basis


def _normalize_right(P, C, k, cvec, items):
    mins = [min(b) for b, _ in items]
    order = sorted(range(len(items)), key=lambda i: mins[i])
    rank = sg.standardize(mins)
    cv = C.act(k, cvec, rank)
    blocks = tuple(items[i][0] for i in order)
    out = {}
    pterms = [list(items[i][1].items()) for i in order]
    for ck, c in cv.items():
        for combo in product(*pterms):
            v = c
            for _, pv in combo:
                v *= pv
            key = (k, ck, blocks, tuple(pk for pk, _ in combo))
            _add(out, key, v)
    return out


def operadic_koszul_homology(P: TruncatedOperad, C: TruncatedCooperad, side: str = "left",
                             max_arity: Optional[int] = None) -> OperadicKoszulReport:
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    N = max_arity or min(P.max_arity, C.max_arity)
    betti, dims = {}, {}
    for n in range(1, N + 1):
        build = left_koszul_complex if side == "left" else right_koszul_complex
        cx, _ = build(P, C, n)
        try:
            cx.check()
        except el.ChainComplexError as e:
            raise SignConventionError(f"{side} Koszul complex, arity {n}: d^2 != 0 in degree {e.degree}") from e
        h = el.homology(cx)
        betti[n] = h.betti
        dims[n] = dict(cx.space_dims)
    return OperadicKoszulReport(side, betti, dims)


# -- Maurer-Cartan for κ ------------------------------------------------------------

@dataclass
class MCReport:
    zero: bool
    checked: int
    offending: Optional[str] = None
    arity: Optional[int] = None


def mc_check_kappa(P: TruncatedOperad, C: TruncatedCooperad, max_arity: Optional[int] = None) -> MCReport:
    """Evaluate ∂κ + κ⋆κ on every basis element of P^¡(n); ∂κ = 0 here."""
    N = max_arity or min(P.max_arity, C.max_arity)
    checked = 0
    for n in range(1, N + 1):
        for ck in C.keys(n):
            checked += 1
            acc: PVec = {}
            for (blk, outer, inner, coef) in C.delta1(n, ck):
                if outer[0] != 1 or inner[0] != 1 or len(blk) != 2 or n != 3:
                    continue
                x = C.kappa(2, outer)
                y = C.kappa(2, inner)
                sgn = -1 if C.degree(2, outer) % 2 else 1
                for k, v in P.compose_shuffle(2, x, 2, y, blk).items():
                    _add(acc, k, sgn * coef * v)
            if acc:
                return MCReport(False, checked, f"arity {n} basis {ck}", n)
    return MCReport(True, checked)
