"""The twisted tensor A ⊗^P D and the algebra-level Koszul criterion.

A ⊗^P D is the coequalizer of P∘P∘(A; D) ⇉ P∘(A; D), realized on
coinvariant bases of P∘(A; D) = ⊕ P(n) ⊗_{S_{n-1}} A^{⊗ n-1} ⊗ D (one D
letter, stored last) modulo the span of p∘_i q(...) - p(..., γ_A(q; ...), ...).
D is either A^¡ (the Koszul complex, twisted by ϰ) or the bar construction
B_κA (twisted by the projection π_κ onto A).  Both are graded by internal
weight and by the C-weight of the D letter, which the differential lowers by 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Dict, List, Optional, Tuple

from . import exactlin as el
from . import operad as op
from . import trees as tr
from .algebra import ConsistencyError, KoszulDualCoalgebra, MonogeneAlgebra, koszul_dual_coalgebra
from .barcobar import (BarComplex, CoalgebraAlphabet, bar_homology, build_bar,
                       build_cobar_and_check, weighted_words)
from .schur import SchurModule, split_class


# -- the coalgebra side ---------------------------------------------------------------

class KoszulSide:
    """D = A^¡; the twisting morphism ϰ sends weight-0 letters to the generators of A."""

    name = "koszul"

    def __init__(self, A: MonogeneAlgebra, Ac: KoszulDualCoalgebra):
        self.alphabet = CoalgebraAlphabet(Ac)
        self.A = A
        self.degrees = self.alphabet.degrees
        self.syzygy = self.alphabet.weights
        self.weights = self.alphabet.weights

    def __len__(self):
        return len(self.alphabet)

    def to_A(self, letter: int) -> Optional[int]:
        v = self.alphabet.generator(letter)
        if v is None:
            return None
        return self.A.letter_index[self.A.generator_letter(v)]

    def top_terms(self, letter: int):
        return self.alphabet.decomposition(letter)

    def internal(self, letter: int) -> Dict[int, Fraction]:
        return {}


class BarSide:
    """D = B_κA; π_κ sends id ⊗ a to a and kills the rest."""

    name = "bar"

    def __init__(self, A: MonogeneAlgebra, bar: BarComplex):
        self.A, self.bar = A, bar
        self.letters = [k for w in range(bar.W + 1) for om in range(w + 1) for k in bar.basis[(w, om)]]
        self.letter_index = {k: i for i, k in enumerate(self.letters)}
        self.degrees = [bar.schur.degree(k) for k in self.letters]
        self.syzygy = [k[1] for k in self.letters]
        lw = A.letter_weights
        self.weights = [k[1] + sum(lw[l] for l in k[2]) for k in self.letters]
        self._dec: Dict[int, List] = {}

    def __len__(self):
        return len(self.letters)

    def to_A(self, letter: int) -> Optional[int]:
        n, cw, word, j = self.letters[letter]
        if n == 1 and cw == 0:
            return word[0]
        return None

    def top_terms(self, letter: int):
        r = self._dec.get(letter)
        if r is not None:
            return r
        bar, C = self.bar, self.bar.C
        acc: Dict[Tuple, Fraction] = {}
        for a in sorted({g.arity for g in self.A.P.generators}):
            for top, bottoms, coef in split_class(C, bar.schur, self.letters[letter], a, lambda t: t[0] == 1):
                vecs = [list(bar.schur.normalize(k, {y: Fraction(1)}, bw).items()) for k, y, bw in bottoms]
                for combo in product(*vecs):
                    c = coef
                    for _, v in combo:
                        c *= v
                    key = (a, top, tuple(self.letter_index[k] for k, _ in combo))
                    acc[key] = acc.get(key, 0) + c
        r = [(C.kappa(a, t), a, bw, c) for (a, t, bw), c in sorted(acc.items()) if c]
        self._dec[letter] = r
        return r

    def internal(self, letter: int) -> Dict[int, Fraction]:
        return {self.letter_index[k]: v for k, v in self.bar.apply(self.letters[letter]).items()}


# -- the twisted tensor -------------------------------------------------------------------

class TwistedTensor:
    """A ⊗^P D per (internal weight w, degree k) with d = d_D - d^l.

    ``mutate="untwisted"`` keeps only the summand whose last bottom stays in D,
    instead of summing the twist over all placements; used for fault injection.
    """

    def __init__(self, A: MonogeneAlgebra, side, max_weight: Optional[int] = None, mutate: Optional[str] = None):
        self.A, self.side = A, side
        self.P = A.P
        self.W = A.W if max_weight is None else min(max_weight, A.W)
        self.mutate = mutate
        self.nA = len(A.letters)
        self.schur = SchurModule(self.P, list(A.letter_degrees) + list(side.degrees))
        self.ambient: Dict[Tuple[int, int], List] = {}
        self.aindex: Dict[Tuple[int, int], Dict] = {}
        self._enumerate()
        self.relations: Dict[Tuple[int, int], el.Subspace] = {}
        self._relations()
        self.basis: Dict[Tuple[int, int], List[int]] = {}
        self.qindex: Dict[Tuple[int, int], Dict[int, int]] = {}
        for key, sub in self.relations.items():
            piv = set(sub.pivots())
            self.basis[key] = [i for i in range(len(self.ambient[key])) if i not in piv]
            self.qindex[key] = {a: j for j, a in enumerate(self.basis[key])}
        self.d: Dict[Tuple[int, int], el.Matrix] = {}
        for w in range(self.W + 1):
            for k in range(1, w + 1):
                self.d[(w, k)] = self._differential(w, k)

    # spaces -------------------------------------------------------------------------
    def _enumerate(self):
        A, P, side = self.A, self.P, self.side
        lw = A.letter_weights
        for w in range(self.W + 1):
            for k in range(w + 1):
                self.ambient[(w, k)] = []
        for dl in range(len(side)):
            iw, k = side.weights[dl], side.syzygy[dl]
            for w in range(iw, self.W + 1):
                rem = w - iw
                keys = self.ambient[(w, k)]
                for pw in range(rem + 1):
                    for n in range(1, P.max_arity + 1):
                        if not P.dim(n, pw):
                            continue
                        for aw in weighted_words(lw, n - 1, rem - pw):
                            keys.extend(self.schur.keys_for_word(n, pw, aw + (self.nA + dl,)))
        for key, keys in self.ambient.items():
            self.aindex[key] = {x: i for i, x in enumerate(keys)}

    def _relations(self):
        A, P, side = self.A, self.P, self.side
        lw = A.letter_weights
        gens = [(g.name, j) for g in P.generators for j in range(g.dim)]
        rows: Dict[Tuple[int, int], List] = {key: [] for key in self.ambient}
        for name, j in gens:
            q = P.generator_vec(name, j)
            ka = P.sig[name].arity
            for qa in _all_sorted(ka, lw, self.W):
                qw = sum(lw[l] for l in qa)
                if 1 + qw > self.W:
                    continue
                prod = A.gamma(ka, q, [{A.letters[l]: Fraction(1)} for l in qa])
                for dl in range(len(side)):
                    iw, k = side.weights[dl], side.syzygy[dl]
                    base = 1 + qw + iw
                    for w in range(base, self.W + 1):
                        rem = w - base
                        for pw in range(rem + 1):
                            for m in range(2, P.max_arity + 1):
                                if not P.dim(m, pw) or m - 1 + ka > P.max_arity:
                                    continue
                                for pa in weighted_words(lw, m - 2, rem - pw):
                                    tail = pa + (self.nA + dl,)
                                    for b in range(P.dim(m, pw)):
                                        pk = (pw, b)
                                        row: Dict[int, Fraction] = {}
                                        z = P.compose(m, {pk: Fraction(1)}, 1, ka, q)
                                        idx = self.aindex[(w, k)]
                                        for x, v in self.schur.normalize(m - 1 + ka, z, qa + tail).items():
                                            el.vec_add(row, {idx[x]: v})
                                        for l, c in prod.items():
                                            li = A.letter_index[l]
                                            for x, v in self.schur.normalize(m, {pk: Fraction(1)}, (li,) + tail).items():
                                                el.vec_add(row, {idx[x]: v}, -c)
                                        if row:
                                            rows[(w, k)].append(row)
        for key, r in rows.items():
            self.relations[key] = el.Subspace.span(len(self.ambient[key]), r)

    def dim(self, w: int, k: int) -> int:
        return len(self.basis.get((w, k), ()))

    def ambient_dim(self, w: int, k: int) -> int:
        return len(self.ambient.get((w, k), ()))

    # differential ---------------------------------------------------------------------
    def apply(self, x) -> Dict:
        """d = d_D - d^l on one ambient basis class."""
        A, P, side, nA = self.A, self.P, self.side, self.nA
        ldeg = self.schur.ldeg
        n, pk, word = self.schur.rep(x)
        dl = word[-1] - nA
        pre = word[:-1]
        e = (P.degree(n, pk) + sum(ldeg[l] for l in pre)) % 2
        s = -1 if e else 1
        out: Dict = {}
        for dd, c in side.internal(dl).items():
            for t, v in self.schur.normalize(n, {pk: Fraction(1)}, pre + (nA + dd,)).items():
                el.vec_add(out, {t: v}, s * c)
        for mu, r, bw, c in side.top_terms(dl):
            z = P.compose(n, {pk: Fraction(1)}, n, r, mu)
            # one bottom stays in D, the others go to A through the twisting morphism
            for keep in range(r):
                if self.mutate == "untwisted" and keep != r - 1:
                    continue
                tail = []
                for i, b in enumerate(bw):
                    a = nA + b if i == keep else side.to_A(b)
                    if a is None:
                        break
                    tail.append(a)
                else:
                    for t, v in self.schur.normalize(n + r - 1, z, pre + tuple(tail)).items():
                        el.vec_add(out, {t: v}, -s * c)
        return out

    def _differential(self, w: int, k: int) -> el.Matrix:
        src, tgt = (w, k), (w, k - 1)
        idx = self.aindex[tgt]
        rel = self.relations[tgt]
        q = self.qindex[tgt]
        cols = []
        for a in self.basis[src]:
            img = {}
            for t, v in self.apply(self.ambient[src][a]).items():
                if t not in idx:
                    raise el.DimensionMismatchError(f"differential left component {tgt}: {t}")
                el.vec_add(img, {idx[t]: v})
            cols.append({q[i]: c for i, c in rel.residue(img).items()})
        return el.Matrix.from_columns(len(self.basis[tgt]), cols)

    def relations_stable(self) -> bool:
        """d maps the span of c0 - c1 into itself, so the quotient differential is well defined."""
        for (w, k), sub in self.relations.items():
            if k == 0:
                continue
            tgt = self.relations[(w, k - 1)]
            idx = self.aindex[(w, k - 1)]
            for r in sub.vectors():
                img: Dict[int, Fraction] = {}
                for a, c in r.items():
                    for t, v in self.apply(self.ambient[(w, k)][a]).items():
                        el.vec_add(img, {idx[t]: v}, c)
                if not tgt.contains(img):
                    return False
        return True

    def check(self) -> None:
        for w in range(self.W + 1):
            for k in range(2, w + 1):
                if not (self.d[(w, k - 1)] @ self.d[(w, k)]).is_zero():
                    raise el.ChainComplexError(k, f"d² ≠ 0 in A⊗^P D at weight {w}, degree {k}")

    def complex(self, w: int) -> el.ChainComplexData:
        return el.ChainComplexData({k: self.dim(w, k) for k in range(w + 1)},
                                   {k: self.d[(w, k)] for k in range(1, w + 1)})

    def betti(self, w: int) -> Dict[int, int]:
        return el.homology(self.complex(w)).betti

    def table(self) -> Dict[int, List[int]]:
        return {w: [self.dim(w, k) for k in range(w + 1)] for w in range(self.W + 1)}


def _all_sorted(n: int, weights: List[int], W: int):
    for t in weighted_words(weights, n, 0):
        yield t
    for total in range(1, W + 1):
        for t in weighted_words(weights, n, total):
            yield t


def build_coequalizer(A: MonogeneAlgebra, Ac: KoszulDualCoalgebra, max_weight: Optional[int] = None) -> TwistedTensor:
    return TwistedTensor(A, KoszulSide(A, Ac), max_weight)


def twisted_differential(t: TwistedTensor, check: bool = True) -> TwistedTensor:
    """The differential is assembled at construction; this asserts d² = 0."""
    if check:
        t.check()
    return t


@dataclass
class ComplexReport:
    betti: Dict[int, Dict[int, int]]
    koszul: bool
    first_failure: Optional[int]

    def records(self) -> List[Dict]:
        return [{"weight": w, "by_degree": [self.betti[w].get(k, 0) for k in range(w + 1)]} for w in sorted(self.betti)]


def koszul_complex_homology(t: TwistedTensor) -> ComplexReport:
    """Koszul up to W iff the homology of A⊗^P A^¡ sits in degree 0."""
    betti = {w: t.betti(w) for w in range(t.W + 1)}
    first = next((w for w in sorted(betti) if any(v for k, v in betti[w].items() if k)), None)
    return ComplexReport(betti, first is None, first)


# -- the consolidated criterion -------------------------------------------------------------

class VerdictDisagreement(AssertionError):
    pass


@dataclass
class KoszulVerdict:
    koszul_up_to: int
    koszul: bool
    criteria: Dict[str, Optional[bool]]
    first_failure: Optional[int]
    first_failures: Dict[str, Optional[int]] = field(default_factory=dict)
    details: Dict[str, object] = field(default_factory=dict)

    def record(self) -> Dict:
        return {"koszul_up_to": self.koszul_up_to, "criteria": dict(self.criteria), "first_failure": self.first_failure}


def deep_comparison(A: MonogeneAlgebra, Ac: KoszulDualCoalgebra, bar: BarComplex, max_weight: int = 3):
    """Deep criterion: homology of A⊗^P A^¡ against A⊗^P B_κA, weight by weight."""
    W = min(max_weight, A.W)
    left = TwistedTensor(A, KoszulSide(A, Ac), W)
    right = TwistedTensor(A, BarSide(A, bar), W)
    left.check()
    right.check()
    bl = {w: left.betti(w) for w in range(W + 1)}
    br = {w: right.betti(w) for w in range(W + 1)}
    first = next((w for w in range(W + 1) if bl[w] != br[w]), None)
    return first is None, first, bl, br


def koszul_criterion(A: MonogeneAlgebra, Ac: Optional[KoszulDualCoalgebra] = None, deep: bool = False,
                     deep_weight: int = 3, strict: bool = True) -> KoszulVerdict:
    """Run the bar, cobar and Koszul-complex criteria (and optionally the deep one); they must agree.

    The Koszul-complex criterion only counts when the operad satisfies the Kähler
    condition (see ``presets.satisfies_star``); otherwise it is reported as None
    and its raw outcome is kept in ``details["complex_raw"]``.
    """
    from .presets import satisfies_star
    if Ac is None:
        Ac = koszul_dual_coalgebra(A)
    bar = build_bar(A, Ac.C)
    hb = bar_homology(bar, Ac)
    cb = build_cobar_and_check(A, Ac)
    t = build_coequalizer(A, Ac)
    t.check()
    hk = koszul_complex_homology(t)
    star = satisfies_star(A.pres.operad)
    crit = {"bar": hb.koszul, "cobar": cb.quasi_iso, "complex": hk.koszul if star else None, "deep": None}
    firsts = {"bar": hb.first_failure, "cobar": cb.first_failure}
    if star:
        firsts["complex"] = hk.first_failure
    details: Dict[str, object] = {"bar": hb, "cobar": cb, "complex": hk, "complex_raw": hk.koszul, "star": star}
    first = hb.first_failure
    if deep:
        ok, dfirst, bl, br = deep_comparison(A, Ac, bar, deep_weight)
        W_deep = min(deep_weight, A.W)
        crit["deep"] = ok
        firsts["deep"] = dfirst
        details["deep"] = (bl, br)
        # the deep check only sees weights <= deep_weight
        expect = first if first is not None and first <= W_deep else None
        if strict and dfirst != expect:
            raise VerdictDisagreement(f"deep criterion disagrees: {firsts}")
    shallow = {k: v for k, v in firsts.items() if k != "deep"}
    if strict and len(set(shallow.values())) > 1:
        raise VerdictDisagreement(f"first failing weights disagree: {firsts}")
    return KoszulVerdict(A.W if first is None else first - 1, first is None, crit, first, firsts, details)


# -- specializations --------------------------------------------------------------------

class _Augmented:
    """A₊ = 𝕂 ⊕ A with keys None (the unit) and A letters."""

    def __init__(self, A: MonogeneAlgebra, op_name: str):
        self.A = A
        self.m = A.P.generator_vec(op_name, 0)
        self.unit = None

    def keys(self, W: int):
        return [None] + [l for l in self.A.letters if l[0] + 1 <= W]

    def weight(self, k) -> int:
        return 0 if k is None else k[0] + 1

    def mul(self, x: Dict, y: Dict) -> Dict:
        out: Dict = {}
        for a, ca in x.items():
            for b, cb in y.items():
                if a is None:
                    el.vec_add(out, {b: cb}, ca)
                elif b is None:
                    el.vec_add(out, {a: ca}, cb)
                elif a[0] + b[0] + 1 <= self.A.W:
                    el.vec_add(out, self.A.gamma(2, self.m, [{a: Fraction(1)}, {b: Fraction(1)}]), ca * cb)
        return out


class _Enveloping:
    """A₊ ⊗ A₊^op, acting on a bimodule slot as l·M·r."""

    def __init__(self, A: MonogeneAlgebra):
        self.plus = _Augmented(A, "m")
        self.unit = (None, None)

    def keys(self, W: int):
        ks = self.plus.keys(W)
        return [(l, r) for l in ks for r in ks if self.weight((l, r)) <= W]

    def weight(self, k) -> int:
        return self.plus.weight(k[0]) + self.plus.weight(k[1])

    def mul(self, x: Dict, y: Dict) -> Dict:
        out: Dict = {}
        for (l1, r1), c1 in x.items():
            for (l2, r2), c2 in y.items():
                for l, cl in self.plus.mul({l1: Fraction(1)}, {l2: Fraction(1)}).items():
                    for r, cr in self.plus.mul({r2: Fraction(1)}, {r1: Fraction(1)}).items():
                        el.vec_add(out, {(l, r): cl * cr}, c1 * c2)
        return out


class _Symmetric:
    """S(𝔤) = U(𝔤) for abelian 𝔤 = A^{(0)}; keys are sorted tuples of letters."""

    def __init__(self, A: MonogeneAlgebra):
        self.gens = [l for l in A.letters if l[0] == 0]
        self.unit = ()

    def keys(self, W: int):
        from itertools import combinations_with_replacement
        return [k for n in range(W + 1) for k in combinations_with_replacement(self.gens, n)]

    def weight(self, k) -> int:
        return len(k)

    def mul(self, x: Dict, y: Dict) -> Dict:
        out: Dict = {}
        for a, ca in x.items():
            for b, cb in y.items():
                el.vec_add(out, {tuple(sorted(a + b)): ca * cb})
        return out


class Specialization:
    """Classical model U ⊗ C of A ⊗^P C with U the enveloping algebra of the kind.

    com: U = A₊; lie: U = S(𝔤) (abelian 𝔤 only); as: U = A₊ ⊗ A₊^op;
    module: U = B₊ for the associative algebra B whose arity-one operad acts.
    """

    def __init__(self, t: TwistedTensor, kind: str, base: Optional[MonogeneAlgebra] = None):
        A = t.A
        self.t, self.kind, self.A = t, kind, A
        if any(A.letter_degrees) or any(g.degree for g in A.P.generators):
            raise NotImplementedError("specializations are built for degree-0 presentations")
        if kind == "com":
            self.U = _Augmented(A, "mu")
        elif kind == "as":
            self.U = _Enveloping(A)
        elif kind == "lie":
            if any(l[0] for l in A.letters):
                raise ValueError("the Lie specialization needs an abelian Lie algebra")
            self.U = _Symmetric(A)
        elif kind == "module":
            if base is None:
                from .presets import arity_one_algebra
                from .algebra import build_algebra
                base = build_algebra(arity_one_algebra(A.pres.operad, A.P.max_weight))
            self.base = base
            self.U = _Augmented(base, "m")
        else:
            raise ValueError(f"unknown specialization {kind!r}")
        side = t.side
        self.basis: Dict[Tuple[int, int], List] = {}
        for w in range(t.W + 1):
            for k in range(w + 1):
                self.basis[(w, k)] = []
        for dl in range(len(side)):
            for u in self.U.keys(t.W):
                w = self.U.weight(u) + side.weights[dl]
                if w <= t.W:
                    self.basis[(w, side.syzygy[dl])].append((u, dl))
        self.index = {key: {x: i for i, x in enumerate(b)} for key, b in self.basis.items()}

    # evaluation of operations with one module slot ------------------------------------------
    def _act(self, name: str, j: int, kids: List[Tuple[str, Dict]]) -> Tuple[str, Dict]:
        A, U = self.A, self.U
        slot = [i for i, (tag, _) in enumerate(kids) if tag == "U"]
        if not slot:
            g = A.P.generator_vec(name, j)
            return "A", A.gamma(len(kids), g, [v for _, v in kids])
        if len(slot) > 1:
            raise ConsistencyError("two module slots in one operation")
        i = slot[0]
        m = kids[i][1]
        if self.kind == "module":
            # unary generator x acts by left multiplication by the letter x
            x = self.base.generator_letter(self.base.pres.letter(name))
            return "U", U.mul({x: Fraction(1)}, m)
        (_, a), = [kid for k, kid in enumerate(kids) if k != i]
        if self.kind == "com":
            return "U", U.mul(a, m)
        if self.kind == "lie":
            sign = 1 if i == 1 else -1
            return "U", U.mul({(l,): sign * c for l, c in a.items()}, m)
        # as: basis 1 of the regular representation reads its inputs in reverse
        left = (i == 1) == (j == 0)
        if left:
            return "U", U.mul({(l, None): c for l, c in a.items()}, m)
        return "U", U.mul({(None, l): c for l, c in a.items()}, m)

    def _eval_tree(self, t, inputs):
        if tr.is_leaf(t):
            return inputs[t - 1]
        name, j, kids = t
        return self._act(name, j, [self._eval_tree(c, inputs) for c in kids])

    def eval(self, n: int, pvec: Dict, inputs) -> Dict:
        out: Dict = {}
        for pk, c in pvec.items():
            tag, v = self._eval_tree(self.A.P.basis_tree(n, pk), inputs)
            if tag != "U":
                raise ConsistencyError("module slot lost during evaluation")
            el.vec_add(out, v, c)
        return out

    def phi(self, x) -> Dict:
        """p(a_1, ..., a_{n-1}, δ) ↦ eval(p; a's, slot) ⊗ δ."""
        t, A = self.t, self.A
        n, pk, word = t.schur.rep(x)
        inputs = [("A", {A.letters[l]: Fraction(1)}) for l in word[:-1]] + [("U", {self.U.unit: Fraction(1)})]
        dl = word[-1] - t.nA
        return {(u, dl): c for u, c in self.eval(n, {pk: Fraction(1)}, inputs).items()}

    def d(self, u, dl) -> Dict:
        """d(u ⊗ c) = -Σ u·eval(μ; ϰ(c_1), ..., slot, ...) ⊗ c_keep."""
        side, A = self.t.side, self.A
        out: Dict = {}
        for mu, r, bw, c in side.top_terms(dl):
            for keep in range(r):
                inputs = []
                for i, b in enumerate(bw):
                    if i == keep:
                        inputs.append(("U", {self.U.unit: Fraction(1)}))
                        continue
                    a = side.to_A(b)
                    if a is None:
                        break
                    inputs.append(("A", {A.letters[a]: Fraction(1)}))
                else:
                    for v, cv in self.U.mul({u: Fraction(1)}, self.eval(r, mu, inputs)).items():
                        el.vec_add(out, {(v, bw[keep]): -c * cv})
        return out


@dataclass
class SpecializationReport:
    kind: str
    ok: bool
    generic_dims: Dict[int, List[int]]
    special_dims: Dict[int, List[int]]
    relations_killed: bool
    invertible: bool
    intertwined: bool
    first_failure: Optional[Tuple[int, int]] = None

    def record(self) -> Dict:
        return {"kind": self.kind, "ok": self.ok, "generic_dims": self.generic_dims,
                "special_dims": self.special_dims, "relations_killed": self.relations_killed,
                "invertible": self.invertible, "intertwined": self.intertwined,
                "first_failure": self.first_failure}


def specialization_check(A: MonogeneAlgebra, kind: str, Ac: Optional[KoszulDualCoalgebra] = None,
                         max_weight: Optional[int] = None, base: Optional[MonogeneAlgebra] = None
                         ) -> SpecializationReport:
    """Compare A ⊗^P A^¡ with its classical model U ⊗_ϰ A^¡ under the evaluation map φ.

    Checks that φ kills the coequalizer relations, is invertible on the quotient in
    every (weight, degree), and intertwines the two differentials.
    """
    if Ac is None:
        Ac = koszul_dual_coalgebra(A)
    t = TwistedTensor(A, KoszulSide(A, Ac), max_weight)
    t.check()
    S = Specialization(t, kind, base)
    W = t.W
    gd = {w: [t.dim(w, k) for k in range(w + 1)] for w in range(W + 1)}
    sd = {w: [len(S.basis[(w, k)]) for k in range(w + 1)] for w in range(W + 1)}
    killed = invertible = intertwined = True
    first = None

    def fail(w, k):
        nonlocal first
        if first is None:
            first = (w, k)

    phis: Dict[Tuple[int, int], List[Dict]] = {}
    for w in range(W + 1):
        for k in range(w + 1):
            amb = t.ambient[(w, k)]
            idx = S.index[(w, k)]

            def image(vec):
                out: Dict[int, Fraction] = {}
                for a, c in vec.items():
                    for key, v in S.phi(amb[a]).items():
                        if key not in idx:
                            raise el.DimensionMismatchError(f"φ left component {(w, k)}")
                        el.vec_add(out, {idx[key]: v}, c)
                return out

            if any(image(r) for r in t.relations[(w, k)].vectors()):
                killed = False
                fail(w, k)
            cols = [image({a: Fraction(1)}) for a in t.basis[(w, k)]]
            phis[(w, k)] = cols
            m = el.Matrix.from_columns(len(idx), cols)
            if len(cols) != len(idx) or el.rank(m) != len(idx):
                invertible = False
                fail(w, k)
    for w in range(W + 1):
        for k in range(1, w + 1):
            src, tgt = S.basis[(w, k)], S.index[(w, k - 1)]
            dT = t.d[(w, k)]
            lhs_cols = dT.columns()
            for a, phic in enumerate(phis[(w, k)]):
                lhs: Dict[int, Fraction] = {}
                for b, c in lhs_cols[a].items():
                    el.vec_add(lhs, phis[(w, k - 1)][b], c)
                rhs: Dict[int, Fraction] = {}
                for i, c in phic.items():
                    u, dl = src[i]
                    for key, v in S.d(u, dl).items():
                        el.vec_add(rhs, {tgt[key]: v}, c)
                el.vec_add(lhs, rhs, -1)
                if lhs:
                    intertwined = False
                    fail(w, k)
                    break
    ok = killed and invertible and intertwined
    return SpecializationReport(kind, ok, gd, sd, killed, invertible, intertwined, first)


# -- Kähler module oracle ------------------------------------------------------------

def kahler_dims(A: MonogeneAlgebra, kind: str, W: Optional[int] = None) -> List[int]:
    """dims of Ω_P(A) per internal weight for P = As or Com, computed classically.

    as: Ω = ker(A₊ ⊗ A₊ -> A₊), so its dims are those of A₊⊗A₊ minus A₊.
    com: Ω¹ = A₊ ⊗ V modulo A₊·d(S), with d the universal derivation.
    Internal weight w corresponds to w + 1 letters of V.
    """
    W = A.W if W is None else W
    a = [1] + [A.dim(w) for w in range(W + 1)]      # A₊ by number of letters
    if kind == "as":
        return [sum(a[i] * a[w + 1 - i] for i in range(w + 2)) - a[w + 1] for w in range(W + 1)]
    if kind != "com":
        raise ValueError(f"no Kähler oracle for {kind!r}")
    plus = _Augmented(A, "mu")
    gens = [A.generator_letter(i) for i in range(len(A.pres.generators))]
    ds = []
    for rel in A.pres.relations:
        v: Dict = {}
        for c, _, _, (x, y) in rel:
            lx, ly = gens[A.pres.letter(x)], gens[A.pres.letter(y)]
            el.vec_add(v, {(lx, ly): Fraction(c)})
            el.vec_add(v, {(ly, lx): Fraction(c)})
        ds.append(v)
    out = []
    for w in range(W + 1):
        # A₊ ⊗ V in internal weight w: A₊ part has w letters
        us = [None] if w == 0 else [(w - 1, i) for i in range(A.dim(w - 1))]
        tgt = {(u, g): k for k, (u, g) in enumerate((u, g) for u in us for g in gens)}
        cols = []
        if w >= 1:
            # u · d(s) with d(s) carrying one letter besides dv
            for u in ([None] if w == 1 else [(w - 2, i) for i in range(A.dim(w - 2))]):
                for v in ds:
                    col: Dict[int, Fraction] = {}
                    for (coeff_letter, g), c in v.items():
                        for p, cp in plus.mul({u: Fraction(1)}, {coeff_letter: Fraction(1)}).items():
                            el.vec_add(col, {tgt[(p, g)]: c * cp})
                    cols.append(col)
        r = el.rank(el.Matrix.from_columns(len(tgt), cols)) if cols else 0
        out.append(len(tgt) - r)
    return out
