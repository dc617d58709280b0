"""Bar construction B_κA = sP^¡(A) and cobar construction Ω_κA^¡ = P(s⁻¹A^¡).

Both are graded by internal weight.  The bar side carries a second grading,
the weight-degree ω = total A-weight of the letters, which d_κ raises by one.
Homological degrees follow from the labels and are never stored separately.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Dict, List, Optional, Tuple

from . import exactlin as el
from . import operad as op
from .algebra import KoszulDualCoalgebra, MonogeneAlgebra, koszul_dual_coalgebra
from .schur import SchurModule, shuffle_split, words


def weighted_words(weights: List[int], n: int, total: int):
    """Sorted words of length n over letters with the given (ascending) weights, weight sum = total."""
    def rec(start, left, rem):
        if left == 0:
            if rem == 0:
                yield ()
            return
        for l in range(start, len(weights)):
            if weights[l] > rem:
                break
            for rest in rec(l, left - 1, rem - weights[l]):
                yield (l,) + rest
    return rec(0, n, total)


def _cochain_homology(dims: Dict[int, int], maps: Dict[int, el.Matrix]) -> Dict[int, int]:
    """Betti numbers of V_0 -> V_1 -> ... with maps[k]: V_k -> V_{k+1}."""
    ranks = {k: m.rank() for k, m in maps.items()}
    return {k: dims[k] - ranks.get(k, 0) - ranks.get(k - 1, 0) for k in sorted(dims)}


# -- bar ----------------------------------------------------------------------------

class BarComplex:
    """sP^¡(A) per (internal weight w, weight-degree ω) with d_κ: ω -> ω + 1."""

    def __init__(self, A: MonogeneAlgebra, C: op.TruncatedCooperad):
        self.A, self.C = A, C
        self.W = A.W
        spread = max([g.arity - 1 for g in A.P.generators] + [0])
        need = max(1, 1 + self.W * spread)
        if C.max_arity < need:
            raise op.TruncationError("cooperad arity too small for the bar construction", needed=need)
        self.schur = SchurModule(C, A.letter_degrees)
        self.basis: Dict[Tuple[int, int], List] = {}
        self.index: Dict[Tuple[int, int], Dict] = {}
        lw = A.letter_weights
        for w in range(self.W + 1):
            for om in range(w + 1):
                cw = w - om
                keys = []
                for n in range(1, C.max_arity + 1):
                    if not C.dim(n, cw):
                        continue
                    for word in weighted_words(lw, n, om):
                        keys.extend(self.schur.keys_for_word(n, cw, word))
                self.basis[(w, om)] = keys
                self.index[(w, om)] = {k: i for i, k in enumerate(keys)}
        self.d: Dict[Tuple[int, int], el.Matrix] = {}
        for w in range(self.W + 1):
            for om in range(w):
                self.d[(w, om)] = self._differential(w, om)

    def dim(self, w: int, om: int) -> int:
        return len(self.basis.get((w, om), ()))

    def table(self) -> Dict[int, List[int]]:
        return {w: [self.dim(w, om) for om in range(w + 1)] for w in range(self.W + 1)}

    def apply(self, key) -> Dict:
        """d_κ of one basis class: Δ_(1) with a weight-1 inner part, then κ and γ_A."""
        A, C = self.A, self.C
        ldeg = A.letter_degrees
        n, mk, word = self.schur.rep(key)
        out: Dict = {}
        for B, x, y, coef in C.delta1(n, mk):
            k = len(B)
            if y[0] != 1:
                continue
            i, w2, s1 = shuffle_split(word, B, n, ldeg)
            before = sum(ldeg[l] for l in w2[:i - 1])
            # y passes the earlier letters, then κ (degree -1) passes x and them
            e = C.degree(k, y) * before + C.degree(n - k + 1, x) + before
            s = s1 * (-1) ** (e % 2)
            ins = [{A.letters[l]: Fraction(1)} for l in w2[i - 1:i - 1 + k]]
            prod = A.gamma(k, C.kappa(k, y), ins)
            for l, c in prod.items():
                tw = w2[:i - 1] + (A.letter_index[l],) + w2[i - 1 + k:]
                for tk, v in self.schur.normalize(n - k + 1, {x: Fraction(1)}, tw).items():
                    el.vec_add(out, {tk: v}, coef * s * c)
        return out

    def _differential(self, w: int, om: int) -> el.Matrix:
        tgt = self.index[(w, om + 1)]
        cols = []
        for key in self.basis[(w, om)]:
            col = {}
            for tk, v in self.apply(key).items():
                j = tgt.get(tk)
                if j is None:
                    raise el.DimensionMismatchError(f"d_κ left the component (w={w}, ω={om + 1}): {tk}")
                col[j] = v
            cols.append(col)
        return el.Matrix.from_columns(len(tgt), cols)

    def check(self) -> None:
        for w in range(self.W + 1):
            for om in range(w - 1):
                if not (self.d[(w, om + 1)] @ self.d[(w, om)]).is_zero():
                    raise el.ChainComplexError(om, f"d_κ² ≠ 0 at internal weight {w}, weight-degree {om}")

    def betti(self, w: int) -> List[int]:
        dims = {om: self.dim(w, om) for om in range(w + 1)}
        maps = {om: self.d[(w, om)] for om in range(w)}
        h = _cochain_homology(dims, maps)
        return [h[om] for om in range(w + 1)]

    def embed_coalgebra(self, Ac: KoszulDualCoalgebra, w: int) -> List[Dict[int, Fraction]]:
        """g_ϰ: A^¡ basis of weight w in bar coordinates (weight-degree 0)."""
        A = self.A
        vmap = {v: A.letter_index[A.generator_letter(v)] for v in range(A.dimV)}
        idx = self.index[(w, 0)]
        out = []
        for vec in Ac.basis[w]:
            img = {}
            for ci, c in vec.items():
                n, cw, word, j = Ac.cfree[w][ci]
                bk = (n, cw, tuple(vmap[l] for l in word), j)
                img[idx[bk]] = c
            out.append(img)
        return out


def build_bar(A: MonogeneAlgebra, C: Optional[op.TruncatedCooperad] = None, check: bool = True) -> BarComplex:
    if C is None:
        C = _cooperad_for(A)
    b = BarComplex(A, C)
    if check:
        b.check()
    return b


def _cooperad_for(A: MonogeneAlgebra) -> op.TruncatedCooperad:
    from .algebra import truncated_operad_for
    return op.TruncatedCooperad(truncated_operad_for(op.koszul_dual_operad(A.pres.operad), A.W), A.P)


@dataclass
class H0Report:
    match: bool
    kernel_dims: List[int]
    coalgebra_dims: List[int]
    counterexample: Optional[Tuple[int, Dict[int, Fraction]]] = None


def bar_h0_check(bar: BarComplex, Ac: KoszulDualCoalgebra) -> H0Report:
    """ker(d_κ) in weight-degree 0 against the embedded A^¡, as subspaces."""
    kd, cd = [], []
    bad = None
    for w in range(bar.W + 1):
        dim0 = bar.dim(w, 0)
        ker = el.kernel(bar.d[(w, 0)]) if w > 0 else el.Subspace.whole(dim0)
        img = el.Subspace.span(dim0, bar.embed_coalgebra(Ac, w))
        kd.append(ker.dim)
        cd.append(img.dim)
        if bad is None and ker != img:
            for v in ker.vectors():
                if not img.contains(v):
                    bad = (w, v)
                    break
            else:
                bad = (w, next(v for v in img.vectors() if not ker.contains(v)))
    return H0Report(bad is None, kd, cd, bad)


@dataclass
class BarHomologyReport:
    betti: Dict[int, List[int]]
    coalgebra_dims: List[int]
    koszul: bool
    first_failure: Optional[int]
    euler_ok: bool = True

    def records(self) -> List[Dict]:
        return [{"weight": w, "by_degree": self.betti[w]} for w in sorted(self.betti)]


def bar_homology(bar: BarComplex, Ac: Optional[KoszulDualCoalgebra] = None) -> BarHomologyReport:
    """Koszul up to W iff bar homology sits in weight-degree 0 (with dims of A^¡)."""
    betti = {w: bar.betti(w) for w in range(bar.W + 1)}
    cdims = Ac.dims() if Ac is not None else [betti[w][0] for w in betti]
    first = None
    for w in range(bar.W + 1):
        if any(betti[w][1:]) or betti[w][0] != cdims[w]:
            first = w
            break
    # Euler characteristic of each weight: Σ(-1)^ω dim = Σ(-1)^ω betti
    euler = all(sum((-1) ** om * bar.dim(w, om) for om in range(w + 1))
                == sum((-1) ** om * b for om, b in enumerate(betti[w])) for w in betti)
    return BarHomologyReport(betti, cdims, first is None, first, euler)


# -- cobar --------------------------------------------------------------------------

class CoalgebraAlphabet:
    """A^¡ basis elements (weight u, index i) used as letters, with their binary splittings."""

    def __init__(self, Ac: KoszulDualCoalgebra):
        self.Ac = Ac
        self.letters = [(u, i) for u in range(Ac.W + 1) for i in range(Ac.dim(u))]
        self.letter_index = {l: k for k, l in enumerate(self.letters)}
        self.degrees = [Ac.degree(u) for u, _ in self.letters]
        self.weights = [u for u, _ in self.letters]
        self._dec: Dict[int, List] = {}

    def __len__(self):
        return len(self.letters)

    def generator(self, letter: int) -> Optional[int]:
        """Index v of V for a weight-0 letter, else None."""
        u, i = self.letters[letter]
        if u:
            return None
        return self.Ac.schur.rep(self.Ac.cfree[0][next(iter(self.Ac.basis[0][i]))])[2][0]

    def decomposition(self, letter: int) -> List[Tuple[Dict, int, Tuple[int, ...], Fraction]]:
        """Weight-1 tops of a letter: (κ(top), arity, bottom letters, coef)."""
        r = self._dec.get(letter)
        if r is not None:
            return r
        Ac = self.Ac
        u, i = self.letters[letter]
        r = []
        for a in sorted({g.arity for g in Ac.A.pres.operad.generators}):
            for tk, c in sorted(Ac.decompose(u, i, a, lambda t: t[0] == 1).items()):
                _, top, word = Ac.ext_schur.rep(tk)
                r.append((Ac.C.kappa(a, top), a, tuple(word), c))
        self._dec[letter] = r
        return r


class CobarComplex:
    """P(s⁻¹A^¡) per (internal weight, homological degree = total A^¡ weight)."""

    def __init__(self, A: MonogeneAlgebra, Ac: KoszulDualCoalgebra):
        self.A, self.Ac = A, Ac
        self.P = A.P
        self.W = A.W
        self.alphabet = CoalgebraAlphabet(Ac)
        self.schur = SchurModule(self.P, self.alphabet.degrees)
        lw = self.alphabet.weights
        self.basis: Dict[Tuple[int, int], List] = {}
        self.index: Dict[Tuple[int, int], Dict] = {}
        for w in range(self.W + 1):
            for k in range(w + 1):
                keys = []
                for n in range(1, self.P.max_arity + 1):
                    if not self.P.dim(n, w - k):
                        continue
                    for word in weighted_words(lw, n, k):
                        keys.extend(self.schur.keys_for_word(n, w - k, word))
                self.basis[(w, k)] = keys
                self.index[(w, k)] = {key: i for i, key in enumerate(keys)}
        self.d: Dict[Tuple[int, int], el.Matrix] = {}
        for w in range(self.W + 1):
            for k in range(1, w + 1):
                self.d[(w, k)] = self._differential(w, k)
        self.f = {w: self._projection(w) for w in range(self.W + 1)}

    def dim(self, w: int, k: int) -> int:
        return len(self.basis.get((w, k), ()))

    def apply(self, key) -> Dict:
        """-d^l: split one letter through a weight-1 top, label it by κ."""
        P = self.P
        ldeg = self.schur.ldeg
        n, pk, word = self.schur.rep(key)
        out: Dict = {}
        for j in range(1, n + 1):
            before = sum(ldeg[l] for l in word[:j - 1])
            s = -(-1) ** ((P.degree(n, pk) + before) % 2)
            for mu, a, bw, c in self.alphabet.decomposition(word[j - 1]):
                z = P.compose(n, {pk: Fraction(1)}, j, a, mu)
                tw = word[:j - 1] + bw + word[j:]
                for tk, v in self.schur.normalize(n + a - 1, z, tw).items():
                    el.vec_add(out, {tk: v}, s * c)
        return out

    def _differential(self, w: int, k: int) -> el.Matrix:
        tgt = self.index[(w, k - 1)]
        cols = []
        for key in self.basis[(w, k)]:
            col = {}
            for tk, v in self.apply(key).items():
                if tk not in tgt:
                    raise el.DimensionMismatchError(f"cobar differential left component (w={w}, k={k - 1})")
                col[tgt[tk]] = v
            cols.append(col)
        return el.Matrix.from_columns(len(tgt), cols)

    def _projection(self, w: int) -> el.Matrix:
        """f_ϰ on the degree-0 part: weight-0 letters are the generators of A."""
        A = self.A
        cols = []
        for key in self.basis[(w, 0)]:
            n, pk, word = self.schur.rep(key)
            z = A.free_to_A(n, {pk: Fraction(1)}, [self.alphabet.generator(l) for l in word])
            cols.append({i: c for (ww, i), c in z.items()})
        return el.Matrix.from_columns(A.dim(w), cols)

    def complex(self, w: int) -> el.ChainComplexData:
        return el.ChainComplexData({k: self.dim(w, k) for k in range(w + 1)},
                                   {k: self.d[(w, k)] for k in range(1, w + 1)})


@dataclass
class CobarReport:
    quasi_iso: bool
    betti: Dict[int, Dict[int, int]]
    algebra_dims: List[int]
    first_failure: Optional[int]
    chain_map: bool = True
    notes: List[str] = field(default_factory=list)


def build_cobar_and_check(A: MonogeneAlgebra, Ac: KoszulDualCoalgebra) -> CobarReport:
    """Ω_κA^¡ -> A is a quasi-isomorphism iff H_0 = A via f_ϰ and H_{>0} = 0."""
    cb = CobarComplex(A, Ac)
    betti = {}
    first = None
    chain = True
    for w in range(cb.W + 1):
        cx = cb.complex(w)
        cx.check()
        betti[w] = el.homology(cx).betti
        f = cb.f[w]
        if w >= 1 and not (f @ cb.d[(w, 1)]).is_zero():
            chain = False
        surj = f.rank() == A.dim(w)
        ok = chain and surj and betti[w].get(0, 0) == A.dim(w) and all(v == 0 for k, v in betti[w].items() if k)
        if not ok and first is None:
            first = w
    return CobarReport(first is None, betti, A.dims(), first, chain)
