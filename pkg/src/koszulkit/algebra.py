"""Monogene algebras A = P(V)/(S), the Koszul dual algebra A^! and the Koszul
dual coalgebra A^¡.

P(V) is realized with SchurModule on the alphabet V.  A^{(w)} is the weight-w
part of P(V) modulo the ideal spanned by p(v_1, ..., v_{m-1}, s), s in S;
normal forms are non-pivot classes, which also serve as representatives
for the structure map γ_A.

A^! uses the dual generators V* in the opposite parity, so that the pairing
between E^∨(V*) and E(V) restricted to coinvariants stays perfect.  A^¡ sits
inside P^¡(V) and is computed twice: as the kernel of the cherry maps into
E(V)/S, and as the annihilator of the ideal of A^!.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import exactlin as el
from . import operad as op
from .schur import SchurModule, shuffle_split, split_class, stabilizer_order, words

Letter = Tuple[int, int]     # (weight, index) of an A basis element


class AlgebraPresentationError(ValueError):
    code = "algebra-presentation"


class ConsistencyError(AssertionError):
    pass


@dataclass
class AlgebraPresentation:
    """Monogene data (V, S) over a quadratic operad.

    ``relations`` is a list of relations, each a list of terms
    ``(coef, operation, basis_index, letters)``, meaning
    coef · operation#basis_index(letters...).
    """

    operad: op.OperadPresentation
    generators: List[Tuple[str, int]]
    relations: List[List[Tuple[Fraction, str, int, Tuple[str, ...]]]] = field(default_factory=list)
    max_weight: int = 4
    name: str = "A"

    def __post_init__(self):
        names = [g for g, _ in self.generators]
        if len(set(names)) != len(names):
            raise AlgebraPresentationError("duplicate generator names")
        sig = tr_signature(self.operad)
        for rel in self.relations:
            for c, opname, j, letters in rel:
                g = sig.get(opname)
                if g is None:
                    raise AlgebraPresentationError(f"{opname!r} is not a generating operation; relations must lie in E(V)")
                if len(letters) != g.arity:
                    raise AlgebraPresentationError(f"{opname} takes {g.arity} inputs, got {len(letters)}")
                if not 0 <= j < g.dim:
                    raise AlgebraPresentationError(f"{opname} has no basis vector {j}")
                for l in letters:
                    if l not in names:
                        raise AlgebraPresentationError(f"unknown generator {l!r}")

    @property
    def degrees(self) -> List[int]:
        return [d for _, d in self.generators]

    def letter(self, name: str) -> int:
        return [g for g, _ in self.generators].index(name)


def tr_signature(pres: op.OperadPresentation):
    return pres.sig


def truncated_operad_for(pres: op.OperadPresentation, max_weight: int) -> op.TruncatedOperad:
    """Operad truncation large enough for algebra weights <= max_weight."""
    spread = max([g.arity - 1 for g in pres.generators] + [0])
    arity = 1 + max_weight * spread
    tp = op.TruncatedOperad(pres.generators, pres.relations, max(arity, 1), max_weight, pres.name)
    return tp


# -- the algebra ------------------------------------------------------------------

class MonogeneAlgebra:
    def __init__(self, pres: AlgebraPresentation, P: Optional[op.TruncatedOperad] = None):
        self.pres = pres
        self.W = pres.max_weight
        self.P = P if P is not None else truncated_operad_for(pres.operad, self.W)
        if self.P.max_weight < self.W:
            raise op.TruncationError("operad truncation below algebra weight bound", needed=self.W)
        self.vdeg = pres.degrees
        self.dimV = len(self.vdeg)
        self.schur = SchurModule(self.P, self.vdeg)
        self.free: Dict[int, List] = {}
        self.findex: Dict[int, Dict] = {}
        for w in range(self.W + 1):
            keys = []
            for n in range(1, self.P.max_arity + 1):
                if not self.P.dim(n, w):
                    continue
                for word in words(self.dimV, n):
                    keys.extend(self.schur.keys_for_word(n, w, word))
            self.free[w] = keys
            self.findex[w] = {k: i for i, k in enumerate(keys)}
        self.S = el.Subspace.span(len(self.free.get(1, [])), [self._relation_vec(r) for r in pres.relations])
        self.ideal: Dict[int, el.Subspace] = {}
        self.basis: Dict[int, List[int]] = {}
        self.bindex: Dict[int, Dict[int, int]] = {}
        for w in range(self.W + 1):
            self._build_weight(w)
        self._gamma_memo: Dict = {}
        self.letters: List[Letter] = [(w, i) for w in range(self.W + 1) for i in range(len(self.basis[w]))]
        self.letter_index = {l: k for k, l in enumerate(self.letters)}
        self.letter_degrees = [self.degree(w, i) for w, i in self.letters]
        self.letter_weights = [w for w, _ in self.letters]

    # construction ---------------------------------------------------------------
    def free_element(self, opname: str, j: int, letters: Sequence[int]) -> Dict[int, Fraction]:
        """opname#j(letters) as a vector on the weight-1 free basis."""
        g = self.P.sig[opname]
        vec = self.P.generator_vec(opname, j)
        out = {}
        for k, c in self.schur.normalize(g.arity, vec, list(letters)).items():
            out[self.findex[1][k]] = out.get(self.findex[1][k], 0) + c
        return el.vec_clean(out)

    def _relation_vec(self, rel) -> Dict[int, Fraction]:
        acc: Dict[int, Fraction] = {}
        for c, opname, j, letters in rel:
            el.vec_add(acc, self.free_element(opname, j, [self.pres.letter(l) for l in letters]), Fraction(c))
        return acc

    def _build_weight(self, w: int) -> None:
        dim = len(self.free[w])
        if w == 0:
            sub = el.Subspace.zero(dim)
        elif w == 1:
            sub = self.S
        else:
            rows = []
            svecs = self.S.vectors()
            for m in range(1, self.P.max_arity + 1):
                for pk in [(w - 1, i) for i in range(self.P.dim(m, w - 1))]:
                    for u in words(self.dimV, m - 1):
                        du = sum(self.vdeg[l] for l in u)
                        for s in svecs:
                            row: Dict[int, Fraction] = {}
                            for fi, c in s.items():
                                ns, mk, ws = self.schur.rep(self.free[1][fi])
                                if m - 1 + ns > self.P.max_arity:
                                    raise op.TruncationError("operad truncation too small", needed=m - 1 + ns)
                                z = self.P.compose(m, {pk: Fraction(1)}, m, ns, {mk: Fraction(1)})
                                sgn = -1 if (self.P.degree(ns, mk) * du) % 2 else 1
                                for k, v in self.schur.normalize(m - 1 + ns, z, tuple(u) + ws).items():
                                    el.vec_add(row, {self.findex[w][k]: v}, sgn * c)
                            if row:
                                rows.append(row)
            sub = el.Subspace.span(dim, rows)
        self.ideal[w] = sub
        piv = set(sub.pivots())
        self.basis[w] = [i for i in range(dim) if i not in piv]
        self.bindex[w] = {fi: k for k, fi in enumerate(self.basis[w])}

    # structure --------------------------------------------------------------------
    def dim(self, w: int) -> int:
        return len(self.basis.get(w, ()))

    def dims(self) -> List[int]:
        return [self.dim(w) for w in range(self.W + 1)]

    def degree(self, w: int, i: int) -> int:
        return self.schur.degree(self.free[w][self.basis[w][i]])

    def reduce_free(self, w: int, vec: Dict[int, Fraction]) -> Dict[int, Fraction]:
        r = self.ideal[w].residue(vec)
        return {self.bindex[w][fi]: c for fi, c in r.items()}

    def rep(self, w: int, i: int):
        """(arity, operad key, word) of the normal-form representative."""
        return self.schur.rep(self.free[w][self.basis[w][i]])

    def encode(self, w: int, i: int) -> str:
        n, mk, word = self.rep(w, i)
        names = [g for g, _ in self.pres.generators]
        t = self.P.basis_tree(n, mk)
        return _encode_with_letters(t, self.P.sig, [names[l] for l in word])

    def free_to_A(self, n: int, mvec, word) -> Dict[Letter, Fraction]:
        out: Dict[Letter, Fraction] = {}
        byw: Dict[int, Dict[int, Fraction]] = {}
        for k, c in self.schur.normalize(n, mvec, word).items():
            w = k[1]
            if w > self.W:
                raise op.TruncationError("algebra weight beyond truncation", needed=w)
            d = byw.setdefault(w, {})
            fi = self.findex[w][k]
            d[fi] = d.get(fi, 0) + c
        for w, v in byw.items():
            for i, c in self.reduce_free(w, v).items():
                out[(w, i)] = c
        return out

    def gamma_basis(self, n: int, pkey, inputs: Sequence[Letter]) -> Dict[Letter, Fraction]:
        """γ_A(p; a_1, ..., a_n) for an operad basis element and A basis inputs."""
        mk = (n, pkey, tuple(inputs))
        r = self._gamma_memo.get(mk)
        if r is not None:
            return r
        reps = [self.rep(w, i) for w, i in inputs]
        blocks = []
        start = 1
        for ni, _, _ in reps:
            blocks.append(tuple(range(start, start + ni)))
            start += ni
        total = start - 1
        z = self.P.gamma(n, {pkey: Fraction(1)}, [(b, ni, {k: Fraction(1)}) for b, (ni, k, _) in zip(blocks, reps)])
        e = 0
        before = 0
        word = []
        for ni, k, wd in reps:
            e += self.P.degree(ni, k) * before
            before += sum(self.vdeg[l] for l in wd)
            word.extend(wd)
        if e % 2:
            z = {k: -v for k, v in z.items()}
        r = self.free_to_A(total, z, word) if z else {}
        self._gamma_memo[mk] = r
        return r

    def gamma(self, n: int, pvec, inputs: Sequence[Dict[Letter, Fraction]]) -> Dict[Letter, Fraction]:
        from itertools import product
        out: Dict[Letter, Fraction] = {}
        for pk, pc in pvec.items():
            for combo in product(*[list(x.items()) for x in inputs]):
                c = pc
                for _, v in combo:
                    c *= v
                for k, v in self.gamma_basis(n, pk, tuple(l for l, _ in combo)).items():
                    el.vec_add(out, {k: v}, c)
        return out

    def generator_letter(self, i: int) -> Letter:
        """The A basis element of weight 0 corresponding to generator i."""
        fi = self.findex[0][(1, 0, (i,), 0)]
        return (0, self.bindex[0][fi])


def _encode_with_letters(t, sig, names) -> str:
    from .trees import is_leaf
    if is_leaf(t):
        return names[t - 1]
    g = sig[t[0]]
    inner = ", ".join(_encode_with_letters(c, sig, names) for c in t[2])
    return f"{g.label(t[1])}({inner})"


def build_algebra(pres: AlgebraPresentation, P: Optional[op.TruncatedOperad] = None) -> MonogeneAlgebra:
    return MonogeneAlgebra(pres, P)


# -- Koszul dual algebra ------------------------------------------------------------

def dual_letter_name(name: str) -> str:
    return name[:-1] if name.endswith("*") else name + "*"


def _weight1_pairing(A: MonogeneAlgebra, Ad_schur: SchurModule, Q: op.TruncatedOperad,
                     dual_free: List, dual_findex: Dict) -> el.Matrix:
    """Pairing matrix E^∨(V*) x E(V) on coinvariant classes, block-diagonal in words."""
    P = A.P
    # match generator basis vectors of Q(2) and P(2) through the dual names
    qmap = {}
    for n in range(1, Q.max_arity + 1):
        if not Q.dim(n, 1):
            continue
        for qi, key in enumerate(Q.basis[(n, 1)]):
            pkey = (op.dual_name(key[0]), key[1], key[2], key[3])
            qmap[(n, qi)] = P.index[(n, 1)][pkey]
    rows: Dict[int, Dict[int, Fraction]] = {}
    for a, fk in enumerate(dual_free):
        n, w, word, ja = fk
        qb = Ad_schur.block(n, 1, word)
        pb = A.schur.block(n, 1, word)
        Iq = qb.invariants()[ja]
        for jb in range(pb.dim):
            Ip = pb.invariants()[jb]
            val = stabilizer_order(word) * sum((c * Ip.get(qmap[(n, i)], 0) for i, c in Iq.items()), Fraction(0))
            if val:
                rows.setdefault(a, {})[A.findex[1][(n, 1, word, jb)]] = val
    return el.Matrix(len(dual_free), len(A.free[1]), rows)


def koszul_dual_presentation(pres: AlgebraPresentation, A: Optional[MonogeneAlgebra] = None) -> AlgebraPresentation:
    """A^! = P^!(V*)/(S^⊥) as a presentation over the dual operad."""
    if pres.operad.uniform_arity is None:
        raise op.UnsupportedPresentationError("Koszul dual algebra needs generators all binary or all unary")
    if A is None:
        A = MonogeneAlgebra(AlgebraPresentation(pres.operad, pres.generators, pres.relations, 1, pres.name))
    ar = pres.operad.uniform_arity
    dual_op = op.koszul_dual_operad(pres.operad)
    Q = op.TruncatedOperad(dual_op.generators, dual_op.relations, ar, 1, dual_op.name)
    ddeg = [1 - d for d in pres.degrees]
    ds = SchurModule(Q, ddeg)
    dual_free = []
    for word in words(len(ddeg), ar):
        dual_free.extend(ds.keys_for_word(ar, 1, word))
    G = _weight1_pairing(A, ds, Q, dual_free, None)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", el.DegeneratePairingWarning)
        perp = el.annihilator(A.S, G)
    names = [dual_letter_name(g) for g, _ in pres.generators]
    rels = []
    for v in perp.vectors():
        terms = []
        for a, c in sorted(v.items()):
            n, mk, word = ds.rep(dual_free[a])
            key = Q.basis[(n, 1)][mk[1]]
            terms.append((c, key[0], key[1], tuple(names[l] for l in word)))
        rels.append(terms)
    gens = [(dual_letter_name(g), 1 - d) for g, d in pres.generators]
    return AlgebraPresentation(dual_op, gens, rels, pres.max_weight, _dual_name(pres.name))


def _dual_name(name: str) -> str:
    return name[:-2] if name.endswith("^!") else name + "^!"


@dataclass
class KoszulDualAlgebra:
    presentation: AlgebraPresentation
    algebra: MonogeneAlgebra

    def dims(self) -> List[int]:
        return self.algebra.dims()


def koszul_dual_algebra(pres: AlgebraPresentation, Q: Optional[op.TruncatedOperad] = None) -> KoszulDualAlgebra:
    dp = koszul_dual_presentation(pres)
    return KoszulDualAlgebra(dp, MonogeneAlgebra(dp, Q))


# -- Koszul dual coalgebra ------------------------------------------------------------

class KoszulDualCoalgebra:
    """A^¡ as a subspace of P^¡(V), weight by weight.

    ``space[w]`` is a Subspace of the weight-w classes ``cfree[w]`` of
    P^¡(V); basis vectors of A^¡ are its echelon rows.
    """

    def __init__(self, A: MonogeneAlgebra, C: op.TruncatedCooperad, dual: Optional[KoszulDualAlgebra] = None,
                 check: bool = True):
        self.A = A
        self.C = C
        self.W = A.W
        self.vdeg = A.vdeg
        self.schur = SchurModule(C, self.vdeg)
        self.cfree: Dict[int, List] = {}
        self.cindex: Dict[int, Dict] = {}
        for w in range(self.W + 1):
            keys = []
            for n in range(1, C.max_arity + 1):
                if not C.dim(n, w):
                    continue
                for word in words(A.dimV, n):
                    keys.extend(self.schur.keys_for_word(n, w, word))
            self.cfree[w] = keys
            self.cindex[w] = {k: i for i, k in enumerate(keys)}
        self.space: Dict[int, el.Subspace] = {w: self._kernel_side(w) for w in range(self.W + 1)}
        self.dual = dual
        if check and dual is not None:
            for w in range(self.W + 1):
                other = self.annihilator_side(w)
                if other != self.space[w]:
                    raise ConsistencyError(f"A^¡ weight {w}: kernel and dual constructions differ "
                                           f"(dims {self.space[w].dim} vs {other.dim})")
        self.basis = {w: self.space[w].vectors() for w in self.space}

    def dim(self, w: int) -> int:
        return self.space[w].dim

    def dims(self) -> List[int]:
        return [self.dim(w) for w in range(self.W + 1)]

    def degree(self, w: int) -> int:
        """Homological degree of weight-w elements (before the overall suspension)."""
        for k in self.cfree[w]:
            return self.schur.degree(k)
        return w

    # (b) kernel of the cherry maps -------------------------------------------------
    def _kernel_side(self, w: int) -> el.Subspace:
        dim = len(self.cfree[w])
        if w == 0:
            return el.Subspace.whole(dim)
        A = self.A
        quot = [i for i in range(len(A.free[1])) if i not in set(A.S.pivots())]
        qpos = {fi: k for k, fi in enumerate(quot)}
        dV = A.dimV
        tdeg = list(self.vdeg) + [1 + A.schur.degree(A.free[1][fi]) for fi in quot]
        target = SchurModule(self.C, tdeg)
        rows: Dict = {}
        for col, key in enumerate(self.cfree[w]):
            for tk, v in self.cherries(key, target, qpos, dV).items():
                rows.setdefault(tk, {})[col] = rows.get(tk, {}).get(col, 0) + v
        m = el.Matrix(len(rows), dim, {i: r for i, r in enumerate(rows.values())})
        return el.kernel(m)

    def cherries(self, key, target: SchurModule, qpos, dV) -> Dict:
        C, A = self.C, self.A
        n, mk, word = self.schur.rep(key)
        out: Dict = {}
        for (B, x, y, coef) in C.delta1(n, mk):
            kb = len(B)
            if y[0] != 1:
                continue
            i, w2, s1 = shuffle_split(word, B, n, self.vdeg)
            dy = C.degree(kb, y)
            before = sum(self.vdeg[l] for l in w2[:i - 1])
            s2 = -1 if (dy * before) % 2 else 1
            e: Dict[int, Fraction] = {}
            for k, c in A.schur.normalize(kb, C.kappa(kb, y), w2[i - 1:i - 1 + kb]).items():
                el.vec_add(e, {A.findex[1][k]: c})
            r = A.S.residue(e)
            for fi, c in r.items():
                tw = w2[:i - 1] + (dV + qpos[fi],) + w2[i - 1 + kb:]
                for tk, v in target.normalize(n - 1, {x: Fraction(1)}, tw).items():
                    el.vec_add(out, {tk: v}, coef * s1 * s2 * c)
        return out

    # (a) annihilator of the ideal of A^! ---------------------------------------------
    def annihilator_side(self, w: int) -> el.Subspace:
        D = self.dual.algebra
        dim = len(self.cfree[w])
        if w > D.W:
            raise op.TruncationError("dual algebra truncation too small", needed=w)
        rows: Dict[int, Dict[int, Fraction]] = {}
        for a, fk in enumerate(D.free[w]):
            n, ww, word, ja = fk
            qb = D.schur.block(n, ww, word)
            cb = self.schur.block(n, ww, word)
            Iq = qb.invariants()[ja]
            for jb in range(cb.dim):
                Ic = cb.invariants()[jb]
                val = stabilizer_order(word) * sum((c * Ic.get(i, 0) for i, c in Iq.items()), Fraction(0))
                if val:
                    rows.setdefault(a, {})[self.cindex[w][(n, ww, word, jb)]] = val
        G = el.Matrix(len(D.free[w]), dim, rows)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", el.DegeneratePairingWarning)
            return el.annihilator(D.ideal[w], G)

    # decompositions ----------------------------------------------------------------------
    def class_vector(self, w: int, i: int) -> Dict[int, Fraction]:
        return self.basis[w][i]

    def coordinates(self, w: int, vec: Dict[int, Fraction]) -> Dict[int, Fraction]:
        try:
            return self.space[w].coordinates(vec)
        except el.ContainmentError as e:
            raise ConsistencyError(f"decomposition left A^¡ in weight {w}") from e

    def split(self, key, r: int, top_filter=None):
        """Full decomposition of one P^¡(V) class with a top of arity r.

        Yields (top key, [(bottom weight, bottom class vector)], coef).
        """
        for top, bottoms, coef in split_class(self.C, self.schur, key, r, top_filter):
            out = []
            for k, y, bw in bottoms:
                vec = {}
                for kk, v in self.schur.normalize(k, {y: Fraction(1)}, bw).items():
                    vec[self.cindex[kk[1]][kk]] = v
                out.append((y[0], vec))
            yield top, out, coef

    # decompositions in A^¡ coordinates -------------------------------------------------
    def _extend(self) -> None:
        """Alphabet of A^¡ basis letters followed by complement letters (unit vectors
        at non-pivot columns), so any class of P^¡(V) has unique coordinates."""
        self.ext_letters = [(u, i) for u in range(self.W + 1) for i in range(self.dim(u))]
        self.n_core = len(self.ext_letters)
        for u in range(self.W + 1):
            piv = set(self.space[u].pivots())
            self.ext_letters += [("c", u, col) for col in range(len(self.cfree[u])) if col not in piv]
        self.ext_index = {l: k for k, l in enumerate(self.ext_letters)}
        self.ext_schur = SchurModule(self.C, [self.degree(l[0] if len(l) == 2 else l[1]) for l in self.ext_letters])

    def ext_coordinates(self, u: int, vec: Dict[int, Fraction]) -> Dict[int, Fraction]:
        if not hasattr(self, "ext_letters"):
            self._extend()
        sub = self.space[u]
        piv = sub.pivots()
        out = {}
        rest = dict(vec)
        for i, (p, row) in enumerate(zip(piv, sub.vectors())):
            a = vec.get(p, 0)
            if a:
                out[self.ext_index[(u, i)]] = a
                el.vec_add(rest, row, -a)
        for col, c in rest.items():
            if c:
                out[self.ext_index[("c", u, col)]] = c
        return out

    def decompose(self, w: int, i: int, r: int, top_filter=None) -> Dict:
        """Δ(r) of the i-th A^¡ basis element of weight w, as classes of P^¡(r) ⊗_{S_r} (A^¡)^{⊗r}.

        Keys are classes of ``ext_schur`` whose words use only A^¡ letters;
        complement letters must cancel, otherwise ConsistencyError.
        """
        if not hasattr(self, "ext_letters"):
            self._extend()
        from itertools import product as _p
        acc: Dict = {}
        for ci, cc in self.basis[w][i].items():
            for top, bottoms, coef in self.split(self.cfree[w][ci], r, top_filter):
                coords = [list(self.ext_coordinates(bw, bv).items()) for bw, bv in bottoms]
                for combo in _p(*coords):
                    c = cc * coef
                    for _, v in combo:
                        c *= v
                    for tk, v in self.ext_schur.normalize(r, {top: Fraction(1)}, [l for l, _ in combo]).items():
                        el.vec_add(acc, {tk: v}, c)
        for tk in acc:
            if any(l >= self.n_core for l in tk[2]):
                raise ConsistencyError(f"decomposition of A^¡ weight {w} element {i} leaves A^¡")
        return acc

    def coproduct_component(self, n: int, w: int) -> Tuple[el.Matrix, List]:
        """Matrix of Δ(n) on A^¡^{(w)} into P^¡(n) ⊗_{S_n} (A^¡)^{⊗n}; target keys returned alongside."""
        if w > self.W:
            raise op.TruncationError("weight beyond truncation", needed=w)
        tindex: Dict = {}
        cols = []
        for i in range(self.dim(w)):
            col = {}
            for tk, v in sorted(self.decompose(w, i, n).items()):
                if tk not in tindex:
                    tindex[tk] = len(tindex)
                col[tindex[tk]] = v
            cols.append(col)
        return el.Matrix.from_columns(len(tindex), cols), list(tindex)


def koszul_dual_coalgebra(A: MonogeneAlgebra, C: Optional[op.TruncatedCooperad] = None,
                          dual: Optional[KoszulDualAlgebra] = None, check: bool = True) -> KoszulDualCoalgebra:
    pres = A.pres
    if pres.operad.uniform_arity is None:
        raise op.UnsupportedPresentationError("Koszul dual coalgebra needs generators all binary or all unary")
    if C is None:
        C = op.TruncatedCooperad(truncated_operad_for(op.koszul_dual_operad(pres.operad), A.W), A.P)
    if dual is None and check:
        dp = koszul_dual_presentation(pres, A)
        dual = KoszulDualAlgebra(dp, MonogeneAlgebra(dp, C.Q))
    return KoszulDualCoalgebra(A, C, dual, check)


# -- Maurer-Cartan for ϰ ----------------------------------------------------------------

@dataclass
class VarkappaReport:
    zero: bool
    checked: int
    offending: Optional[str] = None
    weight: Optional[int] = None


def mc_check_varkappa(Ac: KoszulDualCoalgebra, mutate: bool = False) -> VarkappaReport:
    """⋆_κ(ϰ)(c) = Σ γ_A(κ(c'); ϰ(c_1), ..., ϰ(c_r)) over weight-1 tops with generator bottoms.

    ``mutate`` drops the quotient by S, evaluating in P(V) instead of A.
    """
    A = Ac.A
    arities = sorted({g.arity for g in A.pres.operad.generators})
    checked = 0
    for w in range(Ac.W + 1):
        for i, vec in enumerate(Ac.basis[w]):
            checked += 1
            acc: Dict = {}
            for ci, cc in vec.items():
                key = Ac.cfree[w][ci]
                for r in arities:
                    for top, bottoms, coef in Ac.split(key, r, lambda t: t[0] == 1):
                        if any(bw != 0 for bw, _ in bottoms):
                            continue
                        mu = Ac.C.kappa(r, top)
                        c = cc * coef
                        letters = []
                        for _, bv in bottoms:
                            (bi, bc), = bv.items()
                            word1 = Ac.schur.rep(Ac.cfree[0][bi])[2]
                            letters.append(word1[0])
                            c *= bc
                        if mutate:
                            img = A.schur.normalize(r, mu, tuple(letters))
                        else:
                            img = A.gamma(r, mu, [{A.generator_letter(l): Fraction(1)} for l in letters])
                        for k, v in img.items():
                            el.vec_add(acc, {k: v}, c)
            if acc:
                return VarkappaReport(False, checked, f"weight {w} basis {i}", w)
    return VarkappaReport(True, checked)
