"""Schur functor spaces M(n) ⊗_{S_n} L^{⊗n} over a graded alphabet L.

``M`` is any truncated S-module exposing ``dim(n, w)``, ``components(n)``,
``act_basis(n, key, σ)`` and ``degree(n, key)``: a TruncatedOperad or a
TruncatedCooperad.  A class ``p ⊗ (l_1, ..., l_n)`` is stored at the sorted
word; its coordinates live in the coinvariants of M(n)^{(w)} under the
stabilizer of the word, twisted by the Koszul sign of odd letters.
Normal forms are the non-pivot columns of the coinvariant relations, so each
class has a single-element representative ``(w, column) ⊗ word``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Mapping, Sequence, Tuple

from . import exactlin as el
from . import symgroup as sg

Word = Tuple[int, ...]
SKey = Tuple[int, int, Word, int]     # (arity, M-weight, sorted word, class index)


class SchurBlock:
    """Coinvariants of M(n)^{(w)} for one sorted word."""

    def __init__(self, M, n: int, w: int, word: Word, letter_degrees: Sequence[int]):
        self.n, self.w, self.word = n, w, word
        d = M.dim(n, w)
        rels = []
        for t in range(1, n):
            if word[t - 1] != word[t]:
                continue
            chi = -1 if letter_degrees[word[t]] % 2 else 1
            s = sg.transposition(n, t)
            for b in range(d):
                v = {i: c for (ww, i), c in M.act_basis(n, (w, b), s).items()}
                v[b] = v.get(b, 0) - chi
                rels.append(v)
        self.relations = el.Subspace.span(d, rels)
        piv = set(self.relations.pivots())
        self.free = [i for i in range(d) if i not in piv]
        self.pos = {c: j for j, c in enumerate(self.free)}
        self._M = M
        self._ldeg = letter_degrees
        self._inv = None

    @property
    def dim(self) -> int:
        return len(self.free)

    def classes(self, vec: Mapping[int, Fraction]) -> Dict[int, Fraction]:
        r = self.relations.residue(vec)
        return {self.pos[c]: v for c, v in r.items()}

    def rep(self, j: int) -> Tuple[int, int]:
        return (self.w, self.free[j])

    def invariants(self) -> List[Dict[int, Fraction]]:
        """Twisted-invariant vectors I_j with I_j ≡ (class j) modulo relations."""
        if self._inv is None:
            n, w, word, M = self.n, self.w, self.word, self._M
            d = M.dim(n, w)
            rows = {}
            r = 0
            for t in range(1, n):
                if word[t - 1] != word[t]:
                    continue
                chi = -1 if self._ldeg[word[t]] % 2 else 1
                s = sg.transposition(n, t)
                cols = []
                for b in range(d):
                    v = {i: c for (ww, i), c in M.act_basis(n, (w, b), s).items()}
                    v[b] = v.get(b, 0) - chi
                    cols.append(v)
                m = el.Matrix.from_columns(d, cols)
                for i, row in m.row_items():
                    rows[r] = row
                    r += 1
            inv = el.kernel(el.Matrix(r, d, rows)).vectors() if r else [{i: Fraction(1)} for i in range(d)]
            # change basis so that I_j reduces to class j
            res = [self.classes(v) for v in inv]
            mat = el.Matrix.from_columns(self.dim, res)
            tinv = el.invert(mat)
            out = []
            for j in range(self.dim):
                col = tinv.columns()[j] if self.dim else {}
                acc: Dict[int, Fraction] = {}
                for a, c in col.items():
                    el.vec_add(acc, inv[a], c)
                out.append(acc)
            self._inv = out
        return self._inv


class SchurModule:
    """M(L) = ⊕_n M(n) ⊗_{S_n} L^{⊗n}, with L given by letter degrees."""

    def __init__(self, M, letter_degrees: Sequence[int]):
        self.M = M
        self.ldeg = list(letter_degrees)
        self._blocks: Dict[Tuple[int, int, Word], SchurBlock] = {}

    def block(self, n: int, w: int, word: Word) -> SchurBlock:
        k = (n, w, word)
        b = self._blocks.get(k)
        if b is None:
            b = SchurBlock(self.M, n, w, word, self.ldeg)
            self._blocks[k] = b
        return b

    def degree(self, key: SKey) -> int:
        n, w, word, j = key
        b = self.block(n, w, word)
        return self.M.degree(n, b.rep(j)) + sum(self.ldeg[l] for l in word)

    def keys_for_word(self, n: int, w: int, word: Word) -> List[SKey]:
        return [(n, w, word, j) for j in range(self.block(n, w, word).dim)]

    def rep(self, key: SKey) -> Tuple[int, Tuple[int, int], Word]:
        n, w, word, j = key
        return n, self.block(n, w, word).rep(j), word

    def normalize(self, n: int, vec: Mapping[Tuple[int, int], Fraction], word: Sequence[int]) -> Dict[SKey, Fraction]:
        """Class of vec ⊗ (word_1, ..., word_n) for an arbitrary word."""
        if not vec:
            return {}
        order = sorted(range(n), key=lambda i: (word[i], i))
        sw = tuple(word[i] for i in order)
        eps = sg.koszul_sign(order, [self.ldeg[l] for l in word])
        sigma = sg.inverse(tuple(i + 1 for i in order))
        if sigma != sg.identity(n):
            moved: Dict[Tuple[int, int], Fraction] = {}
            for k, c in vec.items():
                for kk, v in self.M.act_basis(n, k, sigma).items():
                    x = moved.get(kk, 0) + c * v
                    if x:
                        moved[kk] = x
                    else:
                        moved.pop(kk, None)
            vec = moved
        byw: Dict[int, Dict[int, Fraction]] = {}
        for (w, i), c in vec.items():
            byw.setdefault(w, {})[i] = c
        out: Dict[SKey, Fraction] = {}
        for w, v in byw.items():
            for j, c in self.block(n, w, sw).classes(v).items():
                out[(n, w, sw, j)] = eps * c
        return out


def stabilizer_order(word: Sequence[int]) -> int:
    """|Stab(word)| = product of factorials of letter multiplicities.

    The pairing of coinvariant classes is ⟨Σ_σ σ·x, y⟩, which on a sorted word
    equals this factor times the pairing of the invariant representatives.
    """
    from collections import Counter
    from math import factorial
    r = 1
    for m in Counter(word).values():
        r *= factorial(m)
    return r


def words(alphabet: int, n: int):
    """Sorted words of length n."""
    from itertools import combinations_with_replacement
    return combinations_with_replacement(range(alphabet), n)


def shuffle_split(word: Sequence[int], block: Sequence[int], n: int, ldeg: Sequence[int]):
    """Reorder letters as (rest before slot, block letters, rest after slot).

    For x ∘_{i,B} y = σ·(x ∘_i y): returns (i, permuted word, Koszul sign).
    """
    block = tuple(block)
    rest = [l for l in range(1, n + 1) if l not in block]
    i = sum(1 for l in rest if l < block[0]) + 1
    seq = rest[:i - 1] + list(block) + rest[i - 1:]
    order = [l - 1 for l in seq]
    sign = sg.koszul_sign(order, [ldeg[l] for l in word])
    return i, tuple(word[l - 1] for l in seq), sign


def split_class(C, schur: SchurModule, key: SKey, r: int, top_filter=None):
    """Full decomposition of a class of C(L) with a top of arity r.

    C is a TruncatedCooperad. Yields (top key, [(arity, bottom key, bottom word)], coef);
    bottoms still need ``schur.normalize``.
    """
    n, mk, word = schur.rep(key)
    ldeg = schur.ldeg
    for blocks, top, ys, coef in C.decompose_top(n, mk, r):
        if top_filter is not None and not top_filter(top):
            continue
        order = [l - 1 for b in blocks for l in b]
        s = sg.koszul_sign(order, [ldeg[l] for l in word])
        e = 0
        before = 0
        bottoms = []
        for b, y in zip(blocks, ys):
            bw = tuple(word[l - 1] for l in b)
            e += C.degree(len(b), y) * before
            before += sum(ldeg[l] for l in bw)
            bottoms.append((len(b), y, bw))
        yield top, bottoms, coef * s * (-1) ** (e % 2)
