"""Independent reference computations used by the tests.

Nothing here imports koszulkit: the oracles work on plain words in the tensor
algebra with their own Fraction elimination, so agreement is a real check.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb, factorial
from typing import Dict, List, Sequence, Tuple

Word = Tuple[int, ...]


# -- free operad counting ----------------------------------------------------------

def free_symmetric_binary(n: int) -> int:
    """Trees with one commutative binary generator on n labelled leaves.

    Split the leaf set at the root into two unordered nonempty blocks.
    """
    if n == 1:
        return 1
    total = sum(comb(n, k) * free_symmetric_binary(k) * free_symmetric_binary(n - k) for k in range(1, n))
    return total // 2


def preset_dims(name: str, n: int) -> int:
    return {"as": factorial(n), "com": 1, "lie": factorial(n - 1)}[name]


# -- elimination -----------------------------------------------------------------------

class Echelon:
    """Incremental row echelon form over Q, rows as {column: Fraction}."""

    def __init__(self):
        self.rows: Dict[int, Dict[int, Fraction]] = {}   # pivot column -> normalized row

    def reduce(self, v: Dict[int, Fraction]) -> Dict[int, Fraction]:
        # rows are kept fully reduced, so one pass over the pivots suffices
        v = {k: Fraction(c) for k, c in v.items() if c}
        for p, r in self.rows.items():
            c = v.get(p)
            if c:
                for k, x in r.items():
                    y = v.get(k, 0) - c * x
                    if y:
                        v[k] = y
                    else:
                        v.pop(k, None)
        return v

    def add(self, v: Dict[int, Fraction]) -> bool:
        v = self.reduce(v)
        if not v:
            return False
        p = min(v)
        c = v[p]
        v = {k: x / c for k, x in v.items()}
        for q, r in self.rows.items():
            if p in r:
                f = r[p]
                for k, x in v.items():
                    r[k] = r.get(k, 0) - f * x
                    if not r[k]:
                        del r[k]
        self.rows[p] = v
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)


def rank(columns: Sequence[Dict[int, Fraction]]) -> int:
    e = Echelon()
    for c in columns:
        e.add(c)
    return e.rank


def nullspace(rows: Sequence[Dict[int, Fraction]], n: int) -> List[Dict[int, Fraction]]:
    e = Echelon()
    for r in rows:
        e.add(r)
    free = [j for j in range(n) if j not in e.rows]
    basis = []
    for f in free:
        v = {f: Fraction(1)}
        for p, r in e.rows.items():
            if f in r:
                v[p] = -r[f]
        basis.append(v)
    return basis


# -- quadratic associative algebras in the tensor algebra ------------------------------------

class QuadraticAlgebra:
    """T(V)/(R) for R given as combinations of length-two words."""

    def __init__(self, ngens: int, relations: Sequence[Dict[Tuple[int, int], object]], top: int):
        self.g, self.top = ngens, top
        self.R = [{k: Fraction(v) for k, v in r.items()} for r in relations]
        self.words = {n: list(itertools.product(range(ngens), repeat=n)) for n in range(top + 1)}
        self.index = {n: {w: i for i, w in enumerate(ws)} for n, ws in self.words.items()}
        self.ideal = {n: self._ideal(n) for n in range(top + 1)}

    def _ideal(self, n: int) -> Echelon:
        e = Echelon()
        idx = self.index[n]
        for i in range(n - 1):
            for u in itertools.product(range(self.g), repeat=i):
                for v in itertools.product(range(self.g), repeat=n - 2 - i):
                    for r in self.R:
                        e.add({idx[u + w + v]: c for w, c in r.items()})
        return e

    def dim(self, n: int) -> int:
        return len(self.words[n]) - self.ideal[n].rank

    def dims(self) -> List[int]:
        return [self.dim(n) for n in range(self.top + 1)]

    def standard(self, n: int) -> List[int]:
        return [j for j in range(len(self.words[n])) if j not in self.ideal[n].rows]

    def perp(self) -> List[Dict[Tuple[int, int], Fraction]]:
        """R^⊥ in V*⊗V* under the word pairing."""
        pairs = list(itertools.product(range(self.g), repeat=2))
        rows = [{pairs.index(w): c for w, c in r.items()} for r in self.R]
        return [{pairs[k]: c for k, c in v.items()} for v in nullspace(rows, len(pairs))]

    def dual(self) -> "QuadraticAlgebra":
        """A^! = T(V*)/(R^⊥), with V* in degree 0 (dimensions only)."""
        return QuadraticAlgebra(self.g, self.perp(), self.top)

    def coalgebra(self, n: int) -> List[Dict[int, Fraction]]:
        """Basis of A^¡_n = ∩ V^i ⊗ R ⊗ V^j, as vectors on words of length n."""
        if n == 0:
            return [{0: Fraction(1)}]
        if n == 1:
            return [{i: Fraction(1)} for i in range(self.g)]
        idx = self.index[n]
        rows = []
        for i in range(n - 1):
            for u in itertools.product(range(self.g), repeat=i):
                for v in itertools.product(range(self.g), repeat=n - 2 - i):
                    for r in self.perp():
                        rows.append({idx[u + w + v]: c for w, c in r.items()})
        return nullspace(rows, len(self.words[n]))

    def koszul_complex(self, n: int) -> List[int]:
        """Homology of A_{n-q} ⊗ A^¡_q -> A_{n-q+1} ⊗ A^¡_{q-1}, listed by q = 0..n."""
        co = {q: self.coalgebra(q) for q in range(n + 1)}
        std = {p: self.standard(p) for p in range(n + 1)}
        cdims = {q: len(co[q]) for q in co}
        dims = [len(std[n - q]) * cdims[q] for q in range(n + 1)]

        def coords(q, vec):
            sol = _solve(co[q], vec)
            assert sol is not None, "tail of an A^¡ element left A^¡"
            return sol

        ranks = {}
        for q in range(1, n + 1):
            p = n - q
            cols = []
            for s in std[p]:
                sw = self.words[p][s]
                for b in co[q]:
                    out: Dict[int, Fraction] = {}
                    split: Dict[int, Dict[int, Fraction]] = {}
                    for k, c in b.items():
                        w = self.words[q][k]
                        tail = self.index[q - 1][w[1:]]
                        split.setdefault(w[0], {})
                        split[w[0]][tail] = split[w[0]].get(tail, 0) + c
                    for v, tailvec in split.items():
                        red = self.reduce(p + 1, self.index[p + 1][sw + (v,)])
                        cc = coords(q - 1, tailvec)
                        for a, x in red.items():
                            ai = std[p + 1].index(a)
                            for j, y in cc.items():
                                key = ai * cdims[q - 1] + j
                                out[key] = out.get(key, 0) + x * y
                    cols.append({k: v for k, v in out.items() if v})
            ranks[q] = rank(cols)
        return [dims[q] - ranks.get(q, 0) - ranks.get(q + 1, 0) for q in range(n + 1)]

    def reduce(self, n: int, j: int) -> Dict[int, Fraction]:
        """Normal form of a word modulo the ideal, over standard words."""
        r = self.ideal[n].reduce({j: Fraction(1)})
        return r


def _solve(basis: Sequence[Dict[int, Fraction]], target: Dict[int, Fraction]):
    """Coefficients c with Σ c_i basis_i = target, or None."""
    tag = 10 ** 9
    e = Echelon()
    for i, b in enumerate(basis):
        v = dict(b)
        v[tag + i] = Fraction(1)
        e.add(v)
    r = e.reduce(dict(target))
    if any(k < tag for k in r):
        return None
    return {k - tag: -c for k, c in r.items()}
