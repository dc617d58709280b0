"""Exact sparse linear algebra over the rationals.

Vectors are plain dicts ``{index: Fraction}`` with no stored zeros.  A
``Matrix`` maps column vectors of length ``cols`` to length ``rows``.
Elimination runs on integer rows (fraction-free, content removed after every
step) and only converts back to ``Fraction`` for reduced echelon output.
"""

from __future__ import annotations

import os
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

Vector = Dict[int, Fraction]


class DimensionMismatchError(ValueError):
    pass


class ContainmentError(ValueError):
    pass


class ChainComplexError(ValueError):
    """d∘d is nonzero somewhere; ``degree`` names the source degree."""

    def __init__(self, degree, message=None):
        self.degree = degree
        super().__init__(message or f"d^2 != 0 starting in degree {degree}")


class DegeneratePairingWarning(UserWarning):
    pass


def frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


def vec_add(a: Vector, b: Mapping[int, Fraction], scale=1) -> Vector:
    """In-place a += scale*b, dropping zeros."""
    for k, v in b.items():
        nv = a.get(k, 0) + scale * v
        if nv:
            a[k] = nv
        else:
            a.pop(k, None)
    return a


def vec_scale(a: Mapping[int, Fraction], s) -> Vector:
    if not s:
        return {}
    return {k: v * s for k, v in a.items()}


def vec_clean(a: Mapping) -> Vector:
    return {k: frac(v) for k, v in a.items() if v}


# -- integer row kernel -------------------------------------------------------

def _int_row(row: Mapping[int, Fraction]) -> Dict[int, int]:
    den = 1
    for v in row.values():
        d = v.denominator if isinstance(v, Fraction) else 1
        den = den * d // gcd(den, d)
    out = {k: int(v * den) for k, v in row.items() if v}
    return _primitive(out)


def _primitive(row: Dict[int, int]) -> Dict[int, int]:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        for k in row:
            row[k] //= g
    return row


class _Echelon:
    """Incremental fraction-free echelon form keyed by pivot column."""

    __slots__ = ("pivots",)

    def __init__(self):
        self.pivots: Dict[int, Dict[int, int]] = {}

    def reduce(self, row: Dict[int, int]) -> Dict[int, int]:
        piv = self.pivots
        while row:
            c = min(row)
            p = piv.get(c)
            if p is None:
                return row
            a, b = p[c], row[c]
            g = gcd(a, b)
            a //= g
            b //= g
            new = {k: a * v for k, v in row.items()}
            for k, v in p.items():
                nv = new.get(k, 0) - b * v
                if nv:
                    new[k] = nv
                else:
                    new.pop(k, None)
            row = _primitive(new)
        return row

    def add(self, row: Dict[int, int]) -> bool:
        row = self.reduce(row)
        if not row:
            return False
        c = min(row)
        if row[c] < 0:
            row = {k: -v for k, v in row.items()}
        self.pivots[c] = row
        return True

    def rank(self) -> int:
        return len(self.pivots)

    def rref(self) -> List[Vector]:
        """Reduced rows, pivot entries 1, sorted by pivot column."""
        cols = sorted(self.pivots)
        done: Dict[int, Vector] = {}
        for c in reversed(cols):
            r = self.pivots[c]
            lead = r[c]
            v: Vector = {k: Fraction(x, lead) for k, x in r.items()}
            for k in [k for k in v if k != c and k in done]:
                vec_add(v, done[k], -v[k])
            done[c] = v
        return [done[c] for c in cols]


def _sorted_by_fill(rows: Iterable[Mapping[int, Fraction]]) -> List[Dict[int, int]]:
    # minimal-fill heuristic: sparse rows claim pivots first; ties keep
    # input order which favours lower leading columns
    ints = [_int_row(r) for r in rows]
    ints = [r for r in ints if r]
    ints.sort(key=lambda r: (len(r), min(r)))
    return ints


def echelon_rows(rows: Iterable[Mapping[int, Fraction]]) -> List[Vector]:
    e = _Echelon()
    for r in _sorted_by_fill(rows):
        e.add(r)
    return e.rref()


def row_rank(rows: Iterable[Mapping[int, Fraction]]) -> int:
    e = _Echelon()
    for r in _sorted_by_fill(rows):
        e.add(r)
    return e.rank()


# -- Matrix -------------------------------------------------------------------

class Matrix:
    """Sparse rational matrix; immutable by convention after construction."""

    __slots__ = ("rows", "cols", "_r")

    def __init__(self, rows: int, cols: int, data: Optional[Mapping[int, Mapping[int, object]]] = None):
        self.rows = rows
        self.cols = cols
        self._r: Dict[int, Vector] = {}
        if data:
            for i, row in data.items():
                if not 0 <= i < rows:
                    raise IndexError(f"row {i} out of range")
                clean = {}
                for j, v in row.items():
                    if not 0 <= j < cols:
                        raise IndexError(f"column {j} out of range")
                    if v:
                        clean[j] = frac(v)
                if clean:
                    self._r[i] = clean

    @classmethod
    def from_dense(cls, a: Sequence[Sequence[object]], cols: Optional[int] = None) -> "Matrix":
        rows = len(a)
        if cols is None:
            cols = len(a[0]) if rows else 0
        return cls(rows, cols, {i: {j: v for j, v in enumerate(r) if v} for i, r in enumerate(a)})

    @classmethod
    def from_columns(cls, rows: int, columns: Sequence[Mapping[int, object]]) -> "Matrix":
        data: Dict[int, Dict[int, object]] = {}
        for j, col in enumerate(columns):
            for i, v in col.items():
                if v:
                    data.setdefault(i, {})[j] = v
        return cls(rows, len(columns), data)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, {i: {i: 1} for i in range(n)})

    @classmethod
    def zero(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols)

    @property
    def entries(self) -> Dict[Tuple[int, int], Fraction]:
        return {(i, j): v for i, r in self._r.items() for j, v in r.items()}

    def row(self, i: int) -> Vector:
        return dict(self._r.get(i, {}))

    def row_items(self):
        return self._r.items()

    def nnz(self) -> int:
        return sum(len(r) for r in self._r.values())

    def is_zero(self) -> bool:
        return not self._r

    def to_dense(self) -> List[List[Fraction]]:
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for i, r in self._r.items():
            for j, v in r.items():
                out[i][j] = v
        return out

    def transpose(self) -> "Matrix":
        t: Dict[int, Dict[int, Fraction]] = {}
        for i, r in self._r.items():
            for j, v in r.items():
                t.setdefault(j, {})[i] = v
        m = Matrix(self.cols, self.rows)
        m._r = t
        return m

    def columns(self) -> List[Vector]:
        cols: List[Vector] = [dict() for _ in range(self.cols)]
        for i, r in self._r.items():
            for j, v in r.items():
                cols[j][i] = v
        return cols

    def apply(self, x: Mapping[int, Fraction]) -> Vector:
        out: Vector = {}
        if not x:
            return out
        for i, r in self._r.items():
            s = 0
            for j, v in r.items():
                xv = x.get(j)
                if xv:
                    s += v * xv
            if s:
                out[i] = Fraction(s)
        return out

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise DimensionMismatchError(f"{self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        out: Dict[int, Vector] = {}
        orows = other._r
        for i, r in self._r.items():
            acc: Vector = {}
            for k, v in r.items():
                ok = orows.get(k)
                if ok:
                    vec_add(acc, ok, v)
            if acc:
                out[i] = acc
        m = Matrix(self.rows, other.cols)
        m._r = out
        return m

    def __add__(self, other: "Matrix") -> "Matrix":
        return self._lin(other, 1)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self._lin(other, -1)

    def _lin(self, other, s):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatchError("shape mismatch")
        out = {i: dict(r) for i, r in self._r.items()}
        for i, r in other._r.items():
            acc = out.setdefault(i, {})
            vec_add(acc, r, s)
            if not acc:
                del out[i]
        m = Matrix(self.rows, self.cols)
        m._r = out
        return m

    def scale(self, s) -> "Matrix":
        m = Matrix(self.rows, self.cols)
        if s:
            m._r = {i: vec_scale(r, s) for i, r in self._r.items()}
        return m

    def __neg__(self):
        return self.scale(-1)

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.rows == other.rows
                and self.cols == other.cols and self._r == other._r)

    def __hash__(self):
        return hash((self.rows, self.cols, self.nnz()))

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols}, nnz={self.nnz()})"

    def rank(self) -> int:
        return rank(self)


def rank(m: Matrix) -> int:
    if _prime_mode():
        from . import _modp
        return _modp.rank_modp(m)
    return row_rank(r for _, r in m.row_items())


def _prime_mode() -> bool:
    return os.environ.get("KOSZULKIT_PRIME_FIELD", "") not in ("", "0")


# -- Subspace -----------------------------------------------------------------

@dataclass(frozen=True)
class Subspace:
    """Span inside Q^ambient_dim, stored as its reduced row-echelon basis."""

    ambient_dim: int
    basis: Tuple[Tuple[Tuple[int, Fraction], ...], ...] = ()

    @classmethod
    def span(cls, ambient_dim: int, vectors: Iterable[Mapping[int, object]]) -> "Subspace":
        rows = []
        for v in vectors:
            v = vec_clean(v)
            if any(not 0 <= k < ambient_dim for k in v):
                raise DimensionMismatchError("vector index outside ambient space")
            rows.append(v)
        ech = echelon_rows(rows)
        return cls(ambient_dim, tuple(tuple(sorted(r.items())) for r in ech))

    @classmethod
    def whole(cls, n: int) -> "Subspace":
        return cls.span(n, ({i: 1} for i in range(n)))

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, ())

    @property
    def dim(self) -> int:
        return len(self.basis)

    def vectors(self) -> List[Vector]:
        return [dict(r) for r in self.basis]

    def pivots(self) -> List[int]:
        return [r[0][0] for r in self.basis]

    def contains(self, v: Mapping[int, object]) -> bool:
        v = vec_clean(v)
        for row in self.basis:
            c = row[0][0]
            x = v.get(c)
            if x:
                vec_add(v, dict(row), -x)
        return not v

    def residue(self, v: Mapping[int, object]) -> Vector:
        """Normal form of v modulo the subspace (supported off the pivots)."""
        v = vec_clean(v)
        for row in self.basis:
            x = v.get(row[0][0])
            if x:
                vec_add(v, dict(row), -x)
        return v

    def coordinates(self, v: Mapping[int, object]) -> Vector:
        """Coordinates of v in the echelon basis; raises if v is outside."""
        v = vec_clean(v)
        out: Vector = {}
        for idx, row in enumerate(self.basis):
            c = row[0][0]
            x = v.get(c)
            if x:
                out[idx] = x
                vec_add(v, dict(row), -x)
        if v:
            raise ContainmentError("vector not in subspace")
        return out

    def is_subspace_of(self, other: "Subspace") -> bool:
        return all(other.contains(dict(r)) for r in self.basis)

    def __le__(self, other):
        return self.is_subspace_of(other)


# -- operations -----------------------------------------------------------------

def rank_kernel_image(m: Matrix) -> Tuple[int, Subspace, Subspace]:
    """Rank, kernel (in Q^cols) and image (in Q^rows) of m."""
    rref = echelon_rows(r for _, r in m.row_items())
    r = len(rref)
    pivots = [min(row) for row in rref]
    pivset = set(pivots)
    kern = []
    for f in range(m.cols):
        if f in pivset:
            continue
        v: Vector = {f: Fraction(1)}
        for row, p in zip(rref, pivots):
            x = row.get(f)
            if x:
                v[p] = -x
        kern.append(v)
    image = Subspace.span(m.rows, m.columns())
    return r, Subspace.span(m.cols, kern), image


def kernel(m: Matrix) -> Subspace:
    return rank_kernel_image(m)[1]


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatchError("ambient dimensions differ")
    return Subspace.span(a.ambient_dim, a.vectors() + b.vectors())


def subspace_intersect(a: Subspace, b: Subspace) -> Subspace:
    """a ∩ b via the nullspace of [A; -B]."""
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatchError(f"ambient {a.ambient_dim} vs {b.ambient_dim}")
    if a.dim == 0 or b.dim == 0:
        return Subspace.zero(a.ambient_dim)
    av, bv = a.vectors(), b.vectors()
    # columns of M are basis vectors; kernel gives combinations landing in both
    cols = av + [vec_scale(v, -1) for v in bv]
    m = Matrix.from_columns(a.ambient_dim, cols)
    ker = kernel(m)
    out = []
    for kv in ker.vectors():
        w: Vector = {}
        for i, c in kv.items():
            if i < len(av):
                vec_add(w, av[i], c)
        out.append(w)
    return Subspace.span(a.ambient_dim, out)


def complement_basis(sub: Subspace) -> List[int]:
    """Standard basis indices completing sub's echelon basis."""
    piv = set(sub.pivots())
    return [i for i in range(sub.ambient_dim) if i not in piv]


def subspace_quotient(ambient: Subspace, sub: Subspace) -> Tuple[int, Matrix, Matrix]:
    """Quotient ambient/sub.

    projection: Q^n -> Q^q with kernel ⊇ sub (restricted to ambient it has
    kernel exactly sub); section: Q^q -> Q^n lands in ambient and
    projection @ section is the identity.
    """
    if ambient.ambient_dim != sub.ambient_dim:
        raise DimensionMismatchError("ambient dimensions differ")
    if not sub.is_subspace_of(ambient):
        raise ContainmentError("sub is not contained in ambient")
    n = ambient.ambient_dim
    # complete sub's basis to ambient's basis by echelon insertion
    e = _Echelon()
    for r in _sorted_by_fill(sub.vectors()):
        e.add(r)
    chosen = []
    for v in ambient.vectors():
        if e.add(_int_row(v)):
            chosen.append(v)
    q = len(chosen)
    section = Matrix.from_columns(n, chosen)
    # projection: coordinates along `chosen` in the basis sub ∪ chosen of the
    # ambient, extended by zero on a standard complement of the ambient
    basis = sub.vectors() + chosen
    extra = complement_basis(ambient)
    full = basis + [{i: Fraction(1)} for i in extra]
    b = Matrix.from_columns(n, full)
    inv = invert(b)
    k = sub.dim
    proj = {i - k: inv.row(i) for i in range(k, k + q)}
    projection = Matrix(q, n, proj)
    return q, projection, section


def invert(m: Matrix) -> Matrix:
    if m.rows != m.cols:
        raise DimensionMismatchError("square matrix required")
    n = m.rows
    rows = []
    for i in range(n):
        r = dict(m.row(i))
        r[n + i] = Fraction(1)
        rows.append(r)
    e = _Echelon()
    for r in rows:
        e.add(_int_row(r))
    rref = e.rref()
    if len(rref) < n or any(min(r) >= n for r in rref):
        raise ValueError("matrix is singular")
    out = {}
    for r in rref:
        p = min(r)
        if p < n:
            out[p] = {k - n: v for k, v in r.items() if k >= n}
    return Matrix(n, n, out)


def solve_in_span(columns: Sequence[Mapping[int, Fraction]], target: Mapping[int, Fraction], dim: int) -> Optional[Vector]:
    """Some x with Σ x_j columns_j = target, or None."""
    m = Matrix.from_columns(dim, list(columns))
    aug_rows = []
    for i in range(dim):
        r = dict(m.row(i))
        t = target.get(i)
        if t:
            r[len(columns)] = Fraction(t)
        aug_rows.append(r)
    rref = echelon_rows(aug_rows)
    sol: Vector = {}
    for r in rref:
        p = min(r)
        if p == len(columns):
            return None
        t = r.get(len(columns))
        if t:
            sol[p] = t
    return sol


def annihilator(s: Subspace, pairing: Matrix) -> Subspace:
    """{f : f^T G s = 0 for all s in S}, inside the dual space (rows of G).

    ``pairing`` G has shape dual_dim x ambient_dim.  A degenerate G only
    produces a warning carrying the corank.
    """
    if pairing.cols != s.ambient_dim:
        raise DimensionMismatchError("pairing does not match the ambient space")
    r = rank(pairing)
    corank = min(pairing.rows, pairing.cols) - r
    if corank or pairing.rows != pairing.cols:
        warnings.warn(f"degenerate pairing (corank {corank})", DegeneratePairingWarning, stacklevel=2)
    conds = [pairing.apply(v) for v in s.vectors()]
    m = Matrix(len(conds), pairing.rows, {i: c for i, c in enumerate(conds)})
    return kernel(m)


# -- chain complexes ----------------------------------------------------------

@dataclass
class ChainComplexData:
    """Differentials d[k]: C_k -> C_{k-1}; missing degrees are zero spaces."""

    space_dims: Dict[int, int]
    differentials: Dict[int, Matrix] = field(default_factory=dict)

    def __post_init__(self):
        for k, d in self.differentials.items():
            src = self.space_dims.get(k, 0)
            tgt = self.space_dims.get(k - 1, 0)
            if (d.rows, d.cols) != (tgt, src):
                raise DimensionMismatchError(
                    f"differential in degree {k} has shape {d.rows}x{d.cols}, expected {tgt}x{src}")

    @property
    def degrees(self) -> List[int]:
        return sorted(self.space_dims)

    def d(self, k: int) -> Matrix:
        m = self.differentials.get(k)
        if m is None:
            return Matrix.zero(self.space_dims.get(k - 1, 0), self.space_dims.get(k, 0))
        return m

    def check(self) -> None:
        for k in sorted(self.differentials):
            lower = self.differentials.get(k - 1)
            if lower is None:
                continue
            if not (lower @ self.differentials[k]).is_zero():
                raise ChainComplexError(k)


@dataclass
class HomologyReport:
    betti: Dict[int, int]
    representatives: Optional[Dict[int, List[Vector]]] = None

    def concentrated_in(self, degrees: Iterable[int]) -> bool:
        keep = set(degrees)
        return all(v == 0 for k, v in self.betti.items() if k not in keep)

    def euler(self) -> int:
        return sum((-1) ** (k % 2) * v for k, v in self.betti.items())


def homology(c: ChainComplexData, representatives: bool = False) -> HomologyReport:
    c.check()
    ranks = {k: rank(m) for k, m in c.differentials.items()}
    betti = {}
    for k in c.degrees:
        betti[k] = c.space_dims[k] - ranks.get(k, 0) - ranks.get(k + 1, 0)
    reps = None
    if representatives:
        reps = {}
        for k in c.degrees:
            if not betti[k]:
                reps[k] = []
                continue
            ker = kernel(c.d(k)) if c.space_dims[k] else Subspace.zero(0)
            img = Subspace.span(c.space_dims[k], c.d(k + 1).columns())
            e = _Echelon()
            for r in _sorted_by_fill(img.vectors()):
                e.add(r)
            reps[k] = [v for v in ker.vectors() if e.add(_int_row(v))]
    return HomologyReport(betti, reps)
