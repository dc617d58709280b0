"""Rank modulo a large prime, as a speed path for big integer matrices.

Opt-in only (``KOSZULKIT_PRIME_FIELD=1``).  Ranks mod p can undercount the
rational rank when p divides a minor, so results from this path are never
used by the acceptance suite.  ``KOSZULKIT_NO_NUMBA=1`` forces the numpy
fallback even when numba is importable.
"""

from __future__ import annotations

import os

import numpy as np

PRIME = 2147483629  # largest prime below 2**31; products fit in int64

try:
    if os.environ.get("KOSZULKIT_NO_NUMBA", "") not in ("", "0"):
        raise ImportError
    from numba import njit
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised via the env flag
    HAVE_NUMBA = False


def _rank_numpy(a: np.ndarray, p: int) -> int:
    a = a.copy() % p
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = (a[r] * inv) % p
        below = a[r + 1:, c].copy()
        mask = below != 0
        if mask.any():
            a[r + 1:][mask] = (a[r + 1:][mask] - np.outer(below[mask], a[r]) % p) % p
        r += 1
    return r


if HAVE_NUMBA:
    @njit(cache=True)
    def _rank_kernel(a, p):
        rows, cols = a.shape
        r = 0
        for c in range(cols):
            if r == rows:
                break
            piv = -1
            for i in range(r, rows):
                if a[i, c] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for j in range(cols):
                    t = a[r, j]
                    a[r, j] = a[piv, j]
                    a[piv, j] = t
            # modular inverse by Fermat
            base = a[r, c]
            e = p - 2
            inv = 1
            while e > 0:
                if e & 1:
                    inv = (inv * base) % p
                base = (base * base) % p
                e >>= 1
            for j in range(cols):
                a[r, j] = (a[r, j] * inv) % p
            for i in range(r + 1, rows):
                f = a[i, c]
                if f != 0:
                    for j in range(c, cols):
                        a[i, j] = (a[i, j] - f * a[r, j]) % p
            r += 1
        return r


def dense_modp(m) -> np.ndarray:
    a = np.zeros((m.rows, m.cols), dtype=np.int64)
    for (i, j), v in m.entries.items():
        a[i, j] = (v.numerator % PRIME) * pow(v.denominator, PRIME - 2, PRIME) % PRIME
    return a


def rank_array(a: np.ndarray, use_numba: bool = True) -> int:
    if a.size == 0:
        return 0
    if use_numba and HAVE_NUMBA:
        return int(_rank_kernel(a.copy(), PRIME))
    return _rank_numpy(a, PRIME)


def rank_modp(m) -> int:
    return rank_array(dense_modp(m))
