"""Cached builders shared across test modules (one pytest process)."""

from __future__ import annotations

from functools import lru_cache

from koszulkit import algebra as al
from koszulkit import cotangent as ct
from koszulkit import operad as op
from koszulkit import presets as ps


@lru_cache(maxsize=None)
def operad(name: str, max_arity: int = 5):
    pres = ps.load_preset(name, max_arity)
    return pres, op.build_truncated_operad(pres)


@lru_cache(maxsize=None)
def cooperad(name: str, max_arity: int = 4):
    pres, P = operad(name, max_arity)
    return op.koszul_dual_cooperad(pres, P)


@lru_cache(maxsize=None)
def algebra(name: str, W: int):
    return al.build_algebra(ps.load_example(name, W))


@lru_cache(maxsize=None)
def coalgebra(name: str, W: int):
    return al.koszul_dual_coalgebra(algebra(name, W))


@lru_cache(maxsize=None)
def verdict(name: str, W: int, deep: bool = False):
    return ct.koszul_criterion(algebra(name, W), coalgebra(name, W), deep=deep)


@lru_cache(maxsize=None)
def dual_algebra(name: str, W: int):
    return al.build_algebra(al.koszul_dual_presentation(ps.load_example(name, W)))


# kind of classical model for each example
SPECIALIZATIONS = {"com-x2": "com", "com-free": "com", "lie-ab1": "lie", "lie-ab2": "lie",
                   "module": "module", "kxy": "as", "x2": "as", "nk": "as", "free": "as"}

BINARY = [n for n in ps.EXAMPLES if n != "module"]

# generator indices and relations of the As examples, as word combinations for the oracle
AS_WORDS = {
    "x2": (1, [{(0, 0): 1}]),
    "kxy": (2, [{(0, 1): 1, (1, 0): -1}]),
    "free": (2, []),
    "zero": (2, [{(a, b): 1} for a in range(2) for b in range(2)]),
    "nk": (3, [{(2, 2): 1, (0, 2): -1}, {(2, 0): 1, (0, 2): 1}]),
}
