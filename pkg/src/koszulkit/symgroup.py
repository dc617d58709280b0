"""Permutations as 1-based tuples: ``p[i-1]`` is the image of ``i``."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from typing import Iterable, List, Sequence, Tuple

Perm = Tuple[int, ...]


def identity(n: int) -> Perm:
    return tuple(range(1, n + 1))


def compose(t: Perm, s: Perm) -> Perm:
    """(t∘s)(i) = t(s(i))."""
    return tuple(t[x - 1] for x in s)


def inverse(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, x in enumerate(p, 1):
        out[x - 1] = i
    return tuple(out)


def sign(p: Perm) -> int:
    seen = [False] * len(p)
    s = 1
    for i in range(len(p)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j] - 1
            length += 1
        if length % 2 == 0:
            s = -s
    return s


def transposition(n: int, i: int) -> Perm:
    """Adjacent transposition swapping i and i+1."""
    p = list(range(1, n + 1))
    p[i - 1], p[i] = p[i], p[i - 1]
    return tuple(p)


@lru_cache(maxsize=None)
def all_perms(n: int) -> Tuple[Perm, ...]:
    return tuple(permutations(range(1, n + 1)))


def standardize(labels: Sequence[int]) -> Perm:
    """Ranks of the labels, as a permutation of 1..len."""
    order = sorted(labels)
    rank = {x: i + 1 for i, x in enumerate(order)}
    return tuple(rank[x] for x in labels)


def koszul_sign(order: Sequence[int], degrees: Sequence[int]) -> int:
    """Sign of listing items (with given degrees) in ``order``.

    ``order[k]`` is the old position of the item placed at new position k.
    Each crossed pair of odd items contributes -1.
    """
    odd = [i for i in order if degrees[i] % 2]
    s = 1
    for a in range(len(odd)):
        for b in range(a + 1, len(odd)):
            if odd[a] > odd[b]:
                s = -s
    return s


def ordered_set_partitions(labels: Sequence[int], k: int):
    """Partitions of labels into k nonempty blocks, blocks sorted by minimum."""
    labels = tuple(sorted(labels))
    if k == 0:
        if not labels:
            yield ()
        return
    if len(labels) < k:
        return

    def rec(rest, blocks):
        if not rest:
            if len(blocks) == k:
                yield tuple(tuple(b) for b in blocks)
            return
        x, tail = rest[0], rest[1:]
        # remaining elements must still be able to open the missing blocks
        for b in blocks:
            b.append(x)
            yield from rec(tail, blocks)
            b.pop()
        if len(blocks) < k:
            blocks.append([x])
            yield from rec(tail, blocks)
            blocks.pop()

    yield from rec(labels, [])


def word_decomposition(p: Perm) -> List[int]:
    """Adjacent transpositions i_1..i_r with p = s_{i_1} ... s_{i_r}."""
    a = list(p)
    word = []
    n = len(a)
    # bubble sort records p^{-1} factors; reverse to express p
    for i in range(n):
        for j in range(n - 1 - i):
            if a[j] > a[j + 1]:
                a[j], a[j + 1] = a[j + 1], a[j]
                word.append(j + 1)
    # sorting applied right multiplications: p * s_{w1} * ... = id
    return list(reversed(word))


def stabilizer_blocks(word: Sequence[object]) -> List[List[int]]:
    """Maximal runs of equal letters in a sorted word (1-based positions)."""
    blocks = []
    start = 0
    for i in range(1, len(word) + 1):
        if i == len(word) or word[i] != word[start]:
            if i - start > 1:
                blocks.append(list(range(start + 1, i + 1)))
            start = i
    return blocks


def frac_matrix(rows: Iterable[Iterable[object]]) -> Tuple[Tuple[Fraction, ...], ...]:
    return tuple(tuple(Fraction(x) for x in r) for r in rows)
