"""Lyndon words, the Witt dimension formula and the tensor-algebra embedding.

Words are tuples of generator indices; tuple comparison is the lexicographic
order used throughout (a proper prefix sorts first).
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Iterator

from sympy import divisors, mobius

Word = tuple[int, ...]

__all__ = [
    "Word",
    "is_lyndon",
    "lyndon_words",
    "lyndon_words_of_length",
    "lyndon_words_with_content",
    "witt_dimension",
    "standard_factorization",
    "tensor_bracket",
    "OracleCutoffExceeded",
]


class OracleCutoffExceeded(ValueError):
    pass


def is_lyndon(w: Word) -> bool:
    """True iff ``w`` is nonempty and strictly smaller than each proper suffix."""
    if not w:
        return False
    return all(w < w[i:] for i in range(1, len(w)))


def lyndon_words(alphabet_size: int, max_length: int) -> Iterator[Word]:
    """All Lyndon words of length ``<= max_length``, in lexicographic order (Duval)."""
    if max_length < 1 or alphabet_size < 1:
        return
    w = [0]
    while w:
        yield tuple(w)
        m = len(w)
        while len(w) < max_length:
            w.append(w[len(w) - m])
        while w and w[-1] == alphabet_size - 1:
            w.pop()
        if w:
            w[-1] += 1


@lru_cache(maxsize=None)
def lyndon_words_of_length(alphabet_size: int, n: int) -> tuple[Word, ...]:
    return tuple(w for w in lyndon_words(alphabet_size, n) if len(w) == n)


@lru_cache(maxsize=None)
def lyndon_words_with_content(alphabet_size: int, n: int, letter: int, count: int) -> tuple[Word, ...]:
    """Lyndon words of length ``n`` containing ``letter`` exactly ``count`` times.

    Only used for two-letter alphabets in the cheap direction: positions of the
    tracked letter are enumerated directly, so low counts stay fast at large n.
    """
    if alphabet_size != 2 or count > n:
        return tuple(w for w in lyndon_words_of_length(alphabet_size, n) if w.count(letter) == count)
    other = 1 - letter
    found = []
    for pos in combinations(range(n), count):
        w = [other] * n
        for i in pos:
            w[i] = letter
        w = tuple(w)
        if is_lyndon(w):
            found.append(w)
    return tuple(sorted(found))


def witt_dimension(alphabet_size: int, n: int) -> int:
    """Dimension of the weight-``n`` part of the free Lie algebra on ``alphabet_size`` generators."""
    if n < 1:
        raise ValueError("weight must be >= 1")
    total = sum(int(mobius(m)) * alphabet_size ** (n // m) for m in divisors(n))
    return total // n


@lru_cache(maxsize=None)
def standard_factorization(w: Word) -> tuple[Word, Word]:
    """Split a Lyndon word of length >= 2 as ``u v`` with ``v`` its longest proper Lyndon suffix."""
    if len(w) < 2:
        raise ValueError("letters have no standard factorization")
    for i in range(1, len(w)):
        if is_lyndon(w[i:]):
            return w[:i], w[i:]
    raise AssertionError("unreachable: the last letter is always Lyndon")


def _poly_mul(x: dict[Word, int], y: dict[Word, int]) -> dict[Word, int]:
    out: dict[Word, int] = {}
    for u, c in x.items():
        for v, d in y.items():
            k = u + v
            out[k] = out.get(k, 0) + c * d
    return {k: v for k, v in out.items() if v}


def tensor_bracket(x: dict[Word, int], y: dict[Word, int]) -> dict[Word, int]:
    """Commutator ``xy - yx`` of two noncommutative polynomials."""
    out = _poly_mul(x, y)
    for k, v in _poly_mul(y, x).items():
        out[k] = out.get(k, 0) - v
    return {k: v for k, v in out.items() if v}


@lru_cache(maxsize=None)
def lyndon_polynomial(w: Word) -> dict[Word, int]:
    """Image of the standard bracketing of ``w`` in the tensor algebra."""
    if len(w) == 1:
        return {w: 1}
    u, v = standard_factorization(w)
    return tensor_bracket(lyndon_polynomial(u), lyndon_polynomial(v))
