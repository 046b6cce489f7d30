"""Chevalley-Eilenberg chains of a graded Lie algebra.

A wedge basis element is a tuple of algebra basis labels, strictly increasing
in the algebra's ``sort_key`` order (weight, occurrence, label). Suspended
elements have degree one, so reordering factors costs the parity of the
permutation and a repeated factor kills the wedge.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .exactlinalg import RationalMatrix
from .freelie.algebra import GradedAlgebra, Label, LieElement

Wedge = tuple

__all__ = [
    "Chain",
    "Wedge",
    "normalize_wedge",
    "differential",
    "weight_component",
    "occurrence_component",
    "basis_of",
    "differential_matrix",
    "coordinates",
    "from_coordinates",
    "wedge_weight",
    "wedge_occurrence",
]


def _cache(algebra: GradedAlgebra, name: str) -> dict:
    caches = algebra.__dict__.setdefault("_chain_caches", {})
    return caches.setdefault(name, {})


def normalize_wedge(algebra: GradedAlgebra, factors: Sequence[Label]) -> tuple[int, Wedge]:
    """Sort ``factors`` into basis order; returns ``(sign, wedge)`` with sign 0 on a repeat."""
    keys = [algebra.sort_key(f) for f in factors]
    order = sorted(range(len(factors)), key=keys.__getitem__)
    for i in range(1, len(order)):
        if factors[order[i]] == factors[order[i - 1]]:
            return 0, ()
    inversions = 0
    for i in range(len(order)):
        for j in range(i + 1, len(order)):
            if order[i] > order[j]:
                inversions += 1
    return (-1 if inversions % 2 else 1), tuple(factors[i] for i in order)


def wedge_weight(algebra: GradedAlgebra, w: Wedge) -> int:
    return sum(algebra.weight(x) for x in w)


def wedge_occurrence(algebra: GradedAlgebra, w: Wedge, generator: int | None = None) -> int:
    return sum(algebra.occurrence(x, generator) for x in w)


class Chain:
    """Sparse rational combination of wedge basis elements."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: GradedAlgebra, terms: Mapping[Wedge, object] | None = None):
        self.algebra = algebra
        clean = {}
        for k, v in (terms or {}).items():
            v = Fraction(v)
            if v:
                clean[k] = v
        self.terms: dict[Wedge, Fraction] = clean

    @classmethod
    def unit(cls, algebra: GradedAlgebra) -> "Chain":
        return cls(algebra, {(): 1})

    @classmethod
    def zero(cls, algebra: GradedAlgebra) -> "Chain":
        return cls(algebra)

    @classmethod
    def wedge(cls, *elements: LieElement) -> "Chain":
        """``s x_1 ∧ ... ∧ s x_p`` expanded multilinearly in the wedge basis."""
        if not elements:
            raise ValueError("wedge of nothing; use Chain.unit")
        algebra = elements[0].algebra
        partial: dict[tuple, Fraction] = {(): Fraction(1)}
        for e in elements:
            if e.algebra is not algebra:
                raise ValueError("elements of different algebras")
            nxt: dict[tuple, Fraction] = {}
            for prefix, c in partial.items():
                for lab, d in e.terms.items():
                    if lab in prefix:
                        continue
                    key = prefix + (lab,)
                    nxt[key] = nxt.get(key, 0) + c * d
            partial = nxt
        acc: dict[Wedge, Fraction] = {}
        for factors, c in partial.items():
            sign, w = normalize_wedge(algebra, factors)
            if sign:
                acc[w] = acc.get(w, 0) + sign * c
        return cls(algebra, acc)

    def _check(self, other: "Chain") -> None:
        if other.algebra is not self.algebra:
            raise ValueError("chains over different algebras")

    def __add__(self, other: "Chain") -> "Chain":
        self._check(other)
        acc = dict(self.terms)
        for k, v in other.terms.items():
            acc[k] = acc.get(k, 0) + v
        return Chain(self.algebra, acc)

    def __neg__(self) -> "Chain":
        return Chain(self.algebra, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "Chain") -> "Chain":
        return self + (-other)

    def __mul__(self, c: object) -> "Chain":
        c = Fraction(c)
        return Chain(self.algebra, {k: c * v for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Chain):
            return NotImplemented
        return self.algebra is other.algebra and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        alg = self.algebra
        parts = []
        for w in sorted(self.terms, key=lambda w: (len(w), [alg.sort_key(x) for x in w])):
            name = "∧".join("s" + alg.label_str(x) for x in w) or "1"
            parts.append(f"{self.terms[w]}*{name}")
        return " + ".join(parts)

    def degrees(self) -> set[int]:
        return {len(w) for w in self.terms}

    def weights(self) -> set[int]:
        return {wedge_weight(self.algebra, w) for w in self.terms}

    def occurrences(self, generator: int | None = None) -> set[int]:
        return {wedge_occurrence(self.algebra, w, generator) for w in self.terms}


def _d_basis(algebra: GradedAlgebra, w: Wedge) -> dict[Wedge, Fraction]:
    cache = _cache(algebra, "d")
    hit = cache.get(w)
    if hit is not None:
        return hit
    acc: dict[Wedge, Fraction] = {}
    p = len(w)
    for i in range(p):
        for j in range(i + 1, p):
            # (-1)^{i+j} with 1-based positions has the same parity as 0-based
            sign = -1 if (i + j) % 2 else 1
            rest = w[:i] + w[i + 1 : j] + w[j + 1 :]
            for z, c in algebra.bracket_basis(w[i], w[j]).items():
                if z in rest:
                    continue
                s, nw = normalize_wedge(algebra, (z,) + rest)
                if s:
                    acc[nw] = acc.get(nw, 0) + sign * s * c
    out = {k: v for k, v in acc.items() if v}
    cache[w] = out
    return out


def differential(c: Chain) -> Chain:
    """The Chevalley-Eilenberg differential, ``d(sx ∧ sy) = -s[x, y]``, zero on degrees 0 and 1."""
    acc: dict[Wedge, Fraction] = {}
    for w, coeff in c.terms.items():
        for k, v in _d_basis(c.algebra, w).items():
            acc[k] = acc.get(k, 0) + coeff * v
    return Chain(c.algebra, acc)


def weight_component(c: Chain, p: int, n: int) -> Chain:
    return Chain(
        c.algebra,
        {w: v for w, v in c.terms.items() if len(w) == p and wedge_weight(c.algebra, w) == n},
    )


def occurrence_component(c: Chain, g: int | str, k: int) -> Chain:
    gi = c.algebra.generator_index(g)
    return Chain(c.algebra, {w: v for w, v in c.terms.items() if wedge_occurrence(c.algebra, w, gi) == k})


def basis_of(p: int, n: int, algebra: GradedAlgebra, occurrence_filter: int | None = None) -> tuple[Wedge, ...]:
    """Wedge basis of ``C_p(n)`` (optionally of fixed b-occurrence), in basis order."""
    key = (p, n, occurrence_filter)
    cache = _cache(algebra, "basis")
    hit = cache.get(key)
    if hit is not None:
        return hit
    if p < 0 or n < 0:
        out: tuple[Wedge, ...] = ()
    elif p == 0:
        out = ((),) if n == 0 and occurrence_filter in (None, 0) else ()
    else:
        out = tuple(_enumerate(p, n, algebra, occurrence_filter))
    cache[key] = out
    return out


def _enumerate(p: int, n: int, algebra: GradedAlgebra, occ: int | None) -> Iterable[Wedge]:
    top = n - (p - 1)
    cands: list[Label] = []
    for w in range(1, top + 1):
        if occ is None:
            cands.extend(algebra.basis(w))
        else:
            for k in range(occ + 1):
                cands.extend(algebra.basis(w, k))
    cands.sort(key=algebra.sort_key)
    weights = [algebra.weight(x) for x in cands]
    occs = [algebra.occurrence(x) for x in cands]
    out: list[Wedge] = []

    def rec(start: int, left: int, wleft: int, oleft: int, prefix: list) -> None:
        if left == 0:
            if wleft == 0 and (occ is None or oleft == 0):
                out.append(tuple(prefix))
            return
        for i in range(start, len(cands)):
            wi = weights[i]
            # weights are nondecreasing from here on
            if wi * left > wleft:
                break
            if occ is not None and occs[i] > oleft:
                continue
            prefix.append(cands[i])
            rec(i + 1, left - 1, wleft - wi, oleft - (occs[i] if occ is not None else 0), prefix)
            prefix.pop()

    rec(0, p, n, occ or 0, [])
    return out


def coordinates(c: Chain, basis: Sequence[Wedge]) -> list[Fraction]:
    index = {w: i for i, w in enumerate(basis)}
    out = [Fraction(0)] * len(basis)
    for w, v in c.terms.items():
        if w not in index:
            raise ValueError(f"chain term {w!r} outside the given basis")
        out[index[w]] = v
    return out


def from_coordinates(algebra: GradedAlgebra, basis: Sequence[Wedge], x: Sequence[object]) -> Chain:
    return Chain(algebra, {w: v for w, v in zip(basis, x) if v})


def differential_matrix(p: int, n: int, algebra: GradedAlgebra, occurrence_filter: int | None = None) -> RationalMatrix:
    """Matrix of ``d: C_p(n) -> C_{p-1}(n)``; columns follow ``basis_of(p, ...)``, rows ``basis_of(p-1, ...)``."""
    key = (p, n, occurrence_filter)
    cache = _cache(algebra, "dmat")
    hit = cache.get(key)
    if hit is not None:
        return hit
    cols = basis_of(p, n, algebra, occurrence_filter)
    rows = basis_of(p - 1, n, algebra, occurrence_filter)
    index = {w: i for i, w in enumerate(rows)}
    entries = {}
    for j, w in enumerate(cols):
        for k, v in _d_basis(algebra, w).items():
            i = index.get(k)
            if i is None:
                raise AssertionError(f"d leaves the ({p - 1}, {n}, occ={occurrence_filter}) cell: {k!r}")
            entries[(i, j)] = v
    m = RationalMatrix(len(rows), len(cols), entries)
    cache[key] = m
    return m
