"""Graded Lie algebras given by a basis per weight and structure constants.

``GradedAlgebra`` is the common interface consumed by the chain complex code.
Concrete algebras here: the free Lie algebra in the Lyndon basis and its
nilpotent truncations. The two explicit quotients live in ``quotients.py``.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Hashable, Iterable, Mapping

from .words import (
    OracleCutoffExceeded,
    Word,
    lyndon_polynomial,
    lyndon_words_of_length,
    lyndon_words_with_content,
    standard_factorization,
)

Label = Hashable

__all__ = [
    "GradedAlgebra",
    "LieElement",
    "FreeLieAlgebra",
    "NilpotentTruncation",
    "TruncationError",
    "free_lie_algebra",
    "nilpotent_truncation",
    "standard_free",
]


class TruncationError(ValueError):
    """Raised when a computation needs weights beyond an algebra's working truncation."""


class LieElement:
    """Sparse rational combination of basis elements of a :class:`GradedAlgebra`."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: "GradedAlgebra", terms: Mapping[Label, object] | None = None):
        self.algebra = algebra
        clean = {}
        for k, v in (terms or {}).items():
            v = Fraction(v)
            if v:
                clean[k] = v
        self.terms: dict[Label, Fraction] = clean

    def _check(self, other: "LieElement") -> None:
        if other.algebra is not self.algebra:
            raise ValueError("elements of different algebras")

    def __add__(self, other: "LieElement") -> "LieElement":
        self._check(other)
        acc = dict(self.terms)
        for k, v in other.terms.items():
            acc[k] = acc.get(k, 0) + v
        return LieElement(self.algebra, acc)

    def __neg__(self) -> "LieElement":
        return LieElement(self.algebra, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "LieElement") -> "LieElement":
        return self + (-other)

    def __mul__(self, c: object) -> "LieElement":
        c = Fraction(c)
        return LieElement(self.algebra, {k: c * v for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LieElement):
            return NotImplemented
        return self.algebra is other.algebra and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms, key=self.algebra.sort_key):
            parts.append(f"{self.terms[k]}*{self.algebra.label_str(k)}")
        return " + ".join(parts)

    def bracket(self, other: "LieElement") -> "LieElement":
        return self.algebra.bracket(self, other)

    def weights(self) -> set[int]:
        return {self.algebra.weight(k) for k in self.terms}

    def weight_component(self, n: int) -> "LieElement":
        return LieElement(self.algebra, {k: v for k, v in self.terms.items() if self.algebra.weight(k) == n})

    def occurrence_component(self, k: int, generator: int | None = None) -> "LieElement":
        return LieElement(
            self.algebra,
            {lab: v for lab, v in self.terms.items() if self.algebra.occurrence(lab, generator) == k},
        )


class GradedAlgebra:
    """A positively graded Lie algebra with a basis in each weight.

    Subclasses provide ``basis``, ``multidegree``, ``_bracket_labels`` and
    ``label_str``. Occurrence means the multidegree in ``tracked`` (by default
    the last generator, ``b``).
    """

    name = "algebra"
    generators: tuple[str, ...] = ("a", "b")
    # highest weight with a nonzero component, None when unbounded
    max_weight: int | None = None

    def __init__(self) -> None:
        self._bracket_cache: dict[tuple[Label, Label], dict[Label, Fraction]] = {}
        self.tracked = len(self.generators) - 1

    # basis data -----------------------------------------------------------
    def basis(self, weight: int, occurrence: int | None = None) -> tuple[Label, ...]:
        raise NotImplementedError

    def multidegree(self, label: Label) -> tuple[int, ...]:
        raise NotImplementedError

    def label_str(self, label: Label) -> str:
        return str(label)

    def weight(self, label: Label) -> int:
        return sum(self.multidegree(label))

    def occurrence(self, label: Label, generator: int | None = None) -> int:
        return self.multidegree(label)[self.tracked if generator is None else generator]

    def sort_key(self, label: Label) -> tuple:
        return (self.weight(label), self.occurrence(label), label)

    def generator_index(self, g: int | str) -> int:
        return self.generators.index(g) if isinstance(g, str) else g

    # structure constants --------------------------------------------------
    def _bracket_labels(self, x: Label, y: Label) -> Mapping[Label, object]:
        raise NotImplementedError

    def bracket_basis(self, x: Label, y: Label) -> dict[Label, Fraction]:
        key = (x, y)
        hit = self._bracket_cache.get(key)
        if hit is None:
            if x == y:
                hit = {}
            else:
                hit = {k: Fraction(v) for k, v in self._bracket_labels(x, y).items() if v}
            self._bracket_cache[key] = hit
        return hit

    def bracket(self, x: LieElement, y: LieElement) -> LieElement:
        acc: dict[Label, Fraction] = {}
        for u, c in x.terms.items():
            for v, d in y.terms.items():
                for w, e in self.bracket_basis(u, v).items():
                    acc[w] = acc.get(w, 0) + c * d * e
        return LieElement(self, acc)

    # elements -------------------------------------------------------------
    def element(self, terms: Mapping[Label, object] | None = None) -> LieElement:
        return LieElement(self, terms)

    def zero(self) -> LieElement:
        return LieElement(self)

    def basis_element(self, label: Label) -> LieElement:
        return LieElement(self, {label: 1})

    def generator(self, g: int | str) -> LieElement:
        raise NotImplementedError

    def b_r(self, r: int) -> LieElement:
        """The right-normed bracket ``[[...[b, a], ...], a]`` with ``r`` copies of ``a``."""
        if r < 0:
            raise ValueError("r must be >= 0")
        a = self.generator(0)
        x = self.generator(1)
        for _ in range(r):
            x = self.bracket(x, a)
        return x

    # verification ---------------------------------------------------------
    def basis_up_to(self, max_weight: int) -> list[Label]:
        return [lab for w in range(1, max_weight + 1) for lab in self.basis(w)]

    def check_structure(self, max_weight: int) -> list[str]:
        """Grading, antisymmetry and Jacobi on basis elements up to ``max_weight``.

        Returns a list of human-readable violations (empty when all hold).
        """
        problems: list[str] = []
        labels = self.basis_up_to(max_weight)
        for x, y in product(labels, repeat=2):
            if self.weight(x) + self.weight(y) > max_weight:
                continue
            xy = self.bracket_basis(x, y)
            yx = self.bracket_basis(y, x)
            if any(xy.get(k, 0) != -yx.get(k, 0) for k in set(xy) | set(yx)):
                problems.append(f"antisymmetry fails on {self.label_str(x)}, {self.label_str(y)}")
            deg = tuple(p + q for p, q in zip(self.multidegree(x), self.multidegree(y)))
            for k in xy:
                if self.multidegree(k) != deg:
                    problems.append(f"grading fails on [{self.label_str(x)}, {self.label_str(y)}]")
        for x, y, z in product(labels, repeat=3):
            if self.weight(x) + self.weight(y) + self.weight(z) > max_weight:
                continue
            ex, ey, ez = (self.basis_element(t) for t in (x, y, z))
            j = (
                self.bracket(ex, self.bracket(ey, ez))
                + self.bracket(ey, self.bracket(ez, ex))
                + self.bracket(ez, self.bracket(ex, ey))
            )
            if j:
                problems.append(
                    f"Jacobi fails on {self.label_str(x)}, {self.label_str(y)}, {self.label_str(z)}"
                )
        return problems

    def bracket_table(self, max_weight: int) -> dict[tuple[Label, Label], dict[Label, Fraction]]:
        """All basis brackets ``[x, y]`` with ``x`` before ``y`` and total weight ``<= max_weight``."""
        labels = sorted(self.basis_up_to(max_weight), key=self.sort_key)
        table = {}
        for i, x in enumerate(labels):
            for y in labels[i + 1 :]:
                if self.weight(x) + self.weight(y) <= max_weight:
                    table[(x, y)] = self.bracket_basis(x, y)
        return table

    def load_bracket_table(self, table: Mapping[tuple[Label, Label], Mapping[Label, Fraction]]) -> None:
        for (x, y), val in table.items():
            val = {k: Fraction(v) for k, v in val.items() if v}
            self._bracket_cache[(x, y)] = val
            self._bracket_cache[(y, x)] = {k: -v for k, v in val.items()}

    def encode_label(self, label: Label) -> object:
        return label

    def decode_label(self, data: object) -> Label:
        return data

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name}>"


# -- free Lie algebra -------------------------------------------------------


_LYNDON_BRACKET: dict[tuple[Word, Word], dict[Word, int]] = {}


def _word_bracket(u: Word, v: Word) -> dict[Word, int]:
    if u == v:
        return {}
    if u < v:
        return _lyndon_bracket(u, v)
    return {k: -c for k, c in _lyndon_bracket(v, u).items()}


def _lyndon_bracket(u: Word, v: Word) -> dict[Word, int]:
    """``[P_u, P_v]`` in the Lyndon basis for Lyndon words ``u < v``.

    When ``u`` is a letter or its standard right factor is ``>= v``, ``(u, v)``
    is the standard factorization of ``uv``. Otherwise ``u = (u1, u2)`` and
    ``[[u1, u2], v] = [u1, [u2, v]] + [[u1, v], u2]`` is expanded recursively.
    """
    key = (u, v)
    hit = _LYNDON_BRACKET.get(key)
    if hit is not None:
        return hit
    if len(u) == 1:
        out = {u + v: 1}
    else:
        u1, u2 = standard_factorization(u)
        if u2 >= v:
            out = {u + v: 1}
        else:
            acc: dict[Word, int] = {}
            for x, c in _word_bracket(u2, v).items():
                for y, d in _word_bracket(u1, x).items():
                    acc[y] = acc.get(y, 0) + c * d
            for x, c in _word_bracket(u1, v).items():
                for y, d in _word_bracket(x, u2).items():
                    acc[y] = acc.get(y, 0) + c * d
            out = {k: c for k, c in acc.items() if c}
    _LYNDON_BRACKET[key] = out
    return out


class FreeLieAlgebra(GradedAlgebra):
    """Free Lie algebra on ordered generators, basis = standard bracketings of Lyndon words."""

    name = "free"

    def __init__(self, generators: Iterable[str] = ("a", "b"), weight_limit: int | None = None,
                 oracle_cutoff: int = 16):
        self.generators = tuple(generators)
        if len(set(self.generators)) != len(self.generators) or not self.generators:
            raise ValueError("generators must be distinct and nonempty")
        super().__init__()
        self.weight_limit = weight_limit
        self.oracle_cutoff = oracle_cutoff

    def _guard(self, weight: int) -> None:
        if self.weight_limit is not None and weight > self.weight_limit:
            raise TruncationError(f"weight {weight} exceeds working truncation {self.weight_limit}")

    def basis(self, weight: int, occurrence: int | None = None) -> tuple[Word, ...]:
        if weight < 1 or (self.max_weight is not None and weight > self.max_weight):
            return ()
        self._guard(weight)
        d = len(self.generators)
        if occurrence is None:
            return lyndon_words_of_length(d, weight)
        return lyndon_words_with_content(d, weight, self.tracked, occurrence)

    def multidegree(self, label: Word) -> tuple[int, ...]:
        return tuple(label.count(i) for i in range(len(self.generators)))

    def weight(self, label: Word) -> int:
        return len(label)

    def occurrence(self, label: Word, generator: int | None = None) -> int:
        return label.count(self.tracked if generator is None else generator)

    def sort_key(self, label: Word) -> tuple:
        return (len(label), label.count(self.tracked), label)

    def label_str(self, label: Word) -> str:
        return "".join(self.generators[i] for i in label)

    def word(self, text: str) -> Word:
        """Parse a word written in generator symbols (single-character symbols only)."""
        return tuple(self.generators.index(ch) for ch in text)

    def _bracket_labels(self, x: Word, y: Word) -> Mapping[Word, int]:
        w = len(x) + len(y)
        if self.max_weight is not None and w > self.max_weight:
            return {}
        self._guard(w)
        return _word_bracket(x, y)

    def generator(self, g: int | str) -> LieElement:
        return self.basis_element((self.generator_index(g),))

    def b_r(self, r: int) -> LieElement:
        # [[b, a], ..., a] = (-1)^r ad_a^r(b) and ad_a^r(b) is the standard bracketing of a^r b
        if r < 0:
            raise ValueError("r must be >= 0")
        if self.max_weight is not None and r + 1 > self.max_weight:
            return self.zero()
        return LieElement(self, {(0,) * r + (1,): (-1) ** r})

    def tensor_expand(self, x: LieElement) -> dict[Word, Fraction]:
        """Image of ``x`` in the tensor algebra under iterated commutators."""
        out: dict[Word, Fraction] = {}
        for w, c in x.terms.items():
            if len(w) > self.oracle_cutoff:
                raise OracleCutoffExceeded(f"weight {len(w)} above oracle cutoff {self.oracle_cutoff}")
            for k, v in lyndon_polynomial(w).items():
                out[k] = out.get(k, 0) + c * v
        return {k: v for k, v in out.items() if v}

    def encode_label(self, label: Word) -> str:
        return self.label_str(label)

    def decode_label(self, data: str) -> Word:
        return self.word(data)


class NilpotentTruncation(FreeLieAlgebra):
    """The free algebra modulo all brackets of weight ``>= q``."""

    def __init__(self, q: int, generators: Iterable[str] = ("a", "b")):
        if q < 2:
            raise ValueError("q must be >= 2")
        super().__init__(generators)
        self.q = q
        self.max_weight = q - 1
        self.name = f"nilpotent{q}"


_STANDARD_FREE: FreeLieAlgebra | None = None


def standard_free() -> FreeLieAlgebra:
    """Shared instance of L(a, b); chains built by different modules must share an algebra object."""
    global _STANDARD_FREE
    if _STANDARD_FREE is None:
        _STANDARD_FREE = FreeLieAlgebra(("a", "b"))
    return _STANDARD_FREE


def free_lie_algebra(generators: Iterable[str] = ("a", "b"), weight_limit: int | None = None) -> FreeLieAlgebra:
    return FreeLieAlgebra(generators, weight_limit=weight_limit)


def nilpotent_truncation(q: int, generators: Iterable[str] = ("a", "b"), check: bool = True) -> NilpotentTruncation:
    alg = NilpotentTruncation(q, generators)
    if check:
        problems = alg.check_structure(q - 1)
        if problems:
            raise AssertionError("; ".join(problems[:5]))
    return alg
