"""Explicit presentations of the two quotients of L(a, b) by occurrence ideals.

Both ideals are spanned by homogeneous components of high b-occurrence, since
occurrence is additive under brackets:

* ``K`` (generated by occurrence-2 brackets) is everything of occurrence >= 2,
  so ``L/K`` has basis ``a, b_0, b_1, ...`` with ``[b_r, a] = b_{r+1}``.
* ``J`` (generated by occurrence > 2 brackets) is everything of occurrence >= 3,
  so ``L/J`` adds the classes ``[b_p, b_q]`` with ``p > q``.

Labels are ``("a",)``, ``("b", r)`` and ``("c", p, q)`` for ``[b_p, b_q]``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from ..exactlinalg import RationalMatrix, rank
from .algebra import FreeLieAlgebra, GradedAlgebra, Label, LieElement

__all__ = ["QuotientK", "QuotientJ", "quotient_K", "quotient_J", "compare_with_free"]

A = ("a",)


def _b(r: int) -> tuple:
    return ("b", r)


class _OccurrenceQuotient(GradedAlgebra):
    generators = ("a", "b")
    # classes of occurrence above this vanish
    top_occurrence = 1

    def multidegree(self, label: Label) -> tuple[int, int]:
        kind = label[0]
        if kind == "a":
            return (1, 0)
        if kind == "b":
            return (label[1], 1)
        return (label[1] + label[2], 2)

    def label_str(self, label: Label) -> str:
        kind = label[0]
        if kind == "a":
            return "a"
        if kind == "b":
            return f"b{label[1]}"
        return f"[b{label[1]},b{label[2]}]"

    def generator(self, g: int | str) -> LieElement:
        return self.basis_element(A if self.generator_index(g) == 0 else _b(0))

    def b_r(self, r: int) -> LieElement:
        if r < 0:
            raise ValueError("r must be >= 0")
        return self.basis_element(_b(r))

    def basis(self, weight: int, occurrence: int | None = None) -> tuple:
        if weight < 1:
            return ()
        out = []
        if weight == 1 and occurrence in (None, 0):
            out.append(A)
        if occurrence in (None, 1):
            out.append(_b(weight - 1))
        if self.top_occurrence >= 2 and occurrence in (None, 2):
            # [b_p, b_q], p > q >= 0, weight p + q + 2
            s = weight - 2
            out.extend(("c", p, s - p) for p in range(s, -1, -1) if p > s - p)
        return tuple(sorted(out, key=self.sort_key))

    def encode_label(self, label: Label) -> list:
        return list(label)

    def decode_label(self, data: list) -> Label:
        return tuple(data)


class QuotientK(_OccurrenceQuotient):
    name = "quotient_K"
    top_occurrence = 1

    def _bracket_labels(self, x: Label, y: Label) -> Mapping[Label, int]:
        if x[0] == "b" and y == A:
            return {_b(x[1] + 1): 1}
        if x == A and y[0] == "b":
            return {_b(y[1] + 1): -1}
        return {}


def _bb(p: int, q: int) -> dict[Label, int]:
    """``[b_p, b_q]`` as a normalized class in L/J."""
    if p == q:
        return {}
    if p > q:
        return {("c", p, q): 1}
    return {("c", q, p): -1}


class QuotientJ(_OccurrenceQuotient):
    name = "quotient_J"
    top_occurrence = 2

    def _bracket_labels(self, x: Label, y: Label) -> Mapping[Label, int]:
        kx, ky = x[0], y[0]
        if kx == "b" and ky == "a":
            return {_b(x[1] + 1): 1}
        if kx == "a" and ky == "b":
            return {_b(y[1] + 1): -1}
        if kx == "b" and ky == "b":
            return _bb(x[1], y[1])
        if kx == "c" and ky == "a":
            # [[b_p, b_q], a] = [b_{p+1}, b_q] + [b_p, b_{q+1}]
            p, q = x[1], x[2]
            out: dict[Label, int] = {}
            for part in (_bb(p + 1, q), _bb(p, q + 1)):
                for k, v in part.items():
                    out[k] = out.get(k, 0) + v
            return out
        if kx == "a" and ky == "c":
            return {k: -v for k, v in self._bracket_labels(y, x).items()}
        return {}


def quotient_K(check_weight: int = 8) -> QuotientK:
    alg = QuotientK()
    if check_weight:
        problems = alg.check_structure(check_weight)
        if problems:
            raise AssertionError("; ".join(problems[:5]))
    return alg


def quotient_J(check_weight: int = 8) -> QuotientJ:
    alg = QuotientJ()
    if check_weight:
        problems = alg.check_structure(check_weight)
        if problems:
            raise AssertionError("; ".join(problems[:5]))
    return alg


def _lift(alg: _OccurrenceQuotient, free: FreeLieAlgebra, label: Label) -> LieElement:
    if label == A:
        return free.generator(0)
    if label[0] == "b":
        return free.b_r(label[1])
    return free.bracket(free.b_r(label[1]), free.b_r(label[2]))


def compare_with_free(alg: _OccurrenceQuotient, max_weight: int, free: FreeLieAlgebra | None = None) -> list[str]:
    """Check the explicit structure constants against the free algebra.

    The lift sending ``a -> a``, ``b_r -> b_r`` and ``[b_p, b_q]`` to the free
    bracket must (1) map each weight component of the quotient isomorphically
    onto the occurrence-``<= top`` part of the free algebra, and (2) intertwine
    brackets after discarding occurrence above ``top``. Returns violations.
    """
    free = free or FreeLieAlgebra(("a", "b"))
    top = alg.top_occurrence
    problems: list[str] = []

    def project(x: LieElement) -> LieElement:
        return LieElement(free, {k: v for k, v in x.terms.items() if free.occurrence(k) <= top})

    for w in range(1, max_weight + 1):
        labels = alg.basis(w)
        target = [lab for k in range(top + 1) for lab in free.basis(w, k)]
        index = {lab: i for i, lab in enumerate(target)}
        entries = {}
        for j, lab in enumerate(labels):
            for k, v in _lift(alg, free, lab).terms.items():
                entries[(index[k], j)] = v
        m = RationalMatrix(len(target), len(labels), entries)
        if len(labels) != len(target) or rank(m) != len(labels):
            problems.append(f"weight {w}: lift is not an isomorphism ({len(labels)} vs {len(target)})")

    labels = alg.basis_up_to(max_weight)
    for x in labels:
        for y in labels:
            if alg.weight(x) + alg.weight(y) > max_weight:
                continue
            lhs = LieElement(free)
            for k, v in alg.bracket_basis(x, y).items():
                lhs = lhs + _lift(alg, free, k) * v
            rhs = project(free.bracket(_lift(alg, free, x), _lift(alg, free, y)))
            if lhs != rhs:
                problems.append(f"[{alg.label_str(x)}, {alg.label_str(y)}] disagrees with the free algebra")
    return problems
