from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from liehom.exactlinalg import DimensionMismatch, RationalMatrix, kernel_dimension, rank, solve


def small_matrices(max_rows: int = 6, max_cols: int = 6):
    return st.integers(0, max_rows).flatmap(
        lambda r: st.integers(0, max_cols).flatmap(
            lambda c: st.lists(
                st.lists(st.integers(-5, 5), min_size=c, max_size=c), min_size=r, max_size=r
            ).map(lambda rows, c=c, r=r: RationalMatrix.from_dense(rows) if r else RationalMatrix(0, c))
        )
    )


def test_rank_examples():
    assert rank(RationalMatrix(0, 0)) == 0
    assert rank(RationalMatrix.identity(3)) == 3
    assert rank(RationalMatrix(2, 2, {(0, 1): 1, (1, 0): -1})) == 2


def test_kernel_examples():
    assert kernel_dimension(RationalMatrix.zeros(2, 3)) == 3
    assert kernel_dimension(RationalMatrix.identity(3)) == 0
    assert kernel_dimension(RationalMatrix.from_dense([[1, 1]])) == 1


def test_solve_examples():
    assert solve(RationalMatrix.identity(2), [1, 2]) == [1, 2]
    m = RationalMatrix.from_dense([[1, 1]])
    x = solve(m, [5])
    assert x is not None and m.apply(x) == [5]
    assert solve(RationalMatrix.zeros(1, 1), [1]) is None


def test_solve_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        solve(RationalMatrix.identity(2), [1, 2, 3])


def test_fractions_and_large_entries():
    m = RationalMatrix.from_dense([[Fraction(1, 3), Fraction(2, 7)], [Fraction(2, 3), Fraction(4, 7)]])
    assert rank(m) == 1
    big = RationalMatrix.from_dense([[10**40, 1], [1, 1]])
    assert rank(big) == 2


def test_immutable_entries():
    m = RationalMatrix.identity(2)
    with pytest.raises(TypeError):
        m.entries[(0, 1)] = 1  # type: ignore[index]


@settings(max_examples=150, deadline=None)
@given(small_matrices())
def test_rank_matches_sympy(m):
    assert rank(m) == sympy.Matrix(m.rows, m.cols, lambda i, j: m[i, j]).rank()


@settings(max_examples=100, deadline=None)
@given(small_matrices())
def test_rank_nullity(m):
    assert rank(m) + kernel_dimension(m) == m.cols
    assert rank(m) == rank(m.T)


@settings(max_examples=100, deadline=None)
@given(small_matrices(5, 5), st.data())
def test_solve_consistent_system(m, data):
    x = data.draw(st.lists(st.integers(-4, 4), min_size=m.cols, max_size=m.cols))
    b = m.apply(x)
    y = solve(m, b)
    assert y is not None
    assert m.apply(y) == b


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.lists(st.integers(-3, 3), min_size=6, max_size=6),
                          st.lists(st.integers(-3, 3), min_size=6, max_size=6)), max_size=4))
def test_antisymmetric_sum_rank_even_and_bounded(pairs):
    total = RationalMatrix(6, 6)
    for c, d in pairs:
        total = total + RationalMatrix.outer(c, d) - RationalMatrix.outer(d, c)
    assert total.is_antisymmetric()
    r = rank(total)
    assert r % 2 == 0 and r <= 2 * len(pairs)
