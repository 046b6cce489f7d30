"""Weight-by-weight homology of Chevalley-Eilenberg complexes.

The differential preserves weight, so every ``(p, n)`` cell is an independent
finite computation: ``dim H_p(n) = dim C_p(n) - rank d_p(n) - rank d_{p+1}(n)``.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .cechains import (
    Chain,
    basis_of,
    coordinates,
    differential,
    differential_matrix,
    from_coordinates,
    wedge_occurrence,
    wedge_weight,
)
from .exactlinalg import RationalMatrix, rank, solve
from .freelie.algebra import GradedAlgebra, TruncationError
from .freelie.quotients import QuotientK

__all__ = [
    "BettiTable",
    "ResourceLimitExceeded",
    "NotACycle",
    "homology_dimension",
    "betti_table",
    "is_boundary",
    "even_boundary_preimage",
    "v_space",
    "v_map_matrix",
]

DEFAULT_MAX_CELL = 20000


class ResourceLimitExceeded(RuntimeError):
    pass


class NotACycle(ValueError):
    pass


def _rank_cached(algebra: GradedAlgebra, p: int, n: int, occ: int | None) -> int:
    cache = algebra.__dict__.setdefault("_chain_caches", {}).setdefault("rank", {})
    key = (p, n, occ)
    if key not in cache:
        cache[key] = rank(differential_matrix(p, n, algebra, occ))
    return cache[key]


def homology_dimension(
    algebra: GradedAlgebra,
    p: int,
    n: int,
    occurrence_filter: int | None = None,
    max_cell: int | None = DEFAULT_MAX_CELL,
) -> int:
    """``dim H_p(C(algebra))(n)``, optionally restricted to one b-occurrence."""
    if p < 0 or n < 0:
        raise ValueError("p and n must be non-negative")
    limit = getattr(algebra, "weight_limit", None)
    if limit is not None and n > limit:
        raise TruncationError(f"weight {n} exceeds working truncation {limit}")
    dim = len(basis_of(p, n, algebra, occurrence_filter))
    if max_cell is not None:
        for q in (p, p + 1):
            size = len(basis_of(q, n, algebra, occurrence_filter))
            if size > max_cell:
                raise ResourceLimitExceeded(f"C_{q}({n}) has {size} basis elements (limit {max_cell})")
    if dim == 0:
        return 0
    return dim - _rank_cached(algebra, p, n, occurrence_filter) - _rank_cached(algebra, p + 1, n, occurrence_filter)


@dataclass
class BettiTable:
    algebra: str
    max_weight: int
    occurrence_filter: int | None = None
    entries: dict[tuple[int, int], int] = field(default_factory=dict)

    def __getitem__(self, key: tuple[int, int]) -> int:
        return self.entries[key]

    def get(self, p: int, n: int, default: int = 0) -> int:
        return self.entries.get((p, n), default)

    def rows(self) -> list[tuple[int, int, int]]:
        return [(p, n, d) for (p, n), d in sorted(self.entries.items(), key=lambda kv: (kv[0][1], kv[0][0]))]

    def to_dict(self) -> dict:
        return {
            "algebra": self.algebra,
            "max_weight": self.max_weight,
            "occurrence_filter": self.occurrence_filter,
            "entries": [{"p": p, "n": n, "dim": d} for p, n, d in self.rows()],
        }


def _cell(args: tuple) -> tuple[int, int, int]:
    algebra, p, n, occ, max_cell = args
    return p, n, homology_dimension(algebra, p, n, occ, max_cell)


def betti_table(
    algebra: GradedAlgebra,
    N: int,
    occurrence_filter: int | None = None,
    max_degree: int | None = None,
    jobs: int = 1,
    max_cell: int | None = DEFAULT_MAX_CELL,
) -> BettiTable:
    """All ``H_p(n)`` for ``0 <= p <= n <= N`` (``p`` capped by ``max_degree`` if given).

    Cells are independent; with ``jobs > 1`` they are spread over worker
    processes and reassembled in index order.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    cells = [
        (algebra, p, n, occurrence_filter, max_cell)
        for n in range(N + 1)
        for p in range(n + 1)
        if max_degree is None or p <= max_degree
    ]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_cell, cells, chunksize=4))
    else:
        results = [_cell(c) for c in cells]
    table = BettiTable(algebra.name, N, occurrence_filter)
    for p, n, d in sorted(results, key=lambda t: (t[1], t[0])):
        table.entries[(p, n)] = d
    return table


def is_boundary(c: Chain) -> Chain | None:
    """A preimage ``β`` with ``dβ = c``, or ``None`` if ``c`` is a cycle that does not bound.

    ``c`` must be homogeneous in degree and weight; raises :class:`NotACycle`
    for chains with ``dc != 0``.
    """
    alg = c.algebra
    if not c:
        return Chain.zero(alg)
    degrees = c.degrees()
    weights = c.weights()
    if len(degrees) != 1 or len(weights) != 1:
        raise ValueError("chain must be homogeneous in degree and weight")
    if differential(c):
        raise NotACycle("chain is not a cycle")
    (p,) = degrees
    (n,) = weights
    occs = c.occurrences()
    occ = next(iter(occs)) if len(occs) == 1 else None
    m = differential_matrix(p + 1, n, alg, occ)
    rhs = coordinates(c, basis_of(p, n, alg, occ))
    x = solve(m, rhs)
    if x is None:
        return None
    beta = from_coordinates(alg, basis_of(p + 1, n, alg, occ), x)
    assert differential(beta) == c
    return beta


# -- the quotient by occurrence-2 brackets ----------------------------------


def even_boundary_preimage(algebra: QuotientK, n: int) -> Chain:
    """``Σ_{i<n} (-1)^i b_i ∧ b_{2n-i-1} ∧ a``, whose boundary is ``b ∧ b_{2n}``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    a = algebra.generator("a")
    out = Chain.zero(algebra)
    for i in range(n):
        out = out + Chain.wedge(algebra.b_r(i), algebra.b_r(2 * n - i - 1), a) * (-1) ** i
    return out


def v_space(algebra: QuotientK, p: int) -> list[Chain]:
    """The chains ``b_r ∧ b_s`` with ``0 <= r < s`` and ``r + s = p``."""
    return [Chain.wedge(algebra.b_r(r), algebra.b_r(p - r)) for r in range(p + 1) if r < p - r]


def v_map_matrix(algebra: QuotientK, p: int) -> RationalMatrix:
    """Matrix of ``d: V_p ∧ a -> V_{p+1}`` in the ``b_r ∧ b_s`` bases."""
    a = algebra.generator("a")
    src = [Chain.wedge(algebra.b_r(r), algebra.b_r(p - r), a) for r in range(p + 1) if r < p - r]
    dst = v_space(algebra, p + 1)
    dst_index = {}
    for i, ch in enumerate(dst):
        ((w, v),) = ch.terms.items()
        dst_index[w] = (i, v)
    entries = {}
    for j, ch in enumerate(src):
        for w, v in differential(ch).terms.items():
            i, scale = dst_index[w]
            entries[(i, j)] = v / scale
    return RationalMatrix(len(dst), len(src), entries)
