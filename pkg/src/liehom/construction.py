"""Admissible sequences, the chains alpha_A / Omega_A and their matrix certificates.

Sequence indices ``k`` are 1-based (``s_1 = 2``); algebra indices ``b_r`` and
matrix rows/columns are 0-based. A degree-3 occurrence-2 chain
``Σ λ_pq b_p ∧ b_q ∧ a`` is identified with the antisymmetric matrix whose
``(p, q)`` entry is ``λ_pq``.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

from .cechains import Chain, differential, differential_matrix, weight_component
from .exactlinalg import RationalMatrix, kernel_dimension, rank
from .freelie.algebra import FreeLieAlgebra, GradedAlgebra, TruncationError, standard_free
from .report import CertificateReport

__all__ = [
    "AdmissibleSequencePair",
    "SubsetSelection",
    "FSet",
    "AlphaMatrix",
    "CertificatePreconditionError",
    "minimal_sequence",
    "subset",
    "private_element_family",
    "build_alpha",
    "build_omega",
    "f_set",
    "verify_admissible",
    "verify_fset_properties",
    "alpha_matrix",
    "chain_matrix",
    "submatrix_k",
    "verify_block_structure",
    "verify_domega_equality",
    "verify_d_injective_occ2_degree3",
    "rank_bound_certificate",
    "random_rank_families",
    "independence_certificate",
    "load_input",
]

SubsetSelection = frozenset


class CertificatePreconditionError(ValueError):
    """A certificate cannot be formed; ``minimal_truncation`` is the smallest T that would work, if any."""

    def __init__(self, message: str, minimal_truncation: int | None = None):
        super().__init__(message)
        self.minimal_truncation = minimal_truncation


@dataclass(frozen=True)
class AdmissibleSequencePair:
    """Finite prefixes ``r = (r_1..r_m)``, ``s = (s_1..s_m)``."""

    r: tuple[int, ...]
    s: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "r", tuple(int(x) for x in self.r))
        object.__setattr__(self, "s", tuple(int(x) for x in self.s))
        if len(self.r) != len(self.s) or not self.r:
            raise ValueError("r and s must be nonempty and of equal length")

    @property
    def m(self) -> int:
        return len(self.r)

    def r_(self, k: int) -> int:
        return self.r[k - 1]

    def s_(self, k: int) -> int:
        return self.s[k - 1]

    def indices(self) -> range:
        return range(1, self.m + 1)

    def violations(self) -> list[str]:
        """Every admissibility constraint that fails on the stored prefix."""
        out = []
        r, s = self.r, self.s
        if s[0] != 2:
            out.append(f"s_1 = {s[0]}, expected 2")
        chain = [x for pair in zip(s, r) for x in pair]
        for i in range(1, len(chain)):
            if not chain[i - 1] < chain[i]:
                out.append(f"interleaving fails at position {i}: {chain[i - 1]} >= {chain[i]}")
        for n in range(1, self.m + 1):
            if not r[n - 1] > 2 * s[n - 1]:
                out.append(f"r_{n} = {r[n - 1]} is not > 2*s_{n} = {2 * s[n - 1]}")
            if n >= 2 and not s[n - 1] > 3 * r[n - 2]:
                out.append(f"s_{n} = {s[n - 1]} is not > 3*r_{n - 1} = {3 * r[n - 2]}")
        for n in range(2, self.m + 1):
            if not r[n - 1] > 6 * r[n - 2]:
                out.append(f"r_{n} = {r[n - 1]} is not > 6*r_{n - 1}")
            if not s[n - 1] > 6 * s[n - 2]:
                out.append(f"s_{n} = {s[n - 1]} is not > 6*s_{n - 1}")
        return out

    def is_admissible(self) -> bool:
        return not self.violations()

    def to_dict(self) -> dict:
        return {"r": list(self.r), "s": list(self.s)}


def minimal_sequence(m: int) -> AdmissibleSequencePair:
    """Lexicographically smallest admissible prefix of length ``m``."""
    if m < 1:
        raise ValueError("m must be >= 1")
    s = [2]
    r = [2 * s[0] + 1]
    for _ in range(1, m):
        s.append(3 * r[-1] + 1)
        r.append(2 * s[-1] + 1)
    return AdmissibleSequencePair(tuple(r), tuple(s))


def subset(seq: AdmissibleSequencePair, members: Iterable[int]) -> frozenset[int]:
    A = frozenset(int(k) for k in members)
    bad = [k for k in A if not 1 <= k <= seq.m]
    if bad:
        raise ValueError(f"indices {sorted(bad)} outside 1..{seq.m}")
    return A


def private_element_family(m: int, size: int | None = None) -> list[frozenset[int]]:
    """Subsets of ``{1..m}`` each owning a private index ``k >= 2``.

    ``A_j = {j + 1} ∪ {1}``: the shared index 1 never yields a submatrix, so the
    family overlaps without spoiling any witness.
    """
    size = m - 1 if size is None else size
    if size > m - 1:
        raise ValueError(f"at most {m - 1} subsets with private indices >= 2 fit in a prefix of length {m}")
    return [frozenset({1, j + 2}) for j in range(size)]


def _blocks(seq: AdmissibleSequencePair, A: Iterable[int]) -> list[tuple[int, int]]:
    A = sorted(A)
    return [(k, l) for k in A for l in A]


# -- chains -----------------------------------------------------------------


def build_alpha(seq: AdmissibleSequencePair, A: Iterable[int], N: int, algebra: GradedAlgebra | None = None) -> Chain:
    """Weight ``<= N`` part of ``Σ_{k,l∈A} Σ_{i<s_l} (-1)^i b_{r_k+i} ∧ b_{s_l-i-1} ∧ a``.

    The ``(k, l)`` block is homogeneous of weight ``r_k + s_l + 2``.
    """
    if N < 3:
        raise ValueError("N must be >= 3")
    alg = algebra or standard_free()
    a = alg.generator("a")
    out = Chain.zero(alg)
    for k, l in _blocks(seq, subset(seq, A)):
        rk, sl = seq.r_(k), seq.s_(l)
        if rk + sl + 2 > N:
            continue
        for i in range(sl):
            out = out + Chain.wedge(alg.b_r(rk + i), alg.b_r(sl - i - 1), a) * (-1) ** i
    return out


def build_omega(seq: AdmissibleSequencePair, A: Iterable[int], N: int, algebra: GradedAlgebra | None = None) -> Chain:
    """Weight ``<= N`` part of the closed form

    ``(Σ b_{r_k}) ∧ (Σ b_{s_l}) - ω_A ∧ a + (Σ (-1)^{s_l - 1} b_{r_k + s_l}) ∧ b``

    with ``ω_A = Σ_{k,l} Σ_i (-1)^i [b_{r_k+i}, b_{s_l-i-1}]``, assembled without
    applying the differential.
    """
    if N < 3:
        raise ValueError("N must be >= 3")
    alg = algebra or standard_free()
    a, b = alg.generator("a"), alg.generator("b")
    A = subset(seq, A)
    out = Chain.zero(alg)
    for k, l in _blocks(seq, A):
        rk, sl = seq.r_(k), seq.s_(l)
        if rk + sl + 2 > N:
            continue
        out = out + Chain.wedge(alg.b_r(rk), alg.b_r(sl))
        omega = alg.zero()
        for i in range(sl):
            omega = omega + alg.bracket(alg.b_r(rk + i), alg.b_r(sl - i - 1)) * (-1) ** i
        if omega:
            out = out - Chain.wedge(omega, a)
        out = out + Chain.wedge(alg.b_r(rk + sl), b) * (-1) ** (sl - 1)
    return out


def chain_matrix(chain: Chain, T: int) -> RationalMatrix:
    """The ``T × T`` antisymmetric matrix of an occurrence-2 degree-3 chain of L(a, b)."""
    alg = chain.algebra
    a = alg.generator("a")
    (a_label,) = a.terms
    entries: dict[tuple[int, int], Fraction] = {}
    for w, v in chain.terms.items():
        bs = [x for x in w if alg.occurrence(x) == 1]
        if len(w) != 3 or len(bs) != 2 or a_label not in w:
            raise ValueError(f"{w!r} is not of the form b_p ∧ b_q ∧ a")
        p, q = sorted((alg.weight(x) - 1 for x in bs), reverse=True)
        ((basis_w, c),) = Chain.wedge(alg.b_r(p), alg.b_r(q), a).terms.items()
        if basis_w != w:
            raise ValueError(f"{w!r} is not of the form b_p ∧ b_q ∧ a")
        if p < T and q < T:
            entries[(p, q)] = v / c
            entries[(q, p)] = -v / c
    return RationalMatrix(T, T, entries)


def verify_domega_equality(seq: AdmissibleSequencePair, A: Iterable[int], N: int,
                           algebra: GradedAlgebra | None = None) -> CertificateReport:
    """``d(alpha_A) = Omega_A`` weight by weight up to ``N``, and ``d(Omega_A) = 0``."""
    alg = algebra or standard_free()
    A = subset(seq, A)
    alpha = build_alpha(seq, A, N, alg)
    omega = build_omega(seq, A, N, alg)
    d_alpha = differential(alpha)
    d_omega = differential(omega)
    weights = sorted(d_alpha.weights() | omega.weights())
    mismatched = [n for n in weights if weight_component(d_alpha, 2, n) != weight_component(omega, 2, n)]
    covered = [[k, l] for k, l in _blocks(seq, A) if seq.r_(k) + seq.s_(l) + 2 <= N]
    passed = not mismatched and d_alpha == omega and not d_omega
    return CertificateReport(
        name="domega_equality",
        parameters={"sequence": seq.to_dict(), "subset": sorted(A), "max_weight": N},
        passed=passed,
        witnesses={
            "weights_checked": weights,
            "blocks_covered": covered,
            "mismatched_weights": mismatched,
            "alpha_terms": len(alpha.terms),
            "omega_terms": len(omega.terms),
            "omega_is_cycle": not d_omega,
        },
    )


def verify_d_injective_occ2_degree3(N: int, algebra: FreeLieAlgebra | None = None) -> CertificateReport:
    """``d`` has zero kernel on occurrence-2 degree-3 chains at every weight ``<= N``."""
    alg = algebra or standard_free()
    per_weight = []
    for n in range(3, N + 1):
        m = differential_matrix(3, n, alg, 2)
        per_weight.append({"n": n, "columns": m.cols, "kernel": kernel_dimension(m)})
    return CertificateReport(
        name="d_injective_occ2_degree3",
        parameters={"max_weight": N},
        passed=all(c["kernel"] == 0 for c in per_weight),
        witnesses=per_weight,
    )


# -- F-set checks --------------------------------------------------------


@dataclass(frozen=True)
class FSet:
    """Index pairs of the terms of alpha_A, with where each came from."""

    origins: dict = field(hash=False, compare=False)

    @property
    def pairs(self) -> set[tuple[int, int]]:
        return set(self.origins)

    def __contains__(self, pair: tuple[int, int]) -> bool:
        return pair in self.origins

    def __len__(self) -> int:
        return len(self.origins)


def f_set(seq: AdmissibleSequencePair, A: Iterable[int] | None = None) -> FSet:
    A = subset(seq, seq.indices() if A is None else A)
    origins: dict[tuple[int, int], list[tuple[int, int, int]]] = {}
    for k, l in _blocks(seq, A):
        rk, sl = seq.r_(k), seq.s_(l)
        for i in range(sl):
            origins.setdefault((rk + i, sl - i - 1), []).append((k, l, i))
    return FSet(origins)


def verify_admissible(seq: AdmissibleSequencePair) -> CertificateReport:
    v = seq.violations()
    return CertificateReport(
        name="admissible_sequence",
        parameters={"sequence": seq.to_dict()},
        passed=not v,
        witnesses={"violations": v},
    )


def verify_fset_properties(seq: AdmissibleSequencePair, A: Iterable[int] | None = None, max_witnesses: int = 20) -> CertificateReport:
    """Brute-force the three F-set properties and the sum-separation property.

    * (i) generated pairs are pairwise distinct;
    * (ii) for ``k ∈ A`` and ``i < k``: ``(r_k + s_k - s_i, s_t - 1) ∈ F`` iff ``t = i``;
    * (iii) ``(m, n) ∈ F`` implies ``(n, m) ∉ F``;
    * (sums) ``k != p`` implies ``r_k + s_l != r_p + s_q`` for all ``l, q``.
    """
    A = subset(seq, seq.indices() if A is None else A)
    F = f_set(seq, A)
    clauses: dict[str, list] = {"i": [], "ii": [], "iii": [], "sums": []}

    for pair, orig in F.origins.items():
        if len(orig) > 1:
            clauses["i"].append({"pair": pair, "origins": orig})

    for k in sorted(A):
        for i in range(1, k):
            row = seq.r_(k) + seq.s_(k) - seq.s_(i)
            for t in seq.indices():
                inside = (row, seq.s_(t) - 1) in F
                if inside != (t == i):
                    clauses["ii"].append({"k": k, "i": i, "t": t, "pair": (row, seq.s_(t) - 1), "in_F": inside})

    for (x, y) in F.origins:
        if (y, x) in F:
            clauses["iii"].append({"pair": (x, y), "mirror": (y, x)})
    mirror_report = _mirror_diagnostics(seq, F, clauses["iii"])

    idx = list(seq.indices())
    for k in idx:
        for p in idx:
            if k == p:
                continue
            for l in idx:
                for q in idx:
                    if seq.r_(k) + seq.s_(l) == seq.r_(p) + seq.s_(q):
                        clauses["sums"].append({"k": k, "l": l, "p": p, "q": q})

    return CertificateReport(
        name="fset_properties",
        parameters={"sequence": seq.to_dict(), "subset": sorted(A)},
        passed=not any(clauses.values()),
        witnesses={
            "pairs": len(F),
            "violations": {c: len(v) for c, v in clauses.items()},
            "examples": {c: v[:max_witnesses] for c, v in clauses.items() if v},
            "mirror_diagnostics": mirror_report,
        },
    )


def _mirror_diagnostics(seq: AdmissibleSequencePair, F: FSet, mirrors: list[dict]) -> dict:
    """Where mirrored pairs come from and whether they survive in alpha.

    A block ``(k, l)`` with ``s_l > r_k`` walks an antidiagonal across the main
    diagonal, so it contains both ``(p, q)`` and ``(q, p)``. Their wedge terms
    coincide up to sign; this records whether the net coefficient vanishes.
    """
    net: dict[tuple[int, int], int] = {}
    for (p, q), orig in F.origins.items():
        if p == q:
            continue
        for _, _, i in orig:
            c = -1 if i % 2 else 1
            key, c = ((p, q), c) if p > q else ((q, p), -c)
            net[key] = net.get(key, 0) + c
    same_block = True
    survivors = []
    crossing_blocks = set()
    for v in mirrors:
        (x, y), (mx, my) = v["pair"], v["mirror"]
        blocks = {(k, l) for k, l, _ in F.origins[(x, y)]}
        mblocks = {(k, l) for k, l, _ in F.origins[(mx, my)]}
        crossing_blocks |= blocks
        if not blocks & mblocks:
            same_block = False
        if x != y and net.get((max(x, y), min(x, y)), 0) != 0:
            survivors.append((x, y))
    return {
        "mirrored_pairs": len(mirrors),
        "blocks_with_mirrors": sorted(crossing_blocks),
        "all_blocks_have_s_l_above_r_k": all(seq.s_(l) > seq.r_(k) for k, l in crossing_blocks),
        "mirrors_within_one_block": same_block,
        "mirrors_cancel_in_alpha": not survivors,
        "surviving_mirrors": survivors[:20],
    }


# -- matrices ---------------------------------------------------------------


class AlphaMatrix:
    """Lazy ``T × T`` antisymmetric coefficient matrix of ``alpha_A``.

    Entries are found by the row+column sum: ``(p, q)`` can only come from a
    block with ``r_k + s_l = p + q + 1``, so lookups never materialize the matrix.
    """

    def __init__(self, seq: AdmissibleSequencePair, A: Iterable[int], T: int):
        if T < 1:
            raise ValueError("T must be >= 1")
        self.seq = seq
        self.A = subset(seq, A)
        self.T = T
        self._by_sum: dict[int, list[tuple[int, int]]] = {}
        for k, l in _blocks(seq, self.A):
            self._by_sum.setdefault(seq.r_(k) + seq.s_(l), []).append((k, l))

    def _raw(self, p: int, q: int) -> int:
        total = 0
        for k, l in self._by_sum.get(p + q + 1, ()):
            i = p - self.seq.r_(k)
            if 0 <= i < self.seq.s_(l):
                total += -1 if i % 2 else 1
        return total

    def entry(self, p: int, q: int) -> int:
        if not (0 <= p < self.T and 0 <= q < self.T):
            raise IndexError((p, q))
        return self._raw(p, q) - self._raw(q, p)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> RationalMatrix:
        return RationalMatrix(
            len(rows), len(cols),
            {(a, b): self.entry(i, j) for a, i in enumerate(rows) for b, j in enumerate(cols)},
        )

    def to_matrix(self) -> RationalMatrix:
        entries: dict[tuple[int, int], int] = {}
        for k, l in _blocks(self.seq, self.A):
            rk, sl = self.seq.r_(k), self.seq.s_(l)
            for i in range(sl):
                p, q = rk + i, sl - i - 1
                if p < self.T and q < self.T:
                    c = -1 if i % 2 else 1
                    entries[(p, q)] = entries.get((p, q), 0) + c
                    entries[(q, p)] = entries.get((q, p), 0) - c
        return RationalMatrix(self.T, self.T, entries)


def alpha_matrix(seq: AdmissibleSequencePair, A: Iterable[int], T: int) -> AlphaMatrix:
    return AlphaMatrix(seq, A, T)


def submatrix_rows_cols(seq: AdmissibleSequencePair, k: int) -> tuple[list[int], list[int]]:
    rows = [seq.r_(k) + seq.s_(k) - seq.s_(i) for i in range(k - 1, 0, -1)]
    cols = [seq.s_(t) - 1 for t in range(1, k)]
    return rows, cols


def required_truncation(seq: AdmissibleSequencePair, k: int) -> int:
    return seq.r_(k) + seq.s_(k) - seq.s_(1) + 1


def submatrix_k(mat: AlphaMatrix, seq: AdmissibleSequencePair, k: int) -> RationalMatrix:
    """The ``(k-1) × (k-1)`` block on rows ``r_k+s_k-s_{k-1}, ..., r_k+s_k-s_1`` and columns ``s_1-1, ..., s_{k-1}-1``."""
    if not 2 <= k <= seq.m:
        raise ValueError(f"k must lie in 2..{seq.m}")
    need = required_truncation(seq, k)
    if mat.T < need:
        raise TruncationError(f"T = {mat.T} too small for k = {k}; need T >= {need}")
    rows, cols = submatrix_rows_cols(seq, k)
    return mat.submatrix(rows, cols)


def _antidiagonal_unit(m: RationalMatrix) -> bool:
    n = m.rows
    if m.cols != n:
        return False
    for (i, j), v in m.entries.items():
        if i + j != n - 1:
            return False
    return all(abs(m[i, n - 1 - i]) == 1 for i in range(n))


def verify_block_structure(seq: AdmissibleSequencePair, A: Iterable[int], k: int, T: int | None = None) -> CertificateReport:
    """The ``k``-th block is anti-diagonal with ``±1`` entries if ``k ∈ A`` and zero otherwise."""
    A = subset(seq, A)
    T = required_truncation(seq, k) if T is None else T
    sub = submatrix_k(alpha_matrix(seq, A, T), seq, k)
    if k in A:
        ok = _antidiagonal_unit(sub) and rank(sub) == k - 1
        expected = "antidiagonal"
    else:
        ok = sub.is_zero()
        expected = "zero"
    rows, cols = submatrix_rows_cols(seq, k)
    return CertificateReport(
        name="block_submatrix",
        parameters={"sequence": seq.to_dict(), "subset": sorted(A), "k": k, "T": T},
        passed=ok,
        witnesses={
            "expected": expected,
            "rows": rows,
            "cols": cols,
            "matrix": [[int(x) for x in row] for row in sub.to_dense()],
        },
    )


# -- rank certificates ------------------------------------------------------


def rank_bound_certificate(columns: Sequence[tuple[Sequence[object], Sequence[object]]], T: int) -> CertificateReport:
    """``rank(Σ C_i D_iᵗ - D_i C_iᵗ) <= 2 · #pairs``.

    Also records the largest rank of a single pair; one pair generically has
    rank 2, so a rank-one bound per pair is reported as not holding.
    """
    total = RationalMatrix(T, T)
    single = []
    for C, D in columns:
        if len(C) != T or len(D) != T:
            raise ValueError(f"columns must have length {T}")
        term = RationalMatrix.outer(C, D) - RationalMatrix.outer(D, C)
        single.append(rank(term))
        total = total + term
    r = rank(total)
    bound = 2 * len(columns)
    max_single = max(single, default=0)
    return CertificateReport(
        name="rank_bound",
        parameters={"pairs": len(columns), "T": T},
        passed=r <= bound and total.is_antisymmetric() and r % 2 == 0,
        witnesses={
            "rank": r,
            "bound": bound,
            "pair_ranks": single,
            "rank_one_per_pair_holds": max_single <= 1,
        },
    )


def random_rank_families(count: int = 50, max_pairs: int = 5, T: int = 40, seed: int = 0) -> list[list[tuple[list[int], list[int]]]]:
    rng = random.Random(seed)
    families = []
    for _ in range(count):
        m = rng.randint(1, max_pairs)
        fam = []
        for _ in range(m):
            density = rng.choice([0.1, 0.3, 1.0])
            C = [rng.randint(-4, 4) if rng.random() < density else 0 for _ in range(T)]
            D = [rng.randint(-4, 4) if rng.random() < density else 0 for _ in range(T)]
            fam.append((C, D))
        families.append(fam)
    return families


def independence_certificate(
    seq: AdmissibleSequencePair,
    subsets: Sequence[Iterable[int]],
    T: int | None = None,
    seed: int = 0,
) -> CertificateReport:
    """Witness that no nontrivial combination of the ``alpha_{A_j}`` has a finite-rank matrix.

    For each ``j`` a private index ``k_j >= 2`` (in ``A_j`` and in no other
    subset) is chosen; the ``k_j`` block must be invertible for ``A_j`` and
    vanish for every other subset, so in any combination the ``k_j`` block is
    ``λ_j`` times an invertible matrix.
    """
    fam = [subset(seq, A) for A in subsets]
    witnesses = []
    ks = []
    for j, Aj in enumerate(fam):
        others = set().union(*(fam[i] for i in range(len(fam)) if i != j))
        private = sorted(k for k in Aj - others if k >= 2)
        if not private:
            raise CertificatePreconditionError(
                f"subset {sorted(Aj)} has no private index >= 2 within the prefix 1..{seq.m}; "
                "a longer sequence prefix is needed",
                None,
            )
        ks.append(private[0])
    need = max((required_truncation(seq, k) for k in ks), default=1)
    if T is None:
        T = need
    elif T < need:
        raise CertificatePreconditionError(f"T = {T} too small; need T >= {need}", need)

    mats = [alpha_matrix(seq, Aj, T) for Aj in fam]
    rng = random.Random(seed)
    lambdas = [Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 4)) for _ in fam]
    passed = True
    for j, k in enumerate(ks):
        rows, cols = submatrix_rows_cols(seq, k)
        own = mats[j].submatrix(rows, cols)
        own_ok = _antidiagonal_unit(own) and rank(own) == k - 1
        others_zero = all(mats[i].submatrix(rows, cols).is_zero() for i in range(len(fam)) if i != j)
        combo = RationalMatrix(k - 1, k - 1)
        for i, m in enumerate(mats):
            combo = combo + m.submatrix(rows, cols).scale(lambdas[i])
        combo_ok = combo == own.scale(lambdas[j])
        ok = own_ok and others_zero and combo_ok
        passed = passed and ok
        witnesses.append({
            "j": j,
            "subset": sorted(fam[j]),
            "k": k,
            "own_block_invertible": own_ok,
            "other_blocks_zero": others_zero,
            "combination_isolates_coefficient": combo_ok,
        })
    return CertificateReport(
        name="independence",
        parameters={"sequence": seq.to_dict(), "subsets": [sorted(A) for A in fam], "T": T},
        passed=passed,
        witnesses=witnesses,
    )


# -- input files ------------------------------------------------------------


def load_input(path: str | Path) -> tuple[AdmissibleSequencePair, list[frozenset[int]], dict]:
    """Read a sequence/subset description.

    Accepted keys: ``r`` and ``s`` (integer arrays) or ``minimal_sequence``
    (prefix length), plus ``subsets`` (list of integer lists). The parsed
    document is returned as well, for echoing into reports.
    """
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ValueError(f"cannot read input file {path}: {exc}") from exc
    if not isinstance(doc, dict):
        raise ValueError("input file must hold a JSON object")
    if "r" in doc or "s" in doc:
        r, s = doc.get("r"), doc.get("s")
        if not (isinstance(r, list) and isinstance(s, list) and all(isinstance(x, int) for x in r + s)):
            raise ValueError("'r' and 's' must both be integer arrays")
        seq = AdmissibleSequencePair(tuple(r), tuple(s))
    elif "minimal_sequence" in doc:
        seq = minimal_sequence(int(doc["minimal_sequence"]))
    else:
        raise ValueError("input needs either 'r'/'s' or 'minimal_sequence'")
    subsets_raw = doc.get("subsets", [])
    if not isinstance(subsets_raw, list) or not all(
        isinstance(A, list) and all(isinstance(k, int) for k in A) for A in subsets_raw
    ):
        raise ValueError("'subsets' must be a list of integer lists")
    subsets = [subset(seq, A) for A in subsets_raw]
    return seq, subsets, doc
