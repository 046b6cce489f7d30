"""Acceptance suite: one check per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v`` (the lines appear in the
terminal output) or directly with ``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import random
import sys
import time
from typing import Callable

import pytest

from liehom.cechains import Chain, basis_of, differential, differential_matrix
from liehom.construction import (
    build_omega,
    independence_certificate,
    minimal_sequence,
    private_element_family,
    random_rank_families,
    rank_bound_certificate,
    verify_block_structure,
    verify_d_injective_occ2_degree3,
    verify_domega_equality,
    verify_fset_properties,
)
from liehom.exactlinalg import rank
from liehom.freelie import (
    FreeLieAlgebra,
    lyndon_words,
    lyndon_words_of_length,
    nilpotent_truncation,
    quotient_J,
    quotient_K,
    tensor_bracket,
    witt_dimension,
)
from liehom.homology import betti_table, even_boundary_preimage, is_boundary, v_map_matrix, v_space

Result = tuple[bool, str]


def criterion_1() -> Result:
    t0 = time.perf_counter()
    words = list(lyndon_words(2, 12))
    counts = [sum(1 for w in words if len(w) == n) for n in range(1, 13)]
    witt = [witt_dimension(2, n) for n in range(1, 13)]
    elapsed = time.perf_counter() - t0
    expected = [2, 1, 2, 3, 6, 9, 18, 30, 56, 99, 186, 335]
    ok = counts == witt == expected and elapsed < 1.0
    return ok, f"Lyndon counts {counts} vs Witt, {elapsed:.3f}s"


def criterion_2() -> Result:
    L = FreeLieAlgebra(("a", "b"))
    rng = random.Random(2024)

    def element():
        terms = {}
        for _ in range(rng.randint(1, 3)):
            w = rng.choice(lyndon_words_of_length(2, rng.randint(1, 8)))
            terms[w] = terms.get(w, 0) + rng.choice([-2, -1, 1, 2])
        return L.element(terms)

    mismatches = 0
    for _ in range(100):
        x, y = element(), element()
        lhs = L.tensor_expand(x.bracket(y))
        rhs = {k: v for k, v in tensor_bracket(L.tensor_expand(x), L.tensor_expand(y)).items() if v}
        mismatches += lhs != rhs
    return mismatches == 0, f"{mismatches} mismatches over 100 random pairs of weight <= 8"


def criterion_3() -> Result:
    t0 = time.perf_counter()
    algebras = [FreeLieAlgebra(("a", "b")), quotient_K(), quotient_J()]
    algebras += [nilpotent_truncation(q) for q in range(2, 6)]
    bad = []
    cells = 0
    for alg in algebras:
        for n in range(1, 11):
            for p in range(2, min(n, 4) + 1):
                cells += 1
                if not (differential_matrix(p - 1, n, alg) @ differential_matrix(p, n, alg)).is_zero():
                    bad.append((alg.name, p, n))
    elapsed = time.perf_counter() - t0
    return not bad and elapsed < 60, f"{cells} cells on {len(algebras)} algebras, failures {bad}, {elapsed:.1f}s"


def criterion_4() -> Result:
    t = betti_table(FreeLieAlgebra(("a", "b")), 10)
    bad = [(p, n, d) for (p, n), d in t.entries.items() if d != {(0, 0): 1, (1, 1): 2}.get((p, n), 0)]
    return not bad, f"{len(t.entries)} cells, mismatches {bad}"


def criterion_5() -> Result:
    L = FreeLieAlgebra(("a", "b"))
    nonempty = [(p, n) for n in range(1, 21) for p in range(4, n + 1) if basis_of(p, n, L, 2)]
    return not nonempty, f"occurrence-2 chains of degree >= 4 up to weight 20: nonempty cells {nonempty}"


def criterion_6() -> Result:
    t0 = time.perf_counter()
    seq = minimal_sequence(2)
    reps = [verify_domega_equality(seq, A, 52) for A in (set(), {1}, {2}, {1, 2})]
    cycle = not differential(build_omega(seq, {1, 2}, 52))
    elapsed = time.perf_counter() - t0
    ok = all(r.passed for r in reps) and cycle and elapsed < 60
    return ok, f"d(alpha)=Omega for all A in {{1,2}}: {[r.passed for r in reps]}, Omega cycle {cycle}, {elapsed:.2f}s"


def criterion_7() -> Result:
    rep = verify_fset_properties(minimal_sequence(5))
    v = rep.witnesses["violations"]
    diag = rep.witnesses["mirror_diagnostics"]
    detail = (
        f"{rep.witnesses['pairs']} pairs; violations {v}; mirrored pairs lie in blocks with s_l > r_k: "
        f"{diag['all_blocks_have_s_l_above_r_k']}, cancel in alpha: {diag['mirrors_cancel_in_alpha']}"
    )
    return all(n == 0 for n in v.values()), detail


def criterion_8() -> Result:
    seq = minimal_sequence(6)
    rng = random.Random(8)
    subsets = [frozenset(k for k in range(1, 7) if rng.random() < 0.5) for _ in range(20)]
    fails = []
    seen_in = seen_out = 0
    for A in subsets:
        for k in range(2, 7):
            seen_in += k in A
            seen_out += k not in A
            if not verify_block_structure(seq, A, k).passed:
                fails.append((sorted(A), k))
    ok = not fails and seen_in and seen_out
    return bool(ok), f"100 blocks ({seen_in} with k in A, {seen_out} without), failures {fails}"


def criterion_9() -> Result:
    rep = verify_d_injective_occ2_degree3(12)
    return rep.passed, f"kernel dimensions {rep.witnesses}"


def criterion_10() -> Result:
    fams = random_rank_families(50, 5, 40, seed=0)
    ranks = [rank_bound_certificate(f, 40) for f in fams]
    rank_ok = all(r.passed for r in ranks)
    ind = [
        independence_certificate(minimal_sequence(3), [{2}, {3}], 300),
        independence_certificate(minimal_sequence(4), [{2}, {3}, {4}]),
        independence_certificate(minimal_sequence(6), private_element_family(6)),
    ]
    ind_ok = all(r.passed for r in ind)
    ks = [[w["k"] for w in r.witnesses] for r in ind]
    worst = max(r.witnesses["rank"] - r.witnesses["bound"] for r in ranks)
    return rank_ok and ind_ok, f"50 rank bounds hold (max rank - bound {worst}); independence witnesses k_j {ks}"


def criterion_11() -> Result:
    K = quotient_K()
    t = betti_table(K, 15, max_degree=3)
    h2 = [t.get(2, n) for n in range(16)]
    pattern = h2 == [1 if n >= 3 and n % 2 else 0 for n in range(16)]
    vdims = all(len(v_space(K, 2 * n)) == n and len(v_space(K, 2 * n + 1)) == n + 1 for n in range(1, 8))
    vmaps = all(rank(v_map_matrix(K, 2 * n - 1)) == n for n in range(1, 8))
    preimages = []
    for n in range(1, 6):
        target = Chain.wedge(K.b_r(0), K.b_r(2 * n))
        preimages.append(differential(even_boundary_preimage(K, n)) == target and is_boundary(target) is not None)
    odd_class = is_boundary(Chain.wedge(K.b_r(0), K.b_r(1))) is None
    ok = pattern and vdims and vmaps and all(preimages) and odd_class
    return ok, f"H2(n), n=0..15: {h2}; V dims {vdims}; V maps iso {vmaps}; even preimages {preimages}"


def criterion_12() -> Result:
    J, L = quotient_J(), FreeLieAlgebra(("a", "b"))
    tj, tf = betti_table(J, 12, 2), betti_table(L, 12, 2)
    rank_bad = []
    dims_bad = []
    for n in range(1, 13):
        for p in range(0, n + 1):
            if len(basis_of(p, n, J, 2)) != len(basis_of(p, n, L, 2)):
                dims_bad.append((p, n))
            if p >= 1 and rank(differential_matrix(p, n, J, 2)) != rank(differential_matrix(p, n, L, 2)):
                rank_bad.append((p, n))
    ok = tj.entries == tf.entries and not rank_bad and not dims_bad
    return ok, f"Betti equal {tj.entries == tf.entries}; chain dims differ at {dims_bad}; ranks differ at {rank_bad}"


CRITERIA: list[tuple[int, str, Callable[[], Result]]] = [
    (1, "Lyndon words agree with the Witt formula", criterion_1),
    (2, "Lyndon bracket agrees with tensor commutators", criterion_2),
    (3, "d^2 = 0 on all supported algebras", criterion_3),
    (4, "free algebra homology pattern", criterion_4),
    (5, "no occurrence-2 chains of degree >= 4", criterion_5),
    (6, "d(alpha) = Omega and Omega is a cycle", criterion_6),
    (7, "F-set distinctness, membership, no-mirror and sum separation", criterion_7),
    (8, "M^[k] anti-diagonal or zero", criterion_8),
    (9, "d injective on occurrence-2 degree-3 chains", criterion_9),
    (10, "rank bounds and independence certificates", criterion_10),
    (11, "H2 of the quotient by occurrence >= 2", criterion_11),
    (12, "occurrence-2 complex of the quotient by occurrence >= 3 matches the free one", criterion_12),
]


def _line(number: int, title: str, ok: bool, detail: str) -> str:
    return f"criterion {number:>2} {'PASS' if ok else 'FAIL'}: {title} -- {detail}"


@pytest.mark.parametrize("number,title,check", CRITERIA, ids=[f"criterion_{n}" for n, _, _ in CRITERIA])
def test_criterion(number, title, check, capsys):
    ok, detail = check()
    with capsys.disabled():
        print("\n" + _line(number, title, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    results = []
    for number, title, check in CRITERIA:
        ok, detail = check()
        results.append(ok)
        print(_line(number, title, ok, detail))
    print(f"{sum(results)}/{len(results)} criteria pass")
    sys.exit(0 if all(results) else 1)
