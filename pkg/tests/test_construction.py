from __future__ import annotations

import itertools
import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from liehom.cechains import Chain, differential
from liehom.construction import (
    AdmissibleSequencePair,
    alpha_matrix,
    build_alpha,
    build_omega,
    CertificatePreconditionError,
    chain_matrix,
    f_set,
    independence_certificate,
    load_input,
    minimal_sequence,
    private_element_family,
    random_rank_families,
    rank_bound_certificate,
    submatrix_k,
    verify_admissible,
    verify_block_structure,
    verify_d_injective_occ2_degree3,
    verify_domega_equality,
    verify_fset_properties,
)
from liehom.freelie import TruncationError

SEQ6 = minimal_sequence(6)


def test_minimal_sequence_values():
    assert minimal_sequence(1).r == (5,) and minimal_sequence(1).s == (2,)
    assert minimal_sequence(2).s == (2, 16) and minimal_sequence(2).r == (5, 33)
    assert minimal_sequence(3).s[-1] == 100 and minimal_sequence(3).r[-1] == 201
    assert SEQ6.s == (2, 16, 100, 604, 3628, 21772)


def test_minimal_sequence_is_lexicographically_smallest():
    # one step down in any coordinate breaks a constraint
    seq = minimal_sequence(4)
    assert seq.is_admissible()
    for idx in range(seq.m):
        for which in ("r", "s"):
            vals = list(getattr(seq, which))
            vals[idx] -= 1
            other = list(seq.s if which == "r" else seq.r)
            pair = AdmissibleSequencePair(tuple(vals), tuple(other)) if which == "r" else \
                AdmissibleSequencePair(tuple(other), tuple(vals))
            assert not pair.is_admissible(), (which, idx)


def test_growth_inequalities():
    for k in range(2, SEQ6.m + 1):
        assert SEQ6.r_(k) > 6 * SEQ6.r_(k - 1)
        assert SEQ6.s_(k) > 6 * SEQ6.s_(k - 1)


def test_non_admissible_reported():
    rep = verify_admissible(AdmissibleSequencePair((3,), (2,)))
    assert not rep.passed and rep.witnesses


def test_build_alpha_examples():
    seq = minimal_sequence(3)
    alpha = build_alpha(seq, {1}, 9)
    L = alpha.algebra
    a = L.generator("a")
    assert alpha == Chain.wedge(L.b_r(5), L.b_r(1), a) - Chain.wedge(L.b_r(6), L.b_r(0), a)
    assert not build_alpha(seq, set(), 40)
    assert not build_alpha(seq, {1}, 8)


def test_build_omega_example():
    seq = minimal_sequence(3)
    omega = build_omega(seq, {1}, 9)
    L = omega.algebra
    a, b = L.generator("a"), L.b_r(0)
    w = L.b_r(5).bracket(L.b_r(1)) - L.b_r(6).bracket(L.b_r(0))
    expected = Chain.wedge(L.b_r(5), L.b_r(2)) - Chain.wedge(w, a) - Chain.wedge(L.b_r(7), b)
    assert omega == expected
    assert not build_omega(seq, set(), 30)


@pytest.mark.parametrize("A", [set(), {1}, {2}, {1, 2}])
def test_domega_small(A):
    assert verify_domega_equality(minimal_sequence(2), A, 52).passed


def test_omega_is_cycle_at_60():
    assert not differential(build_omega(minimal_sequence(2), {1, 2}, 60))


def test_d_injective_up_to_12():
    rep = verify_d_injective_occ2_degree3(12)
    assert rep.passed


def test_f_set_example():
    F = f_set(minimal_sequence(1), {1})
    assert F.pairs == {(5, 1), (6, 0)}


def test_fset_first_two_clauses_and_sums():
    rep = verify_fset_properties(minimal_sequence(3))
    v = rep.witnesses["violations"]
    assert v["i"] == 0 and v["ii"] == 0 and v["sums"] == 0


def test_fset_mirrors_are_harmless():
    # mirrored pairs do occur, but only inside blocks with s_l > r_k, and they cancel in alpha
    diag = verify_fset_properties(minimal_sequence(3)).witnesses["mirror_diagnostics"]
    assert diag["mirrored_pairs"] > 0
    assert diag["all_blocks_have_s_l_above_r_k"]
    assert diag["mirrors_within_one_block"]
    assert diag["mirrors_cancel_in_alpha"]


def test_fset_flags_adversarial_pair():
    rep = verify_fset_properties(AdmissibleSequencePair((3, 4), (2, 3)))
    assert not rep.passed
    assert rep.witnesses["violations"]["i"] > 0
    assert rep.witnesses["violations"]["sums"] > 0


def test_alpha_matrix_examples():
    seq = minimal_sequence(2)
    m = alpha_matrix(seq, {1}, 8)
    assert m.entry(5, 1) == 1 and m.entry(6, 0) == -1
    assert m.entry(1, 5) == -1 and m.entry(0, 6) == 1
    assert sum(1 for p in range(8) for q in range(8) if m.entry(p, q)) == 4
    assert alpha_matrix(seq, set(), 8).to_matrix().is_zero()
    assert alpha_matrix(seq, {1, 2}, 50).entry(47, 1) == 1


@pytest.mark.parametrize("A", [{1}, {2}, {1, 2}])
def test_alpha_matrix_matches_chain(A):
    seq = minimal_sequence(2)
    T = 40
    N = 2 * T + 3
    assert chain_matrix(build_alpha(seq, A, N), T) == alpha_matrix(seq, A, T).to_matrix()


def test_block_structure_examples():
    seq = minimal_sequence(3)
    sub = submatrix_k(alpha_matrix(seq, {1, 2}, 50), seq, 2)
    assert sub.to_dense() == [[1]]
    assert submatrix_k(alpha_matrix(seq, {1}, 50), seq, 2).is_zero()
    sub3 = submatrix_k(alpha_matrix(seq, {1, 2, 3}, 300), seq, 3)
    assert sub3[0, 0] == 0 and sub3[1, 1] == 0
    assert abs(sub3[0, 1]) == 1 and abs(sub3[1, 0]) == 1
    with pytest.raises(TruncationError):
        submatrix_k(alpha_matrix(seq, {1, 2, 3}, 100), seq, 3)


@settings(max_examples=25, deadline=None)
@given(st.sets(st.integers(1, 6)), st.integers(2, 6))
def test_block_structure_property(A, k):
    assert verify_block_structure(SEQ6, A, k).passed


def test_rank_bound_examples():
    T = 20
    e0 = [1] + [0] * (T - 1)
    e1 = [0, 1] + [0] * (T - 2)
    rep = rank_bound_certificate([(e0, e1)], T)
    assert rep.passed and rep.witnesses["rank"] == 2
    assert rank_bound_certificate([(e0, e0)], T).witnesses["rank"] == 0
    rng = random.Random(5)
    fam = [([rng.randint(-2, 2) for _ in range(T)], [rng.randint(-2, 2) for _ in range(T)]) for _ in range(3)]
    rep = rank_bound_certificate(fam, T)
    assert rep.passed and rep.witnesses["rank"] <= 6
    with pytest.raises(ValueError):
        rank_bound_certificate([(e0[:-1], e1)], T)


def test_single_pair_has_rank_two_not_one():
    T = 5
    rep = rank_bound_certificate([([1, 0, 0, 0, 0], [0, 1, 0, 0, 0])], T)
    assert rep.witnesses["rank_one_per_pair_holds"] is False


def test_random_rank_families_deterministic():
    assert random_rank_families(5, seed=1) == random_rank_families(5, seed=1)
    fams = random_rank_families(50, 5, 40)
    assert all(1 <= len(f) <= 5 for f in fams)
    assert all(rank_bound_certificate(f, 40).passed for f in fams)


def test_independence_examples():
    seq = minimal_sequence(3)
    rep = independence_certificate(seq, [{2}, {3}], 300)
    assert rep.passed
    assert [w["k"] for w in rep.witnesses] == [2, 3]
    assert independence_certificate(seq, [{2}], 50).passed
    with pytest.raises(CertificatePreconditionError):
        independence_certificate(seq, [{1, 3}, {2, 3}], 300)
    with pytest.raises(CertificatePreconditionError) as err:
        independence_certificate(seq, [{2}, {3}], 100)
    assert err.value.minimal_truncation == 300


def test_private_element_family_certifies():
    seq = minimal_sequence(4)
    fam = private_element_family(4)
    assert independence_certificate(seq, fam).passed


def test_load_input(tmp_path):
    p = tmp_path / "in.json"
    p.write_text(json.dumps({"minimal_sequence": 3, "subsets": [[2], [3]]}))
    seq, subsets, doc = load_input(p)
    assert seq == minimal_sequence(3)
    assert subsets == [frozenset({2}), frozenset({3})]
    p.write_text(json.dumps({"r": [5, 33], "s": [2, 16], "subsets": [[1, 2]]}))
    seq, subsets, _ = load_input(p)
    assert seq.r == (5, 33) and subsets == [frozenset({1, 2})]
    p.write_text("{nope")
    with pytest.raises(ValueError):
        load_input(p)
    p.write_text(json.dumps({"minimal_sequence": 2, "subsets": [[7]]}))
    with pytest.raises(ValueError):
        load_input(p)


def test_all_block_structure_subsets_exhaustive_small():
    seq = minimal_sequence(4)
    for size in range(5):
        for A in itertools.combinations(range(1, 5), size):
            for k in range(2, 5):
                assert verify_block_structure(seq, A, k).passed
