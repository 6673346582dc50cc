import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hermcodes import (CycloInt, HermCode, build_E, build_H, build_M,
                       build_Htilde, char_value, delta_identity_holds,
                       design_by_extension_count, design_strength,
                       dual_inner_distribution, eigenvalues, full_space,
                       gram_matrix, hermitian_basis, inner_distribution,
                       neg_q_binom, pairing, theorem_distribution)
from hermcodes.scheme import (BudgetExceededError, full_rank_residue,
                              pairwise_inner_distribution)
from hermcodes.hermitian import matrix_span


# -- cyclotomic integers -------------------------------------------------------


def test_cyclo_char_values(tower_q2, tower_q3):
    assert char_value(tower_q2, 0).as_int() == 1
    assert char_value(tower_q2, 1).as_int() == -1   # zeta_2 = -1
    z = char_value(tower_q3, 1)
    assert not z.is_rational_integer()
    # nontrivial character sums to zero over F_q
    for t in (tower_q2, tower_q3):
        acc = CycloInt.zero(t.p)
        for x in t.subfield_elements(1):
            acc = acc + char_value(t, x)
        assert acc.as_int() == 0


def test_cyclo_reduction():
    # zeta^(p-1) = -(1 + zeta + ... + zeta^(p-2))
    z = CycloInt.from_zeta_power(5, 4)
    assert z.coords == (-1, -1, -1, -1)
    total = CycloInt.zero(5)
    for j in range(5):
        total = total + CycloInt.from_zeta_power(5, j)
    assert total.as_int() == 0
    assert CycloInt.from_exponent_counts(3, [7, 4, 4]).as_int() == 3


def test_pairing_is_character_of_trace_form(tower_q2):
    t = tower_q2
    basis = [gram_matrix(h) for h in hermitian_basis(t)]
    rng = random.Random(0)
    for _ in range(50):
        a, b = rng.choice(basis), rng.choice(basis)
        assert pairing(a, b) == pairing(b, a)


# -- negative q-binomials and the closed form -----------------------------------


def test_neg_q_binom_values():
    assert neg_q_binom(2, 1, 2) == -1       # ((-2)^2 - 1)/((-2) - 1)
    assert neg_q_binom(2, 1, 3) == -2
    assert neg_q_binom(3, 1, 2) == 3
    assert neg_q_binom(5, 0, 7) == 1
    assert neg_q_binom(2, 5, 3) == 0        # l > m convention
    with pytest.raises(ValueError):
        neg_q_binom(3, 1, 1)


@settings(max_examples=120, deadline=None)
@given(m=st.integers(0, 12), l=st.integers(0, 12), q=st.integers(2, 7))
def test_neg_q_binom_integrality(m, l, q):
    assert isinstance(neg_q_binom(m, l, q), int)


def test_delta_identity():
    for q in (2, 3, 4, 5):
        for k in range(9):
            for i in range(k + 1):
                assert delta_identity_holds(k, i, q)


def test_theorem_distribution_degenerate_d_equals_n():
    # a maximum n-code has all nonzero words of full rank
    assert theorem_distribution(3, 3, 2, 8) == (1, 0, 0, 7)
    assert theorem_distribution(3, 3, 3, 27) == (1, 0, 0, 26)


def test_theorem_distribution_closed_form(tower_q2, tower_q3):
    # frozen values derived twice by hand (kernel counting over the cyclic
    # group, and the closed form) and confirmed by enumeration
    assert theorem_distribution(3, 2, 2, 64) == (1, 0, 21, 42)
    assert theorem_distribution(3, 2, 3, 729) == (1, 0, 182, 546)
    for t, expected in ((tower_q2, (1, 0, 21, 42)), (tower_q3, (1, 0, 182, 546))):
        assert inner_distribution(build_H(t, 2, 1)) == expected


def test_full_rank_residue_values():
    # exact residues of the closed form; the enumerated codes agree with the
    # closed form coordinatewise, so these are ground truth
    assert full_rank_residue(3, 2, 2, 64) == 0
    assert full_rank_residue(3, 2, 3, 729) == 0
    assert full_rank_residue(5, 4, 2, 2 ** 10) == 0


# -- inner distributions ----------------------------------------------------------


def test_inner_distribution_trivial_code(tower_q2):
    c = HermCode(tower_q2, [], label="zero")
    assert inner_distribution(c) == (1, 0, 0, 0)


def test_inner_distribution_full_space(tower_q2):
    # the histogram of the whole space equals the matrix-model tally
    hist = inner_distribution(full_space(tower_q2))
    mats = matrix_span(tower_q2, [gram_matrix(h) for h in hermitian_basis(tower_q2)])
    from hermcodes import matrix_code_rank_distribution
    assert hist == matrix_code_rank_distribution(mats)
    assert hist == (1, 21, 210, 280)


def test_inner_distribution_threads_match(tower_q3):
    c = build_H(tower_q3, 2, 1)
    assert inner_distribution(c, threads=3) == inner_distribution(c)


def test_pairwise_distribution_matches_histogram_for_additive_sets(tower_q2):
    mats = matrix_span(tower_q2, build_M(tower_q2).matrix_generators[:4])
    hist = pairwise_inner_distribution(mats)
    from hermcodes import matrix_code_rank_distribution
    direct = matrix_code_rank_distribution(mats)
    assert hist == tuple(Fraction(v) for v in direct)


# -- eigenvalues -------------------------------------------------------------------


def test_eigenvalue_table_q2(tower_q2):
    eig = eigenvalues(tower_q2)
    assert eig.rank_counts == (1, 21, 210, 280)
    assert eig.table == ((1, 1, 1, 1),
                         (21, -11, 5, -3),
                         (210, 50, 2, -6),
                         (280, -40, -8, 8))


def test_eigenvalue_structural_identities(tower_q2, tower_q3):
    for t in (tower_q2, tower_q3):
        eig = eigenvalues(t)
        n = t.n
        for i in range(n + 1):
            assert eig.table[0][i] == 1               # H_0 = {0}
        for k in range(n + 1):
            assert eig.table[k][0] == eig.rank_counts[k]
        for i in range(1, n + 1):                     # character orthogonality
            assert sum(eig.table[k][i] for k in range(n + 1)) == 0
        assert sum(eig.rank_counts) == t.q ** (n * n)


def test_eigenvalue_budget_guard(tower_q3):
    tower_q3.cache.pop("eigenvalues", None)
    with pytest.raises(BudgetExceededError):
        eigenvalues(tower_q3, budget=10)
    eigenvalues(tower_q3)  # repopulate the cache for later tests


# -- dual inner distribution and designs ---------------------------------------------


def codes_under_test(t):
    out = [build_H(t, 2, 1), build_E(t, 3, 1), build_M(t), full_space(t)]
    if t.q % 2:
        out.append(build_Htilde(t, 1))
    return out


def test_dual_methods_agree_everywhere(tower_q2, tower_q3):
    for t in (tower_q2, tower_q3):
        for code in codes_under_test(t):
            d1 = dual_inner_distribution(code, "dual-code")
            d2 = dual_inner_distribution(code, "eigenvalues")
            assert d1 == d2, code.label
            assert d1[0] == code.size
            assert all(v >= 0 and v % code.size == 0 for v in d1)


def test_dual_distribution_frozen_values(tower_q2):
    assert dual_inner_distribution(build_H(tower_q2, 2, 1), "dual-code") == (64, 0, 0, 448)
    assert dual_inner_distribution(build_M(tower_q2), "dual-code") == (64, 192, 192, 64)


def test_macwilliams_like_consistency(tower_q2, tower_q3):
    # the dual distribution of the dual code reproduces |C^perp| * inner(C)
    from hermcodes import dual_code
    for t in (tower_q2, tower_q3):
        c = build_H(t, 2, 1)
        d = dual_code(c)
        lhs = dual_inner_distribution(d, "eigenvalues")
        inner = inner_distribution(c)
        assert lhs == tuple(d.size * v for v in inner)


def test_design_strengths(tower_q2, tower_q3):
    for t in (tower_q2, tower_q3):
        assert design_strength(full_space(t)) == t.n
        assert design_strength(build_H(t, 2, 1)) == 2
        assert design_strength(build_E(t, 3, 1)) == 1
        assert design_strength(build_M(t)) == 0
    assert design_strength(build_Htilde(tower_q3, 1)) == 2


def test_maximum_iff_design_for_odd_d(tower_q2):
    # forward: the maximum 3-code is a 1-design; backward: a proper subcode
    # is no longer maximum, so it must fail the design property
    t = tower_q2
    e = build_E(t, 3, 1)
    assert design_strength(e) >= 1
    sub = HermCode(t, e.generators[:-1], label="E-sub", declared_d=3)
    assert sub.size < t.q ** 3
    assert design_strength(sub) == 0


def test_extension_counts_full_space(tower_q2):
    rep = design_by_extension_count(full_space(tower_q2), 1)
    assert rep.uniform
    assert rep.common_count == 2 ** 8  # q^{n^2 - 1}


def test_extension_counts_match_design_strength(tower_q2, tower_q3):
    # the q=3 full space (19683 words x 91 subspaces) is left out for runtime
    for code in codes_under_test(tower_q2):
        rep = design_by_extension_count(code, 1)
        assert rep.uniform == (design_strength(code) >= 1), code.label
    for builder in (lambda: build_H(tower_q3, 2, 1), lambda: build_E(tower_q3, 3, 1),
                    lambda: build_M(tower_q3), lambda: build_Htilde(tower_q3, 1)):
        code = builder()
        rep = design_by_extension_count(code, 1)
        assert rep.uniform == (design_strength(code) >= 1), code.label


def test_extension_counts_witness_for_zero_diagonal_code(tower_q2, tower_q3):
    for t in (tower_q2, tower_q3):
        m = build_M(t)
        rep = design_by_extension_count(m, 1)
        assert not rep.uniform
        u0 = ((1, 0, 0),)
        assert rep.counts[(u0, (0,))] == m.size
        assert rep.counts[(u0, (1,))] == 0
        assert rep.witnesses


def test_extension_count_t2_on_small_space(tower_q2_n2):
    # t = n = 2 on the 16-element space: restriction to the whole space is
    # the form itself, one codeword per form
    rep = design_by_extension_count(full_space(tower_q2_n2), 2)
    assert rep.uniform and rep.common_count == 1


def test_extension_count_budget(tower_q3):
    with pytest.raises(BudgetExceededError):
        design_by_extension_count(full_space(tower_q3), 1, budget=100)
