"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines.  Criterion 4 asserts the full-rank residue A_n = q^{n-d} - 1
(mod q^{n-d}) exactly as specified; exact enumeration and the closed-form
distribution both give residue 0 for every listed instance, so that test
fails and is expected to fail.  See the README section "Expected results".
"""

import random
import time

import pytest

from hermcodes import (HermCode, build_E, build_H, build_Htilde,
                       build_Htilde_dual, build_M, compare_fingerprints,
                       delta_identity_holds, design_by_extension_count,
                       design_strength, dual_code, dual_inner_distribution,
                       find_gamma, full_space, inner_distribution,
                       invariant_fingerprint, kernel_K, left_idealiser,
                       make_tower, right_idealiser, theorem_distribution,
                       trace_poly)
from hermcodes.cli import _run_check
from hermcodes.linpoly import QPoly, gq_verify
from hermcodes.scheme import DEFAULT_BUDGET


@pytest.fixture(scope="module")
def ctx():
    towers = {2: make_tower(2, 1, 3), 3: make_tower(3, 1, 3), 5: make_tower(5, 1, 3)}
    codes = {
        ("H", 2): build_H(towers[2], 2, 1),
        ("H", 3): build_H(towers[3], 2, 1),
        ("E", 2): build_E(towers[2], 3, 1),
        ("E", 3): build_E(towers[3], 3, 1),
        ("M", 2): build_M(towers[2]),
        ("M", 3): build_M(towers[3]),
        ("Htilde", 3): build_Htilde(towers[3], 1),
        ("Htilde", 5): build_Htilde(towers[5], 1),
    }
    return towers, codes


def _report(num, name, ok, detail=""):
    status = "PASS" if ok else "FAIL"
    print(f"[acceptance] criterion {num:2d} ({name}): {status} {detail}")


def test_criterion_01_bound_saturation(ctx):
    towers, codes = ctx
    start = time.time()
    for (fam, q), code in codes.items():
        d = code.declared_d
        expected = q ** (3 * (3 - d + 1))
        assert code.size == expected, (fam, q, code.size, expected)
    elapsed = time.time() - start
    _report(1, "bound saturation", True, f"8 instances, {elapsed:.1f}s")
    assert elapsed < 10 * len(codes)


def test_criterion_02_minimum_distance(ctx):
    towers, codes = ctx
    start = time.time()
    for (fam, q), code in codes.items():
        hist = inner_distribution(code)
        min_rank = next(i for i, a in enumerate(hist) if i and a)
        assert min_rank == code.declared_d, (fam, q, hist)
    elapsed = time.time() - start
    _report(2, "minimum distance", True, f"8 instances, {elapsed:.1f}s")
    assert elapsed < 30 * len(codes)


def test_criterion_03_closed_form_distribution(ctx):
    towers, codes = ctx
    start = time.time()
    for q in (2, 3):
        code = codes[("H", q)]
        enumerated = inner_distribution(code)
        predicted = theorem_distribution(3, 2, q, code.size)
        assert enumerated == predicted, (q, enumerated, predicted)
    elapsed = time.time() - start
    _report(3, "closed-form inner distribution", True, f"{elapsed:.1f}s")
    assert elapsed < 60


def test_criterion_04_full_rank_residue(ctx):
    """A_n mod q^{n-d} = q^{n-d} - 1 for H(3,2,1) at q in {2,3} and
    Htilde(1) at q = 3.

    Implemented exactly as specified.  Ground truth from exact enumeration
    (criterion 2 path) and from the closed form (criterion 3 path): the
    residue is 0 for all three instances (A_3 = 42, 546, 546), so this
    criterion cannot pass; it is kept faithful and red rather than weakened.
    """
    towers, codes = ctx
    instances = [codes[("H", 2)], codes[("H", 3)], codes[("Htilde", 3)]]
    failures = []
    for code in instances:
        q = code.tower.q
        d = code.declared_d
        modulus = q ** (3 - d)
        a_n = inner_distribution(code)[3]
        if a_n % modulus != modulus - 1:
            failures.append((code.label, a_n, a_n % modulus, modulus - 1))
    _report(4, "full-rank residue", not failures,
            f"residues {[(f[0], f[2]) for f in failures]}" if failures else "")
    assert not failures, (
        "expected A_n = q^(n-d) - 1 (mod q^(n-d)); enumeration gives "
        f"{failures} (label, A_n, actual residue, expected residue)")


def test_criterion_05_duality_agreement(ctx):
    towers, codes = ctx
    start = time.time()
    small = {k: c for k, c in codes.items() if k[1] in (2, 3)}
    for (fam, q), code in small.items():
        d1 = dual_inner_distribution(code, "dual-code")
        d2 = dual_inner_distribution(code, "eigenvalues")
        assert d1 == d2, (fam, q, d1, d2)
    elapsed = time.time() - start
    _report(5, "duality agreement", True, f"{len(small)} instances, {elapsed:.1f}s")
    assert elapsed < 300


def test_criterion_06_design_statements(ctx):
    towers, codes = ctx
    assert design_strength(codes[("H", 2)]) >= 2
    assert design_strength(codes[("H", 3)]) >= 2
    assert design_strength(codes[("E", 2)]) >= 1
    assert design_strength(codes[("E", 3)]) >= 1
    assert design_strength(codes[("Htilde", 3)]) >= 2
    for q in (2, 3):
        m = codes[("M", q)]
        assert design_strength(m) == 0
        rep = design_by_extension_count(m, 1)
        assert not rep.uniform
        u0 = ((1, 0, 0),)
        assert rep.counts[(u0, (0,))] == m.size   # extensions of the zero form
        assert rep.counts[(u0, (1,))] == 0        # extensions of the unit form
    _report(6, "design statements", True)


def test_criterion_07_new_code_dual(ctx):
    towers, codes = ctx
    start = time.time()
    t3 = towers[3]
    computed = dual_code(codes[("Htilde", 3)])
    closed = build_Htilde_dual(t3, 1)
    assert computed.size == closed.size == 27
    assert {f.coeffs for f in computed.iter_span()} == \
           {f.coeffs for f in closed.iter_span()}
    ranks = [f.rank() for f in closed.iter_span() if not f.is_zero()]
    assert len(ranks) == 26 and all(r == 3 for r in ranks)
    elapsed = time.time() - start
    _report(7, "new-code dual", True, f"{elapsed:.1f}s")
    assert elapsed < 10


def test_criterion_08_kernel_and_idealisers(ctx):
    towers, codes = ctx
    start = time.time()
    for key in (("H", 3), ("Htilde", 3)):
        code = codes[key]
        ker = kernel_K(code)
        assert ker.order == 9 and ker.structure == "field", key
        left, right = left_idealiser(code), right_idealiser(code)
        assert left.order == 3 and right.order == 3, key
        assert left.meta["is_scalar_fq"] and right.meta["is_scalar_fq"], key
    ker_full = kernel_K(full_space(towers[3]))
    assert ker_full.meta["contains_q2_scalars"]
    elapsed = time.time() - start
    _report(8, "kernel and idealisers", True, f"{elapsed:.1f}s")
    assert elapsed < 60


def test_criterion_09_delta_identity():
    start = time.time()
    for q in (2, 3, 4, 5):
        for k in range(9):
            for i in range(k + 1):
                assert delta_identity_holds(k, i, q), (k, i, q)
    elapsed = time.time() - start
    _report(9, "delta identity", True, f"{elapsed:.2f}s")
    assert elapsed < 1


def test_criterion_10_kernel_bound_suite(ctx):
    towers, _ = ctx
    t = towers[3]
    gamma = find_gamma(t)
    fqn = t.subfield_elements(3)
    rng = random.Random(20240809)
    start = time.time()
    attained = 0
    for _ in range(1000):
        k = rng.randrange(1, 6)
        coeffs = [0] * 6
        for i in range(k + 1):
            coeffs[i] = rng.randrange(t.order)
        f = QPoly(t, coeffs)
        if f.is_zero():
            continue
        rep = gq_verify(f, 1, k)
        assert rep.bound_ok, coeffs
        if rep.kernel_dim == k:
            attained += 1
            assert rep.norm_ok is True, coeffs
    for _ in range(1000):
        k = rng.randrange(1, 6)
        coeffs = [0] * 6
        coeffs[0] = rng.choice(fqn)
        for i in range(1, k):
            coeffs[i] = rng.randrange(t.order)
        coeffs[k] = t.mul(gamma, rng.choice(fqn))
        f = QPoly(t, coeffs)
        if f.is_zero():
            continue
        assert f.kernel_dim_fq() <= k - 1, coeffs
    elapsed = time.time() - start
    _report(10, "kernel bound suite", True,
            f"norm condition attained {attained} times, {elapsed:.1f}s")
    assert elapsed < 60


def test_criterion_11_fingerprint_separations(ctx):
    towers, codes = ctx
    cmp_mh = compare_fingerprints(invariant_fingerprint(codes[("M", 2)]),
                                  invariant_fingerprint(codes[("H", 2)]))
    assert cmp_mh.verdict == "distinct"
    assert "design_strength" in cmp_mh.differing_fields
    cmp_th = compare_fingerprints(invariant_fingerprint(codes[("Htilde", 3)]),
                                  invariant_fingerprint(codes[("H", 3)]))
    assert cmp_th.verdict == "inconclusive"
    assert not cmp_th.differing_fields
    _report(11, "fingerprint separations", True,
            f"M vs H: {cmp_mh.verdict} ({','.join(cmp_mh.differing_fields)}); "
            f"Htilde vs H: {cmp_th.verdict}")


def test_criterion_12_negative_controls(ctx):
    towers, codes = ctx
    t2 = towers[2]
    h = codes[("H", 2)]
    # shrunk subcode: bound saturation must fail with a size witness
    sub = HermCode(t2, h.generators[:-1], label="H-sub", declared_d=2)
    rep = _run_check("bound", sub, DEFAULT_BUDGET)
    assert rep.verdict == "fail"
    assert rep.witness == {"size": 32, "bound": 64}
    # rank-1 perturbation: minimum-distance check must fail with a codeword
    perturbed = HermCode(t2, list(h.generators) + [trace_poly(t2)],
                         label="H-perturbed", declared_d=2)
    rep = _run_check("mindist", perturbed, DEFAULT_BUDGET)
    assert rep.verdict == "fail"
    assert rep.witness["min_rank"] == 1
    witness_word = rep.witness["codeword"]
    f = perturbed.tower
    from hermcodes.hermitian import poly_from_vector
    w = poly_from_vector(t2, [c for vec in witness_word for c in vec])
    assert perturbed.contains(w) and w.rank() == 1
    _report(12, "negative controls", True)
