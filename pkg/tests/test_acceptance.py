"""Acceptance criteria 1-14, one test per criterion.

Each test records a one-line verdict in ``VERDICTS``; ``conftest.py`` prints
them in the terminal summary, and running this file directly prints them too.
Two tempting alternative normalizations disagree with the computation; they are
kept as strict xfail tests so the discrepancy stays visible.
"""

from fractions import Fraction

import pytest

from d21alpha import algebra, models, pairing
from d21alpha import segal_bargmann as sb
from d21alpha.models import Character
from d21alpha.scalars import A, Scalar

VERDICTS = {}

CHI_A = Character.for_lambda("alpha")
CHI_1 = Character.for_lambda("one")


def record(n, ok, text):
    VERDICTS[n] = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {text}"
    assert ok, VERDICTS[n]


def test_criterion_01_super_jacobi():
    count, bad = algebra.check_super_jacobi(algebra.build_d21a())
    _, bad_off = algebra.check_super_jacobi(algebra.build_gamma(1, 1, 1))
    ok = count == 17 ** 3 and not bad and bool(bad_off)
    record(1, ok, f"super-Jacobi on {count} triples, symbolic alpha; Gamma(1,1,1) has {len(bad_off)} violations")


def test_criterion_02_tkk_isomorphism():
    generic = algebra.check_tkk_isomorphism()
    at_m1 = algebra.check_tkk_isomorphism(Scalar(-1), "at_minus_one")
    ok = (generic["pairs"] == 289 and not generic["failures"] and generic["rank"] == 17
          and not at_m1["failures"] and at_m1["rank"] == 17)
    unit = algebra.check_tkk_isomorphism(Scalar(-1), "at_minus_one", unit_d_scaling=True)
    record(2, ok, f"TKK dictionary on 289 pairs (symbolic and alpha=-1); alpha=-1 uses d- = F1/2, d+ = 2E1 "
                  f"(unit scaling fails on {len(unit['failures'])} pairs)")


@pytest.mark.xfail(strict=True, reason="unit d-/d+ scaling at alpha=-1 is not bracket-preserving")
def test_criterion_02_unit_d_scaling():
    assert not algebra.check_tkk_isomorphism(Scalar(-1), "at_minus_one", unit_d_scaling=True)["failures"]


def test_criterion_03_representation():
    bad = []
    for chi in (CHI_A, CHI_1, Character.zero_mode()):
        for model in ("pi", "rho"):
            pairs, fails = models.check_representation(chi, model)
            if pairs != 289 or fails:
                bad.append((chi.branch, model, len(fails)))
    record(3, not bad, "representation property of pi and rho on 289 pairs, lambda in {alpha, 1} and zero-mode")


def test_criterion_04_bessel_supercommute():
    bad = [chi.branch for chi in (CHI_A, CHI_1, Character.generic(A * A)) if models.check_bessel_supercommute(chi)]
    record(4, not bad, "16 Bessel pairs supercommute, symbolic")


def test_criterion_05_gram_values():
    mismatch = [(chi.branch, k) for chi in (CHI_A, CHI_1) for k in range(11)
                if pairing.gram(chi, k) != pairing.expected_gram(chi, k)]
    witness = pairing.gram_determinant(Character.for_lambda("alpha", Scalar(2)), 3) == 0
    half = Character.for_lambda("alpha", Scalar(Fraction(1, 2)))
    nonzero = all(pairing.gram_determinant(half, k) != 0 for k in range(9))
    record(5, not mismatch and witness and nonzero,
           "Gram closed forms k <= 10 (lambda=1 odd entry +2a k!(-1/a)_{k+1}, the opposite sign fails); "
           "det 0 at alpha=2, k=3; nonzero at alpha=1/2, k <= 8")


@pytest.mark.xfail(strict=True, reason="opposite lambda=1 odd Gram sign contradicts B(z3) z4 = -2")
def test_criterion_05_flipped_lambda_one_sign():
    assert all(pairing.gram(CHI_1, k) == pairing.expected_gram(CHI_1, k, flipped_odd_sign=True)
               for k in range(1, 11))


def test_criterion_06_reproducing_kernel():
    bad = pairing.check_reproducing(CHI_A, 8) + pairing.check_reproducing(CHI_1, 8)
    record(6, not bad, "<p, I_k> = p on every normal-form basis element, k <= 8, both lambda")


def test_criterion_07_skew_supersymmetry():
    bad = pairing.check_skew_supersymmetry(CHI_A, 6) + pairing.check_skew_supersymmetry(CHI_1, 6)
    record(7, not bad, "rho skew-supersymmetric for all 17 basis X, degree <= 6, both lambda")


def test_criterion_08_fock_decomposition():
    bad = []
    for k in range(1, 9):
        r = models.decompose_fock_level(CHI_A, k)
        if r["table_mismatches"] or not (r["H_invariant"] and r["R_invariant"]):
            bad.append(("alpha", k))
    for k in range(1, 6):
        r = models.decompose_fock_level(CHI_1, k)
        if not (r["H_invariant"] and r["R_invariant"]):
            bad.append(("one", k))
    for a in (Fraction(1, 2), Fraction(-3), Fraction(5, 2)):
        for k in range(1, 6):
            if models.decompose_fock_level(Character.for_lambda("alpha", Scalar(a)), k)["k_burnside_dimension"] != 16:
                bad.append(("irreducible", a, k))
    for k in range(1, 6):
        r = models.decompose_fock_level(Character.for_lambda("alpha", Scalar(-1)), k)
        if not (r["k0_indecomposable"] and r["R_invariant"] and not r["H_plus_R_is_everything"]):
            bad.append(("minus-one", k))
    record(8, not bad, "k0 table k <= 8; H and (z1+z2)^k invariant; k-irreducible at 1/2, -3, 5/2; "
                       "alpha=-1 indecomposable (local k0 commutant)")


def test_criterion_09_gk_growth():
    ok = all(models.gk_growth(Character.for_lambda("alpha", Scalar(a)), 10) == [1 + 4 * k for k in range(11)]
             for a in (Fraction(1, 2), Fraction(-3)))
    record(9, ok, "dim U_k(g).1 = 1 + 4k for k <= 10 at alpha = 1/2 and -3")


def test_criterion_10_intertwiner_closed_forms():
    bad = []
    for chi in (CHI_A, CHI_1):
        bad += sb.check_monomial_powers(chi, 8) + sb.check_closed_forms(chi, 8)
    bad += [e for e in sb.check_recurrences(10) if e[0] == "omega-ode"]
    record(10, not bad, "pi(C)^{-1}(x^k) and the three-line closed form agree with the generator route, k <= 8; "
                        "Omega ODE symbolic")


def test_criterion_11_intertwining():
    bad = sb.check_intertwining(CHI_A, 6) + sb.check_intertwining(CHI_1, 6)
    record(11, not bad, "sb_forward o pi(X) = rho(X) o sb_forward, all 17 X, degree <= 6, both lambda")


def test_criterion_12_form_preservation():
    ok = sb.check_form_preservation(CHI_A, 6) and sb.check_form_preservation(CHI_1, 6)
    record(12, ok, "W-side Gram congruent to the Fock Gram, degree <= 6, both lambda")


def test_criterion_13_recurrences():
    bad = sb.check_recurrences(10)
    x = sb.SuperPolynomial.var(1)
    omega2 = 16 * x * x + (8 * (A - 1)) * x + A * (A - 1)
    ok = not bad and sb.omega_by_definition(A, 2) == omega2 == sb.omega_by_three_term(A, 2)
    record(13, ok, "three recurrences k <= 10, symbolic; Omega_2 from the sum and from the recurrence agree")


def test_criterion_14_summation_lemma():
    bad = sb.lemsum_check(4, 4, 12)
    record(14, not bad, "summation lemma j, k <= 4, truncation degree 12, symbolic")


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion") and not hasattr(fn, "pytestmark"):
            try:
                fn()
            except AssertionError:
                pass
    for n in sorted(VERDICTS):
        print(VERDICTS[n])
