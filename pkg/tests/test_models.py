from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from d21alpha.diffop import D, Z
from d21alpha.models import (
    Character,
    ExcludedParameterError,
    Quotient,
    UnsupportedQuotientError,
    bessel,
    check_bessel_supercommute,
    check_I_invariance,
    check_representation,
    decompose_fock_level,
    euler_consistency,
    fock_table,
    gk_growth,
    ideal_membership_rank,
    rho_k_operators,
    schrodinger_table,
)
from d21alpha.scalars import A, I, ONE, Scalar
from d21alpha.superpoly import SuperPolynomial, monomials_of_degree, var

z1, z2, z3, z4 = (var(i) for i in range(1, 5))
CHI_A = Character.for_lambda("alpha")
CHI_1 = Character.for_lambda("one")


def test_bessel_lemma_values():
    B = {i: bessel(CHI_A, i) for i in range(1, 5)}
    assert B[1].apply(z1) == SuperPolynomial.constant(-A)
    assert B[2].apply(z2) == SuperPolynomial.constant(Scalar(-1))
    assert B[3].apply(z4) == SuperPolynomial.constant(-2 * A)
    assert B[4].apply(z3) == SuperPolynomial.constant(2 * A)
    for i, p in ((2, z3), (1, z2), (3, z3), (4, z4), (1, z4)):
        assert B[i].apply(p).is_zero()
    assert B[1].apply(z1 * z1) == 2 * (1 - A) * z1


def test_bessel_supercommute():
    for chi in (CHI_A, CHI_1, Character.zero_mode(), Character.generic(Scalar(3))):
        assert check_bessel_supercommute(chi) == []


@pytest.mark.parametrize("chi", [CHI_A, CHI_1, Character.zero_mode()], ids=["alpha", "one", "zero-mode"])
@pytest.mark.parametrize("model", ["pi", "rho"])
def test_representation_property(chi, model):
    pairs, failures = check_representation(chi, model)
    assert pairs == 289 and failures == []


def test_representation_at_minus_one():
    for chi in (Character.for_lambda("alpha", Scalar(-1)), Character.generic(Scalar(2), Scalar(-1))):
        for model in ("pi", "rho"):
            assert check_representation(chi, model)[1] == []


def test_representation_negative_control():
    chi = Character(A, A, Scalar(2), "generic")  # c2 != c1 / alpha
    assert check_representation(chi, "pi")[1]


def test_model_examples():
    pi = schrodinger_table(CHI_A)
    rho = fock_table(CHI_A)
    assert pi["f1"] == (-2 * I) * Z[0]
    assert rho["2L_e1"] == Z[0] - bessel(CHI_A, 1)
    expected = (-I) * (-A + 2 * Z[0] * D[0] + Z[2] * D[2] + Z[3] * D[3])
    assert rho["f1"] - rho["e1"] == expected
    pim1 = schrodinger_table(Character.for_lambda("alpha", Scalar(-1)))
    assert pim1["d0"] == Z[3] * D[3] - Z[2] * D[2]
    assert euler_consistency(CHI_A) and euler_consistency(CHI_1)


def test_quotient_rules():
    q = Quotient(CHI_A)
    assert q.reduce(z3 * z4) == -2 * z1 * z2
    assert q.reduce(z2 * z3 * z4).is_zero()
    assert q.reduce(z1 ** 3) == z1 ** 3
    q1 = Quotient(CHI_1)
    assert q1.reduce(z3 * z4) == (-2 * A) * z1 * z2
    assert q1.reduce(z1 * z1 * z2).is_zero()


def test_quotient_rejections():
    with pytest.raises(ExcludedParameterError):
        Quotient(Character.for_lambda("one", Scalar(1)))
    with pytest.raises(UnsupportedQuotientError):
        Quotient(Character.generic(Scalar(3)))
    with pytest.raises(UnsupportedQuotientError):
        Quotient(Character.zero_mode())


@pytest.mark.parametrize("chi", [CHI_A, CHI_1], ids=["alpha", "one"])
def test_reduction_agrees_with_ideal_linear_algebra(chi):
    """Normal forms versus an independent rank computation of the ideal."""
    q = Quotient(chi)
    for d in range(1, 9):
        total, r = ideal_membership_rank(chi, d)
        assert total - r == len(q.basis_monomials(d))
        monos = monomials_of_degree(d)
        span = [[v.coeff(m) for m in monos] for v in q.ideal_spanning_set(d)]
        from d21alpha import linalg
        for m in monos:
            p = SuperPolynomial({m: ONE})
            diff = p - q.reduce(p)
            row = [diff.coeff(x) for x in monos]
            assert linalg.rank(span + [row]) == r if span else diff.is_zero()


def test_confluence_on_all_monomials():
    # rewriting order: z3 z4 first versus killing rules first
    q = Quotient(CHI_A)
    for d in range(9):
        for m in monomials_of_degree(d):
            d1, d2, e3, e4 = m
            killed_first = d2 >= 2 or (d2 >= 1 and (e3 or e4))
            if killed_first:
                assert q.reduce(SuperPolynomial({m: ONE})).is_zero()


@pytest.mark.parametrize("chi", [CHI_A, CHI_1], ids=["alpha", "one"])
def test_ideal_is_invariant(chi):
    assert check_I_invariance(chi, 5) == []


def test_gk_growth():
    for a in (Fraction(1, 2), Fraction(-3)):
        assert gk_growth(Character.for_lambda("alpha", Scalar(a)), 10) == [1 + 4 * k for k in range(11)]
    assert gk_growth(Character.for_lambda("one", Scalar(-3)), 8) == [1 + 4 * k for k in range(9)]


def test_decomposition_symbolic():
    for k in range(1, 9):
        r = decompose_fock_level(CHI_A, k)
        assert r["table_mismatches"] == []
        assert r["H_invariant"] and r["R_invariant"] and r["H_plus_R_is_everything"]


def test_decomposition_lambda_one():
    for k in range(1, 5):
        r = decompose_fock_level(CHI_1, k)
        assert r["H_invariant"] and r["R_invariant"] and r["H_plus_R_is_everything"]


@pytest.mark.parametrize("a", [Fraction(1, 2), Fraction(-3), Fraction(5, 2)])
def test_k_irreducibility(a):
    for k in range(1, 6):
        r = decompose_fock_level(Character.for_lambda("alpha", Scalar(a)), k)
        assert r["k_burnside_dimension"] == 16
        assert not r["k0_indecomposable"]


def test_minus_one_indecomposable():
    for k in range(1, 6):
        r = decompose_fock_level(Character.for_lambda("alpha", Scalar(-1)), k)
        assert r["R_invariant"] and not r["H_plus_R_is_everything"]
        assert r["k0_indecomposable"] and r["odd_derivation_hits_R"]


@pytest.mark.parametrize("a", [Fraction(1, 2), Fraction(-3)])
def test_rho_k_exchanges_levels(a):
    chi = Character.for_lambda("alpha", Scalar(a))
    q = Quotient(chi)
    for k in range(1, 9):
        rk, rkp = rho_k_operators(chi, k)
        u = z1 ** (k - 1) * z2
        v = z1 ** (k - 1) * (z1 + k * z2)
        assert q.reduce(rk.apply(u)) == q.reduce(v)
        img = q.reduce(rkp.apply(v))
        assert img == q.reduce(u).scale(Scalar(k))


def test_rho_plus_minus():
    q = Quotient(CHI_A)
    rho_minus = I * bessel(CHI_A, 1)
    for k in range(1, 7):
        assert q.reduce(rho_minus.apply(z1 ** k)) == (I * k * (k - 1 - A)) * z1 ** (k - 1)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(["e1", "e2", "xi", "eta", "f1", "zeta", "2L_xi", "4[L_e1,L_eta]"]),
       st.integers(0, 3), st.integers(0, 3), st.integers(0, 1), st.integers(0, 1))
def test_fock_preserves_ideal_on_random_multiples(name, d1, d2, e3, e4):
    q = Quotient(CHI_A)
    op = fock_table(CHI_A)[name]
    mono = SuperPolynomial.monomial(d1, d2, e3, e4)
    for g in q.generators():
        assert q.reduce(op.apply(mono * g)).is_zero()
