import warnings
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from d21alpha.algebra import (
    DegenerateParameterWarning,
    StructureError,
    build_d21a,
    build_gamma,
    build_str,
    build_tkk,
    check_g_plus_jordan,
    check_grading_compatibility,
    check_jordan_identity,
    check_sl2_triple,
    check_super_antisymmetry,
    check_super_jacobi,
    check_tkk_isomorphism,
    jordan_table,
    specialize,
)
from d21alpha.scalars import A, ONE, ZERO, Scalar


@pytest.fixture(scope="module")
def d21a():
    return build_d21a()


@pytest.fixture(scope="module")
def tkk():
    return build_tkk()


def test_odd_odd_bracket_formula(d21a):
    g = d21a
    lhs = g.bracket(g.basis("u+++"), g.basis("u---"))
    s = [(1 + A) / 2, Scalar("-1/2"), -A / 2]
    assert lhs == g.element({"H1": -s[0], "H2": -s[1], "H3": -s[2]})
    assert g.bracket(g.basis("u+++"), g.basis("u+--")) == g.element({"E1": 2 * s[0]})


def test_grading(d21a):
    names = d21a.names
    plus = {n for n, k in zip(names, d21a.grading) if k == 1}
    minus = {n for n, k in zip(names, d21a.grading) if k == -1}
    assert plus == {"E2", "E3", "u-++", "u+++"}
    assert minus == {"F2", "F3", "u+--", "u---"}
    assert check_grading_compatibility(d21a) == []


def test_super_jacobi_symbolic(d21a):
    count, bad = check_super_jacobi(d21a)
    assert count == 17 ** 3 and bad == []
    assert check_super_antisymmetry(d21a) == []


def test_super_jacobi_fails_off_the_plane():
    _, bad = check_super_jacobi(build_gamma(1, 1, 1))
    assert bad


@settings(max_examples=3, deadline=None)
@given(st.tuples(*[st.fractions(-4, 4, max_denominator=5)] * 3))
def test_jacobi_iff_sigmas_sum_to_zero(sig):
    _, bad = check_super_jacobi(build_gamma(*sig))
    assert (not bad) == (sum(sig) == 0)


@settings(max_examples=3, deadline=None)
@given(st.fractions(-3, 3, max_denominator=4), st.fractions(-3, 3, max_denominator=4))
def test_jacobi_on_the_plane(s1, s2):
    _, bad = check_super_jacobi(build_gamma(s1, s2, -s1 - s2))
    assert not bad


def test_jordan_identity():
    assert check_jordan_identity() == []
    broken = {(0, 2): [0, 0, 1, 0], (2, 0): [0, 0, 1, 0]}
    assert check_jordan_identity(perturb=broken)


def test_xi_eta_rescaling_is_still_jordan():
    # e1 + (a+1) e2 is the table of D_{a+1}: not a valid negative control
    assert check_jordan_identity(perturb={(2, 3): [1, A + 1, 0, 0], (3, 2): [-1, -A - 1, 0, 0]}) == []


def test_g_plus_product_matches_jordan_table():
    assert check_g_plus_jordan() == []
    assert check_g_plus_jordan(perturb={(2, 3): [1, A + 1, 0, 0], (3, 2): [-1, -A - 1, 0, 0]})


def test_str_matrices():
    names, _, mats = build_str()
    m = dict(zip(names, mats))
    two_a1 = 2 * (A + 1)
    assert m["4[L_xi,L_eta]"] == [[ZERO] * 4, [ZERO] * 4,
                                  [ZERO, ZERO, -two_a1, ZERO], [ZERO, ZERO, ZERO, two_a1]]
    assert m["2L_xi"][0][3] == 2 and m["2L_xi"][1][3] == 2 * A
    assert m["4[L_xi,L_xi]"][2][3] == 4 * (A + 1)
    assert m["4[L_eta,L_eta]"][3][2] == -4 * (A + 1)
    assert m["4[L_e1,L_xi]"][2][:2] == [Scalar(-1), ONE]


def test_str_degenerate_at_minus_one():
    with pytest.warns(DegenerateParameterWarning):
        names, _, mats = build_str(Scalar(-1))
    assert all(v == 0 for v in sum(mats[names.index("4[L_xi,L_eta]")], []))
    names, _, mats = build_str(Scalar(-1), "at_minus_one")
    assert mats[names.index("d0")][2][2] == -1 and mats[names.index("d0")][3][3] == 1
    with pytest.raises(StructureError):
        build_str(A, "at_minus_one")


def test_tkk_brackets(tkk):
    t = tkk
    assert t.bracket(t.basis("e1"), t.basis("f1")) == t.basis("2L_e1")
    assert t.bracket(t.basis("e1"), t.basis("xi")) == {}
    assert t.bracket(t.basis("2L_e1"), t.basis("xi")) == t.basis("xi")
    assert t.bracket(t.basis("2L_e1"), t.basis("zeta")) == t.element({"zeta": -1})
    assert check_super_jacobi(t)[1] == []


def test_tkk_isomorphism_generic():
    r = check_tkk_isomorphism()
    assert r["pairs"] == 289 and r["failures"] == []
    assert r["rank"] == 17 and r["parity_ok"] and r["grading_ok"]


def test_tkk_isomorphism_at_minus_one():
    r = check_tkk_isomorphism(Scalar(-1), "at_minus_one")
    assert r["failures"] == [] and r["rank"] == 17
    unit = check_tkk_isomorphism(Scalar(-1), "at_minus_one", unit_d_scaling=True)
    involved = {n for f in unit["failures"] for n in f[:2]}
    assert unit["failures"] and {"d-", "d+"} <= involved and "d0" not in involved


def test_tkk_isomorphism_at_rational_alpha():
    assert check_tkk_isomorphism(Scalar(Fraction(5, 2)))["failures"] == []


def test_sl2_triple(d21a):
    assert all(check_sl2_triple(d21a).values())


def test_specialize(d21a):
    t = specialize(d21a, Fraction(1, 2))
    assert check_super_jacobi(t)[1] == []
    with warnings.catch_warnings(record=True) as w:
        warnings.simplefilter("always")
        specialize(d21a, 0)
    assert any(issubclass(x.category, DegenerateParameterWarning) for x in w)


def test_json_export(tkk):
    data = tkk.to_json()
    assert len(data["basis"]) == 17
    assert {b["grading"] for b in data["basis"]} == {"-", "0", "+"}
    assert all(set(b) == {"i", "j", "coeffs"} for b in data["brackets"])


def test_jordan_table_commutativity():
    t = jordan_table()
    par = (0, 0, 1, 1)
    for i in range(4):
        for j in range(4):
            sign = -1 if par[i] and par[j] else 1
            assert t[(i, j)] == [c * sign for c in t[(j, i)]]
