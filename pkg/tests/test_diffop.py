from hypothesis import given, settings
from hypothesis import strategies as st

from d21alpha.diffop import D, Z, SuperDiffOperator, supercommutator
from d21alpha.scalars import A, I, ONE, Scalar
from d21alpha.superpoly import ExpPolynomial, SuperPolynomial, monomials_of_degree, var

z1, z2, z3, z4 = (var(i) for i in range(1, 5))
d1, d2, d3, d4 = D
Z1, Z2, Z3, Z4 = Z
one = SuperDiffOperator.scalar(ONE)

coeffs = st.sampled_from([Scalar(1), Scalar(-1), Scalar(2), A, I, Scalar("(a+1)/2")])


@st.composite
def operators(draw):
    terms = {}
    for _ in range(draw(st.integers(1, 3))):
        m = (draw(st.integers(0, 2)), draw(st.integers(0, 2)), draw(st.integers(0, 1)), draw(st.integers(0, 1)))
        g = (draw(st.integers(0, 2)), draw(st.integers(0, 2)), draw(st.integers(0, 1)), draw(st.integers(0, 1)))
        terms[(m, g)] = draw(coeffs)
    return SuperDiffOperator(terms)


def all_monomials(max_deg):
    for k in range(max_deg + 1):
        for m in monomials_of_degree(k):
            yield SuperPolynomial({m: 1})


def test_apply_examples():
    for k in range(6):
        assert (Z1 * d1).apply(z1 ** k) == k * z1 ** k
    assert (d3 * d4).apply(z3 * z4) == SuperPolynomial.constant(-1)


def test_compose_examples():
    assert d1 * Z1 == one + Z1 * d1
    assert d3 * Z3 == one - Z3 * d3
    assert d3 * Z4 == -(Z4 * d3)
    assert str(d3 * Z4) == "-z4·∂3"


def test_supercommutator_examples():
    assert supercommutator(d1, Z1 * d1) == d1
    lhs = supercommutator(Z3 * d4, Z4 * d3)
    assert lhs == Z3 * d3 - Z4 * d4
    # independent oracle: both sides agree on all monomials up to degree 3
    for p in all_monomials(3):
        direct = (Z3 * d4).apply((Z4 * d3).apply(p)) - (Z4 * d3).apply((Z3 * d4).apply(p))
        assert lhs.apply(p) == direct


def test_apply_exp():
    f = ExpPolynomial.exponential(-2, -2, z1 * z3)
    op = Z2 * d1 + d3
    expected = ExpPolynomial.exponential(-2, -2, z2 * z3 - 2 * z1 * z2 * z3 + z1)
    assert op.apply_exp(f) == expected


def test_json_roundtrip():
    op = (Z1 * d1 - A) * d1 + Z2 * d3 * d4 * Scalar("2+i")
    assert SuperDiffOperator.from_json(op.to_json()) == op


@settings(max_examples=40, deadline=None)
@given(operators(), operators())
def test_compose_matches_nested_apply(x, y):
    xy = x * y
    for p in all_monomials(4):
        assert xy.apply(p) == x.apply(y.apply(p))


@settings(max_examples=30, deadline=None)
@given(operators(), operators(), operators())
def test_composition_associative(x, y, w):
    assert (x * y) * w == x * (y * w)


@settings(max_examples=30, deadline=None)
@given(operators())
def test_apply_on_degree_six(x):
    p = z1 ** 3 * z2 * z3 * z4 + Scalar(2) * z2 ** 5 * z3 + I * z1 ** 6
    q = d1 * d2 + Z3 * d4
    assert (x * q).apply(p) == x.apply(q.apply(p))


@settings(max_examples=30, deadline=None)
@given(operators(), operators())
def test_supercommutator_antisymmetry(x, y):
    for xp in x.parity_parts():
        for yp in y.parity_parts():
            sign = -1 if (xp.parity() == 1 and yp.parity() == 1) else 1
            assert supercommutator(xp, yp) == -supercommutator(yp, xp).scale(Scalar(sign))
