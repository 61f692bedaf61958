"""Bessel-Fischer product, Gram matrices and the reproducing kernel.

``<p, q> = p(B) conj(q) |_{z=0}`` where ``p(B)`` substitutes the Bessel
operators for the variables, in monomial order (so ``B(z4)`` acts first).

Two routes are provided: :func:`bessel_fischer` applies operators to the raw
polynomial, while :func:`form` works on normal forms through cached Gram
matrices.  Tests compare the two.
"""

from __future__ import annotations

from math import factorial

from . import linalg
from .models import Character, ExcludedParameterError, Quotient, bessel, fock_table
from .scalars import ONE, ZERO, PoleError, Scalar, as_scalar, pochhammer
from .superpoly import SuperPolynomial, _add_into, mono_mul, mono_parity

_BESSEL_CACHE = {}


def _bessels(chi):
    ops = _BESSEL_CACHE.get(chi)
    if ops is None:
        ops = _BESSEL_CACHE[chi] = [bessel(chi, i) for i in range(1, 5)]
    return ops


def _apply_monomial(chi, mono, r, reducer=None):
    """B1^d1 B2^d2 B3^e3 B4^e4 applied to r (B4 first)."""
    B = _bessels(chi)
    d1, d2, e3, e4 = mono
    seq = [3] * e4 + [2] * e3 + [1] * d2 + [0] * d1
    for idx in seq:
        r = B[idx].apply(r)
        if reducer is not None:
            r = reducer(r)
        if not r:
            break
    return r


def apply_polynomial_of_bessel(chi, p, r, reducer=None):
    """Constant term of p(B) r (no conjugation)."""
    out = ZERO
    degrees = r.degrees()
    for m, c in p.terms.items():
        if sum(m) not in degrees:
            continue
        v = _apply_monomial(chi, m, r, reducer).constant_term()
        if v:
            out = out + c * v
    return out


def bessel_fischer(chi, p, q, reduce=False):
    """<p, q>; with ``reduce=True`` intermediate results are taken modulo I_lambda."""
    reducer = Quotient(chi).reduce if reduce else None
    qbar = q.conjugate()
    if reducer is not None:
        qbar = reducer(qbar)
    return apply_polynomial_of_bessel(chi, p, qbar, reducer)


_GRAM_CACHE = {}


def gram(chi, k):
    """Gram matrix on the normal-form basis of F_{lambda,k}."""
    key = (chi, k)
    g = _GRAM_CACHE.get(key)
    if g is None:
        q = Quotient(chi)
        basis = q.basis(k)
        g = [[bessel_fischer(chi, b, c, reduce=True) for c in basis] for b in basis]
        _GRAM_CACHE[key] = g
    return g


def gram_determinant(chi, k):
    return linalg.det(gram(chi, k))


def expected_gram(chi, k, flipped_odd_sign=False):
    """Closed-form Gram matrix on F_{lambda,k} for lambda in {alpha, 1}.

    For lambda = 1 the odd pair <z2^n z3, z2^n z4> equals 2a n! (-1/a)_{n+1}; at n = 0 this
    is B(z3) z4 = -2.  ``flipped_odd_sign=True`` uses the opposite sign instead.
    """
    if k == 0:
        return [[ONE]]
    a = chi.alpha
    n = k - 1
    if chi.branch == "alpha":
        top = factorial(k) * pochhammer(-a, k)
        mid = -factorial(n) * pochhammer(-a, n)
        odd = 2 * factorial(n) * pochhammer(-a, n + 1)
    elif chi.branch == "one":
        inv = ONE / a
        top = factorial(k) * pochhammer(-inv, k)
        mid = -factorial(n) * pochhammer(-inv, n)
        odd = 2 * a * factorial(n) * pochhammer(-inv, n + 1)
        if flipped_odd_sign:
            odd = -odd
    else:
        raise ExcludedParameterError("closed forms exist only for lambda in {alpha, 1}")
    z = ZERO
    return [[top, z, z, z], [z, mid, z, z], [z, z, z, odd], [z, z, -odd, z]]


def basis_parity(chi, k):
    return [mono_parity(m) for m in Quotient(chi).basis_monomials(k)]


def check_superhermitian(chi, max_degree):
    """G[q][p] == (-1)^{|p||q|} conj(G[p][q]) on every level up to max_degree."""
    bad = []
    for k in range(max_degree + 1):
        g = gram(chi, k)
        par = basis_parity(chi, k)
        for i in range(len(g)):
            for j in range(len(g)):
                sign = -1 if par[i] and par[j] else 1
                if g[j][i] != g[i][j].conjugate() * sign:
                    bad.append((k, i, j))
    return bad


def gram_nullity(chi, k):
    g = gram(chi, k)
    return len(g) - linalg.rank(g)


def coordinates_by_level(chi, p, quotient=None):
    q = quotient or Quotient(chi)
    r = q.reduce(p)
    levels = {}
    for m, c in r.terms.items():
        levels.setdefault(sum(m), {})[m] = c
    out = {}
    for k, terms in levels.items():
        out[k] = [terms.get(m, ZERO) for m in q.basis_monomials(k)]
    return out


def form(chi, p, q, quotient=None):
    """<p, q> through the cached Gram matrices (normal-form route)."""
    qu = quotient or Quotient(chi)
    cp = coordinates_by_level(chi, p, qu)
    cq = coordinates_by_level(chi, q, qu)
    out = ZERO
    for k, u in cp.items():
        v = cq.get(k)
        if v is None:
            continue
        g = gram(chi, k)
        for i, ui in enumerate(u):
            if not ui:
                continue
            for j, vj in enumerate(v):
                if vj and g[i][j]:
                    out = out + ui * vj.conjugate() * g[i][j]
    return out


def check_skew_supersymmetry(chi, max_degree, names=None):
    """<rho(X)p, q> == -(-1)^{|X||p|} <p, rho(X)q> over basis X and normal-form basis p, q."""
    t = chi.tkk()
    ops = fock_table(chi)
    qu = Quotient(chi)
    basis = [(k, SuperPolynomial({m: ONE}), mono_parity(m))
             for k in range(max_degree + 1) for m in qu.basis_monomials(k)]
    failures = []
    for name in names or t.names:
        op = ops[name]
        px = t.parity[t.index(name)]
        images = [qu.reduce(op.apply(b)) for _, b, _ in basis]
        for i, (kp, p, pp) in enumerate(basis):
            for j, (kq, q, _) in enumerate(basis):
                if abs(kp - kq) > 1:
                    continue
                lhs = form(chi, images[i], q, qu)
                rhs = form(chi, p, images[j], qu)
                sign = 1 if (px and pp) else -1
                if lhs != rhs * sign:
                    failures.append((name, p.to_str(), q.to_str()))
    return failures


def check_euler_adjoints(chi, max_degree):
    """Self-adjointness relations of the even Euler-type operators on F_lambda."""
    from .diffop import D, Z

    pairs = [
        (Z[0] * D[0], Z[0] * D[0], ONE),
        (Z[1] * D[1], Z[1] * D[1], ONE),
        (Z[2] * D[3], Z[2] * D[3], Scalar(-1)),
        (Z[3] * D[2], Z[3] * D[2], Scalar(-1)),
        (Z[2] * D[2], Z[3] * D[3], ONE),
        (Z[3] * D[3], Z[2] * D[2], ONE),
    ]
    qu = Quotient(chi)
    failures = []
    for k in range(max_degree + 1):
        basis = qu.basis(k)
        for n, (left, right, sign) in enumerate(pairs):
            for p in basis:
                for q in basis:
                    if form(chi, left.apply(p), q, qu) != form(chi, p, right.apply(q), qu) * sign:
                        failures.append((n, p.to_str(), q.to_str()))
    return failures


def check_euler_formulas(chi, k):
    """The explicit values of <z_i d_j p, q> on F_{alpha,k} (lambda = alpha, k >= 1)."""
    from .diffop import D, Z

    if chi.branch != "alpha":
        raise ExcludedParameterError("the explicit formulas are stated for lambda = alpha")
    qu = Quotient(chi)
    basis = qu.basis(k)
    g_top = gram(chi, k)[0][0]
    # <z1^{k-1} z_i, z1^{k-1} z^i> with the dual index z^3 = z4, z^4 = z3
    g = gram(chi, k)
    pair_value = {1: g[0][0], 2: g[1][1], 3: g[2][3], 4: g[3][2]}
    dual = {1: 0, 2: 1, 3: 3, 4: 2}
    failures = []
    for pi, p in enumerate(basis):
        pc = [ONE if x == pi else ZERO for x in range(4)]
        for qi, q in enumerate(basis):
            qc = [ONE if x == qi else ZERO for x in range(4)]
            base = form(chi, p, q, qu)
            for i in range(1, 5):
                for j in range(1, 5):
                    lhs = form(chi, Z[i - 1].apply(D[j - 1].apply(p)), q, qu)
                    if j != 1:
                        rhs = pc[j - 1] * qc[dual[i]].conjugate() * pair_value[i]
                    elif i == 1:
                        rhs = (k - 1) * base + pc[0] * qc[0].conjugate() * g_top
                    elif i == 2:
                        rhs = k * pc[0] * qc[1].conjugate() * g[1][1]
                    elif i == 3:
                        rhs = k * pc[0] * qc[3].conjugate() * g[2][3] - 2 * (k - 1) * pc[3] * qc[1].conjugate() * g[1][1]
                    else:
                        rhs = -k * pc[0] * qc[2].conjugate() * g[2][3] + 2 * (k - 1) * pc[2] * qc[1].conjugate() * g[1][1]
                    if lhs != rhs:
                        failures.append((i, j, p.to_str(), q.to_str()))
    return failures


# ---------------------------------------------------------------------------
# reproducing kernel


class KernelPolynomial:
    """Polynomial in w and z, stored as ``{(w_mono, z_mono): Scalar}`` with w written left of z."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    def __mul__(self, other):
        acc = {}
        for (wa, za), c in self.terms.items():
            for (wb, zb), d in other.terms.items():
                # w_a z_a w_b z_b = (-1)^{|z_a||w_b|} w_a w_b z_a z_b
                s = -1 if (mono_parity(za) and mono_parity(wb)) else 1
                sw, w = mono_mul(wa, wb)
                if not sw:
                    continue
                sz, z = mono_mul(za, zb)
                if not sz:
                    continue
                _add_into(acc, (w, z), c * d * (s * sw * sz))
        out = KernelPolynomial()
        out.terms = acc
        return out

    def scale(self, c):
        return KernelPolynomial({k: v * c for k, v in self.terms.items()})

    def z_parts(self):
        """{w_mono: z-polynomial}."""
        out = {}
        for (w, z), c in self.terms.items():
            out.setdefault(w, {})[z] = c
        return {w: SuperPolynomial(t) for w, t in out.items()}


def pairing_form(alpha):
    """(z|w) = z1 w1 + a z2 w2 - z3 w4 / 2 + z4 w3 / 2, rewritten with w on the left."""
    a = as_scalar(alpha)
    half = Scalar("1/2")
    e = lambda i: tuple(1 if j == i else 0 for j in range(4))
    return KernelPolynomial({
        (e(0), e(0)): ONE,
        (e(1), e(1)): a,
        (e(3), e(2)): half,    # -1/2 z3 w4 = +1/2 w4 z3
        (e(2), e(3)): -half,   # +1/2 z4 w3 = -1/2 w3 z4
    })


def kernel_coefficient(chi, k):
    """Scalar factor of the degree-k kernel component."""
    a = chi.alpha
    if chi.branch == "alpha":
        poch = pochhammer(a - k + 1, k)
        pre = Scalar((-1) ** k) / factorial(k)
    elif chi.branch == "one":
        inv = ONE / a
        poch = pochhammer(inv - k + 1, k)
        pre = Scalar((-1) ** k) / (factorial(k) * a ** k)
    else:
        raise ExcludedParameterError("kernel defined for lambda in {alpha, 1}")
    if not poch:
        raise ExcludedParameterError(f"Pochhammer factor vanishes at degree {k}")
    try:
        return pre / poch
    except (PoleError, ZeroDivisionError) as exc:
        raise ExcludedParameterError(str(exc)) from exc


def kernel_component(chi, k):
    """The degree-k component of the kernel, with conj(w) written as w (real coefficients)."""
    out = KernelPolynomial({((0, 0, 0, 0), (0, 0, 0, 0)): ONE})
    f = pairing_form(chi.alpha)
    for _ in range(k):
        out = out * f
    return out.scale(kernel_coefficient(chi, k))


def series_coefficient(chi, k):
    """Coefficient of x^k in Gamma(-a) * I~_{-1-a}(2 sqrt x): 1/(k! (-a)_k) (a -> 1/a for lambda = 1)."""
    a = chi.alpha if chi.branch == "alpha" else ONE / chi.alpha
    return ONE / (factorial(k) * pochhammer(-a, k))


def check_kernel_series(chi, max_k):
    """Coefficientwise identity between the kernel components and the Bessel series."""
    bad = []
    for k in range(max_k + 1):
        lhs = kernel_coefficient(chi, k)
        rhs = series_coefficient(chi, k)
        if chi.branch == "one":
            rhs = rhs / chi.alpha ** k  # (z|w)^k carries alpha^{-k} inside the square root
        if lhs != rhs:
            bad.append(k)
    return bad


def reproduce(chi, p, k, reduce=True):
    """<p(z), kernel_k(z, w)>_z as a polynomial in w."""
    q = Quotient(chi)
    reducer = q.reduce if reduce else None
    ker = kernel_component(chi, k)
    acc = {}
    pp = p.parity()
    for w, zpart in ker.z_parts().items():
        r = reducer(zpart) if reducer else zpart
        if not r:
            continue
        v = apply_polynomial_of_bessel(chi, p, r, reducer)
        if v:
            if pp and mono_parity(w):
                v = -v
            _add_into(acc, w, v)
    return SuperPolynomial(acc)


def check_reproducing(chi, max_degree):
    """<p, I_k> == p(w) mod I_lambda for every normal-form basis p of degree k <= max_degree."""
    q = Quotient(chi)
    failures = []
    for k in range(max_degree + 1):
        for p in q.basis(k):
            got = q.reduce(reproduce(chi, p, k))
            if got != q.reduce(p):
                failures.append((k, p.to_str(), got.to_str()))
    return failures


def check_adjunction(chi, p, q):
    """<z_i p, q> == (-1)^{|i||p|} <p, B(z_i) q> for i = 1..4 (raw route); returns failing i."""
    bad = []
    pp = p.parity() or 0
    for i in range(1, 5):
        zi = SuperPolynomial.var(i)
        lhs = bessel_fischer(chi, zi * p, q)
        rhs = bessel_fischer(chi, p, bessel(chi, i).apply(q))
        if i >= 3 and pp:
            rhs = -rhs
        if lhs != rhs:
            bad.append(i)
    return bad


def check_restriction(chi, max_degree):
    """<p, C> and <C, p> vanish for C in the spanning set of I_lambda (raw route)."""
    from .superpoly import monomials_of_degree

    qu = Quotient(chi)
    failures = []
    for d in range(2, max_degree + 1):
        ps = [SuperPolynomial({m: ONE}) for m in monomials_of_degree(d)]
        for c in qu.ideal_spanning_set(d):
            for p in ps:
                if bessel_fischer(chi, p, c) or bessel_fischer(chi, c, p):
                    failures.append((p.to_str(), c.to_str()))
    return failures


def alpha_zero_gram_evidence(max_degree):
    """Gram nullity per level at alpha = 0 with the lambda = alpha quotient rules."""
    chi = Character(ZERO, ZERO, ZERO, "alpha")
    return {k: gram_nullity(chi, k) for k in range(max_degree + 1)}
