"""Bessel operators, the Schrodinger model pi and the Fock model rho.

Both models are maps from the TKK basis to :class:`SuperDiffOperator`.
The character enters only through ``c1 = lambda(H2)`` and
``c2 = lambda(H3)``; the structural parameter alpha is kept separately, so
the alpha = 0 branch is the choice ``Character(alpha=0, c1=0, c2=lam)``.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg
from .algebra import build_tkk
from .diffop import D, Z, SuperDiffOperator, supercommutator
from .scalars import A, I, ONE, ZERO, Scalar, as_scalar
from .superpoly import SuperPolynomial, _add_into, monomials_of_degree

D1, D2, D3, D4 = D
Z1, Z2, Z3, Z4 = Z


class ExcludedParameterError(ValueError):
    pass


class UnsupportedQuotientError(ValueError):
    pass


@dataclass(frozen=True)
class Character:
    alpha: Scalar
    c1: Scalar
    c2: Scalar
    branch: str  # "alpha", "one", "zero-mode" or "generic"

    @classmethod
    def for_lambda(cls, which, alpha=A):
        """lambda = alpha (``which="alpha"``) or lambda = 1 (``which="one"``)."""
        alpha = as_scalar(alpha)
        if not alpha:
            raise ExcludedParameterError("alpha = 0 needs the zero-mode character")
        if which == "alpha":
            return cls(alpha, alpha, ONE, "alpha")
        if which == "one":
            return cls(alpha, ONE, ONE / alpha, "one")
        raise UnsupportedQuotientError(f"lambda must be 'alpha' or 'one', got {which!r}")

    @classmethod
    def generic(cls, lam, alpha=A):
        alpha, lam = as_scalar(alpha), as_scalar(lam)
        if not alpha:
            raise ExcludedParameterError("alpha = 0 needs the zero-mode character")
        return cls(alpha, lam, lam / alpha, "generic")

    @classmethod
    def zero_mode(cls, lam=A):
        """alpha = 0: lambda/alpha is replaced by lambda and lambda itself by 0."""
        return cls(ZERO, ZERO, as_scalar(lam), "zero-mode")

    @property
    def mode(self):
        return "at_minus_one" if self.alpha == -1 else "generic"

    def tkk(self):
        return _tkk_cached(self.alpha, self.mode)


_TKK_CACHE = {}


def _tkk_cached(alpha, mode):
    key = (alpha, mode)
    if key not in _TKK_CACHE:
        _TKK_CACHE[key] = build_tkk(alpha, mode)
    return _TKK_CACHE[key]


def bessel(chi, i):
    """The Bessel operator B(z_i), i in 1..4."""
    a, c1, c2 = chi.alpha, chi.c1, chi.c2
    if i == 1:
        return (-c1 + Z1 * D1 + Z3 * D3 + Z4 * D4) * D1 - (2 * a) * Z2 * D3 * D4
    if i == 2:
        return (-c2 + Z2 * D2 + Z3 * D3 + Z4 * D4) * D2 - 2 * Z1 * D3 * D4
    if i == 3:
        return (-2 * c1 + 2 * Z1 * D1 + (2 * a) * Z2 * D2 + (2 + 2 * a) * Z3 * D3) * D4 + Z3 * D1 * D2
    if i == 4:
        return (2 * c1 - 2 * Z1 * D1 - (2 * a) * Z2 * D2 - (2 + 2 * a) * Z4 * D4) * D3 + Z4 * D1 * D2
    raise ValueError(f"generator index must be 1..4, got {i}")


def _derivation_part(chi):
    a = chi.alpha
    if chi.mode == "at_minus_one":
        return {"d-": Z3 * D4, "d+": Z4 * D3, "d0": Z4 * D4 - Z3 * D3}
    s = 1 + a
    return {
        "4[L_xi,L_xi]": (4 * s) * Z3 * D4,
        "4[L_eta,L_eta]": (-4 * s) * Z4 * D3,
        "4[L_xi,L_eta]": (-2 * s) * (Z3 * D3 - Z4 * D4),
    }


def schrodinger_table(chi):
    """pi(X) for every TKK basis name."""
    a, c1, c2 = chi.alpha, chi.c1, chi.c2
    half_i = I / 2
    m2i = -2 * I
    ops = {
        "f1": m2i * Z1, "f2": m2i * Z2, "zeta": m2i * Z3, "theta": m2i * Z4,
        "2L_e1": c1 - 2 * Z1 * D1 - Z3 * D3 - Z4 * D4,
        "2L_e2": c2 - 2 * Z2 * D2 - Z3 * D3 - Z4 * D4,
        "2L_xi": -(Z3 * (D1 + D2)) - 2 * (Z1 + a * Z2) * D4,
        "2L_eta": -(Z4 * (D1 + D2)) + 2 * (Z1 + a * Z2) * D3,
        "4[L_e1,L_xi]": -(Z3 * (D1 - D2)) + 2 * (Z1 - a * Z2) * D4,
        "4[L_e1,L_eta]": -(Z4 * (D1 - D2)) - 2 * (Z1 - a * Z2) * D3,
    }
    ops.update(_derivation_part(chi))
    for name, i in (("e1", 1), ("e2", 2), ("xi", 3), ("eta", 4)):
        ops[name] = (-half_i) * bessel(chi, i)
    return ops


def fock_table(chi):
    """rho(X) for every TKK basis name."""
    a, c1, c2 = chi.alpha, chi.c1, chi.c2
    B = {i: bessel(chi, i) for i in range(1, 5)}
    h = I / 2
    euler1 = -c1 + 2 * Z1 * D1 + Z3 * D3 + Z4 * D4
    euler2 = -c2 + 2 * Z2 * D2 + Z3 * D3 + Z4 * D4
    odd3 = Z3 * D1 + 2 * a * Z2 * D4 + Z3 * D2 + 2 * Z1 * D4
    odd4 = Z4 * D1 - 2 * a * Z2 * D3 + Z4 * D2 - 2 * Z1 * D3
    ops = {}
    for minus, plus, zi, bi, part in (("f1", "e1", Z1, B[1], euler1), ("f2", "e2", Z2, B[2], euler2),
                                      ("zeta", "xi", Z3, B[3], odd3), ("theta", "eta", Z4, B[4], odd4)):
        common = (-h) * (zi + bi)
        ops[minus] = common - h * part
        ops[plus] = common + h * part
    ops.update({
        "2L_e1": Z1 - B[1], "2L_e2": Z2 - B[2], "2L_xi": Z3 - B[3], "2L_eta": Z4 - B[4],
        "4[L_e1,L_xi]": -(Z3 * D1) - 2 * a * Z2 * D4 + Z3 * D2 + 2 * Z1 * D4,
        "4[L_e1,L_eta]": -(Z4 * D1) + 2 * a * Z2 * D3 + Z4 * D2 - 2 * Z1 * D3,
    })
    ops.update(_derivation_part(chi))
    return ops


def model_table(chi, model):
    if model in ("pi", "schrodinger"):
        return schrodinger_table(chi)
    if model in ("rho", "fock"):
        return fock_table(chi)
    raise ValueError(f"unknown model {model!r}")


def act(chi, element, model="pi", table=None):
    """Operator of a TKK element given as a name or a sparse coordinate dict."""
    t = table or chi.tkk()
    ops = model_table(chi, model)
    if isinstance(element, str):
        return ops[element]
    out = SuperDiffOperator.zero()
    for i, c in element.items():
        out = out + ops[t.names[i]].scale(c)
    return out


def schrodinger_action(chi, element):
    return act(chi, element, "pi")


def fock_action(chi, element):
    return act(chi, element, "rho")


def check_representation(chi, model="pi"):
    """[op(X), op(Y)] == op([X, Y]) on all ordered basis pairs; returns (pairs, failures)."""
    t = chi.tkk()
    ops = model_table(chi, model)
    basis_ops = [ops[n] for n in t.names]
    failures = []
    for i in range(t.dim):
        for j in range(t.dim):
            lhs = supercommutator(basis_ops[i], basis_ops[j])
            rhs = SuperDiffOperator.zero()
            for k, c in t.bracket_basis(i, j).items():
                rhs = rhs + basis_ops[k].scale(c)
            if lhs != rhs:
                failures.append((t.names[i], t.names[j]))
    return t.dim ** 2, failures


def check_bessel_supercommute(chi):
    """All 16 ordered pairs [B(z_i), B(z_j)]; returns failing pairs."""
    B = [bessel(chi, i) for i in range(1, 5)]
    return [(i + 1, j + 1) for i in range(4) for j in range(4) if supercommutator(B[i], B[j])]


def euler_consistency(chi):
    """pi(h) with h = 2L_e1 + 2L_e2 equals c1 + c2 - 2E (E the degree operator)."""
    ops = schrodinger_table(chi)
    lhs = ops["2L_e1"] + ops["2L_e2"]
    return lhs == SuperDiffOperator.scalar(chi.c1 + chi.c2) - 2 * SuperDiffOperator.euler()


# ---------------------------------------------------------------------------
# the submodule I_lambda and the quotient F_lambda


class Quotient:
    """Normal forms modulo I_lambda for lambda in {alpha, 1}.

    For lambda = alpha the normal monomials are z1^k, z1^{k-1} z_j (j = 2, 3, 4);
    for lambda = 1 the roles of z1 and z2 are swapped.
    """

    def __init__(self, chi):
        if chi.branch not in ("alpha", "one"):
            raise UnsupportedQuotientError("quotients exist only for lambda = alpha or lambda = 1")
        if chi.branch == "one" and chi.alpha == 1:
            raise ExcludedParameterError("lambda = alpha = 1 is excluded for the quotient")
        self.chi = chi
        self.branch = chi.branch
        # z3 z4 -> kappa * z1 z2
        self.kappa = Scalar(-2) if chi.branch == "alpha" else -2 * chi.alpha
        self.pivot = 0 if chi.branch == "alpha" else 1  # index of the surviving even variable
        self._cache = {}

    def generators(self):
        """The four spanning elements of V_lambda."""
        z1, z2, z3, z4 = (SuperPolynomial.var(i) for i in range(1, 5))
        zj = z2 if self.branch == "alpha" else z1
        first = (2 * z1 * z2 if self.branch == "alpha" else (2 * self.chi.alpha) * z1 * z2) + z3 * z4
        return [first, zj * zj, zj * z3, zj * z4]

    def _reduce_mono(self, m):
        d1, d2, e3, e4 = m
        c = ONE
        if e3 and e4:
            c = self.kappa
            d1, d2, e3, e4 = d1 + 1, d2 + 1, 0, 0
        other = d2 if self.pivot == 0 else d1
        if other >= 2 or (other >= 1 and (e3 or e4)):
            return None, ZERO
        return (d1, d2, e3, e4), c

    def reduce(self, p):
        acc = {}
        for m, c in p.terms.items():
            r = self._cache.get(m)
            if r is None:
                r = self._cache[m] = self._reduce_mono(m)
            n, k = r
            if n is not None:
                _add_into(acc, n, c * k)
        return SuperPolynomial._raw(acc)

    def basis_monomials(self, k):
        if k == 0:
            return [(0, 0, 0, 0)]
        if self.pivot == 0:
            return [(k, 0, 0, 0), (k - 1, 1, 0, 0), (k - 1, 0, 1, 0), (k - 1, 0, 0, 1)]
        return [(0, k, 0, 0), (1, k - 1, 0, 0), (0, k - 1, 1, 0), (0, k - 1, 0, 1)]

    def basis(self, k):
        return [SuperPolynomial({m: ONE}) for m in self.basis_monomials(k)]

    def coordinates(self, p, k):
        """Coordinates of the degree-k part of reduce(p) on basis(k)."""
        r = self.reduce(p)
        return [r.coeff(m) for m in self.basis_monomials(k)]

    def full_basis(self, max_degree):
        return [m for k in range(max_degree + 1) for m in self.basis_monomials(k)]

    def ideal_spanning_set(self, degree):
        """Monomial multiples of V_lambda spanning the degree part of I_lambda."""
        out = []
        for m in monomials_of_degree(degree - 2) if degree >= 2 else []:
            mono = SuperPolynomial({m: ONE})
            for g in self.generators():
                v = mono * g
                if v:
                    out.append(v)
        return out


def reduce_mod_I(chi, p):
    return Quotient(chi).reduce(p)


def check_I_invariance(chi, max_degree, models=("pi", "rho")):
    """Every basis action maps every spanning element of I_lambda (degree <= N) into I_lambda.

    Also checks that the Bessel operators annihilate V_lambda.  Returns a list of failures.
    """
    q = Quotient(chi)
    failures = []
    for i in range(1, 5):
        for v in q.generators():
            if bessel(chi, i).apply(v):
                failures.append(("bessel", i, v.to_str()))
    t = chi.tkk()
    for model in models:
        ops = model_table(chi, model)
        for d in range(2, max_degree + 1):
            for v in q.ideal_spanning_set(d):
                if q.reduce(v):
                    failures.append(("not-in-ideal", d, v.to_str()))
                for name in t.names:
                    if q.reduce(ops[name].apply(v)):
                        failures.append((model, name, v.to_str()))
    return failures


def ideal_membership_rank(chi, degree):
    """Independent route: dim of the degree part of I_lambda by linear algebra on spanning products."""
    q = Quotient(chi)
    monos = monomials_of_degree(degree)
    rows = [[v.coeff(m) for m in monos] for v in q.ideal_spanning_set(degree)]
    r = linalg.rank(rows) if rows else 0
    return len(monos), r


def gk_growth(chi, max_k):
    """dim U_k(g).1 modulo I_lambda for k = 0..max_k (Fock action)."""
    q = Quotient(chi)
    t = chi.tkk()
    ops = [fock_table(chi)[n] for n in t.names]
    coords = q.full_basis(max_k + 1)
    index = {m: i for i, m in enumerate(coords)}

    def vec(p):
        r = q.reduce(p)
        v = [ZERO] * len(coords)
        for m, c in r.terms.items():
            v[index[m]] = c
        return v

    echelon = []  # list of (pivot, row) with row normalised at pivot
    def insert(v):
        v = list(v)
        for piv, row in echelon:
            c = v[piv]
            if c:
                v = [x - c * y for x, y in zip(v, row)]
        for j, x in enumerate(v):
            if x:
                inv = ONE / x
                echelon.append((j, [y * inv for y in v]))
                return True
        return False

    one = SuperPolynomial.constant(ONE)
    insert(vec(one))
    frontier = [one]
    dims = [1]
    for _ in range(max_k):
        new = []
        for p in frontier:
            for op in ops:
                img = q.reduce(op.apply(p))
                if img and insert(vec(img)):
                    new.append(img)
        frontier = new
        dims.append(len(echelon))
    return dims


# ---------------------------------------------------------------------------
# k-type decomposition of F_{lambda,k}


K0_TRIO = ("4[L_xi,L_xi]", "4[L_eta,L_eta]", "4[L_xi,L_eta]")
K0_NAMES = ("4[L_e1,L_xi]", "4[L_e1,L_eta]")


def k0_names(chi):
    return K0_NAMES + (("d-", "d+", "d0") if chi.mode == "at_minus_one" else K0_TRIO)


def k_elements(chi):
    """Basis of k: (a_minus - a_plus) for a in D_alpha, together with k0."""
    t = chi.tkk()
    els = {}
    for minus, plus in (("f1", "e1"), ("f2", "e2"), ("zeta", "xi"), ("theta", "eta")):
        els[f"{minus}-{plus}"] = t.element({minus: 1, plus: -1})
    for n in k0_names(chi):
        els[n] = t.basis(n)
    return els


def level_matrix(chi, op, k, quotient=None):
    """Matrix of a level-preserving operator on F_{lambda,k} (columns are images)."""
    q = quotient or Quotient(chi)
    cols = []
    for b in q.basis(k):
        img = q.reduce(op.apply(b))
        if any(sum(m) != k for m in img.terms):
            raise ValueError("operator does not preserve the level")
        cols.append([img.coeff(m) for m in q.basis_monomials(k)])
    n = len(cols)
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def k0_table(alpha, k):
    """Expected k0 action on (z1^k, z1^{k-1}z2, z1^{k-1}z3, z1^{k-1}z4) for lambda = alpha.

    Images are coordinate vectors in the same basis.
    """
    a = as_scalar(alpha)
    k_ = Scalar(k)
    s = 1 + a
    c = a - k + 1
    z = ZERO
    return {
        "4[L_e1,L_xi]": [[z, z, -k_, z], [z, z, ONE, z], [z] * 4, [Scalar(2), -2 * c, z, z]],
        "4[L_e1,L_eta]": [[z, z, z, -k_], [z, z, z, ONE], [Scalar(-2), 2 * c, z, z], [z] * 4],
        "4[L_xi,L_xi]": [[z] * 4, [z] * 4, [z] * 4, [z, z, 4 * s, z]],
        "4[L_eta,L_eta]": [[z] * 4, [z] * 4, [z, z, z, -4 * s], [z] * 4],
        "4[L_xi,L_eta]": [[z] * 4, [z] * 4, [z, z, -2 * s, z], [z, z, z, 2 * s]],
    }


def _columns_to_matrix(cols):
    n = len(cols)
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def _span_invariant(mat, vectors):
    """Whether span(vectors) is mapped into itself by mat."""
    base = linalg.rank(vectors)
    for v in vectors:
        img = [sum((mat[i][j] * v[j] for j in range(len(v)) if v[j]), ZERO) for i in range(len(mat))]
        if linalg.rank(vectors + [img]) != base:
            return False
    return True


def h_basis(chi, k):
    """Coordinates of the H_{lambda,k} spanning vectors."""
    inv = chi.alpha if chi.branch == "alpha" else ONE / chi.alpha
    return [[ONE, Scalar(k - 1) - inv, ZERO, ZERO], [ZERO, ZERO, ONE, ZERO], [ZERO, ZERO, ZERO, ONE]]


def r_vector(k):
    """(z1 + z2)^k reduced: z1^k + k z1^{k-1} z2 (mirrored for lambda = 1)."""
    return [ONE, Scalar(k), ZERO, ZERO]


def burnside_dimension(mats):
    """Dimension of the unital associative algebra generated by the matrices."""
    n = len(mats[0])
    flat = lambda m: [m[i][j] for i in range(n) for j in range(n)]
    basis = []
    ident = linalg.identity(n)
    frontier = [ident]
    rows = [flat(ident)]
    basis.append(ident)
    while frontier:
        new = []
        for x in frontier:
            for g in mats:
                y = linalg.matmul(g, x)
                if linalg.rank(rows + [flat(y)]) > len(rows):
                    rows.append(flat(y))
                    basis.append(y)
                    new.append(y)
        frontier = new
    return len(basis)


def commutant_basis(mats):
    """Basis of the space of matrices commuting with every given matrix."""
    n = len(mats[0])
    eqs = []
    for g in mats:
        # (g M - M g)_{ij} = sum_k g_ik M_kj - M_ik g_kj
        for i in range(n):
            for j in range(n):
                row = [ZERO] * (n * n)
                for k in range(n):
                    row[k * n + j] = row[k * n + j] + g[i][k]
                    row[i * n + k] = row[i * n + k] - g[k][j]
                eqs.append(row)
    return [[v[i * n:(i + 1) * n] for i in range(n)] for v in linalg.nullspace(eqs)]


def commutant_is_local(mats):
    """Each commutant basis element is a scalar plus a nilpotent (no nontrivial idempotents)."""
    n = len(mats[0])
    for m in commutant_basis(mats):
        c = sum((m[i][i] for i in range(n)), ZERO) / n
        shifted = [[m[i][j] - (c if i == j else ZERO) for j in range(n)] for i in range(n)]
        power = shifted
        for _ in range(n - 1):
            power = linalg.matmul(power, shifted)
        if any(x for row in power for x in row):
            return False
    return True


def decompose_fock_level(chi, k):
    """k0 / k action on F_{lambda,k}.

    Returns a dict with the k0 matrices, table agreement (lambda = alpha only),
    invariance of H and of the (z1+z2)^k line, and the Burnside dimension of the
    k-action together with the k0 commutant dimension.
    """
    q = Quotient(chi)
    ops = fock_table(chi)
    t = chi.tkk()
    mats = {n: level_matrix(chi, ops[n], k, q) for n in k0_names(chi)}
    report = {"k": k, "k0_matrices": mats}
    if chi.branch == "alpha" and chi.mode == "generic":
        expected = k0_table(chi.alpha, k)
        report["table_mismatches"] = [n for n in expected
                                      if mats[n] != _columns_to_matrix(expected[n])]
    hb = h_basis(chi, k)
    rv = r_vector(k)
    report["H_invariant"] = all(_span_invariant(m, hb) for m in mats.values())
    report["R_invariant"] = all(_span_invariant(m, [rv]) for m in mats.values())
    report["H_plus_R_is_everything"] = linalg.rank(hb + [rv]) == 4
    k_ops = [act(chi, el, "rho", t) for el in k_elements(chi).values()]
    kmats = [level_matrix(chi, op, k, q) for op in k_ops]
    report["k_burnside_dimension"] = burnside_dimension(kmats)
    report["k0_commutant_dimension"] = len(commutant_basis(list(mats.values())))
    report["k0_indecomposable"] = commutant_is_local(list(mats.values()))
    if chi.mode == "at_minus_one":
        img = q.reduce(ops["4[L_e1,L_xi]"].scale(Scalar("1/2")).apply(q.basis(k)[3]))
        report["odd_derivation_hits_R"] = img == q.reduce((SuperPolynomial.var(1) + SuperPolynomial.var(2)) ** k)
    return report


def rho_k_operators(chi, k):
    """The two level-preserving operators exchanging z1^{k-1}z2 and (z1+kz2)z1^{k-1}."""
    ops = fock_table(chi)
    a = chi.alpha
    diff2 = ops["f2"] - ops["e2"]
    diff1 = ops["f1"] - ops["e1"]
    rk = ops["4[L_e1,L_xi]"].scale(Scalar("1/2")) * ops["4[L_e1,L_eta]"] - (1 + a) * (diff2 * diff2)
    denom = 2 * (a - 2 * k + 1)
    rk_prime = diff2.scale(ONE / denom) * ((2 * k - a) * diff2 + diff1)
    return rk, rk_prime


def sl2_tilde_images(chi):
    """rho of the Cayley-transformed sl2 triple, as closed-form operators."""
    E = SuperDiffOperator.euler()
    b1, b2 = bessel(chi, 1), bessel(chi, 2)
    return {
        "f~": (-2 * I) * (Z1 + Z2),
        "h~": SuperDiffOperator.scalar(chi.c1 + chi.c2) - 2 * E,
        "e~": (-I / 2) * (b1 + b2),
    }
