"""Structure constants for D(2,1;a): Scheunert presentation and TKK presentation.

Two independent constructions of the same 17-dimensional Lie superalgebra:

* :func:`build_gamma` / :func:`build_d21a` from three copies of sl(2) acting
  on a tensor product of three 2-dimensional spaces;
* :func:`build_tkk` from the (2|2)-dimensional Jordan superalgebra, its
  structure algebra realised by 4x4 matrices, and the TKK brackets.

:data:`TKK_TO_GAMMA` is the explicit dictionary between them and
:func:`check_tkk_isomorphism` verifies it bracket by bracket.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass, field

from . import linalg
from .scalars import A, ONE, ZERO, Scalar, as_scalar


class StructureError(ValueError):
    pass


class DegenerateParameterWarning(UserWarning):
    pass


def _vadd(acc, vec, c=ONE):
    for k, v in vec.items():
        w = acc.get(k, ZERO) + v * c
        if w:
            acc[k] = w
        else:
            acc.pop(k, None)
    return acc


@dataclass
class StructureTable:
    """Lie superalgebra given by structure constants on a labeled basis.

    Elements are sparse dicts ``{basis index: Scalar}``.
    """

    names: list
    parity: list
    brackets: dict
    grading: list = None
    alpha: Scalar = None
    _index: dict = field(default=None, repr=False)

    def __post_init__(self):
        self._index = {n: i for i, n in enumerate(self.names)}

    @property
    def dim(self):
        return len(self.names)

    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"no basis element named {name!r}") from None

    def basis(self, name):
        return {self.index(name): ONE}

    def element(self, coords):
        """Build an element from ``{name: coefficient}``."""
        out = {}
        for name, c in coords.items():
            _vadd(out, {self.index(name): as_scalar(c)})
        return out

    def bracket_basis(self, i, j):
        return self.brackets.get((i, j), {})

    def bracket(self, x, y):
        out = {}
        for i, a in x.items():
            for j, b in y.items():
                v = self.brackets.get((i, j))
                if v:
                    _vadd(out, v, a * b)
        return out

    def element_parity(self, x):
        ps = {self.parity[i] for i in x}
        return ps.pop() if len(ps) == 1 else None

    def ad_matrix(self, x):
        """Matrix of ad(x) acting on coordinate columns."""
        n = self.dim
        cols = [self.bracket(x, {j: ONE}) for j in range(n)]
        return [[cols[j].get(i, ZERO) for j in range(n)] for i in range(n)]

    def map_scalars(self, fn):
        br = {}
        for key, vec in self.brackets.items():
            new = {k: fn(v) for k, v in vec.items()}
            new = {k: v for k, v in new.items() if v}
            if new:
                br[key] = new
        return StructureTable(list(self.names), list(self.parity), br,
                              None if self.grading is None else list(self.grading), self.alpha)

    def to_str(self, x):
        if not x:
            return "0"
        parts = []
        for i in sorted(x):
            c = x[i].to_str()
            parts.append(self.names[i] if c == "1" else f"({c})*{self.names[i]}")
        return " + ".join(parts)

    def to_json(self):
        grade = self.grading or [None] * self.dim
        sym = {-1: "-", 0: "0", 1: "+", None: None}
        return {
            "basis": [{"name": n, "parity": p, "grading": sym[g]}
                      for n, p, g in zip(self.names, self.parity, grade)],
            "brackets": [{"i": i, "j": j, "coeffs": {str(k): v.to_str() for k, v in sorted(vec.items())}}
                         for (i, j), vec in sorted(self.brackets.items())],
        }


def specialize(table, alpha0):
    """Substitute a rational value for the formal parameter."""
    from fractions import Fraction

    a0 = Fraction(alpha0)
    if a0 in (0, -1):
        warnings.warn(f"alpha = {a0} is a degenerate parameter value", DegenerateParameterWarning)
    t = table.map_scalars(lambda s: s.substitute(a0))
    t.alpha = Scalar(a0)
    return t


# ---------------------------------------------------------------------------
# Scheunert construction


_SL2 = {"E": ((0, 1), (0, 0)), "F": ((0, 0), (1, 0)), "H": ((1, 0), (0, -1))}
_SIGNS = ("+", "-")  # u+ = (1,0), u- = (0,1)


def _psi(s, t):
    if s == "+" and t == "-":
        return 1
    if s == "-" and t == "+":
        return -1
    return 0


def _p_component(s, t):
    """p_i(u_s, u_t) as a dict over {E, F, H} (integer coefficients)."""
    vec = {"+": (1, 0), "-": (0, 1)}
    x, y = vec[s], vec[t]
    # matrix of z -> psi(y,z) x - psi(z,x) y, on the basis u+, u-
    cols = []
    for r in _SIGNS:
        z = r
        ps_yz = _psi(t, z)
        ps_zx = _psi(z, s)
        cols.append((ps_yz * x[0] - ps_zx * y[0], ps_yz * x[1] - ps_zx * y[1]))
    m = ((cols[0][0], cols[1][0]), (cols[0][1], cols[1][1]))
    out = {}
    if m[0][1]:
        out["E"] = m[0][1]
    if m[1][0]:
        out["F"] = m[1][0]
    if m[0][0]:
        out["H"] = m[0][0]
    return out


GAMMA_NAMES = (["E1", "F1", "H1", "E2", "F2", "H2", "E3", "F3", "H3"]
               + ["u" + "".join(s) for s in itertools.product("+-", repeat=3)])


def build_gamma(sigma1, sigma2, sigma3):
    """Bracket table of Gamma(sigma1, sigma2, sigma3) on E_i, F_i, H_i and the 8 odd u's."""
    sig = [as_scalar(sigma1), as_scalar(sigma2), as_scalar(sigma3)]
    names = list(GAMMA_NAMES)
    idx = {n: i for i, n in enumerate(names)}
    parity = [0] * 9 + [1] * 8
    br = {}

    def put(i, j, vec):
        vec = {k: v for k, v in vec.items() if v}
        if vec:
            br[(i, j)] = vec

    # even-even
    sl2 = {("H", "E"): {"E": 2}, ("H", "F"): {"F": -2}, ("E", "F"): {"H": 1},
           ("E", "H"): {"E": -2}, ("F", "H"): {"F": 2}, ("F", "E"): {"H": -1}}
    for f in (1, 2, 3):
        for (a, b), res in sl2.items():
            put(idx[f"{a}{f}"], idx[f"{b}{f}"], {idx[f"{k}{f}"]: Scalar(v) for k, v in res.items()})

    # even-odd: outer tensor action
    for f in (1, 2, 3):
        for op, mat in _SL2.items():
            i = idx[f"{op}{f}"]
            for signs in itertools.product("+-", repeat=3):
                s = signs[f - 1]
                col = 0 if s == "+" else 1
                out = {}
                for row, r in enumerate(_SIGNS):
                    c = mat[row][col]
                    if c:
                        new = list(signs)
                        new[f - 1] = r
                        j2 = idx["u" + "".join(new)]
                        out[j2] = out.get(j2, ZERO) + Scalar(c)
                j = idx["u" + "".join(signs)]
                put(i, j, out)
                put(j, i, {k: -v for k, v in out.items()})

    # odd-odd: the symmetric map p
    for xs in itertools.product("+-", repeat=3):
        for ys in itertools.product("+-", repeat=3):
            out = {}
            for f in range(3):
                others = [g for g in range(3) if g != f]
                c = _psi(xs[others[0]], ys[others[0]]) * _psi(xs[others[1]], ys[others[1]])
                if not c:
                    continue
                for gen, v in _p_component(xs[f], ys[f]).items():
                    k = idx[f"{gen}{f + 1}"]
                    out[k] = out.get(k, ZERO) + sig[f] * (c * v)
            put(idx["u" + "".join(xs)], idx["u" + "".join(ys)], out)

    table = StructureTable(names, parity, br)
    return table


def build_d21a(alpha=A):
    """D(2,1;alpha) = Gamma((1+alpha)/2, -1/2, -alpha/2), with the h = H2 + H3 grading."""
    alpha = as_scalar(alpha)
    t = build_gamma((1 + alpha) / 2, Scalar("-1/2"), -alpha / 2)
    t.alpha = alpha
    t.grading = grading_decomposition(t)
    return t


def grading_decomposition(table, h=None):
    """Grade (-1, 0, +1) of each basis vector under ad(h)/2, h = H2 + H3 by default."""
    if h is None:
        h = table.element({"H2": 1, "H3": 1})
    grades = []
    for j in range(table.dim):
        img = table.bracket(h, {j: ONE})
        if not img:
            grades.append(0)
            continue
        if set(img) != {j}:
            raise StructureError(f"ad(h) is not diagonal on {table.names[j]}")
        ev = img[j]
        if ev == 2:
            grades.append(1)
        elif ev == -2:
            grades.append(-1)
        else:
            raise StructureError(f"unexpected ad(h) eigenvalue {ev} on {table.names[j]}")
    return grades


def check_super_jacobi(table):
    """Graded Jacobi identity on all basis triples.

    Returns (number of triples checked, list of violating triples as name tuples).
    """
    n = table.dim
    par = table.parity
    violations = []
    basis = [{i: ONE} for i in range(n)]
    inner = {}
    for j in range(n):
        for k in range(n):
            inner[(j, k)] = table.bracket_basis(j, k)
    count = 0
    for i in range(n):
        for j in range(n):
            xy = inner[(i, j)]
            for k in range(n):
                count += 1
                lhs = table.bracket(basis[i], inner[(j, k)])
                rhs = table.bracket(xy, basis[k])
                other = table.bracket(basis[j], inner[(i, k)])
                sign = -1 if (par[i] and par[j]) else 1
                diff = dict(lhs)
                _vadd(diff, rhs, Scalar(-1))
                _vadd(diff, other, Scalar(-sign))
                if diff:
                    violations.append((table.names[i], table.names[j], table.names[k]))
    return count, violations


def check_super_antisymmetry(table):
    bad = []
    for i in range(table.dim):
        for j in range(table.dim):
            a = table.bracket_basis(i, j)
            b = table.bracket_basis(j, i)
            sign = 1 if (table.parity[i] and table.parity[j]) else -1
            if a != {k: v * sign for k, v in b.items()}:
                bad.append((table.names[i], table.names[j]))
    return bad


def check_grading_compatibility(table):
    bad = []
    g = table.grading
    for (i, j), vec in table.brackets.items():
        target = g[i] + g[j]
        for k in vec:
            if g[k] != target:
                bad.append((table.names[i], table.names[j]))
                break
    return bad


# ---------------------------------------------------------------------------
# Jordan superalgebra D_alpha

JORDAN_NAMES = ("e1", "e2", "xi", "eta")
JORDAN_PARITY = (0, 0, 1, 1)


def jordan_table(alpha=A, perturb=None):
    """Products of basis vectors: {(i, j): coordinate list}.

    ``perturb`` maps basis pairs to replacement products, e.g. for negative controls.
    Graded commutativity is not re-imposed on overridden entries.
    """
    alpha = as_scalar(alpha)
    half = Scalar("1/2")
    z = [ZERO] * 4

    def vec(**kw):
        v = list(z)
        for k, c in kw.items():
            v[JORDAN_NAMES.index(k)] = as_scalar(c)
        return v

    xieta = vec(e1=1, e2=alpha)
    t = {}
    for i in range(4):
        for j in range(4):
            t[(i, j)] = list(z)
    t[(0, 0)] = vec(e1=1)
    t[(1, 1)] = vec(e2=1)
    for e in (0, 1):
        t[(e, 2)] = t[(2, e)] = vec(xi=half)
        t[(e, 3)] = t[(3, e)] = vec(eta=half)
    t[(2, 3)] = xieta
    t[(3, 2)] = [-c for c in xieta]
    for key, v in (perturb or {}).items():
        t[key] = [as_scalar(c) for c in v]
    return t


def jordan_mul(x, y, alpha=A, table=None):
    """Product of two elements given as coordinate lists over (e1, e2, xi, eta)."""
    t = table or jordan_table(alpha)
    out = [ZERO] * 4
    for i in range(4):
        if not x[i]:
            continue
        for j in range(4):
            if not y[j]:
                continue
            c = x[i] * y[j]
            for k, v in enumerate(t[(i, j)]):
                if v:
                    out[k] = out[k] + c * v
    return out


def mult_matrix(x, table):
    """Matrix of left multiplication L_x (columns are images of basis vectors)."""
    cols = [jordan_mul(x, _unit(j), table=table) for j in range(4)]
    return [[cols[j][i] for j in range(4)] for i in range(4)]


def _unit(j, n=4):
    v = [ZERO] * n
    v[j] = ONE
    return v


def _mat_add(x, y, c=ONE):
    return [[a + b * c for a, b in zip(r, s)] for r, s in zip(x, y)]


def _mat_scale(x, c):
    return [[a * c for a in r] for r in x]


def super_commutator_matrix(x, px, y, py):
    sign = -1 if (px and py) else 1
    return _mat_add(linalg.matmul(x, y), linalg.matmul(y, x), Scalar(-sign))


def check_jordan_identity(alpha=A, perturb=None):
    """Graded Jordan identity on all basis triples; returns list of failing triples."""
    t = jordan_table(alpha, perturb)
    L = [mult_matrix(_unit(i), t) for i in range(4)]
    par = JORDAN_PARITY
    failures = []
    for x, y, z in itertools.product(range(4), repeat=3):
        total = [[ZERO] * 4 for _ in range(4)]
        for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
            # (-1)^{|a||c|} [L_a, L_{bc}]
            bc = t[(b, c)]
            Lbc = mult_matrix(bc, t)
            pbc = (par[b] + par[c]) & 1
            term = super_commutator_matrix(L[a], par[a], Lbc, pbc)
            sign = -1 if (par[a] and par[c]) else 1
            total = _mat_add(total, term, Scalar(sign))
        if any(v for row in total for v in row):
            failures.append((JORDAN_NAMES[x], JORDAN_NAMES[y], JORDAN_NAMES[z]))
    return failures


# ---------------------------------------------------------------------------
# structure algebra and TKK


TKK_MINUS = ("f1", "f2", "zeta", "theta")
TKK_PLUS = ("e1", "e2", "xi", "eta")
STR_COMMON = ("2L_e1", "2L_e2", "2L_xi", "2L_eta", "4[L_e1,L_xi]", "4[L_e1,L_eta]")
STR_INNER = ("4[L_xi,L_xi]", "4[L_eta,L_eta]", "4[L_xi,L_eta]")
STR_EXTRA = ("d-", "d+", "d0")
STR_PARITY = {"2L_e1": 0, "2L_e2": 0, "2L_xi": 1, "2L_eta": 1, "4[L_e1,L_xi]": 1,
              "4[L_e1,L_eta]": 1, "4[L_xi,L_xi]": 0, "4[L_eta,L_eta]": 0, "4[L_xi,L_eta]": 0,
              "d-": 0, "d+": 0, "d0": 0}
# which str basis elements are multiplication operators (the rest are derivations)
STR_IS_MULT = {"2L_e1": True, "2L_e2": True, "2L_xi": True, "2L_eta": True}


def build_str(alpha=A, mode="generic"):
    """Matrix realisation of the structure algebra.

    Returns (names, parities, matrices) with 4x4 matrices acting on columns.
    ``mode`` is ``"generic"`` or ``"at_minus_one"``.
    """
    alpha = as_scalar(alpha)
    t = jordan_table(alpha)
    L = [mult_matrix(_unit(i), t) for i in range(4)]
    two, four = Scalar(2), Scalar(4)
    mats = {
        "2L_e1": _mat_scale(L[0], two),
        "2L_e2": _mat_scale(L[1], two),
        "2L_xi": _mat_scale(L[2], two),
        "2L_eta": _mat_scale(L[3], two),
        "4[L_e1,L_xi]": _mat_scale(super_commutator_matrix(L[0], 0, L[2], 1), four),
        "4[L_e1,L_eta]": _mat_scale(super_commutator_matrix(L[0], 0, L[3], 1), four),
    }
    if mode == "generic":
        if alpha.is_constant() and alpha == -1:
            warnings.warn("inner derivations [L_xi,L_xi], [L_eta,L_eta], [L_xi,L_eta] vanish at alpha = -1",
                          DegenerateParameterWarning)
        mats["4[L_xi,L_xi]"] = _mat_scale(super_commutator_matrix(L[2], 1, L[2], 1), four)
        mats["4[L_eta,L_eta]"] = _mat_scale(super_commutator_matrix(L[3], 1, L[3], 1), four)
        mats["4[L_xi,L_eta]"] = _mat_scale(super_commutator_matrix(L[2], 1, L[3], 1), four)
        names = STR_COMMON + STR_INNER
    elif mode == "at_minus_one":
        if not (alpha.is_constant() and alpha == -1):
            raise StructureError("the extra derivations d-, d+, d0 exist only at alpha = -1")
        z = [[ZERO] * 4 for _ in range(4)]
        dm = [row[:] for row in z]
        dm[2][3] = ONE
        dp = [row[:] for row in z]
        dp[3][2] = ONE
        d0 = [row[:] for row in z]
        d0[2][2] = Scalar(-1)
        d0[3][3] = ONE
        mats.update({"d-": dm, "d+": dp, "d0": d0})
        names = STR_COMMON + STR_EXTRA
    else:
        raise StructureError(f"unknown mode {mode!r}")
    return list(names), [STR_PARITY[n] for n in names], [mats[n] for n in names]


class _MatrixDecomposer:
    def __init__(self, mats):
        self.n = len(mats)
        rows = []
        for r in range(4):
            for c in range(4):
                rows.append([m[r][c] for m in mats])
        aug = [row + [ONE if i == j else ZERO for j in range(16)] for i, row in enumerate(rows)]
        red, piv = linalg.row_echelon(aug)
        if piv[: self.n] != list(range(self.n)):
            raise StructureError("structure-algebra matrices are linearly dependent")
        # solution x = T b for consistent b, with T from the first n rows
        self.transform = [row[self.n:] for row in red[: self.n]]
        self.check = [row[self.n:] for row in red[self.n:]]

    def __call__(self, m):
        b = [m[r][c] for r in range(4) for c in range(4)]
        for row in self.check:
            acc = ZERO
            for u, v in zip(row, b):
                if u and v:
                    acc = acc + u * v
            if acc:
                raise StructureError("matrix is outside the structure algebra")
        out = []
        for row in self.transform:
            acc = ZERO
            for u, v in zip(row, b):
                if u and v:
                    acc = acc + u * v
            out.append(acc)
        return out


def build_tkk(alpha=A, mode="generic"):
    """Bracket table of TKK(D_alpha) = D^- + str(D_alpha) + D^+."""
    alpha = as_scalar(alpha)
    snames, spar, smats = build_str(alpha, mode)
    names = list(TKK_MINUS) + snames + list(TKK_PLUS)
    parity = list(JORDAN_PARITY) + spar + list(JORDAN_PARITY)
    grading = [-1] * 4 + [0] * len(snames) + [1] * 4
    ns = len(snames)
    off_s, off_p = 4, 4 + ns
    decompose = _MatrixDecomposer(smats)
    jt = jordan_table(alpha)
    L = [mult_matrix(_unit(i), jt) for i in range(4)]
    br = {}

    def put(i, j, vec):
        vec = {k: v for k, v in vec.items() if v}
        if vec:
            br[(i, j)] = vec
            sign = 1 if (parity[i] and parity[j]) else -1
            br[(j, i)] = {k: v * sign for k, v in vec.items()}

    # str x str
    for a in range(ns):
        for b in range(a, ns):
            m = super_commutator_matrix(smats[a], spar[a], smats[b], spar[b])
            coeffs = decompose(m)
            put(off_s + a, off_s + b, {off_s + k: c for k, c in enumerate(coeffs)})

    # str x D^+ and str x D^-
    for a in range(ns):
        mult = STR_IS_MULT.get(snames[a], False)
        for j in range(4):
            col = [smats[a][r][j] for r in range(4)]
            put(off_s + a, off_p + j, {off_p + r: col[r] for r in range(4)})
            sign = Scalar(-1) if mult else ONE
            put(off_s + a, j, {r: col[r] * sign for r in range(4)})

    # D^+ x D^-: [x, u] = 2 L_{xu} + 2 [L_x, L_u]
    for i in range(4):
        for j in range(4):
            xu = jt[(i, j)]
            m = _mat_scale(mult_matrix(xu, jt), Scalar(2))
            m = _mat_add(m, super_commutator_matrix(L[i], JORDAN_PARITY[i], L[j], JORDAN_PARITY[j]), Scalar(2))
            coeffs = decompose(m)
            put(off_p + i, j, {off_s + k: c for k, c in enumerate(coeffs)})

    table = StructureTable(names, parity, br, grading, alpha)
    return table


# ---------------------------------------------------------------------------
# dictionaries between the presentations


def tkk_to_gamma(alpha=A, mode="generic", unit_d_scaling=False):
    """Images of the TKK basis in the Scheunert basis, as {tkk name: {gamma name: Scalar}}.

    At alpha = -1 the matrices d- = E34 and d+ = E43 correspond to F1/2 and 2*E1;
    this is forced by 4[L_xi,L_xi] = 2(1+alpha) F1 and 4[L_eta,L_eta] = -8(1+alpha) E1.
    ``unit_d_scaling=True`` uses d- = F1, d+ = E1 instead (not a homomorphism).
    """
    alpha = as_scalar(alpha)
    s = 1 + alpha
    d = {
        "f1": {"F2": 1}, "f2": {"F3": 1}, "zeta": {"u---": -1}, "theta": {"u+--": -2},
        "e1": {"E2": 1}, "e2": {"E3": 1}, "xi": {"u-++": 1}, "eta": {"u+++": 2},
        "2L_e1": {"H2": 1}, "2L_e2": {"H3": 1},
        "2L_xi": {"u--+": -1, "u-+-": -1},
        "2L_eta": {"u+-+": -2, "u++-": -2},
        "4[L_e1,L_xi]": {"u--+": 1, "u-+-": -1},
        "4[L_e1,L_eta]": {"u+-+": 2, "u++-": -2},
    }
    if mode == "generic":
        d.update({"4[L_xi,L_xi]": {"F1": 2 * s}, "4[L_eta,L_eta]": {"E1": -8 * s},
                  "4[L_xi,L_eta]": {"H1": 2 * s}})
    else:
        if unit_d_scaling:
            d.update({"d-": {"F1": 1}, "d+": {"E1": 1}, "d0": {"H1": 1}})
        else:
            d.update({"d-": {"F1": Scalar("1/2")}, "d+": {"E1": 2}, "d0": {"H1": 1}})
    return {k: {g: as_scalar(c) for g, c in v.items()} for k, v in d.items()}


def _map_element(x, src, dst, dictionary):
    out = {}
    for i, c in x.items():
        _vadd(out, dst.element(dictionary[src.names[i]]), c)
    return out


def check_tkk_isomorphism(alpha=A, mode="generic", unit_d_scaling=False):
    """Verify that the dictionary is a bracket-, parity- and grading-preserving bijection.

    Returns a dict with keys ``pairs``, ``failures`` (list of (x, y, lhs, rhs)),
    ``rank``, ``parity_ok`` and ``grading_ok``.
    """
    alpha = as_scalar(alpha)
    tkk = build_tkk(alpha, mode)
    gam = build_d21a(alpha)
    phi = tkk_to_gamma(alpha, mode, unit_d_scaling)
    images = [_map_element({i: ONE}, tkk, gam, phi) for i in range(tkk.dim)]
    mat = [[img.get(r, ZERO) for img in images] for r in range(gam.dim)]
    rank = linalg.rank(mat)
    parity_ok = all(gam.element_parity(images[i]) == tkk.parity[i] for i in range(tkk.dim))
    grading_ok = all({gam.grading[k] for k in images[i]} == {tkk.grading[i]} for i in range(tkk.dim))
    failures = []
    for i in range(tkk.dim):
        for j in range(tkk.dim):
            lhs = _map_element(tkk.bracket_basis(i, j), tkk, gam, phi)
            rhs = gam.bracket(images[i], images[j])
            if lhs != rhs:
                failures.append((tkk.names[i], tkk.names[j], gam.to_str(lhs), gam.to_str(rhs)))
    return {"pairs": tkk.dim ** 2, "failures": failures, "rank": rank,
            "parity_ok": parity_ok, "grading_ok": grading_ok}


JORDAN_TO_GAMMA = {"e1": {"E2": 1}, "e2": {"E3": 1}, "xi": {"u-++": 1}, "eta": {"u+++": 2}}


def g_plus_jordan_product(table, x, y):
    """x . y = 1/2 [[x, F2 + F3], y] on the positive part of the grading."""
    f = table.element({"F2": 1, "F3": 1})
    return {k: v * Scalar("1/2") for k, v in table.bracket(table.bracket(x, f), y).items()}


def check_g_plus_jordan(alpha=A, perturb=None):
    """Compare the g_+ product with the D_alpha table through the Jordan dictionary."""
    gam = build_d21a(alpha)
    jt = jordan_table(alpha, perturb)
    imgs = [gam.element(JORDAN_TO_GAMMA[n]) for n in JORDAN_NAMES]
    failures = []
    for i in range(4):
        for j in range(4):
            lhs = g_plus_jordan_product(gam, imgs[i], imgs[j])
            rhs = {}
            for k, c in enumerate(jt[(i, j)]):
                if c:
                    _vadd(rhs, imgs[k], c)
            if lhs != rhs:
                failures.append((JORDAN_NAMES[i], JORDAN_NAMES[j]))
    return failures


def check_sl2_triple(table):
    """Relations of the short subalgebra e = E2 + E3, h = H2 + H3, f = F2 + F3."""
    e = table.element({"E2": 1, "E3": 1})
    h = table.element({"H2": 1, "H3": 1})
    f = table.element({"F2": 1, "F3": 1})
    scale = lambda v, c: {k: x * c for k, x in v.items()}
    return {
        "[h,e]=2e": table.bracket(h, e) == scale(e, Scalar(2)),
        "[h,f]=-2f": table.bracket(h, f) == scale(f, Scalar(-2)),
        "[e,f]=h": table.bracket(e, f) == h,
    }
