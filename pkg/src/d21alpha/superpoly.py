"""Supercommutative polynomials in two even and two odd generators.

A monomial is a tuple ``(d1, d2, e3, e4)`` standing for
``z1^d1 z2^d2 z3^e3 z4^e4`` written in that order.  Odd generators
anticommute, so ``z4 z3 = -z3 z4`` and ``z3 z3 = z4 z4 = 0``.

Odd partial derivatives are left derivatives: the generator is moved to the
front before being removed, hence ``d4(z3 z4) = -z3``.
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import ONE, ZERO, Scalar, as_scalar

ONE_MONO = (0, 0, 0, 0)
GENERATORS = ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))


def mono_parity(m):
    return (m[2] + m[3]) & 1


def mono_degree(m):
    return m[0] + m[1] + m[2] + m[3]


def mono_mul(m, n):
    """Product of two monomials as (sign, monomial), or (0, None) if it vanishes."""
    if (m[2] and n[2]) or (m[3] and n[3]):
        return 0, None
    sign = -1 if (m[3] and n[2]) else 1
    return sign, (m[0] + n[0], m[1] + n[1], m[2] + n[2], m[3] + n[3])


def mono_partial(i, m):
    """Left partial derivative in generator ``i`` (1..4): (factor, monomial) or (0, None)."""
    if i == 1:
        return (m[0], (m[0] - 1, m[1], m[2], m[3])) if m[0] else (0, None)
    if i == 2:
        return (m[1], (m[0], m[1] - 1, m[2], m[3])) if m[1] else (0, None)
    if i == 3:
        return (1, (m[0], m[1], 0, m[3])) if m[2] else (0, None)
    if m[3]:
        return (-1 if m[2] else 1, (m[0], m[1], m[2], 0))
    return 0, None


def _add_into(acc, key, c):
    v = acc.get(key)
    if v is None:
        acc[key] = c
    else:
        v = v + c
        if v:
            acc[key] = v
        else:
            del acc[key]


def _mono_str(m, names):
    parts = []
    for k, e in enumerate(m):
        if e == 1:
            parts.append(names[k])
        elif e > 1:
            parts.append(f"{names[k]}^{e}")
    return "*".join(parts)


class SuperPolynomial:
    """Finite combination of super-monomials with :class:`Scalar` coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for m, c in terms.items():
                c = as_scalar(c)
                if c:
                    m = tuple(m)
                    if len(m) != 4 or m[2] not in (0, 1) or m[3] not in (0, 1) or min(m) < 0:
                        raise ValueError(f"bad monomial {m}")
                    clean[m] = c
        self.terms = clean

    @classmethod
    def _raw(cls, terms):
        p = object.__new__(cls)
        p.terms = terms
        return p

    @classmethod
    def constant(cls, c):
        c = as_scalar(c)
        return cls._raw({ONE_MONO: c} if c else {})

    @classmethod
    def monomial(cls, d1=0, d2=0, e3=0, e4=0, coeff=ONE):
        return cls({(d1, d2, e3, e4): coeff})

    @classmethod
    def var(cls, i):
        return cls._raw({GENERATORS[i - 1]: ONE})

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        acc = dict(self.terms)
        for m, c in other.terms.items():
            _add_into(acc, m, c)
        return SuperPolynomial._raw(acc)

    __radd__ = __add__

    def __neg__(self):
        return SuperPolynomial._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, s):
        s = as_scalar(s)
        if not s:
            return SuperPolynomial._raw({})
        return SuperPolynomial._raw({m: c * s for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, SuperPolynomial):
            acc = {}
            for m, c in self.terms.items():
                for n, d in other.terms.items():
                    sign, mn = mono_mul(m, n)
                    if sign:
                        _add_into(acc, mn, c * d if sign > 0 else -(c * d))
            return SuperPolynomial._raw(acc)
        s = as_scalar(other)
        if s is NotImplemented:
            return NotImplemented
        return self.scale(s)

    def __rmul__(self, other):
        s = as_scalar(other)
        if s is NotImplemented:
            return NotImplemented
        return self.scale(s)

    def __pow__(self, n):
        out = SuperPolynomial.constant(ONE)
        for _ in range(n):
            out = out * self
        return out

    def partial(self, i):
        acc = {}
        for m, c in self.terms.items():
            f, n = mono_partial(i, m)
            if f:
                _add_into(acc, n, c * f)
        return SuperPolynomial._raw(acc)

    def conjugate(self):
        return SuperPolynomial._raw({m: c.conjugate() for m, c in self.terms.items()})

    def map_coefficients(self, fn):
        return SuperPolynomial({m: fn(c) for m, c in self.terms.items()})

    # -- inspection -------------------------------------------------------

    def __eq__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def coeff(self, m):
        return self.terms.get(tuple(m), ZERO)

    def constant_term(self):
        return self.terms.get(ONE_MONO, ZERO)

    def parity(self):
        """0 or 1 for homogeneous elements, None for mixed or zero."""
        ps = {mono_parity(m) for m in self.terms}
        return ps.pop() if len(ps) == 1 else None

    def degrees(self):
        return {mono_degree(m) for m in self.terms}

    def homogeneous_part(self, k):
        return SuperPolynomial._raw({m: c for m, c in self.terms.items() if mono_degree(m) == k})

    def is_zero(self):
        return not self.terms

    def to_str(self, names=("z1", "z2", "z3", "z4")):
        if not self.terms:
            return "0"
        out = []
        for m in sorted(self.terms, key=lambda t: (-mono_degree(t), tuple(-x for x in t))):
            c = self.terms[m]
            ms = _mono_str(m, names)
            cs = c.to_str()
            if not ms:
                term = cs
            elif cs == "1":
                term = ms
            elif cs == "-1":
                term = "-" + ms
            else:
                simple = all(ch not in cs[1:] for ch in "+-/") and "(" not in cs
                term = f"{cs}*{ms}" if simple else f"({cs})*{ms}"
            out.append(term)
        s = out[0]
        for t in out[1:]:
            s += " - " + t[1:] if t.startswith("-") else " + " + t
        return s

    __str__ = to_str

    def __repr__(self):
        return f"SuperPolynomial({self.to_str()})"

    def to_json(self):
        return [{"d1": m[0], "d2": m[1], "e3": m[2], "e4": m[3], "coeff": c.to_str()}
                for m, c in sorted(self.terms.items())]

    @classmethod
    def from_json(cls, data):
        terms = {}
        for t in data:
            m = (int(t["d1"]), int(t["d2"]), int(t.get("e3", 0)), int(t.get("e4", 0)))
            c = Scalar.parse(str(t["coeff"]))
            _add_into(terms, m, c)
        return cls(terms)


def _as_poly(x):
    if isinstance(x, SuperPolynomial):
        return x
    s = as_scalar(x)
    if s is NotImplemented:
        return NotImplemented
    return SuperPolynomial.constant(s)


def var(i):
    return SuperPolynomial.var(i)


def monomials_of_degree(k):
    """All super-monomials of total degree k, in a fixed order."""
    out = []
    for e3 in (0, 1):
        for e4 in (0, 1):
            even = k - e3 - e4
            if even < 0:
                continue
            for d1 in range(even, -1, -1):
                out.append((d1, even - d1, e3, e4))
    return out


# ---------------------------------------------------------------------------


def _as_key(mu):
    return (Fraction(mu[0]), Fraction(mu[1]))


class ExpPolynomial:
    """Finite sum of ``p_mu(x) * exp(mu1 x1 + mu2 x2)`` with distinct rational keys."""

    __slots__ = ("summands",)

    def __init__(self, summands=None):
        clean = {}
        if summands:
            for mu, p in summands.items():
                if not isinstance(p, SuperPolynomial):
                    p = _as_poly(p)
                if p:
                    key = _as_key(mu)
                    clean[key] = clean[key] + p if key in clean else p
                    if not clean[key]:
                        del clean[key]
        self.summands = clean

    @classmethod
    def exponential(cls, mu1, mu2, poly=None):
        return cls({(mu1, mu2): poly if poly is not None else SuperPolynomial.constant(ONE)})

    def __add__(self, other):
        if not isinstance(other, ExpPolynomial):
            return NotImplemented
        acc = dict(self.summands)
        for k, p in other.summands.items():
            q = acc[k] + p if k in acc else p
            if q:
                acc[k] = q
            else:
                acc.pop(k, None)
        return ExpPolynomial._raw(acc)

    @classmethod
    def _raw(cls, summands):
        f = object.__new__(cls)
        f.summands = summands
        return f

    def __neg__(self):
        return ExpPolynomial._raw({k: -p for k, p in self.summands.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s):
        return ExpPolynomial({k: p.scale(s) for k, p in self.summands.items()})

    def mul_poly(self, q):
        """Left multiplication by a SuperPolynomial."""
        return ExpPolynomial({k: q * p for k, p in self.summands.items()})

    def __mul__(self, other):
        if isinstance(other, ExpPolynomial):
            acc = ExpPolynomial()
            for k1, p1 in self.summands.items():
                for k2, p2 in other.summands.items():
                    acc = acc + ExpPolynomial({(k1[0] + k2[0], k1[1] + k2[1]): p1 * p2})
            return acc
        if isinstance(other, SuperPolynomial):
            return ExpPolynomial({k: p * other for k, p in self.summands.items()})
        s = as_scalar(other)
        if s is NotImplemented:
            return NotImplemented
        return self.scale(s)

    def __rmul__(self, other):
        if isinstance(other, SuperPolynomial):
            return self.mul_poly(other)
        s = as_scalar(other)
        if s is NotImplemented:
            return NotImplemented
        return self.scale(s)

    def partial(self, i):
        out = {}
        for k, p in self.summands.items():
            q = p.partial(i)
            if i <= 2 and k[i - 1]:
                q = q + p.scale(Scalar(k[i - 1]))
            if q:
                out[k] = q
        return ExpPolynomial._raw(out)

    def conjugate(self):
        return ExpPolynomial._raw({k: p.conjugate() for k, p in self.summands.items()})

    def map_polys(self, fn):
        return ExpPolynomial({k: fn(p) for k, p in self.summands.items()})

    def __eq__(self, other):
        if not isinstance(other, ExpPolynomial):
            return NotImplemented
        return self.summands == other.summands

    def __bool__(self):
        return bool(self.summands)

    def to_str(self, names=("x1", "x2", "x3", "x4")):
        if not self.summands:
            return "0"
        parts = []
        for k in sorted(self.summands):
            p = self.summands[k]
            ex = []
            for mu, n in zip(k, names):
                if mu:
                    ex.append(f"{mu}*{n}")
            if ex:
                parts.append(f"({p.to_str(names)})*exp({' + '.join(ex)})")
            else:
                parts.append(f"({p.to_str(names)})")
        return " + ".join(parts)

    __str__ = to_str

    def __repr__(self):
        return f"ExpPolynomial({self.to_str()})"

    def to_json(self):
        return [{"mu1": str(k[0]), "mu2": str(k[1]), "poly": p.to_json()}
                for k, p in sorted(self.summands.items())]

    @classmethod
    def from_json(cls, data):
        return cls({(Fraction(t["mu1"]), Fraction(t["mu2"])): SuperPolynomial.from_json(t["poly"])
                    for t in data})
