"""Super differential operators with polynomial coefficients.

An operator is a combination of normal-ordered terms
``z^m * d1^a d2^b d3^c d4^e`` (multiplications left of derivatives,
derivatives in the order d1, d2, d3, d4, so d4 acts first).  The canonical
form is unique, so operator identities are decided by comparing dicts.
"""

from __future__ import annotations

from functools import lru_cache

from .scalars import ONE, Scalar, as_scalar
from .superpoly import (
    GENERATORS,
    ONE_MONO,
    ExpPolynomial,
    SuperPolynomial,
    _add_into,
    mono_mul,
    mono_parity,
    mono_partial,
)

NO_DERIV = (0, 0, 0, 0)


def _prepend_partial(i, g):
    """d_i * d^g in canonical order, as (sign, multi-index) or (0, None)."""
    d1, d2, e3, e4 = g
    if i == 1:
        return 1, (d1 + 1, d2, e3, e4)
    if i == 2:
        return 1, (d1, d2 + 1, e3, e4)
    if i == 3:
        return (0, None) if e3 else (1, (d1, d2, 1, e4))
    if e4:
        return 0, None
    return (-1 if e3 else 1), (d1, d2, e3, 1)


def _partial_sequence(g):
    """Single derivatives of d^g in the order they act (innermost first)."""
    seq = []
    if g[3]:
        seq.append(4)
    if g[2]:
        seq.append(3)
    seq.extend([2] * g[1])
    seq.extend([1] * g[0])
    return seq


@lru_cache(maxsize=None)
def _derive_mono(g, n):
    """d^g applied to the monomial z^n: (integer factor, monomial) or (0, None)."""
    f = 1
    for i in _partial_sequence(g):
        k, n = mono_partial(i, n)
        if not k:
            return 0, None
        f *= k
    return f, n


@lru_cache(maxsize=None)
def _move_past(g, n, h):
    """Normal-order d^g z^n d^h; returns a tuple of ((mono, index), int)."""
    cur = {(n, h): 1}
    for i in _partial_sequence(g):
        nxt = {}
        for (mono, idx), c in cur.items():
            k, dm = mono_partial(i, mono)
            if k:
                key = (dm, idx)
                nxt[key] = nxt.get(key, 0) + c * k
            s, nidx = _prepend_partial(i, idx)
            if s:
                if i >= 3 and mono_parity(mono):
                    s = -s
                key = (mono, nidx)
                nxt[key] = nxt.get(key, 0) + c * s
        cur = {k: v for k, v in nxt.items() if v}
    return tuple(cur.items())


@lru_cache(maxsize=None)
def _compose_terms(m, g, n, h):
    out = {}
    for (mono, idx), c in _move_past(g, n, h):
        s, prod = mono_mul(m, mono)
        if s:
            key = (prod, idx)
            out[key] = out.get(key, 0) + c * s
    return tuple((k, v) for k, v in out.items() if v)


def term_parity(key):
    m, g = key
    return (m[2] + m[3] + g[2] + g[3]) & 1


class SuperDiffOperator:
    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for (m, g), c in terms.items():
                c = as_scalar(c)
                if c:
                    _add_into(clean, (tuple(m), tuple(g)), c)
        self.terms = clean

    @classmethod
    def _raw(cls, terms):
        d = object.__new__(cls)
        d.terms = terms
        return d

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls):
        return cls._raw({})

    @classmethod
    def scalar(cls, c):
        c = as_scalar(c)
        return cls._raw({(ONE_MONO, NO_DERIV): c} if c else {})

    @classmethod
    def multiplication(cls, p):
        """Left multiplication by a SuperPolynomial (or a generator index 1..4)."""
        if isinstance(p, int):
            p = SuperPolynomial.var(p)
        return cls._raw({(m, NO_DERIV): c for m, c in p.terms.items()})

    @classmethod
    def partial(cls, i):
        return cls._raw({(ONE_MONO, GENERATORS[i - 1]): ONE})

    @classmethod
    def euler(cls):
        """Degree operator z1 d1 + z2 d2 + z3 d3 + z4 d4."""
        return cls._raw({(g, g): ONE for g in GENERATORS})

    # -- linear structure -------------------------------------------------

    def __add__(self, other):
        other = _as_op(other)
        if other is NotImplemented:
            return NotImplemented
        acc = dict(self.terms)
        for k, c in other.terms.items():
            _add_into(acc, k, c)
        return SuperDiffOperator._raw(acc)

    __radd__ = __add__

    def __neg__(self):
        return SuperDiffOperator._raw({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        other = _as_op(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, s):
        s = as_scalar(s)
        if not s:
            return SuperDiffOperator._raw({})
        return SuperDiffOperator._raw({k: c * s for k, c in self.terms.items()})

    def __mul__(self, other):
        """Composition for operators, scaling for scalars."""
        if isinstance(other, SuperDiffOperator):
            return self.compose(other)
        if isinstance(other, SuperPolynomial):
            return self.compose(SuperDiffOperator.multiplication(other))
        s = as_scalar(other)
        if s is NotImplemented:
            return NotImplemented
        return self.scale(s)

    def __rmul__(self, other):
        if isinstance(other, SuperPolynomial):
            return SuperDiffOperator.multiplication(other).compose(self)
        s = as_scalar(other)
        if s is NotImplemented:
            return NotImplemented
        return self.scale(s)

    def __pow__(self, n):
        out = SuperDiffOperator.scalar(ONE)
        for _ in range(n):
            out = out.compose(self)
        return out

    def compose(self, other):
        acc = {}
        for (m, g), c in self.terms.items():
            for (n, h), d in other.terms.items():
                if g == NO_DERIV:
                    s, prod = mono_mul(m, n)
                    if s:
                        cd = c * d
                        _add_into(acc, (prod, h), cd if s > 0 else -cd)
                    continue
                parts = _compose_terms(m, g, n, h)
                if parts:
                    cd = c * d
                    for key, k in parts:
                        _add_into(acc, key, cd * k)
        return SuperDiffOperator._raw(acc)

    def map_coefficients(self, fn):
        return SuperDiffOperator({k: fn(c) for k, c in self.terms.items()})

    def conjugate(self):
        return SuperDiffOperator._raw({k: c.conjugate() for k, c in self.terms.items()})

    # -- grading ----------------------------------------------------------

    def parity_parts(self):
        even, odd = {}, {}
        for k, c in self.terms.items():
            (odd if term_parity(k) else even)[k] = c
        return SuperDiffOperator._raw(even), SuperDiffOperator._raw(odd)

    def parity(self):
        ps = {term_parity(k) for k in self.terms}
        return ps.pop() if len(ps) == 1 else None

    # -- action -----------------------------------------------------------

    def apply(self, p):
        if isinstance(p, ExpPolynomial):
            return self.apply_exp(p)
        acc = {}
        for (m, g), c in self.terms.items():
            for n, d in p.terms.items():
                f, dn = _derive_mono(g, n)
                if not f:
                    continue
                s, prod = mono_mul(m, dn)
                if s:
                    _add_into(acc, prod, c * d * (f * s))
        return SuperPolynomial._raw(acc)

    def __call__(self, p):
        return self.apply(p)

    def apply_exp(self, f):
        out = ExpPolynomial()
        for key, p in f.summands.items():
            acc = SuperPolynomial()
            for (m, g), c in self.terms.items():
                q = p
                for i in _partial_sequence(g):
                    q2 = q.partial(i)
                    if i <= 2 and key[i - 1]:
                        q2 = q2 + q.scale(Scalar(key[i - 1]))
                    q = q2
                    if not q:
                        break
                if q:
                    acc = acc + SuperPolynomial._raw({m: c}) * q
            out = out + ExpPolynomial({key: acc})
        return out

    # -- comparison and output ----------------------------------------------

    def __eq__(self, other):
        other = _as_op(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def order(self):
        return max((sum(g) for _, g in self.terms), default=0)

    def to_str(self):
        if not self.terms:
            return "0"
        zn = ("z1", "z2", "z3", "z4")
        dn = ("∂1", "∂2", "∂3", "∂4")
        out = []
        for (m, g) in sorted(self.terms, key=lambda k: (-sum(k[1]), k)):
            c = self.terms[(m, g)]
            factors = []
            for names, exps in ((zn, m), (dn, g)):
                for name, e in zip(names, exps):
                    if e == 1:
                        factors.append(name)
                    elif e > 1:
                        factors.append(f"{name}^{e}")
            body = "·".join(factors)
            cs = c.to_str()
            if not body:
                term = cs
            elif cs == "1":
                term = body
            elif cs == "-1":
                term = "-" + body
            else:
                simple = all(ch not in cs[1:] for ch in "+-/") and "(" not in cs
                term = f"{cs}·{body}" if simple else f"({cs})·{body}"
            out.append(term)
        s = out[0]
        for t in out[1:]:
            s += " - " + t[1:] if t.startswith("-") else " + " + t
        return s

    __str__ = to_str

    def __repr__(self):
        return f"SuperDiffOperator({self.to_str()})"

    def to_json(self):
        return [{"monomial": list(m), "multiindex": list(g), "coeff": c.to_str()}
                for (m, g), c in sorted(self.terms.items())]

    @classmethod
    def from_json(cls, data):
        return cls({(tuple(t["monomial"]), tuple(t["multiindex"])): Scalar.parse(t["coeff"])
                    for t in data})


def _as_op(x):
    if isinstance(x, SuperDiffOperator):
        return x
    if isinstance(x, SuperPolynomial):
        return SuperDiffOperator.multiplication(x)
    s = as_scalar(x)
    if s is NotImplemented:
        return NotImplemented
    return SuperDiffOperator.scalar(s)


def supercommutator(d, e):
    """[D, E] = DE - (-1)^{|D||E|} ED, computed on homogeneous parts."""
    d0, d1 = d.parity_parts()
    e0, e1 = e.parity_parts()
    out = SuperDiffOperator.zero()
    for dp, pd in ((d0, 0), (d1, 1)):
        if not dp:
            continue
        for ep, pe in ((e0, 0), (e1, 1)):
            if not ep:
                continue
            if pd and pe:
                out = out + dp.compose(ep) + ep.compose(dp)
            else:
                out = out + dp.compose(ep) - ep.compose(dp)
    return out


def mult(p):
    return SuperDiffOperator.multiplication(p)


def partial(i):
    return SuperDiffOperator.partial(i)


Z = tuple(SuperDiffOperator.multiplication(i) for i in range(1, 5))
D = tuple(SuperDiffOperator.partial(i) for i in range(1, 5))
