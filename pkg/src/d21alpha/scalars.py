"""Exact scalars: rational functions in one real parameter ``a`` over Q(i).

A :class:`Scalar` is stored as a pair ``re + i*im`` with ``re`` and ``im``
reduced rational functions in ``Q(a)``.  Because ``a`` is a real formal
parameter, ``Q(i)(a) = Q(a)[i]`` and this pair is a unique canonical form, so
equality is structural.  The textbook presentation (numerator and monic
denominator in ``Q(i)[a]`` with trivial gcd) is available through
:attr:`Scalar.numerator` / :attr:`Scalar.denominator` and is what the string
serialization emits.

Polynomials in ``a`` are tuples of ``gmpy2.mpq`` coefficients, lowest degree
first, with no trailing zeros (the zero polynomial is the empty tuple).
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from gmpy2 import mpq

__all__ = [
    "GaussianRational",
    "PoleError",
    "Scalar",
    "ScalarParseError",
    "ZERO",
    "ONE",
    "I",
    "A",
    "as_scalar",
    "pochhammer",
]

_ZERO_Q = mpq(0)
_ONE_Q = mpq(1)
_P1 = (_ONE_Q,)
_P0 = ()


class PoleError(ArithmeticError):
    """Raised when a scalar is evaluated at a root of its denominator."""

    def __init__(self, value, at):
        super().__init__(f"{value} has a pole at a = {at}")
        self.value = value
        self.at = at


class ScalarParseError(ValueError):
    pass


# ---------------------------------------------------------------------------
# dense polynomials over Q


def _trim(c):
    n = len(c)
    while n and not c[n - 1]:
        n -= 1
    return tuple(c[:n])


def _padd(p, q):
    if not p:
        return q
    if not q:
        return p
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for k, v in enumerate(q):
        out[k] += v
    return _trim(out)


def _pneg(p):
    return tuple(-v for v in p)


def _psub(p, q):
    return _padd(p, _pneg(q))


def _pscale(p, s):
    if not s:
        return _P0
    return tuple(v * s for v in p)


def _pmul(p, q):
    if not p or not q:
        return _P0
    if len(p) == 1:
        return _pscale(q, p[0])
    if len(q) == 1:
        return _pscale(p, q[0])
    out = [_ZERO_Q] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        if x:
            for j, y in enumerate(q):
                out[i + j] += x * y
    return _trim(out)


def _pdivmod(p, q):
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(p)
    dq = len(q) - 1
    lc = q[-1]
    if len(r) - 1 < dq:
        return _P0, tuple(p)
    quo = [_ZERO_Q] * (len(r) - dq)
    for k in range(len(r) - 1, dq - 1, -1):
        c = r[k]
        if not c:
            continue
        c = c / lc
        quo[k - dq] = c
        for j in range(dq + 1):
            r[k - dq + j] -= c * q[j]
    return _trim(quo), _trim(r[:dq])


def _pmonic(p):
    lc = p[-1]
    if lc == 1:
        return p
    return tuple(v / lc for v in p)


def _valuation(p):
    for k, v in enumerate(p):
        if v:
            return k
    return len(p)


def _is_monomial(p):
    return all(not v for v in p[:-1])


def _pgcd(p, q):
    """Monic gcd of two polynomials (gcd(0, 0) = 0)."""
    if not p:
        return _pmonic(q) if q else _P0
    if not q:
        return _pmonic(p)
    if len(p) == 1 or len(q) == 1:
        return _P1
    if _is_monomial(q):
        k = min(len(q) - 1, _valuation(p))
        return (_ZERO_Q,) * k + (_ONE_Q,)
    if _is_monomial(p):
        k = min(len(p) - 1, _valuation(q))
        return (_ZERO_Q,) * k + (_ONE_Q,)
    while q:
        p, q = q, _pdivmod(p, q)[1]
    return _pmonic(p)


def _peval(p, x):
    acc = _ZERO_Q
    for v in reversed(p):
        acc = acc * x + v
    return acc


def _pconst(c):
    c = mpq(c)
    return (c,) if c else _P0


# ---------------------------------------------------------------------------
# rational functions over Q as (num, den) with den monic and coprime to num


def _freduce(n, d):
    if not n:
        return _P0, _P1
    if d == _P1:
        return n, d
    g = _pgcd(n, d)
    if len(g) > 1:
        n = _pdivmod(n, g)[0]
        d = _pdivmod(d, g)[0]
    lc = d[-1]
    if lc != 1:
        n = _pscale(n, 1 / lc)
        d = _pscale(d, 1 / lc)
    return n, d


def _fadd(n1, d1, n2, d2):
    if not n1:
        return n2, d2
    if not n2:
        return n1, d1
    if d1 == d2:
        if d1 == _P1:
            return _padd(n1, n2), _P1
        return _freduce(_padd(n1, n2), d1)
    if d2 == _P1:
        return _padd(n1, _pmul(n2, d1)), d1
    if d1 == _P1:
        return _padd(_pmul(n1, d2), n2), d2
    return _freduce(_padd(_pmul(n1, d2), _pmul(n2, d1)), _pmul(d1, d2))


def _fmul(n1, d1, n2, d2):
    if not n1 or not n2:
        return _P0, _P1
    if d1 == _P1 and d2 == _P1:
        return _pmul(n1, n2), _P1
    return _freduce(_pmul(n1, n2), _pmul(d1, d2))


def _finv(n, d):
    if not n:
        raise ZeroDivisionError("division by the zero scalar")
    return _freduce(d, n)


# ---------------------------------------------------------------------------


class GaussianRational:
    """Exact complex number ``re + im*i`` with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Rational)):
            return self.im == 0 and self.re == other
        if isinstance(other, Scalar):
            return other == Scalar(self)
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __add__(self, other):
        o = _gauss(other)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-_gauss(other))

    def __rsub__(self, other):
        return _gauss(other) - self

    def __mul__(self, other):
        o = _gauss(other)
        return GaussianRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _gauss(other)
        n = o.re * o.re + o.im * o.im
        if n == 0:
            raise ZeroDivisionError("division by zero")
        return self * GaussianRational(o.re / n, -o.im / n)

    def __rtruediv__(self, other):
        return _gauss(other) / self

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __str__(self):
        return _gauss_str(self.re, self.im)

    def __repr__(self):
        return f"GaussianRational({self})"


def _gauss(x):
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Rational)):
        return GaussianRational(x)
    if isinstance(x, type(_ONE_Q)):
        return GaussianRational(Fraction(int(x.numerator), int(x.denominator)))
    raise TypeError(f"cannot interpret {x!r} as a Gaussian rational")


def _q_str(q):
    q = Fraction(int(q.numerator), int(q.denominator)) if not isinstance(q, Fraction) else q
    return str(q)


def _gauss_str(re, im):
    if not im:
        return _q_str(re)
    if im == 1:
        istr = "i"
    elif im == -1:
        istr = "-i"
    else:
        istr = f"{_q_str(im)}*i"
    if not re:
        return istr
    sign = "" if istr.startswith("-") else "+"
    return f"{_q_str(re)}{sign}{istr}"


class Scalar:
    """Element of Q(i)(a).  Immutable; hashable; equality is canonical."""

    __slots__ = ("_rn", "_rd", "_in", "_id", "_hash")

    def __init__(self, value=0):
        if isinstance(value, Scalar):
            self._rn, self._rd, self._in, self._id = value._rn, value._rd, value._in, value._id
        elif isinstance(value, GaussianRational):
            self._rn, self._rd = _pconst(value.re), _P1
            self._in, self._id = _pconst(value.im), _P1
        elif isinstance(value, (int, Rational)) or isinstance(value, type(_ONE_Q)):
            self._rn, self._rd = _pconst(value), _P1
            self._in, self._id = _P0, _P1
        elif isinstance(value, str):
            s = Scalar.parse(value)
            self._rn, self._rd, self._in, self._id = s._rn, s._rd, s._in, s._id
        else:
            raise TypeError(f"cannot build a Scalar from {value!r}")
        self._hash = None

    @classmethod
    def _make(cls, rn, rd, in_, id_):
        s = object.__new__(cls)
        s._rn, s._rd, s._in, s._id = rn, rd, in_, id_
        s._hash = None
        return s

    @classmethod
    def from_parts(cls, re_num, re_den=(1,), im_num=(), im_den=(1,)):
        """Build from coefficient lists (lowest degree first) of re and im parts."""
        rn, rd = _freduce(_trim([mpq(v) for v in re_num]), _trim([mpq(v) for v in re_den]))
        in_, id_ = _freduce(_trim([mpq(v) for v in im_num]), _trim([mpq(v) for v in im_den]))
        if not rd or not id_:
            raise ZeroDivisionError("zero denominator")
        return cls._make(rn, rd, in_, id_)

    @classmethod
    def param(cls):
        return cls._make((_ZERO_Q, _ONE_Q), _P1, _P0, _P1)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        o = as_scalar(other)
        if o is NotImplemented:
            return NotImplemented
        rn, rd = _fadd(self._rn, self._rd, o._rn, o._rd)
        in_, id_ = _fadd(self._in, self._id, o._in, o._id)
        return Scalar._make(rn, rd, in_, id_)

    __radd__ = __add__

    def __neg__(self):
        return Scalar._make(_pneg(self._rn), self._rd, _pneg(self._in), self._id)

    def __sub__(self, other):
        o = as_scalar(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = as_scalar(other)
        if o is NotImplemented:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 1:
                return self
            c = mpq(other)
            return Scalar._make(_pscale(self._rn, c), self._rd if other else _P1,
                                _pscale(self._in, c), self._id if other else _P1)
        o = as_scalar(other)
        if o is NotImplemented:
            return NotImplemented
        a, c = self, o
        # (x + iy)(u + iv) = (xu - yv) + i(xv + yu)
        xr = _fmul(a._rn, a._rd, c._rn, c._rd)
        if a._in and c._in:
            yv = _fmul(a._in, a._id, c._in, c._id)
            rn, rd = _fadd(xr[0], xr[1], _pneg(yv[0]), yv[1])
        else:
            rn, rd = xr
        xv = _fmul(a._rn, a._rd, c._in, c._id)
        yu = _fmul(a._in, a._id, c._rn, c._rd)
        in_, id_ = _fadd(xv[0], xv[1], yu[0], yu[1])
        return Scalar._make(rn, rd, in_, id_)

    __rmul__ = __mul__

    def inverse(self):
        if not self._in:
            rn, rd = _finv(self._rn, self._rd)
            return Scalar._make(rn, rd, _P0, _P1)
        if not self._rn:
            n, d = _finv(self._in, self._id)
            return Scalar._make(_P0, _P1, _pneg(n), d)
        # 1/(x+iy) = (x - iy)/(x^2 + y^2)
        xx = _fmul(self._rn, self._rd, self._rn, self._rd)
        yy = _fmul(self._in, self._id, self._in, self._id)
        nn, nd = _fadd(xx[0], xx[1], yy[0], yy[1])
        inv = _finv(nn, nd)
        rn, rd = _fmul(self._rn, self._rd, inv[0], inv[1])
        in_, id_ = _fmul(_pneg(self._in), self._id, inv[0], inv[1])
        return Scalar._make(rn, rd, in_, id_)

    def __truediv__(self, other):
        o = as_scalar(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = as_scalar(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        out, base = ONE, self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    # -- comparison ---------------------------------------------------------

    def __eq__(self, other):
        o = as_scalar(other)
        if o is NotImplemented:
            return NotImplemented
        return (self._rn == o._rn and self._rd == o._rd
                and self._in == o._in and self._id == o._id)

    def __hash__(self):
        if self._hash is None:
            if not self._in and self._rd == _P1 and len(self._rn) <= 1:
                self._hash = hash(self._rn[0] if self._rn else 0)
            else:
                self._hash = hash((self._rn, self._rd, self._in, self._id))
        return self._hash

    def __bool__(self):
        return bool(self._rn) or bool(self._in)

    # -- structure ----------------------------------------------------------

    def conjugate(self):
        """Complex conjugation of the coefficients; ``a`` is fixed."""
        if not self._in:
            return self
        return Scalar._make(self._rn, self._rd, _pneg(self._in), self._id)

    def real_part(self):
        return Scalar._make(self._rn, self._rd, _P0, _P1)

    def imag_part(self):
        return Scalar._make(self._in, self._id, _P0, _P1)

    def is_constant(self):
        return (len(self._rn) <= 1 and self._rd == _P1
                and len(self._in) <= 1 and self._id == _P1)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError(f"{self} depends on the parameter a")
        re = self._rn[0] if self._rn else _ZERO_Q
        im = self._in[0] if self._in else _ZERO_Q
        return GaussianRational(_to_fraction(re), _to_fraction(im))

    def is_real(self):
        return not self._in

    def eval_at(self, alpha):
        """Substitute ``a := alpha`` (a rational) and return a GaussianRational."""
        x = mpq(Fraction(alpha).numerator, Fraction(alpha).denominator)
        parts = []
        for n, d in ((self._rn, self._rd), (self._in, self._id)):
            dv = _peval(d, x)
            if not dv:
                raise PoleError(self, Fraction(alpha))
            parts.append(_to_fraction(_peval(n, x) / dv))
        return GaussianRational(*parts)

    def substitute(self, alpha):
        """Like :meth:`eval_at` but returns a constant Scalar."""
        return Scalar(self.eval_at(alpha))

    def degree_bound(self):
        return max(len(self._rn), len(self._rd), len(self._in), len(self._id)) - 1

    @property
    def numerator(self):
        return _gauss_canonical(self)[0]

    @property
    def denominator(self):
        return _gauss_canonical(self)[1]

    # -- text ---------------------------------------------------------------

    def to_str(self):
        num, den = _gauss_canonical(self)
        ns = _gpoly_str(num)
        if len(den) == 1:
            return ns
        return f"({ns})/({_gpoly_str(den)})"

    __str__ = to_str

    def __repr__(self):
        return f"Scalar('{self.to_str()}')"

    @classmethod
    def parse(cls, text):
        return _Parser(text).parse()


def _to_fraction(q):
    return Fraction(int(q.numerator), int(q.denominator))


def as_scalar(x):
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Rational, GaussianRational)) or isinstance(x, type(_ONE_Q)):
        return Scalar(x)
    return NotImplemented


ZERO = Scalar(0)
ONE = Scalar(1)
I = Scalar._make(_P0, _P1, _P1, _P1)
A = Scalar.param()


def pochhammer(x, k):
    """Rising factorial (x)_k = x (x+1) ... (x+k-1)."""
    x = as_scalar(x)
    out = ONE
    for j in range(k):
        out = out * (x + j)
    return out


# ---------------------------------------------------------------------------
# Gaussian-coefficient polynomials, used for the Q(i)[a] canonical form only.
# Coefficients are (re, im) pairs of mpq.


def _gtrim(c):
    n = len(c)
    while n and not (c[n - 1][0] or c[n - 1][1]):
        n -= 1
    return tuple(c[:n])


def _gmulc(x, y):
    return (x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0])


def _ginvc(x):
    n = x[0] * x[0] + x[1] * x[1]
    return (x[0] / n, -x[1] / n)


def _gdivmod(p, q):
    r = list(p)
    dq = len(q) - 1
    inv = _ginvc(q[-1])
    if len(r) - 1 < dq:
        return (), tuple(p)
    quo = [(_ZERO_Q, _ZERO_Q)] * (len(r) - dq)
    for k in range(len(r) - 1, dq - 1, -1):
        c = r[k]
        if not (c[0] or c[1]):
            continue
        c = _gmulc(c, inv)
        quo[k - dq] = c
        for j in range(dq + 1):
            t = _gmulc(c, q[j])
            r[k - dq + j] = (r[k - dq + j][0] - t[0], r[k - dq + j][1] - t[1])
    return _gtrim(quo), _gtrim(r[:dq])


def _gmonic(p):
    inv = _ginvc(p[-1])
    return tuple(_gmulc(c, inv) for c in p)


def _ggcd(p, q):
    while q:
        p, q = q, _gdivmod(p, q)[1]
    return _gmonic(p)


def _gauss_canonical(s):
    """Return (num, den) over Q(i)[a]: den monic, gcd(num, den) = 1."""
    if not s:
        return ((), ((_ONE_Q, _ZERO_Q),))
    den = _pmonic(_pmul(s._rd, _pdivmod(s._id, _pgcd(s._rd, s._id))[0]))
    rfac = _pdivmod(den, s._rd)[0]
    ifac = _pdivmod(den, s._id)[0]
    re = _pmul(s._rn, rfac)
    im = _pmul(s._in, ifac)
    n = max(len(re), len(im))
    num = _gtrim([(re[k] if k < len(re) else _ZERO_Q, im[k] if k < len(im) else _ZERO_Q)
                  for k in range(n)])
    gden = tuple((c, _ZERO_Q) for c in den)
    g = _ggcd(num, gden)
    if len(g) > 1:
        num = _gdivmod(num, g)[0]
        gden = _gdivmod(gden, g)[0]
        inv = _ginvc(gden[-1])
        num = tuple(_gmulc(c, inv) for c in num)
        gden = tuple(_gmulc(c, inv) for c in gden)
    return num, gden


def _gpoly_str(p):
    if not p:
        return "0"
    parts = []
    for k in range(len(p) - 1, -1, -1):
        re, im = p[k]
        if not (re or im):
            continue
        cs = _gauss_str(re, im)
        if k == 0:
            term = cs
        else:
            mono = "a" if k == 1 else f"a^{k}"
            if cs == "1":
                term = mono
            elif cs == "-1":
                term = "-" + mono
            elif re and im:
                term = f"({cs})*{mono}"
            else:
                term = f"{cs}*{mono}"
        parts.append(term)
    out = parts[0]
    for t in parts[1:]:
        out += t if t.startswith("-") else "+" + t
    return out


# ---------------------------------------------------------------------------


class _Parser:
    """Recursive-descent parser for + - * / ^, parentheses, integers, a, i."""

    def __init__(self, text):
        self.text = text
        self.toks = self._lex(text)
        self.pos = 0

    def _lex(self, text):
        toks = []
        k = 0
        while k < len(text):
            ch = text[k]
            if ch.isspace():
                k += 1
            elif ch.isdigit():
                j = k
                while j < len(text) and text[j].isdigit():
                    j += 1
                toks.append(("num", int(text[k:j])))
                k = j
            elif ch in "+-*/^()":
                toks.append((ch, ch))
                k += 1
            elif ch in "ai":
                toks.append(("sym", ch))
                k += 1
            else:
                raise ScalarParseError(f"unexpected character {ch!r} in {text!r}")
        return toks

    def peek(self):
        return self.toks[self.pos][0] if self.pos < len(self.toks) else None

    def take(self, kind=None):
        if self.pos >= len(self.toks):
            raise ScalarParseError(f"unexpected end of input in {self.text!r}")
        tok = self.toks[self.pos]
        if kind is not None and tok[0] != kind:
            raise ScalarParseError(f"expected {kind!r}, got {tok[1]!r} in {self.text!r}")
        self.pos += 1
        return tok

    def parse(self):
        if not self.toks:
            raise ScalarParseError("empty scalar string")
        v = self.expr()
        if self.pos != len(self.toks):
            raise ScalarParseError(f"trailing input in {self.text!r}")
        return v

    def expr(self):
        if self.peek() in ("+", "-"):
            sign = self.take()[0]
            v = self.term()
            v = -v if sign == "-" else v
        else:
            v = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            v = v + rhs if op == "+" else v - rhs
        return v

    def term(self):
        v = self.factor()
        while self.peek() in ("*", "/"):
            op = self.take()[0]
            rhs = self.factor()
            v = v * rhs if op == "*" else v / rhs
        return v

    def factor(self):
        base = self.atom()
        if self.peek() == "^":
            self.take()
            neg = False
            if self.peek() == "-":
                self.take()
                neg = True
            n = self.take("num")[1]
            return base ** (-n if neg else n)
        return base

    def atom(self):
        kind = self.peek()
        if kind == "num":
            return Scalar(self.take()[1])
        if kind == "sym":
            return A if self.take()[1] == "a" else I
        if kind == "(":
            self.take()
            v = self.expr()
            self.take(")")
            return v
        if kind == "-":
            self.take()
            return -self.atom()
        raise ScalarParseError(f"unexpected token in {self.text!r}")
