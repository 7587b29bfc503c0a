"""Exact arithmetic over Q and over the rational function field Q(k).

Every coefficient in the engine lives in Q(k), the field of rational
functions in the level parameter k.  Polynomials are dense tuples of
rationals in ascending degree with no trailing zeros; a rational function
keeps its denominator monic and the fraction reduced, so structural
equality is representation independent.

The engine also runs in a numeric mode where k is specialised to a fixed
rational: :class:`Level` then hands out plain rationals instead of
:class:`RatFunc` values and the rest of the code is agnostic about which
of the two it is adding and multiplying.  The one rule is to never mix
symbolic and numeric scalars inside a single run; ints are fine with both.
"""

from __future__ import annotations

try:
    from gmpy2 import mpq as Rational
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    from fractions import Fraction as Rational

_Q0 = Rational(0)
_Q1 = Rational(1)


class PoleError(ZeroDivisionError):
    """Raised when a rational function is evaluated at a pole."""


def gen_binomial(a, r):
    """Generalised binomial C(a, r) = a(a-1)...(a-r+1)/r! for integer a, r >= 0."""
    if r < 0:
        raise ValueError("binomial lower index must be nonnegative")
    num = 1
    den = 1
    for t in range(r):
        num *= a - t
        den *= t + 1
    return Rational(num, den)


# -- dense univariate polynomials over Q, ascending coefficient tuples -------

def _ptrim(cs):
    n = len(cs)
    while n and not cs[n - 1]:
        n -= 1
    return tuple(cs[:n])


def _padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return _ptrim(out)


def _pneg(a):
    return tuple(-c for c in a)


def _pmul(a, b):
    if not a or not b:
        return ()
    out = [_Q0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if not ca:
            continue
        for j, cb in enumerate(b):
            if cb:
                out[i + j] += ca * cb
    return _ptrim(out)


def _pscale(a, q):
    if not q:
        return ()
    return tuple(c * q for c in a)


def _pdivmod(a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    deg_b = len(b) - 1
    lead = b[-1]
    quot = [_Q0] * max(0, len(a) - deg_b)
    for i in range(len(a) - 1, deg_b - 1, -1):
        c = rem[i]
        if not c:
            continue
        q = c / lead
        quot[i - deg_b] = q
        for j in range(deg_b + 1):
            rem[i - deg_b + j] -= q * b[j]
    return _ptrim(quot), _ptrim(rem)


def _pgcd(a, b):
    # monic gcd by plain Euclid; degrees in this engine stay tiny
    while b:
        a, b = b, _pdivmod(a, b)[1]
    if a:
        a = _pscale(a, _Q1 / a[-1])
    return a


def _peval(a, x):
    out = _Q0
    for c in reversed(a):
        out = out * x + c
    return out


def _pformat(a):
    if not a:
        return "0"
    parts = []
    for d in range(len(a) - 1, -1, -1):
        c = a[d]
        if not c:
            continue
        if d == 0:
            term = str(c)
        else:
            kpow = "k" if d == 1 else f"k^{d}"
            if c == 1:
                term = kpow
            elif c == -1:
                term = f"-{kpow}"
            else:
                term = f"{c}*{kpow}"
        parts.append(term)
    s = parts[0]
    for term in parts[1:]:
        s += term if term.startswith("-") else "+" + term
    return s


class RatFunc:
    """An element of Q(k): a reduced fraction of polynomials, monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=(_Q1,), _normalized=False):
        if _normalized:
            self.num = num
            self.den = den
            return
        num = _ptrim(tuple(Rational(c) if not isinstance(c, type(_Q0)) else c
                           for c in num))
        den = _ptrim(tuple(Rational(c) if not isinstance(c, type(_Q0)) else c
                           for c in den))
        if not den:
            raise ZeroDivisionError("division by zero in Q(k)")
        if not num:
            self.num = ()
            self.den = (_Q1,)
            return
        g = _pgcd(num, den)
        if len(g) > 1:
            num = _pdivmod(num, g)[0]
            den = _pdivmod(den, g)[0]
        lead = den[-1]
        if lead != 1:
            inv = _Q1 / lead
            num = _pscale(num, inv)
            den = _pscale(den, inv)
        self.num = num
        self.den = den

    @classmethod
    def const(cls, q):
        q = Rational(q)
        if not q:
            return _RF_ZERO
        return cls((q,), (_Q1,), _normalized=True)

    # -- field operations ----------------------------------------------

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (int, type(_Q0))):
            return RatFunc.const(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        num = _padd(_pmul(self.num, o.den), _pmul(o.num, self.den))
        return RatFunc(num, _pmul(self.den, o.den))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __neg__(self):
        return RatFunc(_pneg(self.num), self.den, _normalized=True)

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 1:
                return self
            return RatFunc(_pscale(self.num, Rational(other)), self.den)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RatFunc(_pmul(self.num, o.num), _pmul(self.den, o.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o:
            raise ZeroDivisionError("division by zero in Q(k)")
        return RatFunc(_pmul(self.num, o.den), _pmul(self.den, o.num))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, n):
        if n < 0:
            return (RatFunc.const(1) / self) ** (-n)
        out = RatFunc.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def inv(self):
        if not self:
            raise ZeroDivisionError("division by zero in Q(k)")
        return RatFunc(self.den, self.num)

    # -- structure -------------------------------------------------------

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        if self.den == (_Q1,):
            if not self.num:
                return hash(_Q0)
            if len(self.num) == 1:
                return hash(self.num[0])
        return hash((self.num, self.den))

    def specialize(self, k0):
        """Evaluate at k = k0; raises PoleError when the denominator vanishes."""
        k0 = Rational(k0)
        d = _peval(self.den, k0)
        if not d:
            raise PoleError(
                f"pole at k = {k0}: denominator {_pformat(self.den)} vanishes")
        return _peval(self.num, k0) / d

    def __repr__(self):
        if self.den == (_Q1,):
            return _pformat(self.num)
        return f"({_pformat(self.num)})/({_pformat(self.den)})"


_RF_ZERO = RatFunc((), (_Q1,), _normalized=True)

#: the indeterminate k as an element of Q(k)
K = RatFunc((_Q0, _Q1), (_Q1,), _normalized=True)

#: spec-facing alias: engine scalars are elements of Q(k)
Scalar = RatFunc


def scalar_arith(op, a, b=None):
    """Field operations on scalars by name: add, mul, neg, inv."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    if op == "inv":
        if not a:
            raise ZeroDivisionError("division by zero in Q(k)")
        return a.inv() if isinstance(a, RatFunc) else _Q1 / a
    raise ValueError(f"unknown scalar op {op!r}")


def specialize(a, k0):
    """Evaluation homomorphism Q(k) -> Q at k = k0."""
    if isinstance(a, RatFunc):
        return a.specialize(k0)
    return Rational(a)


class Level:
    """Scalar factory fixing (m, n) and the treatment of the level k.

    Symbolic (k0 None): values are RatFunc over Q(k).
    Numeric: k is pinned to the rational k0 and values are plain rationals.
    """

    __slots__ = ("m", "n", "k0", "k", "one", "zero", "alpha1", "alpha2",
                 "symbolic")

    def __init__(self, m, n, k0=None):
        self.m = m
        self.n = n
        self.k0 = None if k0 is None else Rational(k0)
        if k0 is None:
            self.symbolic = True
            self.k = K
            self.one = RatFunc.const(1)
            self.zero = _RF_ZERO
        else:
            self.symbolic = False
            self.k = Rational(k0)
            self.one = _Q1
            self.zero = _Q0
        self.alpha1 = self.k + n
        self.alpha2 = self.k + m

    def of(self, q):
        """Embed a rational (or int) as a scalar of this level."""
        if self.symbolic:
            return RatFunc.const(q)
        return Rational(q)

    def __repr__(self):
        tag = "k symbolic" if self.symbolic else f"k={self.k0}"
        return f"Level(m={self.m}, n={self.n}, {tag})"
