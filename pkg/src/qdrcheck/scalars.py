"""Exact coefficient arithmetic: integer Laurent polynomials in q, their
fraction field, and small cyclotomic extensions.

Everything here is immutable and hashable; all operations are exact.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd


class DomainError(ValueError):
    """Raised when an operation is called outside its mathematical domain."""


def _int_gcd(values):
    g = 0
    for v in values:
        g = gcd(g, v)
    return g


def _poly_trim(coeffs):
    lo = 0
    hi = len(coeffs)
    while hi > lo and coeffs[hi - 1] == 0:
        hi -= 1
    while lo < hi and coeffs[lo] == 0:
        lo += 1
    return lo, tuple(coeffs[lo:hi])


def _poly_mul(a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] += x * y
    return tuple(out)


def _poly_pseudo_rem(a, b):
    # pseudo-remainder of a by b (lists low->high, b nonzero)
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    while len(a) - 1 >= db and any(a):
        while a and a[-1] == 0:
            a.pop()
        if len(a) - 1 < db:
            break
        da, la = len(a) - 1, a[-1]
        a = [lb * c for c in a]
        shift = da - db
        for j, c in enumerate(b):
            a[shift + j] -= la * c
        while a and a[-1] == 0:
            a.pop()
    return tuple(a)


def _poly_primitive(a):
    g = _int_gcd(a)
    if g == 0:
        return ()
    if a[-1] < 0:
        g = -g
    return tuple(c // g for c in a)


def _poly_gcd(a, b):
    # primitive PRS gcd of two integer polynomials (lists low->high)
    a = _poly_primitive(a)
    b = _poly_primitive(b)
    while b:
        a, b = b, _poly_primitive(_poly_pseudo_rem(a, b))
    return a


def _poly_div_exact(a, b):
    """Exact quotient a/b over Q, raising DomainError on a remainder or a
    non-integer coefficient."""
    if not b:
        raise DomainError("division by zero polynomial")
    if not a:
        return ()
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    rem = [Fraction(c) for c in a]
    lb = Fraction(b[-1])
    for k in range(len(a) - len(b), -1, -1):
        c = rem[k + len(b) - 1] / lb
        q[k] = c
        if c:
            for j, bj in enumerate(b):
                rem[k + j] -= c * bj
    if any(rem):
        raise DomainError("inexact polynomial division")
    out = []
    for c in q:
        if c.denominator != 1:
            raise DomainError("inexact polynomial division")
        out.append(c.numerator)
    return tuple(out)


class IntLaurent:
    """A Laurent polynomial in q with integer coefficients.

    Stored as (val, coeffs) with coeffs[0] != 0 and coeffs[-1] != 0; the
    zero polynomial has empty coeffs.
    """

    __slots__ = ("val", "coeffs", "_hash")

    def __init__(self, val=0, coeffs=()):
        lo, coeffs = _poly_trim(coeffs)
        self.val = val + lo if coeffs else 0
        self.coeffs = coeffs
        self._hash = None

    @staticmethod
    def zero():
        return _IL_ZERO

    @staticmethod
    def one():
        return _IL_ONE

    @staticmethod
    def from_int(n):
        return IntLaurent(0, (n,))

    @staticmethod
    def monomial(c, e):
        return IntLaurent(e, (c,))

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, IntLaurent):
            return NotImplemented
        return self.val == other.val and self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.val, self.coeffs))
        return self._hash

    def __neg__(self):
        return IntLaurent(self.val, tuple(-c for c in self.coeffs))

    def __add__(self, other):
        if not self.coeffs:
            return other
        if not other.coeffs:
            return self
        lo = min(self.val, other.val)
        hi = max(self.val + len(self.coeffs), other.val + len(other.coeffs))
        out = [0] * (hi - lo)
        for i, c in enumerate(self.coeffs):
            out[self.val - lo + i] += c
        for i, c in enumerate(other.coeffs):
            out[other.val - lo + i] += c
        return IntLaurent(lo, out)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not self.coeffs or not other.coeffs:
            return _IL_ZERO
        return IntLaurent(self.val + other.val, _poly_mul(self.coeffs, other.coeffs))

    def __pow__(self, n):
        if n < 0:
            raise DomainError("negative power of an IntLaurent")
        out = _IL_ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def shift(self, k):
        if not self.coeffs:
            return self
        return IntLaurent(self.val + k, self.coeffs)

    def bar(self):
        """Substitute q -> q^-1."""
        if not self.coeffs:
            return self
        return IntLaurent(-(self.val + len(self.coeffs) - 1), self.coeffs[::-1])

    def subs_pow(self, d):
        """Substitute q -> q^d (d a nonzero integer)."""
        if d == 0:
            raise DomainError("q -> q^0 is not a ring map")
        if not self.coeffs:
            return self
        out = [0] * ((len(self.coeffs) - 1) * abs(d) + 1)
        for i, c in enumerate(self.coeffs):
            out[i * abs(d)] = c
        lo = self.val * d if d > 0 else (self.val + len(self.coeffs) - 1) * d
        if d < 0:
            out.reverse()
        return IntLaurent(lo, out)

    def content(self):
        return _int_gcd(self.coeffs)

    def degree_hi(self):
        if not self.coeffs:
            raise DomainError("degree of zero")
        return self.val + len(self.coeffs) - 1

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            e = self.val + i
            if e == 0:
                t = str(abs(c))
            else:
                qs = "q" if e == 1 else "q^%d" % e
                t = qs if abs(c) == 1 else "%d*%s" % (abs(c), qs)
            parts.append(("- " if c < 0 else "+ ") + t)
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    __repr__ = __str__


_IL_ZERO = IntLaurent(0, ())
_IL_ONE = IntLaurent(0, (1,))


class Scalar:
    """A reduced fraction of integer Laurent polynomials: the subfield of
    C(q) the engine computes in.

    Canonical form: den is an ordinary polynomial (valuation 0) with
    positive leading coefficient, gcd(num, den) = 1 including integer
    content.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=_IL_ONE, _reduced=False):
        if den.is_zero():
            raise DomainError("zero denominator")
        if not _reduced:
            num, den = _reduce(num, den)
        self.num = num
        self.den = den
        self._hash = None

    @staticmethod
    def from_int(n):
        if n == 0:
            return ZERO
        if n == 1:
            return ONE
        return Scalar(IntLaurent.from_int(n), _IL_ONE, _reduced=True)

    @staticmethod
    def from_fraction(p, r):
        """p/r with integer p, r."""
        return Scalar(IntLaurent.from_int(p), IntLaurent.from_int(r))

    @staticmethod
    def q_power(m):
        return Scalar(IntLaurent.monomial(1, m), _IL_ONE, _reduced=True)

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return bool(self.num)

    def is_laurent(self):
        return self.den == _IL_ONE

    def __eq__(self, other):
        if isinstance(other, int):
            other = Scalar.from_int(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __neg__(self):
        return Scalar(-self.num, self.den, _reduced=True)

    def __add__(self, other):
        if isinstance(other, int):
            other = Scalar.from_int(other)
        if self.den == other.den:
            return Scalar(self.num + other.num, self.den)
        return Scalar(self.num * other.den + other.num * self.den,
                      self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            other = Scalar.from_int(other)
        if self.num.is_zero() or other.num.is_zero():
            return ZERO
        return Scalar(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, int):
            other = Scalar.from_int(other)
        if other.num.is_zero():
            raise DomainError("division by zero")
        return Scalar(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        if isinstance(other, int):
            other = Scalar.from_int(other)
        return other / self

    def inv(self):
        return ONE / self

    def __pow__(self, n):
        if n < 0:
            return self.inv() ** (-n)
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def bar(self):
        """Substitute q -> q^-1 and re-reduce."""
        return Scalar(self.num.bar(), self.den.bar())

    def subs_pow(self, d):
        return Scalar(self.num.subs_pow(d), self.den.subs_pow(d))

    def __str__(self):
        if self.den == _IL_ONE:
            return str(self.num)
        return "(%s)/(%s)" % (self.num, self.den)

    __repr__ = __str__


def _reduce(num, den):
    if num.is_zero():
        return _IL_ZERO, _IL_ONE
    # pull the Laurent unit out of the denominator
    num = num.shift(-den.val)
    den = IntLaurent(0, den.coeffs)
    g = _poly_gcd(num.coeffs, den.coeffs)
    if len(g) > 1:
        nc = _poly_div_exact(num.coeffs, g)
        dc = _poly_div_exact(den.coeffs, g)
        num = IntLaurent(num.val, nc)
        den = IntLaurent(den.val, dc)
        num = num.shift(-den.val)
        den = IntLaurent(0, den.coeffs)
    cg = gcd(num.content(), den.content())
    if den.coeffs[-1] < 0:
        cg = -cg
    if cg != 1:
        num = IntLaurent(num.val, tuple(c // cg for c in num.coeffs))
        den = IntLaurent(den.val, tuple(c // cg for c in den.coeffs))
    return num, den


ZERO = Scalar(_IL_ZERO, _IL_ONE, _reduced=True)
ONE = Scalar(_IL_ONE, _IL_ONE, _reduced=True)
MINUS_ONE = Scalar(IntLaurent.from_int(-1), _IL_ONE, _reduced=True)
Q = Scalar.q_power(1)


@lru_cache(maxsize=None)
def qnum(m, d=1):
    """The q-integer [m] in the variable q^d."""
    if d <= 0:
        raise DomainError("d must be positive")
    if m == 0:
        return ZERO
    sign = 1 if m > 0 else -1
    m = abs(m)
    # [m]_{q^d} = q^{d(m-1)} + q^{d(m-3)} + ... + q^{-d(m-1)}
    out = [0] * (d * (2 * m - 2) + 1)
    for j in range(m):
        out[d * 2 * j] = sign
    return Scalar(IntLaurent(-d * (m - 1), out), _IL_ONE, _reduced=True)


@lru_cache(maxsize=None)
def qfact(m, d=1):
    if m < 0:
        raise DomainError("factorial of a negative integer")
    out = ONE
    for s in range(1, m + 1):
        out = out * qnum(s, d)
    return out


@lru_cache(maxsize=None)
def qbinom(m, r, d=1):
    """Gaussian binomial [m r] in the variable q^d; exact quotient."""
    if r < 0 or r > m:
        raise DomainError("qbinom needs 0 <= r <= m")
    num = qfact(m, d)
    den = qfact(r, d) * qfact(m - r, d)
    out = num / den
    if not out.is_laurent():
        raise DomainError("q-binomial failed to divide exactly")
    return out


class CycScalar:
    """a + b*w with w a primitive k-th root of unity, k in {1, 2, 3}.

    For k <= 2 the root is rational and b is folded into a.
    """

    __slots__ = ("k", "re", "im")

    def __init__(self, k, re, im=ZERO):
        if k not in (1, 2, 3):
            raise DomainError("cyclotomic order must be 1, 2 or 3")
        if k == 1 and im:
            re, im = re + im, ZERO
        elif k == 2 and im:
            re, im = re - im, ZERO
        self.k = k
        self.re = re
        self.im = im

    @staticmethod
    def from_scalar(k, s):
        return CycScalar(k, s)

    @staticmethod
    def omega(k, power=1):
        """w^power as a CycScalar."""
        power %= k
        if k == 1:
            return CycScalar(1, ONE)
        if k == 2:
            return CycScalar(2, ONE if power == 0 else MINUS_ONE)
        if power == 0:
            return CycScalar(3, ONE)
        if power == 1:
            return CycScalar(3, ZERO, ONE)
        return CycScalar(3, MINUS_ONE, MINUS_ONE)  # w^2 = -1 - w

    def is_zero(self):
        return self.re.is_zero() and self.im.is_zero()

    def __bool__(self):
        return not self.is_zero()

    def is_rational(self):
        return self.im.is_zero()

    def rational_part(self):
        if not self.is_rational():
            raise DomainError("CycScalar has a nonzero imaginary part")
        return self.re

    def __eq__(self, other):
        if isinstance(other, (int, Scalar)):
            other = CycScalar(self.k, other if isinstance(other, Scalar)
                              else Scalar.from_int(other))
        if not isinstance(other, CycScalar):
            return NotImplemented
        return self.k == other.k and self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.k, self.re, self.im))

    def _coerce(self, other):
        if isinstance(other, int):
            other = Scalar.from_int(other)
        if isinstance(other, Scalar):
            other = CycScalar(self.k, other)
        if other.k != self.k:
            raise DomainError("mixed cyclotomic orders")
        return other

    def __neg__(self):
        return CycScalar(self.k, -self.re, -self.im)

    def __add__(self, other):
        other = self._coerce(other)
        return CycScalar(self.k, self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __mul__(self, other):
        other = self._coerce(other)
        if self.k != 3 or (self.im.is_zero() and other.im.is_zero()):
            return CycScalar(self.k, self.re * other.re, self.re * other.im
                             + self.im * other.re)
        a, b, c, d = self.re, self.im, other.re, other.im
        return CycScalar(3, a * c - b * d, a * d + b * c - b * d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        """Division by a rational Scalar (all the engine needs)."""
        if isinstance(other, int):
            other = Scalar.from_int(other)
        if isinstance(other, CycScalar):
            other = other.rational_part()
        return CycScalar(self.k, self.re / other, self.im / other)

    def bar(self):
        return CycScalar(self.k, self.re.bar(), self.im.bar())

    def __str__(self):
        if self.im.is_zero():
            return str(self.re)
        return "(%s) + (%s)*w" % (self.re, self.im)

    __repr__ = __str__


def bar(s):
    """Coefficient action of the bar-type maps: q -> q^-1."""
    return s.bar()


def b_coeff(D, i, j, r):
    """The loop structure constant b_{ijr} of the presentation in I_0
    coordinates (three-branch formula)."""
    if r == 0:
        raise DomainError("b_coeff needs r != 0")
    dij = D.dt_pair(i, j)
    if r % dij != 0:
        return ZERO
    if D.is_A2n2 and i == 1 and j == 1:
        sign = 1 if (r - 1) % 2 == 0 else -1
        poly = Scalar.q_power(2 * r) + Scalar.from_int(sign) + Scalar.q_power(-2 * r)
        return qnum(2 * r) * poly / Scalar.from_int(r)
    rt = r // dij
    return qnum(rt * D.a[i][j], D.d[i]) / Scalar.from_int(rt)


def btilde_coeff(D, ip, jp, r):
    """The tilde-indexed coefficient, evaluated over CycScalar from the
    twisted datum stored on the diagram."""
    if r == 0:
        raise DomainError("btilde_coeff needs r != 0")
    k = D.twist.k
    total = CycScalar(k, ZERO)
    for u in range(k):
        ju = D.twist.chi_pow(jp, u)
        pairing = D.qform_tilde[ip][ju]
        term = CycScalar.omega(k, r * u) * qnum(r * pairing, 1)
        total = total + term
    den = Scalar.from_int(r) * qnum(D.d[D.orbit_of[ip]], 1)
    return total / den
