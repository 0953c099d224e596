"""Exact scalars in the rational function field Q(q).

A :class:`Scalar` is a ratio ``num/den`` of univariate polynomials in the
formal parameter ``q`` with :class:`fractions.Fraction` coefficients.  The
canonical form has a monic denominator coprime to the numerator, so two
scalars are equal exactly when their stored tuples are equal.

Polynomials are stored densely as tuples of coefficients, lowest degree
first, with no trailing zeros (the zero polynomial is ``()``).
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Union

PolyTuple = tuple  # tuple[Fraction, ...], lowest degree first

_ZERO = Fraction(0)
_ONE_POLY: PolyTuple = (Fraction(1),)


class PoleError(ZeroDivisionError):
    """Raised when a scalar is specialized at a root of its denominator."""


# -- dense polynomial helpers ------------------------------------------------

def _trim(coeffs) -> PolyTuple:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(Fraction(x) for x in c)


def _padd(a: PolyTuple, b: PolyTuple) -> PolyTuple:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] += x
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def _pneg(a: PolyTuple) -> PolyTuple:
    return tuple(-x for x in a)


def _pscale(a: PolyTuple, f: Fraction) -> PolyTuple:
    if f == 0:
        return ()
    return tuple(x * f for x in a)


def _pmul(a: PolyTuple, b: PolyTuple) -> PolyTuple:
    if not a or not b:
        return ()
    if len(a) == 1:
        return _pscale(b, a[0])
    if len(b) == 1:
        return _pscale(a, b[0])
    out = [_ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return tuple(out)


def _pdivmod(a: PolyTuple, b: PolyTuple) -> tuple[PolyTuple, PolyTuple]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return (), a
    rem = list(a)
    lead = b[-1]
    quot = [_ZERO] * (len(a) - len(b) + 1)
    for k in range(len(a) - len(b), -1, -1):
        c = rem[k + len(b) - 1] / lead
        quot[k] = c
        if c:
            for j, y in enumerate(b):
                rem[k + j] -= c * y
    return _trim(quot), _trim(rem[: len(b) - 1])


def _pmonic(a: PolyTuple) -> PolyTuple:
    lead = a[-1]
    if lead == 1:
        return a
    return tuple(x / lead for x in a)


def _pgcd(a: PolyTuple, b: PolyTuple) -> PolyTuple:
    """Monic gcd by the Euclidean algorithm."""
    while b:
        a, b = b, _pdivmod(a, b)[1]
    if not a:
        return ()
    return _pmonic(a)


def _peval(a: PolyTuple, x: Fraction) -> Fraction:
    acc = _ZERO
    for c in reversed(a):
        acc = acc * x + c
    return acc


# -- the scalar type -----------------------------------------------------------

ScalarLike = Union["Scalar", int, Fraction]


class Scalar:
    """Element of Q(q) in canonical form."""

    __slots__ = ("num", "den")

    def __init__(self, value: ScalarLike = 0, den: ScalarLike | None = None):
        if den is None:
            if isinstance(value, Scalar):
                self.num, self.den = value.num, value.den
                return
            if isinstance(value, (int, Rational)):
                f = Fraction(value)
                self.num = (f,) if f else ()
                self.den = _ONE_POLY
                return
            if isinstance(value, str):
                from .textio import parse_scalar

                s = parse_scalar(value)
                self.num, self.den = s.num, s.den
                return
            raise TypeError(f"cannot build a Scalar from {type(value).__name__}")
        s = Scalar(value) / Scalar(den)
        self.num, self.den = s.num, s.den

    @classmethod
    def _raw(cls, num: PolyTuple, den: PolyTuple) -> "Scalar":
        s = object.__new__(cls)
        s.num = num
        s.den = den
        return s

    @classmethod
    def from_polys(cls, num: Iterable, den: Iterable = (1,)) -> "Scalar":
        """Build ``num/den`` from coefficient sequences (lowest degree first)."""
        n, d = _trim(num), _trim(den)
        if not d:
            raise ZeroDivisionError("zero denominator")
        return cls._normalized(n, d)

    @classmethod
    def _normalized(cls, n: PolyTuple, d: PolyTuple) -> "Scalar":
        if not n:
            return cls._raw((), _ONE_POLY)
        if len(d) > 1:
            g = _pgcd(n, d)
            if len(g) > 1:
                n = _pdivmod(n, g)[0]
                d = _pdivmod(d, g)[0]
        lead = d[-1]
        if lead != 1:
            n = tuple(x / lead for x in n)
            d = tuple(x / lead for x in d)
        return cls._raw(n, d)

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.num

    def is_constant(self) -> bool:
        return len(self.den) == 1 and len(self.num) <= 1

    def is_polynomial(self) -> bool:
        return len(self.den) == 1

    def __bool__(self) -> bool:
        return bool(self.num)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: ScalarLike) -> "Scalar":
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if len(self.den) == 1 and len(o.den) == 1:
            return Scalar._raw(_padd(self.num, o.num), _ONE_POLY)
        if self.den == o.den:
            return Scalar._normalized(_padd(self.num, o.num), self.den)
        n = _padd(_pmul(self.num, o.den), _pmul(o.num, self.den))
        return Scalar._normalized(n, _pmul(self.den, o.den))

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        return Scalar._raw(_pneg(self.num), self.den)

    def __sub__(self, other: ScalarLike) -> "Scalar":
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: ScalarLike) -> "Scalar":
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other: ScalarLike) -> "Scalar":
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if not self.num or not o.num:
            return ZERO
        if len(self.den) == 1 and len(o.den) == 1:
            return Scalar._raw(_pmul(self.num, o.num), _ONE_POLY)
        return Scalar._normalized(_pmul(self.num, o.num), _pmul(self.den, o.den))

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if not self.num:
            raise ZeroDivisionError("division by zero scalar")
        return Scalar._normalized(self.den, self.num)

    def __truediv__(self, other: ScalarLike) -> "Scalar":
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if not o.num:
            raise ZeroDivisionError("division by zero scalar")
        if len(o.num) == 1 and len(o.den) == 1:
            f = 1 / o.num[0]
            return Scalar._raw(_pscale(self.num, f), self.den)
        return self * o.inverse()

    def __rtruediv__(self, other: ScalarLike) -> "Scalar":
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o / self

    def __pow__(self, n: int) -> "Scalar":
        if n < 0:
            return self.inverse() ** (-n)
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- comparison / hashing ----------------------------------------------

    def __eq__(self, other: object) -> bool:
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self) -> int:
        if len(self.den) == 1 and len(self.num) <= 1:
            return hash(self.num[0] if self.num else 0)
        return hash((self.num, self.den))

    # -- evaluation ---------------------------------------------------------

    def specialize(self, q0: ScalarLike) -> Fraction:
        """Evaluate at ``q = q0`` (a rational), raising :class:`PoleError` at a pole."""
        x = q0.to_fraction() if isinstance(q0, Scalar) else Fraction(q0)
        d = _peval(self.den, x)
        if d == 0:
            raise PoleError(f"scalar {self} has a pole at q={x}")
        return _peval(self.num, x) / d

    def to_fraction(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"scalar {self} is not a rational constant")
        return self.num[0] if self.num else _ZERO

    def __str__(self) -> str:
        from .textio import format_scalar

        return format_scalar(self)

    def __repr__(self) -> str:
        return f"Scalar({str(self)!r})"


def _coerce(x) -> Scalar:
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Rational)):
        f = Fraction(x)
        return Scalar._raw((f,) if f else (), _ONE_POLY)
    return NotImplemented


def as_scalar(x: ScalarLike) -> Scalar:
    """Coerce ints, fractions, strings and scalars to :class:`Scalar`."""
    if isinstance(x, Scalar):
        return x
    return Scalar(x)


ZERO = Scalar._raw((), _ONE_POLY)
ONE = Scalar._raw((Fraction(1),), _ONE_POLY)
Q = Scalar._raw((_ZERO, Fraction(1)), _ONE_POLY)
