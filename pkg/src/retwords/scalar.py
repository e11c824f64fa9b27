"""Exact arithmetic in a real quadratic field Q(sqrt(d)).

A :class:`Scalar` is ``a + b*sqrt(d)`` with rational ``a`` and ``b``.  Every
length, endpoint and orbit point handled by the package is a Scalar, so
interval membership is always decided exactly.

Internally a value is kept as ``(p + q*sqrt(d)) / den`` with integers and
``gcd(p, q, den) == 1``; this keeps the hot path (orbit iteration) on plain
integer arithmetic.

>>> s = Scalar(1, 1, 2)
>>> s + Scalar(1, -1, 2)
Scalar('2')
>>> Scalar(0, 1, 5) * Scalar(0, 1, 5)
Scalar('5')
>>> Scalar.parse("1/2 - 1/2 sqrt(5)").floor()
-1
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd, isqrt
from typing import Union

from .errors import RadicandMismatch

__all__ = ["Scalar", "ScalarLike", "as_scalar", "squarefree_part"]

ScalarLike = Union["Scalar", int, Fraction, str]


def squarefree_part(d: int) -> tuple[int, int]:
    """Return ``(s, m)`` with ``d == s*s*m`` and ``m`` square-free."""
    if d < 0:
        raise ValueError(f"radicand must be nonnegative, got {d}")
    s, m = 1, d
    f = 2
    while f * f <= m:
        while m % (f * f) == 0:
            m //= f * f
            s *= f
        f += 1
    return s, m


def _sign_of(p: int, q: int, d: int) -> int:
    # sign of p + q*sqrt(d); d square-free and > 1 whenever q != 0
    if q == 0 or d == 0:
        return (p > 0) - (p < 0)
    if p == 0:
        return (q > 0) - (q < 0)
    if (p > 0) == (q > 0):
        return 1 if p > 0 else -1
    if p * p > q * q * d:
        return 1 if p > 0 else -1
    return 1 if q > 0 else -1


class Scalar:
    """Immutable element ``a + b*sqrt(d)`` of a real quadratic field.

    Pure rationals are stored with ``d == 0``; they combine with scalars
    of any field.  Two irrational scalars combine only if they share
    ``d``.
    """

    __slots__ = ("_p", "_q", "_den", "_d")

    def __init__(self, a: int | Fraction | str = 0, b: int | Fraction | str = 0, d: int = 0):
        a = Fraction(a)
        b = Fraction(b)
        d = int(d)
        if b and d:
            s, d = squarefree_part(d)
            b *= s
        if d == 1:
            a, b = a + b, Fraction(0)
        if not b or not d:
            b, d = Fraction(0), 0
        den = a.denominator * b.denominator // gcd(a.denominator, b.denominator)
        self._set(a.numerator * (den // a.denominator), b.numerator * (den // b.denominator), den, d)

    def _set(self, p: int, q: int, den: int, d: int) -> None:
        g = gcd(p, q, den)
        if g != 1:
            p //= g
            q //= g
            den //= g
        if q == 0:
            d = 0
        object.__setattr__(self, "_p", p)
        object.__setattr__(self, "_q", q)
        object.__setattr__(self, "_den", den)
        object.__setattr__(self, "_d", d)

    @classmethod
    def _raw(cls, p: int, q: int, den: int, d: int) -> Scalar:
        obj = object.__new__(cls)
        if den < 0:
            p, q, den = -p, -q, -den
        obj._set(p, q, den, d)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    # -- accessors -------------------------------------------------------

    @property
    def a(self) -> Fraction:
        return Fraction(self._p, self._den)

    @property
    def b(self) -> Fraction:
        return Fraction(self._q, self._den)

    @property
    def d(self) -> int:
        return self._d

    @property
    def is_rational(self) -> bool:
        return self._q == 0

    def conjugate(self) -> Scalar:
        return Scalar._raw(self._p, -self._q, self._den, self._d)

    # -- arithmetic ------------------------------------------------------

    def _field(self, other: Scalar) -> int:
        if self._d == other._d or other._q == 0:
            return self._d
        if self._q == 0:
            return other._d
        raise RadicandMismatch(f"cannot combine sqrt({self._d}) with sqrt({other._d})")

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        d = self._field(other)
        if self._den == other._den:
            return Scalar._raw(self._p + other._p, self._q + other._q, self._den, d)
        return Scalar._raw(
            self._p * other._den + other._p * self._den,
            self._q * other._den + other._q * self._den,
            self._den * other._den,
            d,
        )

    __radd__ = __add__

    def __neg__(self) -> Scalar:
        return Scalar._raw(-self._p, -self._q, self._den, self._d)

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        d = self._field(other)
        p1, q1, p2, q2 = self._p, self._q, other._p, other._q
        return Scalar._raw(p1 * p2 + q1 * q2 * d, p1 * q2 + p2 * q1, self._den * other._den, d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if other._p == 0 and other._q == 0:
            raise ZeroDivisionError("Scalar division by zero")
        d = self._field(other)
        # multiply through by the conjugate of the divisor
        norm = other._p * other._p - other._q * other._q * d
        num = self * Scalar._raw(other._p, -other._q, 1, d)
        return Scalar._raw(num._p * other._den, num._q * other._den, num._den * norm, d)

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    # -- order -----------------------------------------------------------

    def sign(self) -> int:
        return _sign_of(self._p, self._q, self._d)

    def _cmp(self, other) -> int:
        other = _coerce(other)
        if other is None:
            raise TypeError(f"cannot compare Scalar with {type(other).__name__}")
        d = self._field(other)
        return _sign_of(
            self._p * other._den - other._p * self._den,
            self._q * other._den - other._q * self._den,
            d,
        )

    def __eq__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return (self._p, self._q, self._den, self._d) == (other._p, other._q, other._den, other._d)

    def __hash__(self):
        if self._q == 0:
            return hash(Fraction(self._p, self._den))
        return hash((self._p, self._q, self._den, self._d))

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __bool__(self):
        return bool(self._p or self._q)

    def floor(self) -> int:
        """Greatest integer ``m`` with ``m <= self``.

        ``|q|*sqrt(d)`` is bracketed between consecutive integers with
        ``isqrt``; one exact sign test then settles the candidate.
        """
        p, q, den, d = self._p, self._q, self._den, self._d
        if q == 0:
            return p // den
        s = isqrt(q * q * d)
        low = p + s if q > 0 else p - s - 1
        m = low // den
        # self - (m + 1) >= 0 ?
        if _sign_of(p - (m + 1) * den, q, d) >= 0:
            m += 1
        return m

    __floor__ = floor

    def mod1(self) -> Scalar:
        """Fractional part, in ``[0, 1)``."""
        m = self.floor()
        if m == 0:
            return self
        return Scalar._raw(self._p - m * self._den, self._q, self._den, self._d)

    def __float__(self) -> float:
        if self._q == 0:
            return self._p / self._den
        return (self._p + self._q * self._d**0.5) / self._den

    # -- text ------------------------------------------------------------

    def __str__(self) -> str:
        a, b = self.a, self.b
        if not b:
            return str(a)
        coeff = "" if abs(b) == 1 else f"{abs(b)} "
        rad = f"{coeff}sqrt({self._d})"
        if not a:
            return rad if b > 0 else f"-{rad}"
        return f"{a} {'+' if b > 0 else '-'} {rad}"

    def __repr__(self) -> str:
        return f"Scalar({str(self)!r})"

    _TERM = re.compile(
        r"\s*(?P<op>[+-])\s*(?P<sign>[+-])?\s*(?P<coef>\d+(?:/\d+)?)?"
        r"\s*\*?\s*(?:sqrt\(\s*(?P<d>\d+)\s*\))?\s*"
    )

    @classmethod
    def parse(cls, text: str) -> Scalar:
        """Parse ``"a"``, ``"b sqrt(d)"`` or ``"a + b sqrt(d)"`` forms.

        Coefficients are integers or ``p/q`` fractions; a term may carry a
        sign after its operator, so ``"1/2 + -1/3 sqrt(2)"`` is accepted.
        """
        src = text.strip()
        if not src:
            raise ValueError("empty scalar literal")
        if src[0] not in "+-":
            src = "+" + src
        total = Scalar(0)
        pos = 0
        while pos < len(src):
            m = cls._TERM.match(src, pos)
            if m is None or not (m.group("coef") or m.group("d")):
                raise ValueError(f"cannot parse scalar {text!r}")
            pos = m.end()
            sign = (-1 if m.group("op") == "-" else 1) * (-1 if m.group("sign") == "-" else 1)
            coef = sign * Fraction(m.group("coef") or 1)
            if m.group("d"):
                total = total + Scalar(0, coef, int(m.group("d")))
            else:
                total = total + Scalar(coef)
        return total

    def to_json(self) -> str:
        return str(self)


def _coerce(x) -> Scalar | None:
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Fraction)):
        f = Fraction(x)
        return Scalar._raw(f.numerator, 0, f.denominator, 0)
    return None


def as_scalar(x: ScalarLike) -> Scalar:
    """Convert ints, Fractions and scalar literals to :class:`Scalar`."""
    if isinstance(x, Scalar):
        return x
    if isinstance(x, str):
        return Scalar.parse(x)
    if isinstance(x, (int, Fraction)):
        return Scalar(x)
    raise TypeError(f"cannot convert {type(x).__name__} to Scalar")
