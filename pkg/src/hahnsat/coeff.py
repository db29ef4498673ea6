"""Exact arithmetic in Q(sqrt 2), the coefficient (residue) field."""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Union

from .errors import NonRepresentableCoefficientPower, ZeroDivisor

FIELDS = ("q", "qsqrt2")

_ZERO = Fraction(0)


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def _int_root(n: int, r: int) -> int | None:
    """Exact nonnegative integer r-th root of n >= 0, or None."""
    if n < 2:
        return n
    if r == 2:
        s = isqrt(n)
        return s if s * s == n else None
    lo, hi = 0, 1 << (n.bit_length() // r + 1)
    while lo < hi:
        mid = (lo + hi) // 2
        if mid**r < n:
            lo = mid + 1
        else:
            hi = mid
    return lo if lo**r == n else None


def _rational_root(x: Fraction, r: int) -> Fraction | None:
    if x < 0:
        if r % 2 == 0:
            return None
        root = _rational_root(-x, r)
        return None if root is None else -root
    p, q = _int_root(x.numerator, r), _int_root(x.denominator, r)
    if p is None or q is None:
        return None
    return Fraction(p, q)


class Coeff:
    """a + b*sqrt(2) with a, b rational."""

    __slots__ = ("a", "b")

    def __init__(self, a: Union[int, Fraction, str] = 0, b: Union[int, Fraction, str] = 0) -> None:
        self.a = Fraction(a)
        self.b = Fraction(b)

    @classmethod
    def _new(cls, a: Fraction, b: Fraction) -> Coeff:
        c = object.__new__(cls)
        c.a = a
        c.b = b
        return c

    @classmethod
    def coerce(cls, x: Union[Coeff, int, Fraction]) -> Coeff:
        if isinstance(x, Coeff):
            return x
        if isinstance(x, (int, Fraction)):
            return cls._new(Fraction(x), _ZERO)
        raise TypeError(f"cannot interpret {x!r} as a coefficient")

    # -- structure -----------------------------------------------------------

    def is_rational(self) -> bool:
        return not self.b

    def sign(self) -> int:
        a, b = self.a, self.b
        if not b:
            return _sign(a)
        if not a:
            return _sign(b)
        if (a > 0) == (b > 0):
            return _sign(a)
        # opposite signs: the larger of a^2 and 2b^2 wins (they never tie)
        if a > 0:
            return 1 if a * a > 2 * b * b else -1
        return 1 if 2 * b * b > a * a else -1

    def conjugate(self) -> Coeff:
        return Coeff._new(self.a, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a - 2 * self.b * self.b

    def height(self) -> int:
        return max(abs(self.a.numerator), self.a.denominator, abs(self.b.numerator), self.b.denominator)

    # -- arithmetic ----------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.a) or bool(self.b)

    def __add__(self, other):
        if not isinstance(other, Coeff):
            if isinstance(other, (int, Fraction)):
                return Coeff._new(self.a + other, self.b)
            return NotImplemented
        return Coeff._new(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self) -> Coeff:
        return Coeff._new(-self.a, -self.b)

    def __sub__(self, other):
        if not isinstance(other, Coeff):
            if isinstance(other, (int, Fraction)):
                return Coeff._new(self.a - other, self.b)
            return NotImplemented
        return Coeff._new(self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Coeff):
            if isinstance(other, (int, Fraction)):
                return Coeff._new(self.a * other, self.b * other)
            return NotImplemented
        if not self.b and not other.b:
            return Coeff._new(self.a * other.a, _ZERO)
        return Coeff._new(
            self.a * other.a + 2 * self.b * other.b,
            self.a * other.b + self.b * other.a,
        )

    __rmul__ = __mul__

    def inverse(self) -> Coeff:
        if not self:
            raise ZeroDivisor("inverse of zero coefficient")
        if not self.b:
            return Coeff._new(1 / self.a, _ZERO)
        n = self.norm()
        return Coeff._new(self.a / n, -self.b / n)

    def __truediv__(self, other):
        return self * Coeff.coerce(other).inverse()

    def __rtruediv__(self, other):
        return Coeff.coerce(other) * self.inverse()

    def __pow__(self, k: int) -> Coeff:
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = Coeff._new(Fraction(1), _ZERO)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def sqrt(self, field: str = "qsqrt2") -> Coeff | None:
        """Exact nonnegative square root inside the field, or None."""
        if self.sign() < 0:
            return None
        if not self:
            return self
        if not self.b:
            r = _rational_root(self.a, 2)
            if r is not None:
                return Coeff._new(r, _ZERO)
            if field == "q":
                return None
            r = _rational_root(self.a / 2, 2)
            return None if r is None else Coeff._new(_ZERO, r)
        if field == "q":
            return None
        s = _rational_root(self.norm(), 2)
        if s is None:
            return None
        for x2 in ((self.a + s) / 2, (self.a - s) / 2):
            x = _rational_root(x2, 2)
            if x:
                cand = Coeff._new(x, self.b / (2 * x))
                if cand.sign() < 0:
                    cand = -cand
                if cand * cand == self:
                    return cand
        return None

    def root(self, r: int, field: str = "qsqrt2") -> Coeff | None:
        """Exact real r-th root (positive for even r), or None if not in the field."""
        if r == 1:
            return self
        if r % 2 == 0:
            half = self.sqrt(field)
            return None if half is None else half.root(r // 2, field)
        if not self.b:
            q = _rational_root(self.a, r)
            return None if q is None else Coeff._new(q, _ZERO)
        # the only odd roots of an irrational element we look for are cubes etc.
        # of elements with small norm; a direct search is not worth it here
        return None

    def power(self, q: Union[int, Fraction], field: str = "qsqrt2") -> Coeff:
        q = Fraction(q)
        base = self ** q.numerator if q.numerator >= 0 else self.inverse() ** (-q.numerator)
        if q.denominator == 1:
            return base
        res = base.root(q.denominator, field)
        if res is None or (q.denominator % 2 == 0 and self.sign() < 0):
            raise NonRepresentableCoefficientPower(f"({self})^({q}) is not in {field}")
        return res

    # -- order & identity ----------------------------------------------------

    def _cmp(self, other) -> int:
        return (self - Coeff.coerce(other)).sign()

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Coeff):
            return self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return not self.b and self.a == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.a) if not self.b else hash((self.a, self.b))

    def __lt__(self, other) -> bool:
        return self._cmp(other) < 0

    def __le__(self, other) -> bool:
        return self._cmp(other) <= 0

    def __gt__(self, other) -> bool:
        return self._cmp(other) > 0

    def __ge__(self, other) -> bool:
        return self._cmp(other) >= 0

    def key(self) -> tuple[Fraction, Fraction]:
        return (self.a, self.b)

    def __repr__(self) -> str:
        return f"Coeff({self})"

    def __str__(self) -> str:
        return render_coeff(self)

    def __reduce__(self):
        return (Coeff, (self.a, self.b))


ZERO = Coeff(0)
ONE = Coeff(1)
SQRT2 = Coeff(0, 1)


def _rat(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def render_coeff(c: Coeff) -> str:
    """Grammar form: ``3``, ``-1/2``, ``sqrt2``, ``-2*sqrt2``, ``(1 + sqrt2)``."""
    if not c.b:
        return _rat(c.a)
    irr = "sqrt2" if abs(c.b) == 1 else f"{_rat(abs(c.b))}*sqrt2"
    if not c.a:
        return irr if c.b > 0 else "-" + irr
    return f"({_rat(c.a)} {'+' if c.b > 0 else '-'} {irr})"
