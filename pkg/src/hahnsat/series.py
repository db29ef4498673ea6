"""Truncated Hahn series with exponents in Q^n-lex.

A :class:`Series` stores finitely many terms ``c * t^e`` together with a
truncation order ``trunc``.  It stands for every Hahn series that agrees
with the stored terms on all exponents below ``trunc``; ``trunc = INF``
means the element is known exactly.  Every operation propagates the
truncation order so that its result is correct below the returned one.

A positive monomial ``t^e`` with ``e > 0`` is infinitesimal: smaller
exponents mean larger elements, and the valuation is the least exponent.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from operator import itemgetter
from typing import Iterable, Union

from .coeff import ONE, ZERO, Coeff
from .errors import (
    DimensionMismatch,
    InsufficientPrecision,
    NegativeValue,
    NotPositive,
    UndecidableAtPrecision,
    ZeroDivisor,
)
from .group import INF, ExpVec, _Infinity

Trunc = Union[ExpVec, _Infinity]
Scalar = Union[int, Fraction, Coeff]

#: upper bound on the number of geometric/binomial terms summed by
#: inverse and power; beyond it the result's truncation order is lowered
MAX_ITER = 48

_first = itemgetter(0)


@dataclass(frozen=True)
class Precision:
    """Relative truncation target for inverse and power.

    ``s_inverse(f, p)`` returns ``f^-1`` correct below ``p.target - v(f)``;
    ``s_power(f, q, p)`` returns ``f^q`` correct below ``p.target + q*v(f)``.
    """

    target: ExpVec

    @classmethod
    def default(cls, n: int) -> Precision:
        return cls(ExpVec.unit(1, n, 4))

    @property
    def dim(self) -> int:
        return len(self.target)

    def pad(self, k: int) -> Precision:
        return Precision(self.target.pad(k))


class Series:
    __slots__ = ("terms", "trunc", "dim", "_hash")

    def __init__(self, terms: Iterable[tuple[ExpVec, Scalar]], trunc: Trunc = INF, dim: int | None = None):
        acc: dict[ExpVec, Coeff] = {}
        for e, c in terms:
            c = Coeff.coerce(c)
            acc[e] = acc[e] + c if e in acc else c
        if dim is None:
            if acc:
                dim = len(next(iter(acc)))
            elif trunc is not INF:
                dim = len(trunc)
            else:
                raise ValueError("dimension of an empty exact series must be given")
        for e in acc:
            if len(e) != dim:
                raise DimensionMismatch(f"exponent {e} in dimension {dim}")
        if trunc is not INF and len(trunc) != dim:
            raise DimensionMismatch(f"truncation {trunc} in dimension {dim}")
        items = sorted(((e, c) for e, c in acc.items() if c and e < trunc), key=_first)
        self._set(tuple(items), trunc, dim)

    def _set(self, terms, trunc, dim) -> None:
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "trunc", trunc)
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _raw(cls, terms: tuple, trunc: Trunc, dim: int) -> Series:
        """Trusted constructor: terms already sorted, nonzero and below trunc."""
        s = object.__new__(cls)
        s._set(terms, trunc, dim)
        return s

    def __setattr__(self, name, value):
        raise AttributeError("Series is immutable")

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> Series:
        return cls._raw((), INF, n)

    @classmethod
    def const(cls, c: Scalar, n: int) -> Series:
        c = Coeff.coerce(c)
        return cls._raw(((ExpVec.zero(n), c),) if c else (), INF, n)

    @classmethod
    def monomial(cls, e: ExpVec, c: Scalar = 1) -> Series:
        c = Coeff.coerce(c)
        return cls._raw(((e, c),) if c else (), INF, len(e))

    @classmethod
    def gen(cls, index: int, n: int) -> Series:
        """The atom ``t_index`` = t^(unit vector)."""
        return cls.monomial(ExpVec.unit(index, n))

    @classmethod
    def big_o(cls, e: ExpVec) -> Series:
        return cls._raw((), e, len(e))

    # -- inspection ----------------------------------------------------------

    @property
    def exact(self) -> bool:
        return self.trunc is INF

    def is_exact_zero(self) -> bool:
        return not self.terms and self.trunc is INF

    def is_indistinct(self) -> bool:
        """Empty terms but finite truncation: zero at this precision."""
        return not self.terms and self.trunc is not INF

    def lower_value(self) -> Trunc:
        """A lower bound for the valuation that never raises."""
        return self.terms[0][0] if self.terms else self.trunc

    def leading(self) -> tuple[ExpVec, Coeff]:
        if not self.terms:
            if self.exact:
                raise ZeroDivisor("leading term of zero")
            raise InsufficientPrecision(f"no term known below {self.trunc}")
        return self.terms[0]

    def coefficient(self, e: ExpVec) -> Coeff:
        if not e < self.trunc:
            raise InsufficientPrecision(f"coefficient at {e} lies beyond truncation {self.trunc}")
        for f, c in self.terms:
            if f == e:
                return c
        return ZERO

    def sign(self) -> int:
        if self.terms:
            return self.terms[0][1].sign()
        if self.exact:
            return 0
        raise UndecidableAtPrecision(f"sign undecidable below {self.trunc}")

    def height(self) -> int:
        h = 1
        for e, c in self.terms:
            h = max(h, c.height(), *(max(abs(q.numerator), q.denominator) for q in e))
        return h

    def complexity(self) -> tuple:
        """Deterministic simplicity key: fewer terms, smaller heights first."""
        tk = tuple((e, c.key()) for e, c in self.terms)
        return (len(self.terms), self.height(), tk, (0,) if self.exact else (1, self.trunc))

    def pad(self, k: int) -> Series:
        if k == 0:
            return self
        trunc = self.trunc if self.exact else self.trunc.pad(k)
        return Series._raw(tuple((e.pad(k), c) for e, c in self.terms), trunc, self.dim + k)

    def truncate(self, bound: Trunc) -> Series:
        """Forget everything at or beyond ``bound``."""
        trunc = min(self.trunc, bound)
        return Series._raw(tuple(t for t in self.terms if t[0] < trunc), trunc, self.dim)

    # -- identity ------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        return self.dim == other.dim and self.trunc == other.trunc and self.terms == other.terms

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash((self.dim, self.trunc, self.terms))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self) -> str:
        from .syntax import render

        return f"Series({render(self)!r})"

    def __str__(self) -> str:
        from .syntax import render

        return render(self)

    def __reduce__(self):
        return (Series, (self.terms, self.trunc, self.dim))

    # -- arithmetic ----------------------------------------------------------

    def _lift(self, other) -> Series:
        if isinstance(other, Series):
            if other.dim != self.dim:
                raise DimensionMismatch(f"dimensions {self.dim} and {other.dim} differ")
            return other
        if isinstance(other, (int, Fraction, Coeff)):
            return Series.const(other, self.dim)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return s_add(self, other)

    __radd__ = __add__

    def __neg__(self) -> Series:
        return Series._raw(tuple((e, -c) for e, c in self.terms), self.trunc, self.dim)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return s_add(self, -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Coeff)):
            return self.scale(other)
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return s_mul(self, other)

    __rmul__ = __mul__

    def scale(self, c: Scalar) -> Series:
        c = Coeff.coerce(c)
        if not c:
            return Series.zero(self.dim)
        return Series._raw(tuple((e, c * d) for e, d in self.terms), self.trunc, self.dim)

    def shift(self, e: ExpVec) -> Series:
        """Multiply by the monomial t^e."""
        trunc = self.trunc if self.exact else self.trunc + e
        return Series._raw(tuple((f + e, c) for f, c in self.terms), trunc, self.dim)

    def __truediv__(self, other):
        """Exact division by a scalar or a monomial; anything else needs a precision."""
        if isinstance(other, (int, Fraction, Coeff)):
            return self.scale(Coeff.coerce(other).inverse())
        if isinstance(other, Series):
            if other.exact and len(other.terms) == 1:
                e, c = other.terms[0]
                return self.shift(-e).scale(c.inverse())
            if other.is_exact_zero():
                raise ZeroDivisor("division by exact zero")
            raise TypeError("division by a non-monomial series needs s_inverse with a Precision")
        return NotImplemented

    def __abs__(self) -> Series:
        return s_abs(self)

    # comparisons raise UndecidableAtPrecision instead of guessing
    def __lt__(self, other) -> bool:
        return s_compare(self, self._lift(other)) < 0

    def __le__(self, other) -> bool:
        return s_compare(self, self._lift(other)) <= 0

    def __gt__(self, other) -> bool:
        return s_compare(self, self._lift(other)) > 0

    def __ge__(self, other) -> bool:
        return s_compare(self, self._lift(other)) >= 0


# -- core operations ---------------------------------------------------------

def s_add(f: Series, g: Series) -> Series:
    if f.dim != g.dim:
        raise DimensionMismatch(f"dimensions {f.dim} and {g.dim} differ")
    trunc = min(f.trunc, g.trunc)
    if not g.terms:
        terms = f.terms if trunc is f.trunc else tuple(t for t in f.terms if t[0] < trunc)
        return Series._raw(terms, trunc, f.dim)
    if not f.terms:
        terms = g.terms if trunc is g.trunc else tuple(t for t in g.terms if t[0] < trunc)
        return Series._raw(terms, trunc, f.dim)
    acc = dict(f.terms)
    for e, c in g.terms:
        d = acc.get(e)
        acc[e] = c if d is None else d + c
    terms = tuple(sorted(((e, c) for e, c in acc.items() if c and e < trunc), key=_first))
    return Series._raw(terms, trunc, f.dim)


def _mul_terms(ft, gt, bound: Trunc) -> tuple:
    acc: dict[ExpVec, Coeff] = {}
    for e1, c1 in ft:
        for e2, c2 in gt:
            e = e1 + e2
            if e < bound:
                d = acc.get(e)
                acc[e] = c1 * c2 if d is None else d + c1 * c2
    return tuple(sorted(((e, c) for e, c in acc.items() if c), key=_first))


def s_mul(f: Series, g: Series) -> Series:
    if f.dim != g.dim:
        raise DimensionMismatch(f"dimensions {f.dim} and {g.dim} differ")
    if f.is_exact_zero() or g.is_exact_zero():
        return Series.zero(f.dim)
    trunc = min(f.trunc + g.lower_value(), g.trunc + f.lower_value())
    return Series._raw(_mul_terms(f.terms, g.terms, trunc), trunc, f.dim)


def _unit_split(f: Series) -> tuple[ExpVec, Coeff, Series]:
    """Write f = c * t^g * (1 + eps) with v(eps) > 0; return (g, c, eps)."""
    g, c = f.leading()
    ci = c.inverse()
    eps_terms = tuple((e - g, ci * d) for e, d in f.terms[1:])
    eps_trunc = f.trunc if f.exact else f.trunc - g
    return g, c, Series._raw(eps_terms, eps_trunc, f.dim)


def _series_sum(eps: Series, coeffs, rel: Trunc, dim: int) -> tuple[tuple, Trunc]:
    """Sum coeffs(k) * eps^k over k < K, where K is the least k with k*v(eps) >= rel.

    Returns the terms and the truncation order that is actually justified
    (lowered when MAX_ITER is reached first).
    """
    if eps.is_exact_zero():
        return ((ExpVec.zero(dim), coeffs(0)),), INF
    ve = eps.lower_value()
    rel = min(rel, eps.trunc)
    k_needed = 1
    while k_needed <= MAX_ITER and ve * k_needed < rel:
        k_needed += 1
    if k_needed > MAX_ITER:
        k_needed = MAX_ITER
        rel = min(rel, ve * MAX_ITER)
    acc: dict[ExpVec, Coeff] = {ExpVec.zero(dim): coeffs(0)}
    power = ((ExpVec.zero(dim), ONE),)
    for k in range(1, k_needed):
        power = _mul_terms(power, eps.terms, rel)
        if not power:
            break
        ck = coeffs(k)
        for e, c in power:
            d = acc.get(e)
            acc[e] = ck * c if d is None else d + ck * c
    terms = tuple(sorted(((e, c) for e, c in acc.items() if c and e < rel), key=_first))
    return terms, rel


def s_inverse(f: Series, p: Precision) -> Series:
    if not f.terms:
        if f.exact:
            raise ZeroDivisor("inverse of exact zero")
        raise InsufficientPrecision(f"inverse of an element indistinguishable from 0 below {f.trunc}")
    g, c, eps = _unit_split(f)
    ci = c.inverse()
    sign_alt = [ONE, -ONE]
    terms, rel = _series_sum(eps, lambda k: sign_alt[k % 2], p.target, f.dim)
    unit = Series._raw(terms, rel, f.dim)
    return unit.shift(-g).scale(ci)


def s_compare(f: Series, g: Series) -> int:
    d = s_add(f, -g)
    if d.terms:
        return d.terms[0][1].sign()
    if d.exact:
        return 0
    raise UndecidableAtPrecision(f"difference is indistinguishable from 0 below {d.trunc}")


def f_valuation(f: Series) -> Trunc:
    if f.terms:
        return f.terms[0][0]
    if f.exact:
        return INF
    raise InsufficientPrecision(f"valuation unknown: no term below {f.trunc}")


def residue(f: Series) -> Coeff:
    zero = ExpVec.zero(f.dim)
    if f.terms:
        e, c = f.terms[0]
        if e < zero:
            raise NegativeValue(f"valuation {e} < 0 has no residue")
        return c if e == zero else ZERO
    if f.exact:
        return ZERO
    if f.trunc > zero:
        return ZERO
    raise InsufficientPrecision(f"residue needs truncation above 0, have {f.trunc}")


def _binomial(q: Fraction, k: int) -> Fraction:
    r = Fraction(1)
    for j in range(k):
        r = r * (q - j) / (j + 1)
    return r


def s_power(f: Series, q: Union[int, Fraction], p: Precision, field: str = "qsqrt2") -> Series:
    """f^q for rational q, via c^q * t^(q g) * (1 + eps)^q."""
    q = Fraction(q)
    if q == 0:
        return Series.const(1, f.dim)
    if not f.terms:
        if f.exact:
            if q > 0:
                return Series.zero(f.dim)
            raise ZeroDivisor(f"0^({q})")
        raise InsufficientPrecision(f"power of an element indistinguishable from 0 below {f.trunc}")
    g, c, eps = _unit_split(f)
    if q.denominator != 1 and c.sign() < 0:
        raise NotPositive(f"non-integral power {q} of a negative element")
    cq = c.power(q, field)
    binom = {}

    def coeffs(k: int) -> Coeff:
        if k not in binom:
            binom[k] = Coeff._new(_binomial(q, k), Fraction(0))
        return binom[k]

    terms, rel = _series_sum(eps, coeffs, p.target, f.dim)
    unit = Series._raw(terms, rel, f.dim)
    return unit.shift(g * q).scale(cq)


def s_abs(f: Series) -> Series:
    return -f if f.sign() < 0 else f


def s_divide(f: Series, g: Series, p: Precision) -> Series:
    return s_mul(f, s_inverse(g, p))
