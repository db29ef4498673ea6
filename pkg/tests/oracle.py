"""Translate one-variable series to sympy expressions for oracle checks."""

from __future__ import annotations

from fractions import Fraction
from math import lcm

import sympy
from sympy.polys.domains import QQ
from sympy.polys.ring_series import rs_pow
from sympy.polys.rings import ring

from hahnsat.coeff import Coeff
from hahnsat.series import Series

u = sympy.Symbol("u", positive=True)


def coeff_to_sympy(c: Coeff) -> sympy.Expr:
    return sympy.Rational(c.a.numerator, c.a.denominator) + sympy.Rational(c.b.numerator, c.b.denominator) * sympy.sqrt(2)


def denominator(*series: Series, extra: Fraction = Fraction(1)) -> int:
    d = extra.denominator
    for s in series:
        for e, _ in s.terms:
            d = lcm(d, e[0].denominator)
    return d


def to_sympy(s: Series, d: int) -> sympy.Expr:
    """Substitute t1 = u^d so that every exponent becomes an integer."""
    return sum((coeff_to_sympy(c) * u ** int(e[0] * d) for e, c in s.terms), sympy.Integer(0))


def unit_power(f: Series, q: Fraction, below: Fraction) -> dict[Fraction, Coeff]:
    """Coefficients of (f / (c t^g))^q below ``below``, where c t^g leads f.

    Only the unit part 1 + eps is expanded, as a truncated power series in
    u = t^(1/d) with sympy's ring series routines.  Rational coefficients only.
    """
    g, c = f.leading()
    unit = f.shift(-g).scale(c.inverse())
    d = denominator(unit)
    R, x = ring("u", QQ)
    p = R.zero
    for e, k in unit.terms:
        assert k.is_rational(), "the ring-series oracle works over Q"
        p += QQ(k.a.numerator, k.a.denominator) * x ** int(e[0] * d)
    order = int(below * d) + 1
    expanded = rs_pow(p, sympy.Rational(q.numerator, q.denominator), x, order)
    out = {}
    for (k,), coeff in expanded.terms():
        e = Fraction(k, d)
        if e < below and coeff:
            out[e] = Coeff(Fraction(int(coeff.numerator), int(coeff.denominator)))
    return out


def terms_below(s: Series, below: Fraction) -> dict[Fraction, Coeff]:
    return {e[0]: c for e, c in s.terms if e[0] < below}
