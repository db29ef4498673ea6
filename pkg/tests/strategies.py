"""Hypothesis strategies shared by the property tests."""

from __future__ import annotations

from fractions import Fraction

from hypothesis import strategies as st

from hahnsat.coeff import Coeff
from hahnsat.group import ExpVec
from hahnsat.series import Series

small_ints = st.integers(min_value=-6, max_value=6)
rationals = st.builds(Fraction, small_ints, st.integers(min_value=1, max_value=6))
nonzero_rationals = rationals.filter(bool)


def expvecs(n: int, elements=rationals):
    return st.lists(elements, min_size=n, max_size=n).map(ExpVec)


def nonzero_expvecs(n: int):
    return expvecs(n).filter(bool)


coeffs_q = nonzero_rationals.map(Coeff)
coeffs = st.builds(Coeff, rationals, rationals).filter(bool)


def exact_series(n: int, max_terms: int = 4, coefficient=coeffs):
    terms = st.lists(st.tuples(expvecs(n), coefficient), min_size=1, max_size=max_terms)
    return terms.map(lambda ts: Series(ts, dim=n)).filter(lambda s: bool(s.terms))


def positive_series(n: int, max_terms: int = 4, coefficient=coeffs):
    return exact_series(n, max_terms, coefficient).map(lambda s: -s if s.sign() < 0 else s)


def any_series(n: int, max_terms: int = 4):
    """Exact or truncated series; truncation strictly above the support."""
    def cut(s: Series, bump: int, truncate: bool) -> Series:
        if not truncate:
            return s
        return Series(s.terms, s.terms[-1][0] + ExpVec.unit(1, n, bump), n)

    return st.builds(cut, exact_series(n, max_terms), st.integers(1, 3), st.booleans())
