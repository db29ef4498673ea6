"""Encoding a cut of the value group as a cut of the field.

Given values H1 < H2 of the group, each h is written as a rational
combination of the values of some positive representatives, and the
monomial m_h = prod (rep_i / lc_i)^(q_i) then has value h.  The field cut

    k * m < x   for v(m) in H2,        k * x < m   for v(m) in H1,

for all k, forces H1 < v(x) < H2: x is larger than every multiple of an
H2-monomial, hence of smaller value, and smaller than every fraction of an
H1-monomial, hence of larger value.  Only k up to ``k_max`` is checked, so
a candidate with value on the boundary but a coefficient beyond k_max can
slip through; the contract is stated for that bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator, Mapping, Sequence, Union

from ..errors import NonExpressible, NotSeparated
from ..group import ExpVec
from ..linalg import coordinates, row_echelon
from ..series import Precision, Series, f_valuation, s_compare, s_mul, s_power

DEFAULT_KMAX = 100


def _independent(values: Sequence[ExpVec]) -> list[int]:
    """Indices of a maximal linearly independent subfamily, greedily in order."""
    chosen: list[int] = []
    for i, v in enumerate(values):
        rows, _ = row_echelon([values[j] for j in chosen] + [v])
        if len(rows) > len(chosen):
            chosen.append(i)
    return chosen


def monomial_for(h: ExpVec, reps: Sequence[Series], p: Precision | None = None) -> Series:
    """A positive element of value h built from powers of the representatives."""
    n = len(h)
    if not any(h):
        return Series.const(1, n)
    vals = [f_valuation(r) for r in reps]
    idx = _independent(vals)
    coords = coordinates(h, [vals[i] for i in idx]) if idx else None
    if coords is None:
        raise NonExpressible(f"{h} is not a rational combination of the representative values")
    acc = Series.const(1, n)
    for i, q in zip(idx, coords):
        if not q:
            continue
        r = abs(reps[i])
        unit = r.scale(r.terms[0][1].inverse())
        if unit.exact and len(unit.terms) == 1:
            factor = Series.monomial(unit.terms[0][0] * q)
        else:
            # relative precision: the factor is known to its own value plus the target
            factor = s_power(unit, q, p or Precision.default(n))
        acc = s_mul(acc, factor)
    return acc


@dataclass(frozen=True, eq=False)
class FieldCut:
    predicate: Callable[[Series], bool]
    extractor: Callable[[Series], ExpVec]
    lower: tuple[tuple[ExpVec, Series], ...]   # H1 with monomials
    upper: tuple[tuple[ExpVec, Series], ...]   # H2 with monomials
    k_max: int

    def __iter__(self) -> Iterator:
        yield self.predicate
        yield self.extractor

    def strictly_between(self, v: ExpVec) -> bool:
        return all(h < v for h, _ in self.lower) and all(v < h for h, _ in self.upper)


def encode_group_type_as_field_cut(
    H1: Sequence[ExpVec],
    H2: Sequence[ExpVec],
    reps: Union[Mapping[ExpVec, Series], Sequence[Series]],
    k_max: int = DEFAULT_KMAX,
    p: Precision | None = None,
    literal: bool = False,
) -> FieldCut:
    """Field-cut predicate and value extractor for the group cut H1 < y < H2.

    With ``literal`` every k in 1..k_max is tested; otherwise only k_max,
    which is equivalent because k*m < x is monotone in k for m > 0.
    """
    if H1 and H2 and not max(H1) < min(H2):
        raise NotSeparated(f"max H1 = {max(H1)} is not below min H2 = {min(H2)}")
    reps = list(reps.values()) if isinstance(reps, Mapping) else list(reps)
    lower = tuple((h, monomial_for(h, reps, p)) for h in H1)
    upper = tuple((h, monomial_for(h, reps, p)) for h in H2)
    ks = range(1, k_max + 1) if literal else (k_max,)

    def predicate(x: Series) -> bool:
        for _, m in upper:
            if any(s_compare(m * k, x) >= 0 for k in ks):
                return False
        for _, m in lower:
            if any(s_compare(x * k, m) >= 0 for k in ks):
                return False
        return True

    return FieldCut(predicate, f_valuation, lower, upper, k_max)
