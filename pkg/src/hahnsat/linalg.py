"""Exact linear algebra over Q for subspaces of the value group."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import DimensionMismatch
from .group import ExpVec


def _dim(vs: Sequence[ExpVec]) -> int | None:
    dims = {len(v) for v in vs}
    if len(dims) > 1:
        raise DimensionMismatch(f"mixed dimensions {sorted(dims)}")
    return dims.pop() if dims else None


def row_echelon(vs: Sequence[Sequence[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form by Gauss-Jordan elimination.

    Returns the nonzero rows and their pivot columns.
    """
    m = [list(map(Fraction, v)) for v in vs]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        m[r] = [x / p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(vs: Sequence[ExpVec]) -> int:
    _dim(vs)
    rows, _ = row_echelon(vs)
    return len(rows)


def span_basis(vs: Sequence[ExpVec]) -> list[ExpVec]:
    """A canonical basis (reduced echelon rows) of the Q-span of ``vs``."""
    _dim(vs)
    rows, _ = row_echelon(vs)
    return [ExpVec._make(r) for r in rows]


def in_span(x: ExpVec, basis: Sequence[ExpVec]) -> bool:
    return coordinates(x, basis) is not None


def coordinates(x: ExpVec, basis: Sequence[ExpVec]) -> list[Fraction] | None:
    """Solve x = sum c_i basis_i exactly; None when x is outside the span.

    ``basis`` must be linearly independent (any list from :func:`span_basis` is).
    """
    if not basis:
        return [] if not any(x) else None
    _dim([*basis, x])
    n, k = len(x), len(basis)
    # augmented system with columns = basis vectors
    rows = [[basis[j][i] for j in range(k)] + [x[i]] for i in range(n)]
    red, pivots = row_echelon(rows)
    if k in pivots:
        return None
    sol = [Fraction(0)] * k
    for row, c in zip(red, pivots):
        sol[c] = row[k]
    return sol


def combine(coeffs: Sequence[Fraction], basis: Sequence[ExpVec]) -> ExpVec:
    n = len(basis[0])
    acc = [Fraction(0)] * n
    for c, b in zip(coeffs, basis):
        for i in range(n):
            acc[i] += c * b[i]
    return ExpVec._make(acc)


class AffineSubspace:
    """The set point + span(directions), kept in a form where each direction
    has a distinct leading coordinate."""

    def __init__(self, point: Sequence[Fraction], directions: Sequence[Sequence[Fraction]]):
        self.point = [Fraction(c) for c in point]
        rows, _ = row_echelon(directions)
        self.directions = rows

    @classmethod
    def linear(cls, basis: Sequence[ExpVec], n: int) -> AffineSubspace:
        return cls([Fraction(0)] * n, basis)

    def free(self, i: int) -> bool:
        """Whether coordinate i ranges over all of Q on this subspace."""
        return any(d[i] != 0 for d in self.directions)

    def restrict(self, i: int, value: Fraction) -> AffineSubspace | None:
        """Intersect with {v_i = value}; None when empty."""
        pick = next((d for d in self.directions if d[i] != 0), None)
        if pick is None:
            return self if self.point[i] == value else None
        t = (value - self.point[i]) / pick[i]
        point = [p + t * q for p, q in zip(self.point, pick)]
        rest = []
        for d in self.directions:
            if d is pick:
                continue
            f = d[i] / pick[i]
            rest.append([a - f * b for a, b in zip(d, pick)])
        return AffineSubspace(point, rest)


def interval_meets(space: AffineSubspace, lo: ExpVec | None, hi: ExpVec | None) -> bool:
    """Does ``space`` contain some v with lo <= v <= hi (lexicographically)?

    ``None`` bounds are open-ended.  Decided coordinate by coordinate: on an
    affine subspace each coordinate is either pinned to one value or free.
    """
    n = len(space.point)
    return _meets(space, lo, hi, 0, n)


def _meets(space: AffineSubspace, lo, hi, i: int, n: int) -> bool:
    if lo is None and hi is None:
        return True
    if i == n:
        return True
    free = space.free(i)
    if lo is not None and hi is not None:
        if lo[i] > hi[i]:
            return False
        if free:
            if lo[i] < hi[i]:
                return True
            sub = space.restrict(i, lo[i])
            return sub is not None and _meets(sub, lo, hi, i + 1, n)
        c = space.point[i]
        if lo[i] < c < hi[i]:
            return True
        if c == lo[i] and c == hi[i]:
            return _meets(space, lo, hi, i + 1, n)
        if c == lo[i]:
            return _meets(space, lo, None, i + 1, n)
        if c == hi[i]:
            return _meets(space, None, hi, i + 1, n)
        return False
    if lo is not None:
        if free:
            return True
        c = space.point[i]
        if c != lo[i]:
            return c > lo[i]
        return _meets(space, lo, None, i + 1, n)
    if free:
        return True
    c = space.point[i]
    if c != hi[i]:
        return c < hi[i]
    return _meets(space, None, hi, i + 1, n)
