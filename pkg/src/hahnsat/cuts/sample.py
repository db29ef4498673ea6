"""Finite samples of a finitely generated substructure.

The definable closure of a set of generators is infinite, so the engine
works with a deterministic finite piece of it: rational constants of
bounded height and the generators, closed level by level under negation,
inverse, rational powers and the ring operations.

Level 1 applies every operation to the base set L0.  Later levels apply
the unary operations to a width-limited frontier of the previous level and
combine the frontier with a fixed atom set (L0 and the unary images of the
generators).  The width limit only restricts what is expanded further;
every element produced is kept.

All inexact elements are cut at the same absolute truncation order T (the
working precision); results that cannot be computed down to T are dropped.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from ..errors import HahnError
from ..group import ExpVec
from ..linalg import span_basis
from ..series import MAX_ITER, Precision, Series, _unit_split, s_inverse, s_mul, s_power

DEFAULT_HEIGHT = 2
DEFAULT_WIDTH = 40
MAX_TERMS = 16


def constants(height: int) -> list[Fraction]:
    """0 and every p/q with 1 <= |p|, q <= height, smallest height first."""
    out = [Fraction(0)]
    seen = {Fraction(0)}
    for h in range(1, height + 1):
        for p in range(1, h + 1):
            for q in range(1, h + 1):
                if max(p, q) != h:
                    continue
                for c in (Fraction(p, q), Fraction(-p, q)):
                    if c not in seen:
                        seen.add(c)
                        out.append(c)
    return out


def exponents(depth: int) -> list[Fraction]:
    """Power exponents p/r with r <= depth and 1 <= |p| <= 2r, excluding 1."""
    out = []
    for r in range(1, depth + 1):
        for p in range(1, 2 * r + 1):
            for q in (Fraction(p, r), Fraction(-p, r)):
                if q != 1 and q not in out:
                    out.append(q)
    return out


@dataclass(frozen=True)
class SubstructureSample:
    gens: tuple[Series, ...]
    depth: int
    precision: Precision
    elems: tuple[Series, ...]
    height: int = DEFAULT_HEIGHT
    width: int = DEFAULT_WIDTH
    field: str = "qsqrt2"
    explicit: bool = False

    @property
    def dim(self) -> int:
        return self.precision.dim

    def __len__(self) -> int:
        return len(self.elems)

    def __contains__(self, x: Series) -> bool:
        return x in set(self.elems)

    def values(self) -> list[ExpVec]:
        """Sorted distinct valuations of the nonzero elements."""
        vals = {e.terms[0][0] for e in self.elems if e.terms}
        return sorted(vals)

    def value_basis(self) -> list[ExpVec]:
        return span_basis(self.values())

    def deeper(self, k: int = 1) -> SubstructureSample:
        if self.explicit:
            raise ValueError("an explicit sample has no deeper levels")
        return sample_substructure(
            self.gens, self.depth + k, self.precision,
            height=self.height, width=self.width, field=self.field,
        )


def explicit_sample(elems: Iterable[Series], precision: Precision | None = None) -> SubstructureSample:
    """A sample given element by element (for engineered instances)."""
    elems = tuple(dict.fromkeys(elems))
    if not elems:
        raise ValueError("explicit sample needs at least one element")
    p = precision or Precision.default(elems[0].dim)
    return SubstructureSample(elems, 0, p, elems, explicit=True)


def sample_substructure(
    gens: Sequence[Series],
    depth: int,
    p: Precision | None = None,
    *,
    height: int = DEFAULT_HEIGHT,
    width: int = DEFAULT_WIDTH,
    field: str = "qsqrt2",
    dim: int | None = None,
) -> SubstructureSample:
    if depth < 1:
        raise ValueError("depth must be at least 1")
    gens = tuple(gens)
    if dim is None:
        if gens:
            dim = gens[0].dim
        elif p is not None:
            dim = p.dim
        else:
            raise ValueError("dimension needed when there are no generators")
    p = p or Precision.default(dim)
    elems = _closure(gens, depth, p, height, width, field, dim)
    return SubstructureSample(gens, depth, p, elems, height, width, field)


class _Builder:
    def __init__(self, floor: ExpVec, field: str, powers: list[Fraction]) -> None:
        self.T = floor
        self.field = field
        self.powers = powers
        self.seen: dict[Series, None] = {}

    def admit(self, f: Series | None) -> Series | None:
        """Normalize f to the working precision; None if unusable or already known."""
        if f is None:
            return None
        if not f.exact:
            if f.trunc < self.T:
                return None
            if f.trunc > self.T:
                f = f.truncate(self.T)
            if not f.terms:
                return None
        if len(f.terms) > MAX_TERMS or f in self.seen:
            return None
        self.seen[f] = None
        return f

    # each operation returns None instead of raising when it does not apply

    def _fits(self, f: Series, rel: ExpVec) -> bool:
        """Would the geometric/binomial sum reach ``rel`` within MAX_ITER terms?"""
        _, _, eps = _unit_split(f)
        if not eps.terms:
            return True
        ve = eps.terms[0][0]
        return not ve * MAX_ITER < min(rel, eps.trunc)

    def inverse(self, f: Series) -> Series | None:
        if not f.terms:
            return None
        if len(f.terms) == 1 and f.exact:
            e, c = f.terms[0]
            return Series.monomial(-e, c.inverse())
        target = self.T + f.terms[0][0]
        if not self._fits(f, target):
            return None
        try:
            return s_inverse(f, Precision(target))
        except HahnError:
            return None

    def power(self, f: Series, q: Fraction) -> Series | None:
        if not f.terms:
            return None
        e, c = f.terms[0]
        if q.denominator != 1 and c.sign() < 0:
            return None
        try:
            if len(f.terms) == 1 and f.exact:
                return Series.monomial(e * q, c.power(q, self.field))
            if q.denominator == 1 and q > 0:
                acc = f
                for _ in range(int(q) - 1):
                    acc = s_mul(acc, f)
                return acc
            target = self.T - e * q
            if not self._fits(f, target):
                return None
            return s_power(f, q, Precision(target), self.field)
        except HahnError:
            return None

    def unary(self, f: Series) -> list[Series | None]:
        out: list[Series | None] = [-f, self.inverse(f)]
        out.extend(self.power(f, q) for q in self.powers)
        return out

    def binary(self, f: Series, g: Series, both_orders: bool) -> list[Series]:
        out = [f + g, f - g, s_mul(f, g)]
        if both_orders:
            out.append(g - f)
        return out


@lru_cache(maxsize=64)
def _closure(gens, depth, p, height, width, field, dim) -> tuple[Series, ...]:
    T = p.target
    b = _Builder(T, field, exponents(depth))
    base: list[Series] = []
    for c in constants(height):
        s = b.admit(Series.const(c, dim))
        if s is not None:
            base.append(s)
    for g in gens:
        s = b.admit(g)
        if s is not None:
            base.append(s)

    atoms = list(base)
    level: list[Series] = []
    for f in base:
        for u in b.unary(f):
            u = b.admit(u)
            if u is not None:
                level.append(u)
                if f in gens:
                    atoms.append(u)
    for i, f in enumerate(base):
        for g in base[i:]:
            for r in b.binary(f, g, both_orders=True):
                r = b.admit(r)
                if r is not None:
                    level.append(r)

    for _ in range(2, depth + 1):
        frontier = sorted(level, key=Series.complexity)[:width]
        level = []
        for f in frontier:
            for u in b.unary(f):
                u = b.admit(u)
                if u is not None:
                    level.append(u)
            for a in atoms:
                for r in b.binary(f, a, both_orders=True):
                    r = b.admit(r)
                    if r is not None:
                        level.append(r)
    return tuple(b.seen)


__all__ = [
    "SubstructureSample",
    "sample_substructure",
    "explicit_sample",
    "constants",
    "exponents",
]
