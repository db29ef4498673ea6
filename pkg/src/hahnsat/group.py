"""The value group Q^n under lexicographic order.

Vectors are compared coordinate by coordinate, the first coordinate being
the most significant.  The archimedean class of a nonzero vector is the
position of its leading nonzero coordinate, so the value set of Q^n has
exactly n points; a larger index means a smaller (more dominated) class.
"""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Union

from .errors import DimensionMismatch, ZeroArgument

Rational = Union[int, Fraction]

LESS, EQUAL, GREATER = -1, 0, 1


@total_ordering
class _Infinity:
    """Top element shared by the value set and the field valuation."""

    _instance: _Infinity | None = None

    def __new__(cls) -> _Infinity:
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INF"

    def __eq__(self, other: object) -> bool:
        return other is self

    def __hash__(self) -> int:
        return hash("hahnsat.INF")

    def __lt__(self, other: object) -> bool:
        return False

    def __gt__(self, other: object) -> bool:
        return other is not self

    def __add__(self, other: object) -> _Infinity:
        return self

    __radd__ = __add__

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()


class ExpVec(tuple):
    """An element of Q^n.

    Subclasses ``tuple`` so hashing and lexicographic comparison are the
    built-in ones.  ``+``, ``-`` and ``*`` are overridden to mean vector
    addition and rational scaling, not concatenation and repetition.
    """

    __slots__ = ()

    def __new__(cls, coords: Iterable[Rational | str]) -> ExpVec:
        return tuple.__new__(cls, (Fraction(c) for c in coords))

    @classmethod
    def _make(cls, coords: Iterable[Fraction]) -> ExpVec:
        return tuple.__new__(cls, coords)

    @classmethod
    def zero(cls, n: int) -> ExpVec:
        return tuple.__new__(cls, (Fraction(0),) * n)

    @classmethod
    def unit(cls, index: int, n: int, q: Rational = 1) -> ExpVec:
        """``q`` times the ``index``-th basis vector (1-based)."""
        coords = [Fraction(0)] * n
        coords[index - 1] = Fraction(q)
        return tuple.__new__(cls, coords)

    @property
    def dim(self) -> int:
        return len(self)

    def _check(self, other: ExpVec) -> None:
        if len(self) != len(other):
            raise DimensionMismatch(f"dimensions {len(self)} and {len(other)} differ")

    def __add__(self, other):  # type: ignore[override]
        if not isinstance(other, ExpVec):
            return NotImplemented
        if len(self) != len(other):
            self._check(other)
        return tuple.__new__(ExpVec, [a + b for a, b in zip(self, other)])

    def __sub__(self, other):
        if not isinstance(other, ExpVec):
            return NotImplemented
        if len(self) != len(other):
            self._check(other)
        return tuple.__new__(ExpVec, [a - b for a, b in zip(self, other)])

    def __neg__(self) -> ExpVec:
        return tuple.__new__(ExpVec, [-a for a in self])

    def __mul__(self, q):  # type: ignore[override]
        if not isinstance(q, (int, Fraction)):
            return NotImplemented
        return tuple.__new__(ExpVec, [a * q for a in self])

    __rmul__ = __mul__

    def __truediv__(self, q: Rational) -> ExpVec:
        q = Fraction(q)
        return tuple.__new__(ExpVec, [a / q for a in self])

    def __abs__(self) -> ExpVec:
        return -self if self.is_negative() else self

    def __bool__(self) -> bool:
        return any(self)

    def is_negative(self) -> bool:
        for a in self:
            if a:
                return a < 0
        return False

    def pad(self, k: int) -> ExpVec:
        """Embed into Q^(n+k) by appending k less significant zeros."""
        return tuple.__new__(ExpVec, tuple(self) + (Fraction(0),) * k)

    def __repr__(self) -> str:
        return f"ExpVec({render_expvec(self)!r})"

    def __str__(self) -> str:
        return render_expvec(self)

    def __reduce__(self):
        return (ExpVec, (tuple(self),))


def render_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def render_expvec(v: ExpVec) -> str:
    return "(" + ", ".join(render_rational(c) for c in v) + ")"


def parse_expvec(text: str) -> ExpVec:
    """Inverse of :func:`render_expvec`; also accepts a bare comma list."""
    body = text.strip()
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    parts = [p.strip() for p in body.split(",") if p.strip()]
    if not parts:
        raise ValueError(f"empty vector: {text!r}")
    return ExpVec(Fraction(p) for p in parts)


def lex_compare(u: ExpVec, v: ExpVec) -> int:
    """Return -1, 0 or 1 according to the lexicographic order."""
    if len(u) != len(v):
        raise DimensionMismatch(f"dimensions {len(u)} and {len(v)} differ")
    for a, b in zip(u, v):
        if a != b:
            return LESS if a < b else GREATER
    return EQUAL


def group_value(x: ExpVec) -> int | _Infinity:
    """Archimedean class of ``x``: 1-based index of its leading nonzero coordinate."""
    for i, a in enumerate(x, start=1):
        if a:
            return i
    return INF


def _nonzero(*xs: ExpVec) -> None:
    for x in xs:
        if not x:
            raise ZeroArgument("archimedean comparison of the zero vector")


def arch_equiv(x: ExpVec, y: ExpVec) -> bool:
    _nonzero(x, y)
    if len(x) != len(y):
        raise DimensionMismatch(f"dimensions {len(x)} and {len(y)} differ")
    return group_value(x) == group_value(y)


def arch_witness(x: ExpVec, y: ExpVec, bound: int = 64) -> int | None:
    """Least n <= bound with n|x| >= |y| and n|y| >= |x|, straight from the definition."""
    _nonzero(x, y)
    ax, ay = abs(x), abs(y)
    for n in range(1, bound + 1):
        if ax * n >= ay and ay * n >= ax:
            return n
    return None


def dominates(x: ExpVec, y: ExpVec) -> bool:
    """True iff x << y, i.e. n|x| < |y| for every n."""
    _nonzero(x, y)
    if len(x) != len(y):
        raise DimensionMismatch(f"dimensions {len(x)} and {len(y)} differ")
    return group_value(y) < group_value(x)


def component_embed(index: int, q: Rational, n: int) -> ExpVec:
    """Order-embedding of Q into the archimedean component with leading index ``index``."""
    if not 1 <= index <= n:
        raise DimensionMismatch(f"component index {index} outside 1..{n}")
    return ExpVec.unit(index, n, q)


def rational_rank(vs: Iterable[ExpVec]) -> int:
    from .linalg import rank

    return rank(list(vs))
