"""Pseudo-Cauchy sequences over truncated Hahn series.

Only finite prefixes a_0, ..., a_k of omega-sequences are handled.  For the
pseudo-limit test the last index is exempt by default: it has no successor
inside the prefix, so there is no gamma_k to compare against.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .errors import InsufficientPrecision, NotPseudoCauchy, UndecidableAtPrecision
from .group import INF, ExpVec
from .series import Series, f_valuation, s_compare


def _value(x: Series) -> ExpVec:
    try:
        return f_valuation(x)
    except InsufficientPrecision as exc:
        raise UndecidableAtPrecision(str(exc)) from exc


def _exceeds(x: Series, g: ExpVec) -> bool:
    """v(x) > g, decided from a lower bound when x is indistinguishable from 0."""
    if x.terms:
        return x.terms[0][0] > g
    if x.exact or x.trunc > g:
        return True
    raise UndecidableAtPrecision(f"cannot compare v(x) with {g}: no term below {x.trunc}")


@dataclass(frozen=True)
class PseudoSeq:
    elems: tuple[Series, ...]
    gammas: tuple[ExpVec, ...]

    def __len__(self) -> int:
        return len(self.elems)

    @property
    def last(self) -> Series:
        return self.elems[-1]

    def extend(self, b: Series) -> PseudoSeq:
        return check_pseudo_cauchy([*self.elems, b])


def check_pseudo_cauchy(xs: Sequence[Series]) -> PseudoSeq:
    """Validate the full triple condition and, independently, the
    consecutive criterion together with the equal-differences fact."""
    xs = tuple(xs)
    if len(xs) < 3:
        raise NotPseudoCauchy(f"need at least 3 elements, got {len(xs)}")
    k = len(xs)
    vals = {}
    for r in range(k):
        for s in range(r + 1, k):
            vals[r, s] = _value(xs[s] - xs[r])
            if vals[r, s] is INF:
                raise NotPseudoCauchy(f"a{r} = a{s}: a repeated element has infinite difference value", (r, s, s))
    for r in range(k):
        for s in range(r + 1, k):
            for t in range(s + 1, k):
                if not vals[r, s] < vals[s, t]:
                    raise NotPseudoCauchy(
                        f"v(a{s} - a{r}) = {vals[r, s]} is not below v(a{t} - a{s}) = {vals[s, t]}",
                        (r, s, t),
                    )
    gammas = tuple(vals[r, r + 1] for r in range(k - 1))
    for r in range(k - 2):
        if not gammas[r] < gammas[r + 1]:
            raise NotPseudoCauchy(f"consecutive values not increasing at {r}", (r, r + 1, r + 2))
    for r in range(k):
        for s in range(r + 1, k):
            if vals[r, s] != gammas[r]:
                raise NotPseudoCauchy(f"v(a{s} - a{r}) differs from gamma_{r}", (r, s, s))
    return PseudoSeq(xs, gammas)


def is_pseudo_limit(x: Series, s: PseudoSeq, exempt_last: bool = True) -> bool:
    """v(x - a_r) = gamma_r for every r < k.

    With ``exempt_last=False`` the last element must also be approached
    beyond gamma_{k-1}, i.e. v(x - a_k) > gamma_{k-1}, as if the sequence
    continued past the prefix.
    """
    for r, g in enumerate(s.gammas):
        if _value(x - s.elems[r]) != g:
            return False
    if not exempt_last:
        return _exceeds(x - s.last, s.gammas[-1])
    return True


def construct_pseudo_limit(s: PseudoSeq) -> Series:
    """Stitch the sequence: keep the terms of a_k up to and including gamma_{k-1}.

    For each r the result agrees with a_{r+1} on exponents <= gamma_r, since
    a_k and a_{r+1} differ only from gamma_{r+1} on.  The result is exact.
    """
    top = s.gammas[-1]
    terms = tuple(t for t in s.last.terms if t[0] <= top)
    return Series._raw(terms, INF, s.last.dim)


def limit_type_fragment(s: PseudoSeq, n_max: int) -> Callable[[Series], bool]:
    """Predicate for n|x - a_{v+1}| < |a_v - a_{v+1}| over v < k-1 and 1 <= n <= n_max.

    n|u| < |w| is monotone in n, so checking n = n_max settles every smaller n.
    """
    pairs = [(abs(s.elems[v + 1] - s.elems[v]), s.elems[v + 1]) for v in range(len(s) - 2)]

    def holds(x: Series) -> bool:
        for width, nxt in pairs:
            if s_compare(abs(x - nxt) * n_max, width) >= 0:
                return False
        return True

    return holds


def limit_type_fragment_literal(s: PseudoSeq, n_max: int) -> Callable[[Series], bool]:
    """The same predicate evaluated for every n separately (slow; for cross-checks)."""
    def holds(x: Series) -> bool:
        for v in range(len(s) - 2):
            width = abs(s.elems[v] - s.elems[v + 1])
            dist = abs(x - s.elems[v + 1])
            for n in range(1, n_max + 1):
                if not dist * n < width:
                    return False
        return True

    return holds


def valuation_criterion(x: Series, s: PseudoSeq) -> bool:
    """v(x - a_{v+1}) > gamma_v for every v < k-1: the valuation side of the bridge."""
    return all(_exceeds(x - s.elems[v + 1], s.gammas[v]) for v in range(len(s) - 2))


def random_pseudo_cauchy(rng, n: int, length: int, height: int = 6, start: Series | None = None) -> list[Series]:
    """a_{r+1} = a_r + c_r t^{gamma_r} with gammas strictly increasing.

    The gammas are drawn as random lex-increasing vectors; coefficients are
    random nonzero rationals of bounded height.
    """
    a = start if start is not None else Series.zero(n)
    gamma = [Fraction(rng.randint(-height, height), rng.randint(1, height)) for _ in range(n)]
    out = [a]
    for _ in range(length - 1):
        c = Fraction(rng.choice([-1, 1]) * rng.randint(1, height), rng.randint(1, height))
        a = a + Series.monomial(ExpVec(gamma), c)
        out.append(a)
        # step to a strictly larger vector: bump one coordinate, reset the later ones
        i = rng.randrange(n)
        gamma = gamma[:i] + [gamma[i] + Fraction(rng.randint(1, height), rng.randint(1, height))] + [
            Fraction(rng.randint(-height, height), rng.randint(1, height)) for _ in range(n - i - 1)
        ]
    return out
