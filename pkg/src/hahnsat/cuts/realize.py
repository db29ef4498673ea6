"""Realizers for the three kinds of cut.

Each recipe builds a candidate from the witnesses found by the classifier,
re-verifies the intermediate claims of the argument on the sample, and
finally checks b < r < c for every sampled b in B and c in C.  A failed
check raises; a returned report only lists checks that passed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..coeff import Coeff
from ..errors import (
    AmbiguousAtDepth,
    ClaimViolation,
    ResidueCollision,
    SeparationFailure,
)
from ..group import ExpVec
from ..linalg import AffineSubspace, coordinates, in_span, interval_meets, span_basis
from ..pseudo import check_pseudo_cauchy, construct_pseudo_limit
from ..series import Precision, Series, f_valuation, residue, s_compare, s_inverse, s_mul
from .ambient import Ambient
from .classify import Case, CutProblem, DeltaAnalysis, classify_cut

MAX_DOUBLING = 128
STAIRCASE = 6


@dataclass(frozen=True)
class Check:
    relation: str  # "b < r" or "r < c"
    element: Series


@dataclass(frozen=True, eq=False)
class RealizationReport:
    analysis: DeltaAnalysis
    realizer: Series
    witnesses: dict
    checks: tuple[Check, ...]
    depth: int
    dim: int = 0
    claims: tuple[str, ...] = ()
    extra: dict = field(default_factory=dict)

    @property
    def case(self) -> Case:
        return self.analysis.case


def _v(f: Series) -> ExpVec:
    return f_valuation(f)


def verify_separation(cp: CutProblem, r: Series) -> tuple[Check, ...]:
    """b < r for all sampled b in B and r < c for all sampled c in C."""
    k = r.dim - cp.x0.dim
    checks = []
    for b in cp.lower:
        b = b.pad(k)
        if s_compare(b, r) >= 0:
            raise SeparationFailure(f"sampled {b} from B is not below the realizer {r}")
        checks.append(Check("b < r", b))
    for c in cp.upper:
        c = c.pad(k)
        if s_compare(r, c) >= 0:
            raise SeparationFailure(f"sampled {c} from C is not above the realizer {r}")
        checks.append(Check("r < c", c))
    return tuple(checks)


# -- immediate ---------------------------------------------------------------

def _staircase(cp: CutProblem, da: DeltaAnalysis) -> list[Series]:
    best: dict[ExpVec, Series] = {}
    for d, v in da.delta_samples:
        cur = best.get(v)
        if cur is None or d.complexity() < cur.complexity():
            best[v] = d
    vals = sorted(best)[-STAIRCASE:]
    seq = [best[v] for v in vals]
    for v, d in da.ladder:
        if v > vals[-1]:
            seq.append(d)
    return seq


def realize_immediate(cp: CutProblem, da: DeltaAnalysis) -> RealizationReport:
    if da.case is not Case.IMMEDIATE:
        raise ValueError(f"realize_immediate called on a {da.case} cut")
    seq = check_pseudo_cauchy(_staircase(cp, da))
    a = construct_pseudo_limit(seq)
    va = _v(a - cp.x0)
    base_max = max(v for _, v in da.delta_samples)
    if not va > base_max:
        raise SeparationFailure(f"v(a - x0) = {va} does not exceed the sampled maximum {base_max}")
    for d in seq.elems:
        if not va >= _v(d - cp.x0):
            raise ClaimViolation(f"ultrametric chain fails at {d}")
    checks = verify_separation(cp, a)
    claims = (
        f"v(a - x0) = {va} > max sampled Delta = {base_max}",
        "v(a - x0) >= v(d - x0) for every sequence element",
    )
    witnesses = {"sequence": seq.elems, "gammas": seq.gammas, "v_a_minus_x0": va}
    return RealizationReport(da, a, witnesses, checks, cp.sub.depth, a.dim, claims)


# -- value transcendental ----------------------------------------------------

def _sides(cp: CutProblem, d0: Series):
    """(far side, near side, d0 in B) where near lies strictly between d0 and x0."""
    if cp.below(d0):
        near = [b for b in cp.lower if s_compare(b, d0) > 0]
        return list(cp.upper), near, True
    near = [c for c in cp.upper if s_compare(c, d0) < 0]
    return list(cp.lower), near, False


def choose_value(gamma: ExpVec, basis, lo: ExpVec | None, hi: ExpVec | None) -> ExpVec | None:
    """A value g in the group realizing the cut of gamma over span(basis) and
    lying strictly between lo and hi, or None if no midpoint candidate works."""
    n = len(gamma)
    space = AffineSubspace.linear(list(basis), n)
    e1 = ExpVec.unit(1, n)
    lo = lo if lo is not None else gamma - e1
    hi = hi if hi is not None else gamma + e1
    g = (lo + gamma) / 2
    if not interval_meets(space, g, gamma):
        return g
    g = (gamma + hi) / 2
    if not interval_meets(space, gamma, g):
        return g
    return None


def realize_value_transcendental(
    cp: CutProblem, da: DeltaAnalysis, ambient: Ambient | None = None
) -> RealizationReport:
    if da.case is not Case.VALUE:
        raise ValueError(f"realize_value_transcendental called on a {da.case} cut")
    d0, gamma = da.d0, da.gamma
    far, near, d0_in_b = _sides(cp, d0)
    delta1 = sorted({_v(f - d0) for f in far})
    delta2 = sorted({_v(e - d0) for e in near})
    lo = delta1[-1] if delta1 else None
    hi = delta2[0] if delta2 else None
    if (lo is not None and not lo < gamma) or (hi is not None and not gamma < hi):
        raise ClaimViolation(f"expected max Delta1 = {lo} < gamma = {gamma} < min Delta2 = {hi}")

    # basis reduction: every parameter of the group type over one Q-basis
    basis = span_basis([*da.basis, *delta1, *delta2]) if (delta1 or delta2) else list(da.basis)
    if in_span(gamma, basis):
        raise ClaimViolation(f"gamma = {gamma} lies in the span of the sampled parameters")
    t_prime = tuple((v, tuple(coordinates(v, basis))) for v in [*delta1, *delta2])

    n = cp.x0.dim
    g = choose_value(gamma, basis, lo, hi)
    fresh = g is None
    if fresh:
        ambient = ambient or Ambient(n)
        if ambient.n < n + 1:
            ambient.extend(n + 1 - ambient.n)
        k = ambient.n - n
        g = gamma.pad(k) + ExpVec.unit(ambient.n, ambient.n)
        d0p = d0.pad(k)
    else:
        k = 0
        d0p = d0
    mono = Series.monomial(g)
    r = d0p + mono if d0_in_b else d0p - mono
    checks = verify_separation(cp, r)
    claims = (
        f"max Delta1 = {lo} < gamma = {gamma} < min Delta2 = {hi}",
        f"g = {g} realizes the cut of gamma over the span of {len(basis)} basis values",
    )
    witnesses = {
        "d0": d0,
        "d0_side": "B" if d0_in_b else "C",
        "gamma": gamma,
        "g": g,
        "a": mono,
        "basis": tuple(basis),
        "t_prime": t_prime,
        "fresh_coordinate": fresh,
        "max_delta1": lo,
        "min_delta2": hi,
    }
    return RealizationReport(da, r, witnesses, checks, cp.sub.depth, r.dim, claims)


# -- residue transcendental --------------------------------------------------

def _over(f: Series, a: Series, p: Precision) -> Series:
    if a.exact and len(a.terms) == 1:
        return f / a
    return s_mul(f, s_inverse(a, p))


def realize_residue_transcendental(cp: CutProblem, da: DeltaAnalysis) -> RealizationReport:
    if da.case is not Case.RESIDUE:
        raise ValueError(f"realize_residue_transcendental called on a {da.case} cut")
    d0, gamma, a = da.d0, da.gamma, da.a
    p = cp.precision
    dist = abs(cp.x0 - d0)
    n = 1
    while not (s_compare(a * n, dist) > 0 and s_compare(dist, a * Fraction(1, n)) > 0):
        n *= 2
        if n > 2**MAX_DOUBLING:
            raise ClaimViolation(f"no n with n*a > |x0 - d0| > a/n; v(a) = {_v(a)}, v(x0 - d0) = {_v(dist)}")
    d0_in_b = cp.below(d0)
    if d0_in_b:
        b0, c0 = d0 + a * Fraction(1, n), d0 + a * n
    else:
        b0, c0 = d0 - a * n, d0 - a * Fraction(1, n)

    bs = [b0, *(b for b in cp.lower if s_compare(b, b0) >= 0)]
    cs = [c0, *(c for c in cp.upper if s_compare(c, c0) <= 0)]
    for e in bs + cs:
        if _v(e - d0) != gamma:
            raise ClaimViolation(f"v({e} - d0) = {_v(e - d0)} differs from gamma = {gamma}")

    rho_b = sorted({residue(_over(b - d0, a, p)) for b in bs})
    rho_c = sorted({residue(_over(c - d0, a, p)) for c in cs})
    hi_b, lo_c = rho_b[-1], rho_c[0]
    if hi_b == lo_c:
        raise ResidueCollision(f"residue {hi_b} occurs on both sides of the cut")
    if not hi_b < lo_c:
        raise ClaimViolation(f"residue chains interleave: {hi_b} >= {lo_c}")

    target = residue(_over(cp.x0 - d0, a, p))
    if hi_b < target < lo_c:
        r2, chosen = target, "target residue"
    else:
        r2, chosen = (hi_b + lo_c) * Fraction(1, 2), "midpoint"
    r = a * r2 + d0
    checks = verify_separation(cp, r)
    claims = (
        f"v(b - d0) = gamma = v(c - d0) on {len(bs)} lower and {len(cs)} upper elements",
        f"residue chain strict: max rho_b = {hi_b} < min rho_c = {lo_c}",
        f"r'' = {r2} ({chosen})",
    )
    witnesses = {
        "d0": d0,
        "d0_side": "B" if d0_in_b else "C",
        "gamma": gamma,
        "a": a,
        "a_constructed": da.a_constructed,
        "n": n,
        "b0": b0,
        "c0": c0,
        "max_rho_b": hi_b,
        "min_rho_c": lo_c,
        "r2": Coeff.coerce(r2),
    }
    return RealizationReport(da, r, witnesses, checks, cp.sub.depth, r.dim, claims)


# -- driver ------------------------------------------------------------------

def realize_cut(cp: CutProblem, retries: int = 1, ambient: Ambient | None = None) -> RealizationReport:
    """Classify and dispatch; on AmbiguousAtDepth deepen up to ``retries`` times."""
    attempts = []
    while True:
        try:
            da = classify_cut(cp)
            break
        except AmbiguousAtDepth as exc:
            attempts.append(exc.depth)
            if len(attempts) > retries:
                raise
            cp = cp.deeper(1)
    if da.case is Case.IMMEDIATE:
        rep = realize_immediate(cp, da)
    elif da.case is Case.VALUE:
        rep = realize_value_transcendental(cp, da, ambient)
    else:
        rep = realize_residue_transcendental(cp, da)
    if attempts:
        rep.extra["deepened_from"] = tuple(attempts)
    return rep
