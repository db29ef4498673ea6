"""The canonical cut problems used across the test modules."""

from __future__ import annotations

from hahnsat.cuts import CutProblem, explicit_sample, sample_substructure
from hahnsat.syntax import parse


def value_instance(sign: int = 1, depth: int = 1) -> CutProblem:
    """x0 = t2 over the closure of t1: the value (0, 1) is new."""
    sub = sample_substructure([parse("t1", 2)], depth)
    return CutProblem(sub, parse("t2", 2).scale(sign))


def residue_instance(sign: int = 1, depth: int = 1) -> CutProblem:
    """x0 = sqrt2 + t1 over a sample with rational coefficients only."""
    sub = sample_substructure([parse("t1", 1)], depth, field="q")
    return CutProblem(sub, parse("sqrt2 + t1", 1).scale(sign))


def immediate_x0(terms: int = 8):
    # exponents 3/2, 5/3, 7/4, ... approach 2 with growing denominators
    text = " + ".join(f"t1^({2 * (i + 1) - 1}/{i + 1})" for i in range(1, terms + 1))
    return parse(text, 1)


def immediate_instance(depth: int = 1) -> CutProblem:
    return CutProblem(sample_substructure([parse("t1", 1)], depth), immediate_x0())


def deepening_instance() -> CutProblem:
    """Ambiguous at depth 1: t1^(1/2) only enters the sample at depth 2."""
    return CutProblem(sample_substructure([parse("t1", 2)], 1), parse("t1^(1/2) + t1*t2", 2))


def fresh_instance() -> CutProblem:
    """Every value of the span Q*(1, 0) is excluded, so g needs a new coordinate."""
    sub = explicit_sample([parse(e, 2) for e in ("0", "t1^(-1)", "t1")])
    return CutProblem(sub, parse("t2", 2))
