"""Classification of a cut over a sampled substructure.

The cut is given extensionally by a target x0 of the ambient field: B is
everything in the sample below x0 and C everything above.  Writing
Delta = {v(d - x0) : d in the sample}, the three cases are

* immediate: Delta has no largest element,
* value transcendental: the maximum gamma exists and is not a value of M',
* residue transcendental: the maximum exists and is a value of M'.

"Has no largest element" cannot be seen in a finite sample.  The proxy used
is a refinement ladder: if deepening the sample by one level improves the
maximum and deepening by two improves it again, the cut is reported as
immediate; one improvement followed by a stall means the base depth was
simply too shallow and AmbiguousAtDepth is raised.  Every verdict is
relative to the sample and says so.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property

from ..errors import AmbiguousAtDepth, EqualityDetected, UndecidableAtPrecision
from ..group import ExpVec
from ..linalg import in_span, span_basis
from ..series import Series
from .sample import SubstructureSample

SAMPLE_NOTE = "classification is relative to the finite sample of M'"


class Case(str, Enum):
    IMMEDIATE = "ImmediateTranscendental"
    VALUE = "ValueTranscendental"
    RESIDUE = "ResidueTranscendental"

    def __str__(self) -> str:
        return self.value


def delta(d: Series, x0: Series) -> ExpVec:
    diff = d - x0
    if diff.terms:
        return diff.terms[0][0]
    if diff.exact:
        raise EqualityDetected(f"x0 equals the sample element {d}")
    raise UndecidableAtPrecision(f"{d} and x0 agree below {diff.trunc}")


@dataclass(frozen=True, eq=False)
class CutProblem:
    sub: SubstructureSample
    x0: Series

    def __post_init__(self) -> None:
        if self.x0.dim != self.sub.dim:
            raise ValueError(f"x0 lives in dimension {self.x0.dim}, sample in {self.sub.dim}")
        self.deltas  # validates distinguishability from every element

    @property
    def precision(self):
        return self.sub.precision

    @cached_property
    def deltas(self) -> tuple[tuple[Series, ExpVec], ...]:
        return tuple((d, delta(d, self.x0)) for d in self.sub.elems)

    @cached_property
    def lower(self) -> tuple[Series, ...]:
        """Sampled B."""
        return tuple(d for d in self.sub.elems if (d - self.x0).terms[0][1].sign() < 0)

    @cached_property
    def upper(self) -> tuple[Series, ...]:
        """Sampled C."""
        return tuple(d for d in self.sub.elems if (d - self.x0).terms[0][1].sign() > 0)

    def below(self, d: Series) -> bool:
        return (d - self.x0).terms[0][1].sign() < 0

    def deeper(self, k: int = 1) -> CutProblem:
        return CutProblem(self.sub.deeper(k), self.x0)


@dataclass(frozen=True, eq=False)
class DeltaAnalysis:
    case: Case
    depth: int
    delta_samples: tuple[tuple[Series, ExpVec], ...]
    ladder: tuple[tuple[ExpVec, Series], ...]
    d0: Series | None = None
    gamma: ExpVec | None = None
    basis: tuple[ExpVec, ...] = ()
    a: Series | None = None
    a_constructed: bool = False
    note: str = SAMPLE_NOTE
    extra: dict = field(default_factory=dict)

    @property
    def max_delta(self) -> ExpVec:
        return self.ladder[0][0]


def _best(pairs) -> tuple[ExpVec, Series]:
    top = max(v for _, v in pairs)
    d = min((d for d, v in pairs if v == top), key=Series.complexity)
    return top, d


def classify_cut(cp: CutProblem) -> DeltaAnalysis:
    deltas = cp.deltas
    top, d0 = _best(deltas)
    ladder = [(top, d0)]
    if not cp.sub.explicit:
        nxt = _best(cp.deeper(1).deltas)
        if nxt[0] > top:
            ladder.append(nxt)
            nxt2 = _best(cp.deeper(2).deltas)
            if nxt2[0] > nxt[0]:
                ladder.append(nxt2)
                return DeltaAnalysis(Case.IMMEDIATE, cp.sub.depth, deltas, tuple(ladder))
            raise AmbiguousAtDepth(
                f"max of Delta is {top} at depth {cp.sub.depth} but {nxt[0]} at depth "
                f"{cp.sub.depth + 1}; deepen",
                cp.sub.depth,
            )
        ladder.append(nxt)

    basis = tuple(span_basis(cp.sub.values()))
    if not in_span(top, basis):
        return DeltaAnalysis(Case.VALUE, cp.sub.depth, deltas, tuple(ladder), d0, top, basis)

    candidates = [e for e in cp.sub.elems if e.terms and e.terms[0][0] == top and e.terms[0][1].sign() > 0]
    if candidates:
        a, constructed = min(candidates, key=Series.complexity), False
    else:
        # gamma is a Q-combination of sampled values; the product of the
        # normalized elements carrying them has leading term exactly t^gamma,
        # and only the leading term enters the construction
        a, constructed = Series.monomial(top), True
    return DeltaAnalysis(Case.RESIDUE, cp.sub.depth, deltas, tuple(ladder), d0, top, basis, a, constructed)
