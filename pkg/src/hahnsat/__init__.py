"""Exact Hahn series fields, their natural valuation, and cut realization."""

from __future__ import annotations

from .coeff import Coeff
from .errors import HahnError
from .group import (
    INF,
    ExpVec,
    arch_equiv,
    arch_witness,
    component_embed,
    dominates,
    group_value,
    lex_compare,
    rational_rank,
)
from .pseudo import (
    PseudoSeq,
    check_pseudo_cauchy,
    construct_pseudo_limit,
    is_pseudo_limit,
    limit_type_fragment,
)
from .series import (
    Precision,
    Series,
    f_valuation,
    residue,
    s_abs,
    s_add,
    s_compare,
    s_inverse,
    s_mul,
    s_power,
)
from .syntax import Context, parse, render

__version__ = "0.1.0"

__all__ = [
    "INF",
    "Coeff",
    "Context",
    "ExpVec",
    "HahnError",
    "Precision",
    "PseudoSeq",
    "Series",
    "arch_equiv",
    "arch_witness",
    "check_pseudo_cauchy",
    "component_embed",
    "construct_pseudo_limit",
    "dominates",
    "f_valuation",
    "group_value",
    "is_pseudo_limit",
    "lex_compare",
    "limit_type_fragment",
    "parse",
    "rational_rank",
    "render",
    "residue",
    "s_abs",
    "s_add",
    "s_compare",
    "s_inverse",
    "s_mul",
    "s_power",
]
