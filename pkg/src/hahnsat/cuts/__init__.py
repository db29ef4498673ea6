"""Cut classification and realization over sampled substructures."""

from __future__ import annotations

from .ambient import Ambient, extend_ambient, place_above, place_below, place_between
from .classify import Case, CutProblem, DeltaAnalysis, classify_cut
from .encode import FieldCut, encode_group_type_as_field_cut, monomial_for
from .realize import (
    Check,
    RealizationReport,
    realize_cut,
    realize_immediate,
    realize_residue_transcendental,
    realize_value_transcendental,
    verify_separation,
)
from .sample import SubstructureSample, explicit_sample, sample_substructure

__all__ = [
    "Ambient",
    "Case",
    "Check",
    "CutProblem",
    "DeltaAnalysis",
    "FieldCut",
    "RealizationReport",
    "SubstructureSample",
    "classify_cut",
    "encode_group_type_as_field_cut",
    "explicit_sample",
    "extend_ambient",
    "monomial_for",
    "place_above",
    "place_below",
    "place_between",
    "realize_cut",
    "realize_immediate",
    "realize_residue_transcendental",
    "realize_value_transcendental",
    "sample_substructure",
    "verify_separation",
]
