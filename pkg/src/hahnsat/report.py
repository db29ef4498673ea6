"""Line-delimited JSON reports.

The first line is a versioned header; every following line is one record
with ``command``, ``config`` and ``result``.  Exact values are written as
strings in the expression grammar (series), ``(q1, ..., qn)`` (vectors) or
``p/q`` (rationals); nothing is ever a float.  Keys are sorted and wall
times are left out unless asked for, so equal runs give equal bytes.
"""

from __future__ import annotations

import json
from dataclasses import asdict, is_dataclass
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import IO, Any, Iterable

from .coeff import Coeff
from .group import ExpVec, _Infinity, render_expvec
from .series import Precision, Series

FORMAT = "hahnsat-report"
VERSION = 1


def to_jsonable(obj: Any) -> Any:
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, ExpVec):
        return render_expvec(obj)
    if isinstance(obj, _Infinity):
        return "inf"
    if isinstance(obj, (Series, Coeff)):
        return str(obj)
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, Precision):
        return render_expvec(obj.target)
    if isinstance(obj, float):
        raise TypeError("floating point values do not belong in a report")
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = [to_jsonable(x) for x in obj]
        return sorted(items, key=json.dumps) if isinstance(obj, (set, frozenset)) else items
    if is_dataclass(obj):
        return to_jsonable(asdict(obj))
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def header() -> dict[str, Any]:
    return {"format": FORMAT, "version": VERSION}


def record(command: str, config: dict[str, Any], result: dict[str, Any]) -> dict[str, Any]:
    return {"command": command, "config": to_jsonable(config), "result": to_jsonable(result)}


def dumps(records: Iterable[dict[str, Any]]) -> str:
    lines = [json.dumps(header(), sort_keys=True)]
    lines.extend(json.dumps(r, sort_keys=True, ensure_ascii=False) for r in records)
    return "\n".join(lines) + "\n"


def write(records: Iterable[dict[str, Any]], out: str | Path | IO[str]) -> None:
    text = dumps(records)
    if isinstance(out, (str, Path)):
        Path(out).write_text(text, encoding="utf-8")
    else:
        out.write(text)


def loads(text: str) -> list[dict[str, Any]]:
    lines = [json.loads(line) for line in text.splitlines() if line.strip()]
    if not lines or lines[0].get("format") != FORMAT:
        raise ValueError("not a hahnsat report")
    if lines[0].get("version") != VERSION:
        raise ValueError(f"unsupported report version {lines[0].get('version')}")
    return lines[1:]


# -- payload builders --------------------------------------------------------

def suite_result(rep, timing: bool = False) -> dict[str, Any]:
    out = {
        "suite": rep.name,
        "passed": rep.passed,
        "failed": rep.failed,
        "counts": dict(sorted(rep.counts.items())),
        "notes": rep.notes,
        "counterexamples": rep.counterexamples,
        "records": rep.records,
    }
    if timing:
        out["wall_time"] = f"{rep.wall_time:.6f}"
    return out


def suite_config(cfg) -> dict[str, Any]:
    return {
        "seed": cfg.seed,
        "trials": cfg.trials,
        "depth": cfg.depth,
        "n": cfg.n,
        "k_max": cfg.k_max,
        "precision": cfg.prec(),
        "order": cfg.order,
    }


def analysis_result(da) -> dict[str, Any]:
    values = sorted({v for _, v in da.delta_samples})
    return {
        "case": da.case,
        "depth": da.depth,
        "note": da.note,
        "d0": da.d0,
        "gamma": da.gamma,
        "a": da.a,
        "a_constructed": da.a_constructed,
        "basis": list(da.basis),
        "ladder": [{"max_delta": v, "argmax": d} for v, d in da.ladder],
        "sample_size": len(da.delta_samples),
        "delta_values": values,
    }


def realization_result(rep) -> dict[str, Any]:
    return {
        "case": rep.case,
        "realizer": rep.realizer,
        "dim": rep.dim,
        "depth": rep.depth,
        "analysis": analysis_result(rep.analysis),
        "witnesses": rep.witnesses,
        "claims": list(rep.claims),
        "checks_passed": len(rep.checks),
        "checks": [[c.relation, c.element] for c in rep.checks],
        "extra": rep.extra,
    }
