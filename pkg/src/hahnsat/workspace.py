"""Plain-text workspaces.

    # hahnsat workspace v1
    dim 2
    coeff qsqrt2
    precision (4, 0)
    let x = t1 + t2^(1/2)

Bindings are stored in rendered form, which parses back to the identical
series, so loading a saved workspace is idempotent.
"""

from __future__ import annotations

import re
from pathlib import Path

from .coeff import FIELDS
from .cuts.ambient import Ambient
from .errors import ParseError
from .group import parse_expvec, render_expvec
from .series import Precision, Series
from .syntax import Context, parse, render

HEADER = "# hahnsat workspace v1"
_LET = re.compile(r"let\s+([A-Za-z_][A-Za-z_0-9]*)\s*=\s*(.+)")
_RESERVED = {"O", "sqrt2"}


class Workspace:
    def __init__(self, dim: int = 1, field: str = "qsqrt2", precision: Precision | None = None) -> None:
        if field not in FIELDS:
            raise ValueError(f"unknown coefficient field {field!r}")
        self.ambient = Ambient(dim)
        self.field = field
        self.precision = precision or Precision.default(dim)
        if self.precision.dim != dim:
            raise ValueError(f"precision {self.precision.target} does not match dimension {dim}")
        self.bindings: dict[str, Series] = {}

    @property
    def dim(self) -> int:
        return self.ambient.n

    def context(self) -> Context:
        return Context(self.dim, self.field, self.precision, dict(self.bindings))

    def parse(self, text: str) -> Series:
        return parse(text, self.context())

    def bind(self, name: str, value: Series | str) -> Series:
        if name in _RESERVED or re.fullmatch(r"t\d+", name):
            raise ValueError(f"{name!r} is reserved")
        if isinstance(value, str):
            value = self.parse(value)
        if value.dim != self.dim:
            raise ValueError(f"binding {name} has dimension {value.dim}, workspace {self.dim}")
        self.bindings[name] = value
        return value

    def extend(self, k: int = 1) -> int:
        """Grow the ambient dimension and re-embed every binding."""
        old = self.dim
        n = self.ambient.extend(k)
        self.bindings = {name: s.pad(n - old) for name, s in self.bindings.items()}
        self.precision = self.precision.pad(n - old)
        return n

    # -- file format ---------------------------------------------------------

    def dumps(self) -> str:
        lines = [
            HEADER,
            f"dim {self.dim}",
            f"coeff {self.field}",
            f"precision {render_expvec(self.precision.target)}",
        ]
        lines.extend(f"let {name} = {render(s)}" for name, s in self.bindings.items())
        return "\n".join(lines) + "\n"

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.dumps(), encoding="utf-8")

    @classmethod
    def loads(cls, text: str) -> Workspace:
        lines = [ln.strip() for ln in text.splitlines()]
        if not lines or lines[0] != HEADER:
            raise ParseError(f"workspace must start with {HEADER!r}", 0)
        dim, field, prec = 1, "qsqrt2", None
        lets = []
        for no, line in enumerate(lines[1:], start=2):
            if not line or line.startswith("#"):
                continue
            key, _, rest = line.partition(" ")
            if key == "dim":
                dim = int(rest)
            elif key == "coeff":
                field = rest.strip()
            elif key == "precision":
                prec = Precision(parse_expvec(rest))
            elif key == "let":
                m = _LET.fullmatch(line)
                if m is None:
                    raise ParseError(f"malformed binding on line {no}", 0)
                lets.append(m.groups())
            else:
                raise ParseError(f"unknown directive {key!r} on line {no}", 0)
        ws = cls(dim, field, prec)
        for name, expr in lets:
            ws.bind(name, expr)
        return ws

    @classmethod
    def load(cls, path: str | Path) -> Workspace:
        return cls.loads(Path(path).read_text(encoding="utf-8"))
