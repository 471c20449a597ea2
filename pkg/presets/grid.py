"""
Benchmark grid cells and the grid file format

One cell per line: `method alpha delta eps q`; `#` starts a comment.
"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import List, Union

from errors import FormatError, InvalidArgumentError

logger = logging.getLogger(__name__)

METHODS = ("iadmm", "admm")


@dataclass(frozen=True)
class GridCell:
    method: str
    alpha: float
    delta: float
    epsilon: float
    q: float = 1.0

    def __post_init__(self):
        if self.method not in METHODS:
            raise InvalidArgumentError(f"Unknown method {self.method!r} (available: {', '.join(METHODS)})")
        if self.method == "admm" and self.alpha != 0.0:
            object.__setattr__(self, "alpha", 0.0)
        if self.alpha < 0 or self.delta <= 0 or self.epsilon <= 0 or not 0 < self.q <= 1:
            raise InvalidArgumentError(f"Grid cell out of range: {self}")

    @property
    def label(self) -> str:
        if self.method == "admm":
            return f"admm q={self.q:g}"
        return f"iadmm a={self.alpha:g} q={self.q:g}"

    def is_reference(self) -> bool:
        """The IADMM alpha = 0.5 cell anchors the efficiency ratios"""
        return self.method == "iadmm" and self.alpha == 0.5


def parse_grid_text(text: str) -> List[GridCell]:
    cells = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 5:
            raise FormatError("grid", f"line {number}: expected 'method alpha delta eps q', got {raw.strip()!r}")
        try:
            alpha, delta, eps, q = (float(x) for x in fields[1:])
        except ValueError:
            raise FormatError("grid", f"line {number}: non-numeric parameter in {raw.strip()!r}")
        cells.append(GridCell(fields[0].lower(), alpha, delta, eps, q))
    return cells


def read_grid_file(path: Union[str, Path]) -> List[GridCell]:
    cells = parse_grid_text(Path(path).read_text(encoding="utf-8"))
    logger.debug(f"Read {len(cells)} grid cells from {path}")
    return cells


def format_grid(cells: List[GridCell]) -> str:
    lines = ["# method alpha delta eps q"]
    lines += [f"{c.method} {c.alpha!r} {c.delta!r} {c.epsilon!r} {c.q!r}" for c in cells]
    return "\n".join(lines) + "\n"
