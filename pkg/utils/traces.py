"""
CSV trace and result tables
Floats are written with repr so every value parses back bit-exactly; None is an empty cell
"""

import csv
import logging
from pathlib import Path
from typing import IO, Any, Dict, List, Optional, Sequence, Union

from errors import FormatError

logger = logging.getLogger(__name__)

TRACE_COLUMNS = (
    "k",
    "objective",
    "lagrangian",
    "F",
    "res",
    "res_i",
    "err",
    "snr",
    "dual_ratio",
    "subgrad_ratio",
    "tu_minus_v",
)


def format_cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def parse_cell(text: str) -> Optional[Union[int, float, str]]:
    """Inverse of format_cell for numeric cells; other text is returned as is"""
    if text == "":
        return None
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        return text


class TableWriter:
    """Append-only CSV writer: header on open, every row flushed as soon as it is written"""

    def __init__(self, path: Union[str, Path], columns: Sequence[str]):
        self.path = Path(path)
        self.columns = tuple(columns)
        self.rows_written = 0
        self._handle: Optional[IO[str]] = None
        self._writer: Optional[csv.DictWriter] = None

    def open(self) -> "TableWriter":
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self._handle = open(self.path, "w", newline="", encoding="utf-8")
        self._writer = csv.DictWriter(self._handle, fieldnames=self.columns, lineterminator="\n")
        self._writer.writeheader()
        self._handle.flush()
        return self

    def write(self, row: Dict[str, Any]) -> None:
        if self._writer is None or self._handle is None:
            raise RuntimeError(f"{self.path} is not open")
        self._writer.writerow({name: format_cell(row.get(name)) for name in self.columns})
        self._handle.flush()
        self.rows_written += 1

    def close(self) -> None:
        if self._handle is not None:
            self._handle.close()
            self._handle = None
            self._writer = None
            logger.info(f"Wrote {self.rows_written} rows to {self.path}")

    def __enter__(self) -> "TableWriter":
        return self.open()

    def __exit__(self, *exc_info: Any) -> None:
        self.close()


class TraceWriter(TableWriter):
    """Per-iteration trace with the fixed column order"""

    def __init__(self, path: Union[str, Path]):
        super().__init__(path, TRACE_COLUMNS)


def read_table(path: Union[str, Path]) -> List[Dict[str, Any]]:
    with open(path, newline="", encoding="utf-8") as handle:
        return [{key: parse_cell(value) for key, value in row.items()} for row in csv.DictReader(handle)]


def read_trace(path: Union[str, Path]) -> List[Dict[str, Any]]:
    """Trace rows with k as int, the other columns as float or None"""
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        if tuple(reader.fieldnames or ()) != TRACE_COLUMNS:
            raise FormatError("columns", f"{path} does not have the trace columns {', '.join(TRACE_COLUMNS)}")
        rows = []
        for row in reader:
            parsed: Dict[str, Any] = {"k": int(row["k"])}
            for name in TRACE_COLUMNS[1:]:
                parsed[name] = float(row[name]) if row[name] != "" else None
            rows.append(parsed)
        return rows
