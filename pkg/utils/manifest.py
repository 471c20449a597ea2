"""
Run manifests: sectioned key=value text written next to every output
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Mapping, Optional, Union

from config import Config
from errors import FormatError
from solvers.config import SolverConfig
from utils.traces import format_cell

logger = logging.getLogger(__name__)

SECTIONS = ("run", "config", "degradation", "paths", "constants", "results")
HEADER = "# iadmm-deblur manifest"


@dataclass
class RunManifest:
    """Everything needed to repeat a command: parameters, inputs, outputs and what came out"""

    command: str
    version: str = Config.VERSION
    config: Dict[str, Any] = field(default_factory=dict)
    degradation: Dict[str, Any] = field(default_factory=dict)
    paths: Dict[str, Any] = field(default_factory=dict)
    constants: Dict[str, Any] = field(default_factory=dict)
    results: Dict[str, Any] = field(default_factory=dict)

    def section(self, name: str) -> Dict[str, Any]:
        if name == "run":
            return {"command": self.command, "version": self.version}
        return getattr(self, name)

    def to_text(self) -> str:
        lines = [HEADER]
        for name in SECTIONS:
            values = self.section(name)
            if not values:
                continue
            lines.append(f"[{name}]")
            width = max(len(key) for key in values)
            for key, value in values.items():
                lines.append(f"{key.ljust(width)} = {format_cell(value)}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "RunManifest":
        sections: Dict[str, Dict[str, str]] = {name: {} for name in SECTIONS}
        current: Optional[str] = None
        for number, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if line.startswith("[") and line.endswith("]"):
                current = line[1:-1]
                if current not in sections:
                    raise FormatError("section", f"line {number}: unknown section [{current}]")
                continue
            if current is None or "=" not in line:
                raise FormatError("line", f"line {number}: expected key = value inside a section")
            key, value = line.split("=", 1)
            sections[current][key.strip()] = value.strip()

        run = sections["run"]
        if "command" not in run:
            raise FormatError("command", "manifest has no [run] command")
        return cls(
            command=run["command"],
            version=run.get("version", ""),
            config=dict(sections["config"]),
            degradation=dict(sections["degradation"]),
            paths=dict(sections["paths"]),
            constants=dict(sections["constants"]),
            results=dict(sections["results"]),
        )

    def write(self, path: Union[str, Path]) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.to_text(), encoding="utf-8")
        logger.info(f"Wrote manifest {path}")
        return path

    @classmethod
    def read(cls, path: Union[str, Path]) -> "RunManifest":
        return cls.from_text(Path(path).read_text(encoding="utf-8"))


def config_to_section(cfg: SolverConfig) -> Dict[str, Any]:
    return cfg.model_dump()


def config_from_manifest(manifest: RunManifest) -> SolverConfig:
    """Rebuild the solver parameters; empty cells fall back to the field default"""
    values: Mapping[str, Any] = {key: value for key, value in manifest.config.items() if value not in ("", None)}
    return SolverConfig.model_validate(values)
