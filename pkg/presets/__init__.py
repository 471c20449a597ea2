"""
Preset methods and grids
"""

from typing import List

from .grid import GridCell, format_grid, parse_grid_text, read_grid_file
from .manager import PresetManager

PRESET_PREFIX = "preset:"

# Singleton instance
_manager = PresetManager()


def list_grids() -> List[str]:
    """Names of all preset grids"""
    return _manager.list_grids()


def expand_grid(name: str) -> List[GridCell]:
    """Cells of a preset grid"""
    return _manager.expand_grid(name)


def describe_presets():
    """Descriptions of all methods and grids"""
    return _manager.describe()


def load_grid(spec: str) -> List[GridCell]:
    """`preset:<name>` or a path to a grid file"""
    if spec.startswith(PRESET_PREFIX):
        return expand_grid(spec[len(PRESET_PREFIX) :])
    return read_grid_file(spec)


# Export the manager for direct access if needed
manager = _manager

__all__ = [
    "GridCell",
    "PresetManager",
    "manager",
    "list_grids",
    "expand_grid",
    "describe_presets",
    "load_grid",
    "parse_grid_text",
    "read_grid_file",
    "format_grid",
]
