"""
Preset Manager - named methods and benchmark grids
"""

import itertools
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import yaml

from config import Config
from errors import InvalidArgumentError
from presets.grid import GridCell

logger = logging.getLogger(__name__)


class PresetManager:
    """Loads the method catalog and expands named grids into cells"""

    def __init__(self, config_file: Optional[Union[str, Path]] = None):
        """Initialize with configuration file"""
        if config_file is None:
            config_file = Config.PRESETS_FILE

        self.config_file = Path(config_file)
        self.config = self._load_config()
        self.methods: Dict[str, Dict[str, Any]] = self.config.get("methods", {}) or {}
        self.grids: Dict[str, Dict[str, Any]] = self.config.get("grids", {}) or {}

    def _load_config(self) -> dict:
        """Load configuration from YAML file"""
        try:
            with open(self.config_file, "r", encoding="utf-8") as f:
                return yaml.safe_load(f) or {}
        except Exception as e:
            logger.error(f"Failed to load presets: {e}")
            return {}

    def get_method(self, name: str) -> Optional[Dict[str, Any]]:
        return self.methods.get(name)

    def list_methods(self) -> List[str]:
        return list(self.methods.keys())

    def list_grids(self) -> List[str]:
        return list(self.grids.keys())

    def describe(self) -> Dict[str, Dict[str, str]]:
        """Descriptions of every method and grid"""
        return {
            "methods": {name: cfg.get("description", "") for name, cfg in self.methods.items()},
            "grids": {name: cfg.get("description", "") for name, cfg in self.grids.items()},
        }

    def expand_grid(self, name: str) -> List[GridCell]:
        """
        Expand a named grid into cells

        Args:
            name: Grid name from the presets file

        Returns:
            Cells in methods x alpha x delta x epsilon order, duplicates removed
        """
        grid = self.grids.get(name)
        if grid is None:
            raise InvalidArgumentError(f"Unknown preset grid: {name} (available: {', '.join(self.grids)})")

        deltas = [float(x) for x in grid.get("delta", [Config.DEFAULT_DELTA])]
        epsilons = [float(x) for x in grid.get("epsilon", [Config.DEFAULT_EPSILON])]
        alphas = grid.get("alpha")

        cells: List[GridCell] = []
        for method_name in grid.get("methods", []):
            method = self.get_method(method_name)
            if method is None:
                raise InvalidArgumentError(f"Grid {name} names unknown method {method_name}")
            kind = method["method"]
            q = float(method.get("q", 1.0))
            method_alphas = [float(a) for a in alphas] if alphas and kind == "iadmm" else [float(method["alpha"])]
            for alpha, delta, eps in itertools.product(method_alphas, deltas, epsilons):
                cell = GridCell(kind, alpha, delta, eps, q)
                if cell not in cells:
                    cells.append(cell)

        logger.debug(f"Preset grid {name} expanded to {len(cells)} cells")
        return cells
