"""
Solver registry and initialization
"""

import logging
from typing import Dict, Optional, Type

from config import Config
from solvers.admm import ADMMSolver, step_admm
from solvers.base import BaseSolver, splitting_update
from solvers.config import SolverConfig, TheorySettings
from solvers.iadmm import IADMMSolver, step_iadmm
from solvers.state import SolverState, StepOutcome, initial_state

logger = logging.getLogger(__name__)

# Solver registry
SOLVERS: Dict[str, Type[BaseSolver]] = {
    "iadmm": IADMMSolver,
    "admm": ADMMSolver,
}


def get_solver(cfg: SolverConfig) -> BaseSolver:
    """Solver instance for cfg.method"""
    if cfg.method == "admm":
        return ADMMSolver()
    return IADMMSolver(cfg.alpha)


def get_solver_class(method: str) -> Optional[Type[BaseSolver]]:
    return SOLVERS.get(method)


def list_available_methods() -> list[str]:
    return list(SOLVERS.keys())


def get_method_descriptions() -> Dict[str, str]:
    return {name: Config.METHOD_DESCRIPTIONS.get(name, "No description") for name in SOLVERS}


__all__ = [
    "BaseSolver",
    "IADMMSolver",
    "ADMMSolver",
    "SOLVERS",
    "SolverConfig",
    "TheorySettings",
    "SolverState",
    "StepOutcome",
    "get_solver",
    "get_solver_class",
    "list_available_methods",
    "get_method_descriptions",
    "initial_state",
    "splitting_update",
    "step_iadmm",
    "step_admm",
]
