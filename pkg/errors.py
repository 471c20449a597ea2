"""
Exception hierarchy for iadmm-deblur
"""

from typing import Any, Optional


class DeblurError(Exception):
    """Base class for all library errors"""


class ShapeError(DeblurError, ValueError):
    """Vector length or array shape does not match the operator or image"""


class InvalidArgumentError(DeblurError, ValueError):
    """Parameter outside its admissible range"""


class FormatError(DeblurError):
    """Malformed input file; `field` names the offending header field, column set or payload"""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


class UnsupportedVariantError(DeblurError):
    """Operation not available for the requested difference-operator variant"""


class EstimationError(DeblurError):
    """Spectral estimate could not be produced"""


class SolveError(DeblurError):
    """u-update linear solve failed inside the iteration loop"""

    def __init__(self, iteration: int, report: Optional[Any] = None, message: str = ""):
        detail = message or "linear solve did not converge"
        super().__init__(f"iteration {iteration}: {detail}")
        self.iteration = iteration
        self.report = report


class DivergenceError(DeblurError):
    """Iterates became non-finite"""

    def __init__(self, iteration: int, component: str = "state"):
        super().__init__(f"iteration {iteration}: non-finite values in {component}")
        self.iteration = iteration
        self.component = component
