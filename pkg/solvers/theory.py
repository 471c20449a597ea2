"""
Theory constants of the inertial scheme

With c = theta^2 ||K||_2^4:

    delta_min = max(1, 6 c / nu + 7 alpha^2 c / nu, c)
    h         = nu / 2 - (3 c / delta + 7 alpha^2 c / (2 delta))
    gamma_v   = max((1 + delta) theta ||K||^2, alpha (1 + delta) theta ||K||^2)
    gamma_u   = max(theta ||T|| ||K||^2 + 7 alpha^2 c / (2 delta), alpha theta ||T|| ||K||^2)
    gamma_p   = max(theta ||K||^2 / delta, alpha theta ||K||^2 / delta)
    gamma     = gamma_u + gamma_v + gamma_p + 7 alpha^2 c / delta

The last entry of delta_min is the boundedness threshold delta_bound = c.
"""

import logging
from dataclasses import asdict, dataclass, replace
from typing import Any, Dict, Optional

from errors import InvalidArgumentError
from linsolve import build_nu_operator, estimate_nu, make_linear_solver, nu_dense
from operators.blur import BlurOperator
from operators.difference import norm_T, theta_bound
from operators.stacked import StackedOperator, spectral_norm_K
from solvers.config import SolverConfig, TheorySettings

logger = logging.getLogger(__name__)


def delta_min_formula(c: float, nu: float, alpha: float) -> float:
    return max(1.0, 6.0 * c / nu + 7.0 * alpha**2 * c / nu, c)


def h_hat_formula(nu: float, c: float, alpha: float, delta: float) -> float:
    return nu / 2.0 - (3.0 * c / delta + 7.0 * alpha**2 * c / (2.0 * delta))


def gamma_formulas(
    theta: float, norm_K: float, norm_T_value: float, alpha: float, delta: float
) -> tuple[float, float, float, float]:
    """(gamma_u, gamma_v, gamma_p, gamma)"""
    k2 = norm_K**2
    c = theta**2 * k2**2
    memory = 7.0 * alpha**2 * c / (2.0 * delta)
    gamma_v = max((1.0 + delta) * theta * k2, alpha * (1.0 + delta) * theta * k2)
    gamma_u = max(theta * norm_T_value * k2 + memory, alpha * theta * norm_T_value * k2)
    gamma_p = max(theta * k2 / delta, alpha * theta * k2 / delta)
    return gamma_u, gamma_v, gamma_p, gamma_u + gamma_v + gamma_p + 2.0 * memory


@dataclass(frozen=True)
class TheoryConstants:
    """Constants for one (n, kernel, beta, alpha, delta)"""

    n: int
    variant: str
    alpha: float
    beta: float
    delta: float
    theta: float
    norm_K: float
    norm_K_converged: bool
    norm_T: float
    nu_hat: float
    nu_confidence: float
    nu_source: str
    delta_bound: float
    delta_min: float
    h_hat: float
    gamma_u: float
    gamma_v: float
    gamma_p: float
    gamma: float

    @property
    def c(self) -> float:
        """theta^2 ||K||_2^4"""
        return self.theta**2 * self.norm_K**4

    @property
    def dual_factor(self) -> float:
        """theta ||K||_2^2, the dual-increment Lipschitz factor"""
        return self.theta * self.norm_K**2

    @property
    def memory_coefficient(self) -> float:
        """Weight 7 alpha^2 c / (2 delta) of ||u - x||^2 in F"""
        return 7.0 * self.alpha**2 * self.c / (2.0 * self.delta)

    def admissible(self, delta: Optional[float] = None) -> bool:
        """delta > delta_min"""
        return (self.delta if delta is None else delta) > self.delta_min

    def h_hat_at(self, delta: float) -> float:
        return h_hat_formula(self.nu_hat, self.c, self.alpha, delta)

    def with_delta(self, delta: float) -> "TheoryConstants":
        """Same estimates, delta-dependent entries recomputed"""
        gamma_u, gamma_v, gamma_p, gamma = gamma_formulas(self.theta, self.norm_K, self.norm_T, self.alpha, delta)
        return replace(
            self,
            delta=float(delta),
            h_hat=self.h_hat_at(delta),
            gamma_u=gamma_u,
            gamma_v=gamma_v,
            gamma_p=gamma_p,
            gamma=gamma,
        )

    def with_alpha(self, alpha: float) -> "TheoryConstants":
        """Same estimates for another inertia weight"""
        updated = replace(self, alpha=float(alpha), delta_min=delta_min_formula(self.c, self.nu_hat, alpha))
        return updated.with_delta(self.delta)

    def as_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["admissible"] = self.admissible()
        return data


def compute_theory_constants(
    cfg: SolverConfig,
    blur: Optional[BlurOperator] = None,
    settings: Optional[TheorySettings] = None,
    n: Optional[int] = None,
) -> TheoryConstants:
    """
    Assemble theta, ||K||_2, nu and the derived admissibility constants

    Args:
        cfg: Run parameters (alpha, beta, delta, variant, kernel)
        blur: Blur operator; built from cfg when omitted, which then needs n
        settings: Estimator knobs
        n: Image side length when blur is omitted

    Returns:
        TheoryConstants; nu comes from the dense eigensolve for n <= dense_limit,
        otherwise from the probabilistic lower bound
    """
    settings = settings or TheorySettings()
    if blur is None:
        if n is None:
            raise InvalidArgumentError("compute_theory_constants needs either blur or n")
        blur = BlurOperator.from_gaussian(n, cfg.kernel_size, cfg.kernel_sigma)
    n = blur.n

    if cfg.variant == "circulant":
        logger.warning(
            "Theory constants assume banded differences; circulant T^* is not injective, "
            "so the values below use the banded theta and are only indicative"
        )

    theta = theta_bound(n)
    t_norm = norm_T(n, cfg.variant)
    norm = spectral_norm_K(
        StackedOperator(blur, beta=cfg.beta), settings.power_iters, settings.power_tol, settings.power_seed
    )
    if not norm.converged:
        logger.warning(f"||K||_2 power iteration did not converge in {norm.iterations} iterations")

    nu_op = build_nu_operator(blur, cfg.variant)
    if n <= settings.dense_limit:
        nu = nu_dense(nu_op)
    else:
        solver = make_linear_solver("auto", nu_op)
        nu = estimate_nu(nu_op, settings.probes, settings.base, settings.seed, solver=solver)

    c = theta**2 * norm.value**4
    gamma_u, gamma_v, gamma_p, gamma = gamma_formulas(theta, norm.value, t_norm, cfg.alpha, cfg.delta)
    constants = TheoryConstants(
        n=n,
        variant=cfg.variant,
        alpha=cfg.alpha,
        beta=cfg.beta,
        delta=cfg.delta,
        theta=theta,
        norm_K=norm.value,
        norm_K_converged=norm.converged,
        norm_T=t_norm,
        nu_hat=nu.nu_hat,
        nu_confidence=nu.confidence,
        nu_source=nu.source,
        delta_bound=c,
        delta_min=delta_min_formula(c, nu.nu_hat, cfg.alpha),
        h_hat=h_hat_formula(nu.nu_hat, c, cfg.alpha, cfg.delta),
        gamma_u=gamma_u,
        gamma_v=gamma_v,
        gamma_p=gamma_p,
        gamma=gamma,
    )
    logger.info(
        f"Theory constants n={n}: theta={theta:.6g} ||K||={norm.value:.6g} nu={nu.nu_hat:.6g} ({nu.source}) "
        f"delta_min={constants.delta_min:.6g}"
    )
    return constants
