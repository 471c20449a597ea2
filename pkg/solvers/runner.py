"""
Iteration driver: initialization, stop control, traces and the critical-point report
"""

import logging
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional

import numpy as np

from errors import DivergenceError, InvalidArgumentError
from imagecore.image import Image, devectorize
from operators.blur import BlurOperator
from solvers.base import BaseSolver
from solvers.config import SolverConfig, TheorySettings
from solvers.diagnostics import (
    CriticalPointReport,
    boundedness_norm,
    check_descent,
    check_dual_bound,
    check_subgradient_bound,
    critical_point_residuals,
    descent_check_applies,
    eval_F,
    eval_lagrangian,
    eval_objective,
)
from solvers.problem import Problem, build_problem
from solvers.state import SolverState, StepOutcome, initial_state
from solvers.theory import TheoryConstants, compute_theory_constants
from utils.metrics import StopReason, real_error, residual, should_stop, snr
from utils.traces import TRACE_COLUMNS

logger = logging.getLogger(__name__)

# Bound checks need p^k (dual) and also p^{k-1} (subgradient) to come from a u-solve
DUAL_CHECK_FROM = 2
SUBGRADIENT_CHECK_FROM = 3


@dataclass
class IterTrace:
    """One row per step; row k = 0 describes the initial point"""

    k: int
    objective: float
    lagrangian: float
    F: Optional[float]
    res: Optional[float]
    res_i: Optional[float]
    err: Optional[float]
    snr: Optional[float]
    dual_ratio: Optional[float]
    subgrad_ratio: Optional[float]
    tu_minus_v: float
    # Telemetry kept off the CSV
    du_norm: float = 0.0
    dv_norm: float = 0.0
    dp_norm: float = 0.0
    descent_margin: Optional[float] = None
    solve_iterations: int = 0
    stationarity: float = 0.0
    iterate_norm: float = 0.0

    def csv_row(self) -> Dict[str, Any]:
        return {name: getattr(self, name) for name in TRACE_COLUMNS}


@dataclass
class RunResult:
    restored: Image
    traces: List[IterTrace]
    stop_reason: StopReason
    iterations: int
    final_state: SolverState
    critical: CriticalPointReport
    constants: Optional[TheoryConstants] = None
    elapsed: float = 0.0
    solve_iterations: int = 0
    extra: Dict[str, Any] = field(default_factory=dict)

    @property
    def final(self) -> IterTrace:
        return self.traces[-1]

    def max_dual_ratio(self) -> Optional[float]:
        values = [t.dual_ratio for t in self.traces if t.dual_ratio is not None]
        return max(values) if values else None

    def max_subgrad_ratio(self) -> Optional[float]:
        values = [t.subgrad_ratio for t in self.traces if t.subgrad_ratio is not None]
        return max(values) if values else None

    def min_descent_margin(self) -> Optional[float]:
        values = [t.descent_margin for t in self.traces if t.descent_margin is not None]
        return min(values) if values else None


IterationCallback = Callable[[IterTrace], None]


def _quality(truth: Optional[Image], u1: np.ndarray, n: int) -> tuple[Optional[float], Optional[float]]:
    if truth is None:
        return None, None
    restored = devectorize(u1, n)
    return real_error(truth, restored), snr(truth, restored)


def check_trace_descent(prev: IterTrace, curr: IterTrace, constants: TheoryConstants) -> tuple[bool, float]:
    """Descent inequality between two consecutive trace rows"""
    if prev.F is None or curr.F is None:
        raise InvalidArgumentError("Descent check needs traces recorded with diagnostics on")
    check = check_descent(prev.F, curr.F, curr.du_norm, constants)
    return check.holds, check.value


class Runner:
    """Runs one configured solver on one problem"""

    def __init__(
        self,
        cfg: SolverConfig,
        problem: Problem,
        solver: BaseSolver,
        constants: Optional[TheoryConstants] = None,
        ground_truth: Optional[Image] = None,
    ):
        if ground_truth is not None and ground_truth.n != problem.n:
            raise InvalidArgumentError(f"Ground truth is {ground_truth.n}x{ground_truth.n}, image is {problem.n}")
        self.cfg = cfg
        self.problem = problem
        self.solver = solver
        self.constants = constants
        self.truth = ground_truth

    def initial_trace(self, state: SolverState) -> IterTrace:
        cfg, problem = self.cfg, self.problem
        lagrangian = eval_lagrangian(state.u, state.v, state.p, cfg, problem)
        err, snr_value = _quality(self.truth, problem.split(state.u)[0], problem.n)
        return IterTrace(
            k=0,
            objective=eval_objective(state.u, cfg, problem),
            lagrangian=lagrangian,
            F=lagrangian if self.constants is not None else None,
            res=None,
            res_i=None,
            err=err,
            snr=snr_value,
            dual_ratio=None,
            subgrad_ratio=None,
            tu_minus_v=float(np.linalg.norm(problem.T.apply(state.u) - state.v)),
            stationarity=critical_point_residuals(state, problem).stationarity,
            iterate_norm=boundedness_norm(state),
        )

    def step_trace(self, before: SolverState, outcome: StepOutcome, prev_trace: IterTrace) -> IterTrace:
        cfg, problem, constants = self.cfg, self.problem, self.constants
        after = outcome.state
        step_index = before.k

        res = residual((after.u, after.p), (before.u, before.p))
        res_i = residual((after.u, after.p), (outcome.u_hat, outcome.p_hat))
        lagrangian = eval_lagrangian(after.u, after.v, after.p, cfg, problem)
        du_norm = float(np.linalg.norm(after.u - before.u))

        F_value = None
        dual_ratio = None
        subgrad_ratio = None
        descent_margin = None
        if constants is not None:
            F_value = eval_F(after.u, after.v, after.p, before.u, cfg, problem, constants)
            if prev_trace.F is not None:
                descent = check_descent(prev_trace.F, F_value, du_norm, constants)
                descent_margin = descent.value
                if not descent.holds and step_index >= DUAL_CHECK_FROM and descent_check_applies(constants):
                    logger.warning(f"Descent inequality violated at step {step_index}: margin {descent.value:.3e}")
            if step_index >= DUAL_CHECK_FROM:
                dual_ratio = check_dual_bound(before, after, constants).value
            if step_index >= SUBGRADIENT_CHECK_FROM:
                subgrad_ratio = check_subgradient_bound(before, outcome, constants, problem).value

        err, snr_value = _quality(self.truth, problem.split(after.u)[0], problem.n)
        critical = critical_point_residuals(after, problem)
        return IterTrace(
            k=step_index,
            objective=eval_objective(after.u, cfg, problem),
            lagrangian=lagrangian,
            F=F_value,
            res=res,
            res_i=res_i,
            err=err,
            snr=snr_value,
            dual_ratio=dual_ratio,
            subgrad_ratio=subgrad_ratio,
            tu_minus_v=critical.feasibility,
            du_norm=du_norm,
            dv_norm=float(np.linalg.norm(after.v - before.v)),
            dp_norm=float(np.linalg.norm(after.p - before.p)),
            descent_margin=descent_margin,
            solve_iterations=outcome.report.iterations,
            stationarity=critical.stationarity,
            iterate_norm=boundedness_norm(after),
        )

    def run(self, on_iteration: Optional[IterationCallback] = None) -> RunResult:
        cfg, problem = self.cfg, self.problem
        started = time.perf_counter()
        state = initial_state(problem)
        traces = [self.initial_trace(state)]
        if on_iteration:
            on_iteration(traces[0])

        reason = StopReason.MAX_ITERS
        res_prev: Optional[float] = None
        solve_iterations = 0
        for step_index in range(1, cfg.max_iters + 1):
            outcome = self.solver.step(state, problem)
            broken = outcome.state.first_non_finite()
            if broken is not None:
                logger.error(f"Divergence at step {step_index}: non-finite {broken}")
                raise DivergenceError(step_index, broken)

            trace = self.step_trace(state, outcome, traces[-1])
            traces.append(trace)
            solve_iterations += trace.solve_iterations
            if on_iteration:
                on_iteration(trace)

            # Inertial residual for IADMM, standard residual for ADMM
            res_curr = trace.res_i if self.solver.alpha > 0.0 else trace.res
            assert res_curr is not None
            decision = should_stop(res_prev, res_curr, cfg.epsilon, step_index, cfg.warmup)
            state = outcome.state
            if decision.stop:
                reason = decision.reason
                break
            res_prev = res_curr

        iterations = len(traces) - 1
        restored = devectorize(problem.split(state.u)[0], problem.n)
        critical = critical_point_residuals(state, problem)
        elapsed = time.perf_counter() - started
        logger.info(
            f"{self.solver.name} stopped after {iterations} steps ({reason.value}) in {elapsed:.2f}s, "
            f"||Tu - v|| = {critical.feasibility:.3e}"
        )
        return RunResult(
            restored=restored,
            traces=traces,
            stop_reason=reason,
            iterations=iterations,
            final_state=state,
            critical=critical,
            constants=self.constants,
            elapsed=elapsed,
            solve_iterations=solve_iterations,
        )


def prepare_constants(
    cfg: SolverConfig,
    blur: BlurOperator,
    constants: Optional[TheoryConstants] = None,
    settings: Optional[TheorySettings] = None,
) -> Optional[TheoryConstants]:
    """Compute (or adapt supplied) constants and apply the admissibility policy"""
    needed = cfg.diagnostics_on or cfg.enforce_admissible
    if not needed:
        return None
    if constants is None:
        constants = compute_theory_constants(cfg, blur, settings)
    else:
        if constants.n != blur.n:
            raise InvalidArgumentError(f"Constants were computed for n={constants.n}, image has n={blur.n}")
        if constants.alpha != cfg.alpha:
            constants = constants.with_alpha(cfg.alpha)
        if constants.delta != cfg.delta:
            constants = constants.with_delta(cfg.delta)

    if not constants.admissible():
        message = f"delta={cfg.delta:g} is not admissible (delta_min={constants.delta_min:.6g})"
        if cfg.enforce_admissible:
            raise InvalidArgumentError(message)
        logger.warning(f"{message}; descent diagnostics are informational")
    return constants


def run(
    cfg: SolverConfig,
    blurred: Image,
    ground_truth: Optional[Image] = None,
    blur: Optional[BlurOperator] = None,
    constants: Optional[TheoryConstants] = None,
    settings: Optional[TheorySettings] = None,
    on_iteration: Optional[IterationCallback] = None,
) -> RunResult:
    """
    Deblur one image

    Args:
        cfg: Run parameters
        blurred: Observed image
        ground_truth: Original image, enables the err and snr columns
        blur: Blur operator (default: Gaussian from cfg)
        constants: Precomputed theory constants to reuse
        settings: Estimator knobs used when constants must be computed
        on_iteration: Called with every trace row as soon as it exists

    Returns:
        RunResult with the restored u1 component, traces and stop reason
    """
    from solvers import get_solver

    problem = build_problem(cfg, blurred, blur)
    constants = prepare_constants(cfg, problem.blur, constants, settings)
    solver = get_solver(cfg)
    logger.info(
        f"Running {solver.name} on {problem.n}x{problem.n}: alpha={solver.alpha} delta={cfg.delta} "
        f"sigma={cfg.sigma} q={cfg.q} eps={cfg.epsilon}"
    )
    return Runner(cfg, problem, solver, constants, ground_truth).run(on_iteration)
