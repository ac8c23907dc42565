"""Closing the semi-infinite boundary conditions and solving for (A, B).

The far-field conditions f'(inf) = 0 and theta(inf) = 0 are imposed on
diagonal rational approximants of the generated series: the limit of an
[n/n] quotient at infinity is the ratio of its leading coefficients, so
each condition becomes one scalar equation in the unknown initial
derivatives. A damped Newton iteration with a forward-difference Jacobian
solves the resulting 2x2 (free convection) or 1x1 (Blasius) system.

Paper-fidelity mode mirrors the published computation exactly: the f-series
is the order-2n polynomial, so its derivative is one coefficient short of
the 2n needed by the [n/n] fit and is zero-padded, exactly as a finite
polynomial is treated by a CAS. Corrected mode generates order 2n+1 and
uses the true derivative coefficient throughout.

The Blasius series only contains powers 2, 5, 8, ... of the similarity
variable, which makes every diagonal fit in that variable exactly singular.
Its closure therefore compresses to u = eta^3: with f' = eta * g(eta^3),
the condition f'(inf) = 1 becomes lim_u u * g(u)^3 = 1, imposed through an
[n-1/n] fit of g^3 whose numerator is lifted by one degree.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import pade
from .dtm import DtmSolution, Problem, ProblemParams, RecurrenceMode, generate
from .errors import (
    DegenerateApproximantError,
    NonConvergenceError,
    SingularJacobianError,
)
from .series import TruncatedSeries, cauchy_product, differentiate

DEFAULT_GUESS_FREE_CONVECTION = (0.6, -0.6)  # physically expected signs: A > 0, B < 0
DEFAULT_GUESS_BLASIUS = (0.3,)


@dataclass(frozen=True)
class ClosureConfig:
    """Knobs for the closure equations and the Newton iteration.

    series_order = None derives the order from the Pade degree: 2n+1 in
    corrected mode, 2n (the published window) in paper-fidelity mode.
    """

    pade_degree: int = 3
    series_order: int | None = None
    tol: float = 1e-10
    max_iter: int = 50
    fd_step: float = 1e-7
    damping: float = 0.5

    def __post_init__(self):
        if self.pade_degree < 1:
            raise ValueError("pade_degree must be >= 1")
        if self.series_order is not None and self.series_order < 2 * self.pade_degree:
            raise ValueError(
                f"series_order must be >= {2 * self.pade_degree} for an "
                f"[{self.pade_degree}/{self.pade_degree}] fit"
            )
        if self.tol <= 0 or self.fd_step <= 0:
            raise ValueError("tol and fd_step must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be a positive integer")
        if not (0 < self.damping <= 1):
            raise ValueError("damping must lie in (0, 1]")

    def f_order(self, mode: RecurrenceMode) -> int:
        if self.series_order is not None:
            return self.series_order
        n = self.pade_degree
        return 2 * n if mode is RecurrenceMode.PAPER_FIDELITY else 2 * n + 1


@dataclass(frozen=True)
class SolveResult:
    a: float
    b: float | None
    residual_norm: float
    iterations: int
    settings: dict = field(default_factory=dict)


def _fprime_coeffs(sol: DtmSolution, n: int) -> TruncatedSeries:
    """Series of f' with enough coefficients for the [n/n] fit.

    A short derivative (paper-fidelity window) is padded with zeros: the
    generated polynomial simply has no higher terms.
    """
    d = list(differentiate(sol.f_series, 1).coeffs)
    if len(d) < 2 * n + 1:
        d += [0.0] * (2 * n + 1 - len(d))
    return TruncatedSeries(tuple(d))


def closure_residual(
    a: float,
    b: float,
    pr: float,
    cfg: ClosureConfig,
    mode: RecurrenceMode = RecurrenceMode.CORRECTED,
) -> tuple[float, float]:
    """Free-convection far-field residuals (limit of f'-fit, limit of theta-fit)."""
    n = cfg.pade_degree
    order = max(cfg.f_order(mode), 2 * n, 3)
    sol = generate(
        ProblemParams(Problem.FREE_CONVECTION, pr=pr, a=a, b=b, order=order, mode=mode)
    )
    try:
        r_fprime = pade.build(_fprime_coeffs(sol, n), n, n)
        r1 = pade.limit_at_infinity(r_fprime)
    except DegenerateApproximantError as exc:
        raise DegenerateApproximantError(f"f'-approximant: {exc}") from exc
    try:
        r_theta = pade.build(sol.theta_series, n, n)
        r2 = pade.limit_at_infinity(r_theta)
    except DegenerateApproximantError as exc:
        raise DegenerateApproximantError(f"theta-approximant: {exc}") from exc
    return r1, r2


def blasius_closure_residual(a: float, cfg: ClosureConfig) -> float:
    """Blasius far-field residual: lim u * g(u)^3 - 1 in the cube variable."""
    n = cfg.pade_degree
    order = 6 * n + 2  # f' index 3*(2n)+1 needs f-coefficients up to 6n+2
    sol = generate(ProblemParams(Problem.BLASIUS, a=a, order=order))
    fp = differentiate(sol.f_series, 1).coeffs
    g = TruncatedSeries(tuple(fp[3 * j + 1] for j in range(2 * n + 1)))
    h = cauchy_product(cauchy_product(g, g), g)
    # the cube-variable coefficients decay fast; rescale u = s*v to balance
    # their magnitudes, which keeps the fit's linear system well conditioned.
    # The limit transforms as lim u*H(u) = s * lim v*Ht(v).
    nonzero = [(k, abs(c)) for k, c in enumerate(h.coeffs) if k > 0 and c != 0.0]
    scale_s = 1.0
    if h.coeffs[0] != 0.0 and nonzero:
        k_last, c_last = nonzero[-1]
        scale_s = (abs(h.coeffs[0]) / c_last) ** (1.0 / k_last)
    h_scaled = TruncatedSeries(tuple(c * scale_s**k for k, c in enumerate(h.coeffs)))
    try:
        r = pade.build(h_scaled, n - 1, n)
        # multiply the numerator by v so both degrees are n, then take the limit
        lifted = pade.RationalApproximant((0.0,) + r.numerator, r.denominator)
        limit = scale_s * pade.limit_at_infinity(lifted)
    except DegenerateApproximantError as exc:
        raise DegenerateApproximantError(f"f'-approximant (cube variable): {exc}") from exc
    return limit - 1.0


def newton_solve(
    residual: Callable[[np.ndarray], np.ndarray],
    x0,
    cfg: ClosureConfig,
    settings: dict | None = None,
) -> SolveResult:
    """Damped Newton with a forward-difference Jacobian.

    Stops when the residual infinity-norm drops to cfg.tol. A step that does
    not decrease the norm is shrunk by cfg.damping up to 8 times before the
    iteration is declared stagnant.
    """
    x = np.atleast_1d(np.asarray(x0, dtype=float))
    d = x.size
    r = np.atleast_1d(np.asarray(residual(x), dtype=float))
    norm = np.max(np.abs(r))

    for it in range(cfg.max_iter):
        if norm <= cfg.tol:
            return _result(x, norm, it, settings)
        jac = np.empty((d, d))
        for j in range(d):
            xp = x.copy()
            xp[j] += cfg.fd_step
            jac[:, j] = (np.atleast_1d(residual(xp)) - r) / cfg.fd_step

        row_scale = np.max(np.abs(jac), axis=1)
        if np.any(row_scale == 0.0) or abs(np.linalg.det(jac / row_scale[:, None])) < 1e-14:
            raise SingularJacobianError(
                "Jacobian is singular at the current iterate",
                last_iterate=tuple(x),
                residual_norm=norm,
                iterations=it,
            )
        step = np.linalg.solve(jac, r)

        lam = 1.0
        for _ in range(9):
            x_new = x - lam * step
            r_new = np.atleast_1d(np.asarray(residual(x_new), dtype=float))
            norm_new = np.max(np.abs(r_new))
            if norm_new < norm:
                break
            lam *= cfg.damping
        else:
            raise NonConvergenceError(
                f"stagnated at residual norm {norm:.3e}",
                last_iterate=tuple(x),
                residual_norm=norm,
                iterations=it,
            )
        x, r, norm = x_new, r_new, norm_new

    if norm <= cfg.tol:
        return _result(x, norm, cfg.max_iter, settings)
    raise NonConvergenceError(
        f"no convergence in {cfg.max_iter} iterations (norm {norm:.3e})",
        last_iterate=tuple(x),
        residual_norm=norm,
        iterations=cfg.max_iter,
    )


def _result(x: np.ndarray, norm: float, iterations: int, settings: dict | None) -> SolveResult:
    b = float(x[1]) if x.size > 1 else None
    return SolveResult(float(x[0]), b, float(norm), iterations, dict(settings or {}))


def solve_problem(
    problem: Problem,
    pr: float,
    cfg: ClosureConfig,
    x0=None,
    mode: RecurrenceMode = RecurrenceMode.CORRECTED,
) -> SolveResult:
    """Wire the closure residuals into Newton for the chosen problem."""
    settings = {
        "problem": problem.value,
        "pr": pr,
        "pade_degree": cfg.pade_degree,
        "series_order": cfg.f_order(mode),
        "mode": mode.value,
        "tol": cfg.tol,
        "max_iter": cfg.max_iter,
        "fd_step": cfg.fd_step,
        "damping": cfg.damping,
    }
    if problem is Problem.BLASIUS:
        if x0 is None:
            x0 = DEFAULT_GUESS_BLASIUS
        res = newton_solve(
            lambda x: np.array([blasius_closure_residual(float(x[0]), cfg)]),
            x0,
            cfg,
            settings,
        )
        return res

    if x0 is None:
        x0 = DEFAULT_GUESS_FREE_CONVECTION
    result = newton_solve(
        lambda x: np.array(closure_residual(float(x[0]), float(x[1]), pr, cfg, mode)),
        x0,
        cfg,
        settings,
    )
    # the physical branch has A > 0, B < 0; another root is a diagnostic, not an error
    if result.a <= 0 or (result.b is not None and result.b >= 0):
        warnings.warn(
            f"converged root (A={result.a:.6g}, B={result.b:.6g}) violates the "
            "expected signs A > 0, B < 0",
            stacklevel=2,
        )
    return result
