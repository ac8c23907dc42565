"""Classical shooting oracle for the same boundary-value problems.

This module is the independent check on the series pipeline and is kept
deliberately boring: fixed-step classical RK4 on a truncated domain, Newton
on the far-boundary mismatch. Infinity is realized as eta_max plus an
insensitivity check, not a domain mapping.

Free convection integrates the first-order system of
(f, f', f'', theta, theta') with

    f''' = 2 (f')^2 - theta - 3 f f''
    theta'' = -3 Pr f theta'

Blasius integrates (f, f', f'') with f''' = -(1/2) f f''.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dtm import Problem
from .errors import BlowUpError
from .rootfind import ClosureConfig, SolveResult, newton_solve

_BLOWUP_LIMIT = 1e8


@dataclass(frozen=True)
class ShootConfig:
    """Truncation point, RK4 step and Newton stopping parameters."""

    eta_max: float = 8.0
    step: float = 0.01
    tol: float = 1e-8
    max_iter: int = 50

    def __post_init__(self):
        if self.eta_max < 5:
            raise ValueError("eta_max must be >= 5; the far field is unconverged below that")
        if self.step <= 0:
            raise ValueError("step must be positive")
        if self.tol <= 0:
            raise ValueError("tol must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be a positive integer")


@dataclass(frozen=True)
class Profile:
    """Rows of (eta, f, f', theta) at strictly increasing eta."""

    rows: tuple[tuple[float, float, float, float], ...]

    def __post_init__(self):
        etas = [row[0] for row in self.rows]
        if any(b <= a for a, b in zip(etas, etas[1:])):
            raise ValueError("eta values must be strictly increasing")


def _rhs_free_convection(state: np.ndarray, pr: float) -> np.ndarray:
    f, fp, fpp, th, thp = state
    return np.array([fp, fpp, 2.0 * fp * fp - th - 3.0 * f * fpp, thp, -3.0 * pr * f * thp])


def _rhs_blasius(state: np.ndarray) -> np.ndarray:
    f, fp, fpp = state
    return np.array([fp, fpp, -0.5 * f * fpp])


def _rk4_step(rhs, state: np.ndarray, h: float) -> np.ndarray:
    k1 = rhs(state)
    k2 = rhs(state + 0.5 * h * k1)
    k3 = rhs(state + 0.5 * h * k2)
    k4 = rhs(state + h * k3)
    return state + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def _integrate(rhs, state0: np.ndarray, eta_end: float, step: float):
    """March to eta_end with fixed steps (shortened final step); yields (eta, state)."""
    state = np.asarray(state0, dtype=float)
    eta = 0.0
    yield eta, state
    while eta < eta_end - 1e-12:
        h = min(step, eta_end - eta)
        state = _rk4_step(rhs, state, h)
        eta += h
        if not np.all(np.isfinite(state)) or np.max(np.abs(state)) > _BLOWUP_LIMIT:
            raise BlowUpError(f"trajectory blew up near eta = {eta:.4g}", eta_reached=eta)
        yield eta, state


def rk4_integrate(a: float, b: float, pr: float, cfg: ShootConfig) -> Profile:
    """Full trajectory from the wall values (0, 0, a, 1, b) out to eta_max."""
    rows = []
    for eta, s in _integrate(
        lambda s: _rhs_free_convection(s, pr), [0.0, 0.0, a, 1.0, b], cfg.eta_max, cfg.step
    ):
        rows.append((eta, float(s[0]), float(s[1]), float(s[3])))
    return Profile(tuple(rows))


def boundary_residual(a: float, b: float, pr: float, cfg: ShootConfig) -> tuple[float, float]:
    """(f'(eta_max), theta(eta_max)) for trial wall derivatives (a, b)."""
    state = None
    for _, state in _integrate(
        lambda s: _rhs_free_convection(s, pr), [0.0, 0.0, a, 1.0, b], cfg.eta_max, cfg.step
    ):
        pass
    return float(state[1]), float(state[3])


def blasius_boundary_residual(a: float, cfg: ShootConfig) -> float:
    """f'(eta_max) - 1 for the Blasius problem."""
    state = None
    for _, state in _integrate(_rhs_blasius, [0.0, 0.0, a], cfg.eta_max, cfg.step):
        pass
    return float(state[1]) - 1.0


def shoot_solve(
    pr: float,
    cfg: ShootConfig,
    x0=None,
    problem: Problem = Problem.FREE_CONVECTION,
) -> SolveResult:
    """Newton on the far-boundary mismatch; returns the oracle (A, B)."""
    newton_cfg = ClosureConfig(pade_degree=1, tol=cfg.tol, max_iter=cfg.max_iter)
    settings = {
        "problem": problem.value,
        "pr": pr,
        "eta_max": cfg.eta_max,
        "step": cfg.step,
        "tol": cfg.tol,
        "method": "shooting-rk4",
    }
    if problem is Problem.BLASIUS:
        if x0 is None:
            x0 = (0.3,)
        return newton_solve(
            lambda x: np.array([blasius_boundary_residual(float(x[0]), cfg)]),
            x0,
            newton_cfg,
            settings,
        )
    if x0 is None:
        x0 = (0.6, -0.6)
    return newton_solve(
        lambda x: np.array(boundary_residual(float(x[0]), float(x[1]), pr, cfg)),
        x0,
        newton_cfg,
        settings,
    )


def tabulate_profile(
    a: float,
    b: float,
    pr: float,
    grid,
    cfg: ShootConfig | None = None,
    problem: Problem = Problem.FREE_CONVECTION,
) -> Profile:
    """Profile rows at exactly the requested eta values.

    Each inter-grid interval is integrated with a whole number of sub-steps
    no larger than cfg.step, so grid points are hit without interpolation.
    """
    cfg = cfg or ShootConfig()
    grid = [float(g) for g in grid]
    if any(g2 <= g1 for g1, g2 in zip(grid, grid[1:])):
        raise ValueError("grid must be strictly increasing")
    if grid and (grid[0] < 0 or grid[-1] > cfg.eta_max + 1e-12):
        raise ValueError(f"grid must lie within [0, eta_max = {cfg.eta_max}]")

    if problem is Problem.BLASIUS:
        rhs = _rhs_blasius
        state = np.array([0.0, 0.0, a])
    else:
        rhs = lambda s: _rhs_free_convection(s, pr)
        state = np.array([0.0, 0.0, a, 1.0, b])

    def row(eta, s):
        theta = float(s[3]) if s.size == 5 else math.nan
        return (eta, float(s[0]), float(s[1]), theta)

    rows = []
    eta = 0.0
    for g in grid:
        span = g - eta
        if span > 0:
            nsub = max(1, math.ceil(span / cfg.step - 1e-12))
            h = span / nsub
            for _ in range(nsub):
                state = _rk4_step(rhs, state, h)
                if not np.all(np.isfinite(state)):
                    raise BlowUpError(f"trajectory blew up near eta = {g:.4g}", eta_reached=g)
            eta = g
        rows.append(row(eta, state))
    return Profile(tuple(rows))
