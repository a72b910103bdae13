"""Hill equation x'' + p(t) x = 0: trajectories, Pruefer angle, monodromy."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .numerics import GridSpec, unwrap_series
from .potential import Potential, midpoint_table

PARABOLIC_TOL = 1e-9
# the angle must not move more than this between samples
MAX_ANGLE_STEP = 0.5 * math.pi


@dataclass(frozen=True)
class HillTrajectory:
    grid: GridSpec
    x: np.ndarray
    xdot: np.ndarray
    alpha: np.ndarray  # continuous arg(x + i x')


@dataclass(frozen=True)
class MonodromyResult:
    matrix: np.ndarray
    det: float
    trace: float
    stability: str
    period: float


def solve_hill(p: Potential, z0, grid: GridSpec) -> HillTrajectory:
    """Integrate ``(x, x')`` from ``z0`` at ``grid.t0`` and track its continuous angle."""
    x0, y0 = map(float, z0)
    if x0 == 0.0 and y0 == 0.0:
        raise ValueError("initial condition (0, 0) has no angle")
    traj = _kernels.integrate(_kernels.HILL, grid, midpoint_table(p, grid), [x0, y0])
    x, xdot = traj.states[:, 0].copy(), traj.states[:, 1].copy()
    alpha = unwrap_series(np.arctan2(xdot, x), max_jump=MAX_ANGLE_STEP)
    return HillTrajectory(grid, x, xdot, alpha)


def _check_same_grid(a, b):
    if a.grid != b.grid:
        raise ValueError("trajectories live on different grids")


def wronskian(traj1: HillTrajectory, traj2: HillTrajectory, index: int) -> float:
    _check_same_grid(traj1, traj2)
    return float(traj1.x[index] * traj2.xdot[index] - traj2.x[index] * traj1.xdot[index])


def wronskian_series(traj1: HillTrajectory, traj2: HillTrajectory) -> np.ndarray:
    _check_same_grid(traj1, traj2)
    return traj1.x * traj2.xdot - traj2.x * traj1.xdot


def pruefer_angle(traj: HillTrajectory, index: int) -> float:
    return float(traj.alpha[index])


def classify(trace: float, tol: float = PARABOLIC_TOL) -> str:
    if abs(abs(trace) - 2.0) <= tol:
        return "parabolic"
    return "elliptic" if abs(trace) < 2.0 else "hyperbolic"


def monodromy(p: Potential, h: float, period: float | None = None) -> MonodromyResult:
    """Principal fundamental matrix over one period.

    ``period`` defaults to the potential's declared period; the grid ends
    exactly on it.
    """
    T = p.period if period is None else period
    if T is None:
        raise ValueError("monodromy needs a periodic potential (no period declared)")
    grid = GridSpec(0.0, T, h)
    traj = _kernels.integrate(
        _kernels.HILL, grid, midpoint_table(p, grid), [1.0, 0.0, 0.0, 1.0]
    )
    end = traj.states[-1]
    m = np.array([[end[0], end[2]], [end[1], end[3]]])
    trace = float(m[0, 0] + m[1, 1])
    det = float(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0])
    return MonodromyResult(m, det, trace, classify(trace), T)
