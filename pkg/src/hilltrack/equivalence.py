"""Rotating-frame reduction of the Hill system and end-to-end equivalence checks.

With ``psi = -phi/2`` and ``z = R(psi) w`` the Hill system becomes
``w' = [[r, s], [s, -r]] w`` where ``r = (1-p)/2 sin(2 psi)`` and
``s = (1-p)/2 cos(2 psi)``. The doubled angle of ``w`` then solves the bicycle
equation with front velocity ``(2r, 2s)``, which gives
``theta = 2 arg(x + i x') + phi``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .bike import solve_bike
from .frontpath import build_front_path
from .numerics import TWO_PI, GridSpec, unwrap_series
from .potential import PhaseAccumulator, Potential, accumulate_phase, midpoint_table
from .schrodinger import MAX_ANGLE_STEP, HillTrajectory, solve_hill

FRAME_TOL = 1e-10


@dataclass(frozen=True)
class RotatingFrameCoeffs:
    r: float
    s: float


@dataclass(frozen=True)
class EquivalenceReport:
    grid: GridSpec
    residual: np.ndarray
    max_residual: float
    matched_at_zero: bool
    theta_bike: np.ndarray
    theta_hill: np.ndarray


def rotating_frame_coeffs(p: Potential, psi: float, t: float) -> RotatingFrameCoeffs:
    half_speed = 0.5 * (1.0 - p(t))
    return RotatingFrameCoeffs(half_speed * math.sin(2.0 * psi), half_speed * math.cos(2.0 * psi))


def frame_matrices(p: Potential, grid: GridSpec) -> np.ndarray:
    """``R^-1 P R - R^-1 R'`` at every grid time, shape (n+1, 2, 2).

    R' uses the exact angular rate ``psi' = -(1 + p)/2``.
    """
    t = grid.times
    psi = accumulate_phase(p, grid).psi
    p_t = p(t)
    c, s = np.cos(psi), np.sin(psi)
    zero, one = np.zeros_like(t), np.ones_like(t)
    R = np.stack([np.stack([c, -s], -1), np.stack([s, c], -1)], -2)
    P = np.stack([np.stack([zero, one], -1), np.stack([-p_t, zero], -1)], -2)
    dpsi = -0.5 * (1.0 + p_t)
    Rdot = dpsi[:, None, None] * np.stack([np.stack([-s, -c], -1), np.stack([c, -s], -1)], -2)
    Rinv = np.swapaxes(R, -1, -2)
    return Rinv @ P @ R - Rinv @ Rdot


def frame_matrix_audit(p: Potential, grid: GridSpec) -> float:
    """Largest entrywise gap between the transformed matrix and ``[[r, s], [s, -r]]``.

    Raises ``ArithmeticError`` if the transformed matrix is not symmetric and
    traceless to ``FRAME_TOL``.
    """
    M = frame_matrices(p, grid)
    asym = np.max(np.abs(M[:, 0, 1] - M[:, 1, 0]))
    trace = np.max(np.abs(M[:, 0, 0] + M[:, 1, 1]))
    if asym > FRAME_TOL or trace > FRAME_TOL:
        raise ArithmeticError(f"rotating-frame matrix: asymmetry {asym:.3g}, trace {trace:.3g}")
    psi = accumulate_phase(p, grid).psi
    half_speed = 0.5 * (1.0 - p(grid.times))
    r = half_speed * np.sin(2.0 * psi)
    s = half_speed * np.cos(2.0 * psi)
    expected = np.stack([np.stack([r, s], -1), np.stack([s, -r], -1)], -2)
    return float(np.max(np.abs(M - expected)))


def init_from_theta(theta0: float) -> tuple[float, float]:
    """Unit Hill initial vector whose doubled angle is ``theta0`` (phi vanishes at t=0)."""
    return (math.cos(0.5 * theta0), math.sin(0.5 * theta0))


def theta_from_solution(traj: HillTrajectory, phase: PhaseAccumulator, index: int) -> float:
    if traj.grid != phase.grid:
        raise ValueError("trajectory and phase live on different grids")
    return float(2.0 * traj.alpha[index] + phase.phi[index])


def verify_equivalence(p: Potential, theta0: float, grid: GridSpec) -> EquivalenceReport:
    """Compare the bicycle angle with ``2 arg(x + i x') + phi`` on continuous branches.

    The Hill side is shifted by the whole number of turns separating it from
    ``theta0`` at t0, so the residual starts at exactly zero.
    """
    path = build_front_path(p, grid)
    bike = solve_bike(path, theta0)
    hill = solve_hill(p, init_from_theta(theta0), grid)
    predicted0 = 2.0 * hill.alpha[0] + path.phi[0]
    gap = theta0 - predicted0
    matched = abs(gap - TWO_PI * round(gap / TWO_PI)) <= 1e-12 * (1.0 + abs(theta0))
    theta_hill = theta0 + (2.0 * (hill.alpha - hill.alpha[0]) + (path.phi - path.phi[0]))
    residual = bike.theta - theta_hill
    return EquivalenceReport(
        grid, residual, float(np.max(np.abs(residual))), bool(matched), bike.theta, theta_hill
    )


@dataclass(frozen=True)
class RotatingFrameSolution:
    grid: GridSpec
    psi: np.ndarray
    u: np.ndarray
    v: np.ndarray

    @property
    def angle(self) -> np.ndarray:
        """Continuous arg(u + i v)."""
        return unwrap_series(np.arctan2(self.v, self.u), max_jump=MAX_ANGLE_STEP)


def solve_rotating_frame(p: Potential, grid: GridSpec, w0) -> RotatingFrameSolution:
    u0, v0 = map(float, w0)
    if u0 == 0.0 and v0 == 0.0:
        raise ValueError("initial condition (0, 0) has no angle")
    traj = _kernels.integrate(_kernels.ROTATING, grid, midpoint_table(p, grid), [0.0, u0, v0])
    phi, u, v = traj.states.T
    return RotatingFrameSolution(grid, -0.5 * phi, u.copy(), v.copy())


def coefficient_bike(p: Potential, grid: GridSpec, theta0: float) -> np.ndarray:
    """Bicycle angle driven by front velocity ``(2r, 2s)`` from the rotating-frame coefficients."""
    traj = _kernels.integrate(_kernels.RICCATI, grid, midpoint_table(p, grid), [0.0, theta0])
    return traj.states[:, 1].copy()


def double_angle_residual(p: Potential, grid: GridSpec, w0) -> float:
    """Max gap between ``2 arg(w)`` and the coefficient-driven bicycle angle."""
    frame = solve_rotating_frame(p, grid, w0)
    doubled = 2.0 * frame.angle
    theta = coefficient_bike(p, grid, doubled[0])
    return float(np.max(np.abs(doubled - theta)))
