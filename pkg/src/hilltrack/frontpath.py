"""Front-wheel path generated by a potential, and the pseudo-magnetic particle.

The path has velocity ``v(t) * (-sin phi, cos phi)`` with signed speed
``v = 1 - p`` and heading ``phi + pi/2``; the particle turns at the rate
``2 - v = 1 + p`` and so feels the normal acceleration ``v (2 - v)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .numerics import GridSpec
from .potential import PhaseAccumulator, Potential, midpoint_table

SPEED_FLOOR = 1e-6


@dataclass(frozen=True)
class FrontPath:
    grid: GridSpec
    X: np.ndarray
    Y: np.ndarray
    Xdot: np.ndarray
    Ydot: np.ndarray
    phi: np.ndarray
    v: np.ndarray
    potential: Potential

    @property
    def times(self) -> np.ndarray:
        return self.grid.times

    @property
    def points(self) -> np.ndarray:
        return np.column_stack([self.X, self.Y])


@dataclass(frozen=True)
class MagneticPath:
    grid: GridSpec
    position: np.ndarray  # (n+1, 2)
    heading: np.ndarray
    speed: np.ndarray


def _velocity(p_values, phi):
    return (p_values - 1.0) * np.sin(phi), (1.0 - p_values) * np.cos(phi)


def front_velocity(p: Potential, phase: PhaseAccumulator, index: int) -> tuple[float, float]:
    t = phase.grid.times[index]
    xdot, ydot = _velocity(p(t), phase.phi[index])
    return float(xdot), float(ydot)


def build_front_path(p: Potential, grid: GridSpec) -> FrontPath:
    """Integrate phi, X and Y together; X(0) = Y(0) = 0."""
    traj = _kernels.integrate(_kernels.FRONT, grid, midpoint_table(p, grid), [0.0, 0.0, 0.0])
    phi, X, Y = traj.states.T
    p_t = p(grid.times)
    xdot, ydot = _velocity(p_t, phi)
    return FrontPath(grid, X.copy(), Y.copy(), xdot, ydot, phi.copy(), 1.0 - p_t, p)


def magnetic_simulate(p: Potential, grid: GridSpec) -> MagneticPath:
    """Particle with prescribed signed speed 1 - p and turning rate 2 - v.

    Integrated in (heading, position) form, which stays smooth where the speed
    changes sign; the trace shows a cusp there.
    """
    traj = _kernels.integrate(
        _kernels.MAGNETIC, grid, midpoint_table(p, grid), [0.5 * math.pi, 0.0, 0.0]
    )
    heading = traj.states[:, 0].copy()
    return MagneticPath(grid, traj.states[:, 1:].copy(), heading, 1.0 - p(grid.times))


def path_distance(a: MagneticPath, b: FrontPath) -> float:
    """Sup-norm distance between the two traces on a shared grid."""
    if a.grid != b.grid:
        raise ValueError("paths live on different grids")
    return float(np.max(np.hypot(a.position[:, 0] - b.X, a.position[:, 1] - b.Y)))


def normal_acceleration(path: FrontPath) -> np.ndarray:
    """Acceleration along the left normal of the heading, from differenced velocities.

    Second-order differences (one-sided at the ends); returns ``v (2 - v)`` up to O(h^2).
    """
    t = path.times
    ax = np.gradient(path.Xdot, t, edge_order=2)
    ay = np.gradient(path.Ydot, t, edge_order=2)
    # heading (-sin phi, cos phi); its left normal is (-cos phi, -sin phi)
    return -ax * np.cos(path.phi) - ay * np.sin(path.phi)


def curvature(path: FrontPath) -> np.ndarray:
    """Signed curvature with respect to the heading; NaN where the speed nearly vanishes."""
    t = path.times
    p = path.potential
    v = path.v
    tx, ty = -np.sin(path.phi), np.cos(path.phi)
    nx, ny = -np.cos(path.phi), -np.sin(path.phi)
    vdot = -p.derivative(t)
    turn = 1.0 + p(t)
    ax = vdot * tx + v * turn * nx
    ay = vdot * ty + v * turn * ny
    speed2 = path.Xdot**2 + path.Ydot**2
    with np.errstate(divide="ignore", invalid="ignore"):
        kappa = (path.Xdot * ay - path.Ydot * ax) / (v * speed2)
    kappa[np.abs(v) <= SPEED_FLOOR] = np.nan
    return kappa
