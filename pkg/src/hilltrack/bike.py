"""Unit-length bicycle whose front end follows a potential-generated path.

The segment angle obeys ``theta' = Y' cos(theta) - X' sin(theta)``; the rear
point is ``R = F - (cos theta, sin theta)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .frontpath import FrontPath
from .numerics import GridSpec
from .potential import midpoint_table


@dataclass(frozen=True)
class BikeTrajectory:
    grid: GridSpec
    theta: np.ndarray
    front: np.ndarray  # (n+1, 2)
    rear: np.ndarray  # (n+1, 2)


def bike_angles(path: FrontPath, theta0s) -> np.ndarray:
    """Segment angles for several initial angles at once, shape (n+1, m).

    The front velocity is re-evaluated from (p, phi) at every RK4 stage; phi is
    carried as an extra state rather than interpolated from the path samples.
    """
    theta0s = np.atleast_1d(np.asarray(theta0s, dtype=float))
    table = midpoint_table(path.potential, path.grid)
    traj = _kernels.integrate(_kernels.BIKE, path.grid, table, np.concatenate(([0.0], theta0s)))
    return traj.states[:, 1:]


def solve_bike(path: FrontPath, theta0: float) -> BikeTrajectory:
    theta = bike_angles(path, [theta0])[:, 0].copy()
    front = path.points
    rear = front - np.column_stack([np.cos(theta), np.sin(theta)])
    return BikeTrajectory(path.grid, theta, front, rear)


def no_slip_residual(traj: BikeTrajectory, path: FrontPath) -> float:
    """Largest sideways rear-wheel velocity over interior samples (centered differences)."""
    if traj.grid != path.grid:
        raise ValueError("bike and path live on different grids")
    t = traj.grid.times
    if t.size < 3:
        return 0.0
    rdot = (traj.rear[2:] - traj.rear[:-2]) / (t[2:] - t[:-2])[:, None]
    th = traj.theta[1:-1]
    side = rdot[:, 0] * np.sin(th) - rdot[:, 1] * np.cos(th)
    return float(np.max(np.abs(side)))


def rear_track(traj: BikeTrajectory) -> np.ndarray:
    return traj.rear
