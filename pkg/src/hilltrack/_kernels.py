"""Compiled RK4 driver for the potential-driven systems.

All systems share one stepper. The potential enters only through a table of
its values at grid points (even rows) and step midpoints (odd rows), so the
compiled code never calls back into Python. The arithmetic of each stage is
the same as :func:`hilltrack.numerics.rk4_integrate`.
"""

from __future__ import annotations

import math

import numba
import numpy as np

from .numerics import GridSpec, IntegrationError, Trajectory

# system codes
PHASE = 0         # [phi]
QUADRATURE = 1    # [q], q' = p
FRONT = 2         # [phi, X, Y]
HILL = 3          # [x1, x1', x2, x2', ...]
BIKE = 4          # [phi, theta1, theta2, ...]
MAGNETIC = 5      # [chi, X, Y]
ROTATING = 6      # [phi, u, v]
RICCATI = 7       # [phi, theta1, theta2, ...], driven by (2r, 2s)

_jit = numba.njit(cache=True, fastmath=False)


@_jit
def _rhs(system, t, y, p, out):
    if system == PHASE:
        out[0] = 1.0 + p
    elif system == QUADRATURE:
        out[0] = p
    elif system == FRONT:
        out[0] = 1.0 + p
        out[1] = (p - 1.0) * math.sin(y[0])
        out[2] = (1.0 - p) * math.cos(y[0])
    elif system == HILL:
        for j in range(0, y.size, 2):
            out[j] = y[j + 1]
            out[j + 1] = -p * y[j]
    elif system == BIKE:
        out[0] = 1.0 + p
        xdot = (p - 1.0) * math.sin(y[0])
        ydot = (1.0 - p) * math.cos(y[0])
        for j in range(1, y.size):
            out[j] = ydot * math.cos(y[j]) - xdot * math.sin(y[j])
    elif system == MAGNETIC:
        v = 1.0 - p
        out[0] = 2.0 - v
        out[1] = v * math.cos(y[0])
        out[2] = v * math.sin(y[0])
    elif system == ROTATING:
        out[0] = 1.0 + p
        two_psi = -y[0]
        r = 0.5 * (1.0 - p) * math.sin(two_psi)
        s = 0.5 * (1.0 - p) * math.cos(two_psi)
        out[1] = r * y[1] + s * y[2]
        out[2] = s * y[1] - r * y[2]
    elif system == RICCATI:
        out[0] = 1.0 + p
        two_psi = -y[0]
        r = 0.5 * (1.0 - p) * math.sin(two_psi)
        s = 0.5 * (1.0 - p) * math.cos(two_psi)
        for j in range(1, y.size):
            out[j] = 2.0 * s * math.cos(y[j]) - 2.0 * r * math.sin(y[j])


@_jit
def _finite(a):
    for i in range(a.size):
        if not math.isfinite(a[i]):
            return False
    return True


@_jit
def _drive(system, times, table, y0):
    n = times.size - 1
    d = y0.size
    states = np.empty((n + 1, d))
    states[0] = y0
    y = y0.copy()
    k1 = np.empty(d)
    k2 = np.empty(d)
    k3 = np.empty(d)
    k4 = np.empty(d)
    tmp = np.empty(d)
    for k in range(n):
        t = times[k]
        h = times[k + 1] - t
        _rhs(system, t, y, table[2 * k], k1)
        for i in range(d):
            tmp[i] = y[i] + 0.5 * h * k1[i]
        _rhs(system, t + 0.5 * h, tmp, table[2 * k + 1], k2)
        for i in range(d):
            tmp[i] = y[i] + 0.5 * h * k2[i]
        _rhs(system, t + 0.5 * h, tmp, table[2 * k + 1], k3)
        for i in range(d):
            tmp[i] = y[i] + h * k3[i]
        _rhs(system, t + h, tmp, table[2 * k + 2], k4)
        for i in range(d):
            y[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])
        if not _finite(y):
            return states, k + 1
        states[k + 1] = y
    return states, -1


def integrate(system: int, grid: GridSpec, table: np.ndarray, y0) -> Trajectory:
    """Run ``system`` over ``grid`` with potential samples ``table`` (length 2n+1)."""
    times = grid.times
    table = np.ascontiguousarray(table, dtype=float)
    if table.shape != (2 * times.size - 1,):
        raise ValueError("potential table must hold grid points and midpoints")
    if not np.all(np.isfinite(table)):
        bad = int(np.flatnonzero(~np.isfinite(table))[0])
        raise IntegrationError(_table_time(grid, bad), "potential is not finite")
    y0 = np.atleast_1d(np.asarray(y0, dtype=float)).copy()
    if not np.all(np.isfinite(y0)):
        raise IntegrationError(times[0], "initial state is not finite")
    states, failed = _drive(system, times, table, y0)
    if failed >= 0:
        raise IntegrationError(times[failed])
    return Trajectory(times, states)


def _table_time(grid, row):
    k, odd = divmod(row, 2)
    return grid.times[k] if not odd else grid.midpoints()[k]
