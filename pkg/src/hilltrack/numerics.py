"""Fixed-step integration on uniform grids and continuous-angle bookkeeping."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numba
import numpy as np

TWO_PI = 2.0 * math.pi
_SNAP_RTOL = 1e-9


class IntegrationError(ArithmeticError):
    """Raised when an integration stage produces a non-finite value."""

    def __init__(self, time: float, message: str | None = None):
        self.time = time
        super().__init__(message or f"non-finite value produced at t={time!r}")


class AngleJumpError(ValueError):
    """Raised when a sampled angle moves too far between grid points to unwrap safely."""


@dataclass(frozen=True)
class GridSpec:
    """Time grid ``t0, t0 + h, ..., t0 + (n-1)*h, t1`` with ``n = round((t1 - t0)/h)``.

    The grid always ends exactly on ``t1``, so the last step lies in
    ``[h/2, 3h/2)``; it equals ``h`` (to ``h * 1e-9``) when ``h`` divides the interval.
    """

    t0: float
    t1: float
    h: float

    def __post_init__(self):
        for name in ("t0", "t1", "h"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if not self.t1 > self.t0:
            raise ValueError(f"need t1 > t0, got t0={self.t0}, t1={self.t1}")
        if not self.h > 0:
            raise ValueError(f"need h > 0, got h={self.h}")
        if self.n < 1:
            raise ValueError(f"step h={self.h} is too large for [{self.t0}, {self.t1}]")

    @property
    def n(self) -> int:
        return int(round((self.t1 - self.t0) / self.h))

    @property
    def times(self) -> np.ndarray:
        t = self.t0 + np.arange(self.n + 1) * self.h
        t[-1] = self.t1
        return t

    @property
    def uniform(self) -> bool:
        """Whether the last step equals ``h`` up to the snapping tolerance."""
        return abs(self.t0 + self.n * self.h - self.t1) <= self.h * _SNAP_RTOL

    def midpoints(self) -> np.ndarray:
        """Stage times ``t_k + h_k/2`` exactly as the RK4 stepper forms them."""
        t = self.times
        return t[:-1] + 0.5 * (t[1:] - t[:-1])

    def index_of(self, t: float) -> int:
        """Index of the grid point nearest to ``t``."""
        k = int(round((t - self.t0) / self.h))
        if not 0 <= k <= self.n:
            raise IndexError(f"t={t} outside grid [{self.t0}, {self.times[-1]}]")
        return k


@dataclass(frozen=True)
class Trajectory:
    times: np.ndarray
    states: np.ndarray

    def __post_init__(self):
        if self.states.ndim != 2 or self.states.shape[0] != self.times.shape[0]:
            raise ValueError("states must be a (len(times), dim) array")
        if np.any(np.diff(self.times) <= 0):
            raise ValueError("times must be strictly increasing")

    @property
    def dim(self) -> int:
        return self.states.shape[1]

    def __len__(self):
        return self.times.shape[0]


def rk4_integrate(
    f: Callable[[float, np.ndarray], np.ndarray],
    grid: GridSpec,
    state0,
) -> Trajectory:
    """Integrate ``y' = f(t, y)`` with the classical Runge-Kutta rule.

    Every stage is checked for finiteness; the first offending stage raises
    :class:`IntegrationError` carrying its time.
    """
    times = grid.times
    y = np.atleast_1d(np.asarray(state0, dtype=float)).copy()
    if not np.all(np.isfinite(y)):
        raise IntegrationError(times[0], "initial state is not finite")
    states = np.empty((times.size, y.size))
    states[0] = y

    def stage(t, arg):
        k = np.asarray(f(t, arg), dtype=float)
        if not np.all(np.isfinite(k)):
            raise IntegrationError(t)
        return k

    for i in range(times.size - 1):
        t = times[i]
        h = times[i + 1] - t
        k1 = stage(t, y)
        k2 = stage(t + 0.5 * h, y + 0.5 * h * k1)
        k3 = stage(t + 0.5 * h, y + 0.5 * h * k2)
        k4 = stage(t + h, y + h * k3)
        y = y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if not np.all(np.isfinite(y)):
            raise IntegrationError(times[i + 1])
        states[i + 1] = y
    return Trajectory(times, states)


def unwrap_angle(previous_continuous: float, new_principal: float) -> float:
    """Representative of ``new_principal`` mod 2*pi in ``(previous - pi, previous + pi]``."""
    m = math.floor((previous_continuous - new_principal + math.pi) / TWO_PI)
    return new_principal + TWO_PI * m


def unwrap_series(principal, max_jump: float | None = None) -> np.ndarray:
    """Continuous branch of a sequence of principal angles, starting at ``principal[0]``.

    Each sample differs from its principal value by an exact integer multiple
    of 2*pi. With ``max_jump`` set, a step whose reduced increment exceeds it
    raises :class:`AngleJumpError` (the grid is too coarse to follow the angle).
    """
    a = np.asarray(principal, dtype=float)
    if a.size == 0:
        return a.copy()
    out, bad = _unwrap_loop(a, math.inf if max_jump is None else float(max_jump))
    if bad >= 0:
        raise AngleJumpError(
            f"angle moved {out[bad + 1] - out[bad]:.3g} rad between samples {bad} and {bad + 1}; "
            "reduce the step size"
        )
    return out


@numba.njit(cache=True)
def _unwrap_loop(a, max_jump):
    # same branch rule as unwrap_angle, applied to the running continuous value
    out = np.empty_like(a)
    out[0] = a[0]
    for k in range(1, a.size):
        m = math.floor((out[k - 1] - a[k] + math.pi) / TWO_PI)
        out[k] = a[k] + TWO_PI * m
        if abs(out[k] - out[k - 1]) > max_jump:
            return out, k - 1
    return out, -1
