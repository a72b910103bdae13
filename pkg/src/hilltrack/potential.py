"""Potentials p(t) and the accumulated phase phi(t) = t + int_0^t p."""

from __future__ import annotations

import csv
import dataclasses
import math
import re
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import _kernels
from .numerics import TWO_PI, GridSpec

PERIOD_PROBE_POINTS = 1000
PERIOD_PROBE_RTOL = 1e-12


class DomainError(ValueError):
    """Evaluation of a sampled potential outside its sample range."""


class PeriodError(ValueError):
    """A declared period failed the periodicity probe."""


class DescriptorError(ValueError):
    """Malformed potential descriptor; ``position`` is the 0-based offset of the problem."""

    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"{message} at position {position}")


@dataclass(frozen=True)
class Potential:
    """Base class. Subclasses implement ``_eval`` and ``_derivative`` on arrays."""

    period: float | None = field(default=None, kw_only=True)

    def __post_init__(self):
        if self.period is not None:
            if not (math.isfinite(self.period) and self.period > 0):
                raise PeriodError(f"period must be positive and finite, got {self.period}")
            self._probe_period(self.period)

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        out = self._eval(t)
        return float(out) if out.ndim == 0 else out

    def derivative(self, t):
        """Time derivative p'(t) (one-sided slope at sample knots for sampled data)."""
        t = np.asarray(t, dtype=float)
        out = self._derivative(t)
        return float(out) if out.ndim == 0 else out

    @property
    def domain(self) -> tuple[float, float]:
        return (-math.inf, math.inf)

    def with_period(self, period: float) -> "Potential":
        return dataclasses.replace(self, period=period)

    def __add__(self, other: "Potential") -> "Sum":
        return Sum((self, other))

    def _probe_period(self, T):
        lo, hi = self.domain
        start = 0.0 if math.isinf(lo) else lo
        stop = start + T if math.isinf(hi) else hi - T
        if stop < start:
            raise PeriodError(f"sample range is shorter than the declared period {T}")
        t = np.linspace(start, stop, PERIOD_PROBE_POINTS)
        a = self._eval(t)
        b = self._eval(t + T)
        err = np.abs(b - a) - PERIOD_PROBE_RTOL * (1.0 + np.abs(a))
        if np.any(err > 0):
            k = int(np.argmax(err))
            raise PeriodError(
                f"p(t + {T!r}) differs from p(t) by {abs(b[k] - a[k]):.3g} at t={t[k]:.6g}"
            )


@dataclass(frozen=True)
class Constant(Potential):
    c: float = 0.0
    period: float | None = field(default=TWO_PI, kw_only=True)

    def _eval(self, t):
        return np.full_like(t, self.c)

    def _derivative(self, t):
        return np.zeros_like(t)


@dataclass(frozen=True)
class Cosine(Potential):
    """p(t) = a + b cos(omega t)."""

    a: float = 0.0
    b: float = 0.0
    omega: float = 1.0

    def __post_init__(self):
        if self.period is None:
            T = TWO_PI / abs(self.omega) if self.omega != 0 else TWO_PI
            object.__setattr__(self, "period", T)
        super().__post_init__()

    def _eval(self, t):
        return self.a + self.b * np.cos(self.omega * t)

    def _derivative(self, t):
        return -self.b * self.omega * np.sin(self.omega * t)


@dataclass(frozen=True)
class SechSquared(Potential):
    """Solitary-wave profile p(t) = A sech^2(k (t - t_c))."""

    amplitude: float = 1.0
    k: float = 1.0
    center: float = 0.0

    def _eval(self, t):
        return self.amplitude / np.cosh(self.k * (t - self.center)) ** 2

    def _derivative(self, t):
        u = self.k * (t - self.center)
        return -2.0 * self.amplitude * self.k * np.tanh(u) / np.cosh(u) ** 2


@dataclass(frozen=True)
class Sampled(Potential):
    """Piecewise-linear interpolant of samples; undefined outside the sample range."""

    times: np.ndarray = None
    values: np.ndarray = None

    def __post_init__(self):
        t = np.asarray(self.times, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if t.ndim != 1 or t.shape != v.shape or t.size < 2:
            raise ValueError("need matching 1-d times and values with at least two samples")
        if np.any(np.diff(t) <= 0):
            raise ValueError("sample times must be strictly increasing")
        if not (np.all(np.isfinite(t)) and np.all(np.isfinite(v))):
            raise ValueError("samples must be finite")
        t.setflags(write=False)
        v.setflags(write=False)
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "values", v)
        super().__post_init__()

    @property
    def domain(self):
        return (float(self.times[0]), float(self.times[-1]))

    def _check(self, t):
        lo, hi = self.domain
        if np.any((t < lo) | (t > hi)) or np.any(np.isnan(t)):
            raise DomainError(f"sampled potential is defined only on [{lo}, {hi}]")

    def _eval(self, t):
        self._check(t)
        return np.interp(t, self.times, self.values)

    def _derivative(self, t):
        self._check(t)
        slopes = np.diff(self.values) / np.diff(self.times)
        k = np.clip(np.searchsorted(self.times, t, side="right") - 1, 0, slopes.size - 1)
        return slopes[k]

    # numpy fields break the generated __eq__/__hash__
    def __eq__(self, other):
        return (
            type(other) is Sampled
            and np.array_equal(self.times, other.times)
            and np.array_equal(self.values, other.values)
            and self.period == other.period
        )

    __hash__ = None


@dataclass(frozen=True)
class Sum(Potential):
    parts: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))
        if not self.parts:
            raise ValueError("sum of no potentials")
        if self.period is None:
            object.__setattr__(self, "period", _common_period(self.parts))
        super().__post_init__()

    @property
    def domain(self):
        lo = max(q.domain[0] for q in self.parts)
        hi = min(q.domain[1] for q in self.parts)
        return (lo, hi)

    def _eval(self, t):
        return sum(q._eval(t) for q in self.parts)

    def _derivative(self, t):
        return sum(q._derivative(t) for q in self.parts)


def _common_period(parts):
    periods = [q.period for q in parts if not isinstance(q, Constant)]
    if not periods:
        return TWO_PI
    if any(T is None for T in periods):
        return None
    if all(math.isclose(T, periods[0], rel_tol=1e-12) for T in periods):
        return periods[0]
    return None


def evaluate(p: Potential, t):
    """Value of ``p`` at ``t`` (scalar or array)."""
    return p(t)


def midpoint_table(p: Potential, grid: GridSpec) -> np.ndarray:
    """p at grid points (even rows) and RK4 midpoints (odd rows)."""
    table = np.empty(2 * grid.n + 1)
    table[0::2] = p(grid.times)
    table[1::2] = p(grid.midpoints())
    return table


@dataclass(frozen=True)
class PhaseAccumulator:
    """phi(t) on a grid, with the rotating-frame angle psi = -phi/2."""

    grid: GridSpec
    phi: np.ndarray
    psi: np.ndarray


def accumulate_phase(p: Potential, grid: GridSpec) -> PhaseAccumulator:
    traj = _kernels.integrate(_kernels.PHASE, grid, midpoint_table(p, grid), [0.0])
    phi = traj.states[:, 0]
    return PhaseAccumulator(grid, phi, -0.5 * phi)


def quadrature(p: Potential, grid: GridSpec) -> np.ndarray:
    """Running integral of p from grid.t0, by the same stepper."""
    return _kernels.integrate(_kernels.QUADRATURE, grid, midpoint_table(p, grid), [0.0]).states[:, 0]


# -- descriptors ---------------------------------------------------------------

CATALOG = {
    "const:0": "free particle; front wheel runs round the unit circle",
    "const:1": "stationary front wheel",
    "cos:0.5,0.3,1": "trigonometric potential with positive speed",
    "cos:1.5,1,1": "trigonometric potential whose speed changes sign (cusps)",
    "sech2:2,1,5": "solitary-wave profile",
}

_NUMBER = re.compile(r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?")
_ARITY = {"const": 1, "cos": 3, "sech2": 3}


def make_potential(descriptor: str) -> Potential:
    """Parse a descriptor such as ``cos:0.5,0.3,1`` or ``sum:(const:1;sech2:2,1,5)``."""
    parser = _Parser(descriptor)
    p = parser.potential()
    if parser.pos != len(descriptor):
        raise DescriptorError("unexpected trailing text", parser.pos)
    return p


class _Parser:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def error(self, message, pos=None):
        raise DescriptorError(message, self.pos if pos is None else pos)

    def expect(self, char):
        if self.text.startswith(char, self.pos):
            self.pos += len(char)
        else:
            self.error(f"expected {char!r}")

    def number(self):
        m = _NUMBER.match(self.text, self.pos)
        if not m:
            self.error("expected a number")
        self.pos = m.end()
        return float(m.group())

    def potential(self):
        start = self.pos
        colon = self.text.find(":", start)
        if colon < 0:
            self.error("expected '<kind>:'")
        kind = self.text[start:colon]
        self.pos = colon + 1
        if kind in _ARITY:
            args = [self.number()]
            for _ in range(_ARITY[kind] - 1):
                self.expect(",")
                args.append(self.number())
            if kind == "const":
                return Constant(*args)
            if kind == "cos":
                return Cosine(*args)
            if args[1] == 0:
                self.error("sech2 width k must be nonzero", start)
            return SechSquared(*args)
        if kind == "sum":
            self.expect("(")
            parts = [self.potential()]
            while self.text.startswith(";", self.pos):
                self.pos += 1
                parts.append(self.potential())
            self.expect(")")
            return Sum(tuple(parts))
        if kind == "file":
            end = len(self.text)
            for stop in ";)":
                i = self.text.find(stop, self.pos)
                if i >= 0:
                    end = min(end, i)
            path = self.text[self.pos:end]
            if not path:
                self.error("expected a file path")
            try:
                p = load_sampled(path)
            except (OSError, ValueError) as exc:
                self.error(f"cannot load {path!r}: {exc}")
            self.pos = end
            return p
        self.error(f"unknown potential kind {kind!r}", start)


def load_sampled(path) -> Sampled:
    """Read a two-column ``t,p`` CSV (an optional header row is skipped)."""
    rows = []
    with Path(path).open(newline="") as fh:
        for i, row in enumerate(csv.reader(fh)):
            if not row or not "".join(row).strip():
                continue
            if len(row) != 2:
                raise ValueError(f"line {i + 1}: expected two columns")
            try:
                rows.append((float(row[0]), float(row[1])))
            except ValueError:
                if rows or i > 0:
                    raise ValueError(f"line {i + 1}: not numeric") from None
    data = np.array(rows, dtype=float).reshape(-1, 2)
    return Sampled(times=data[:, 0], values=data[:, 1])
