import math

import numpy as np
import pytest

from hilltrack.bike import bike_angles, no_slip_residual, rear_track, solve_bike
from hilltrack.equivalence import init_from_theta, rotating_frame_coeffs
from hilltrack.frontpath import build_front_path
from hilltrack.numerics import GridSpec
from hilltrack.potential import CATALOG, Constant, Cosine, SechSquared, accumulate_phase, make_potential
from hilltrack.schrodinger import solve_hill


def test_stationary_bike():
    path = build_front_path(Constant(1.0), GridSpec(0, 10, 1e-3))
    bike = solve_bike(path, 0.7)
    assert np.all(bike.theta == 0.7)
    assert no_slip_residual(bike, path) <= 1e-12
    rear = rear_track(solve_bike(path, math.pi / 4))
    np.testing.assert_allclose(rear, -math.sqrt(0.5), atol=1e-12)


def test_circle_case():
    grid = GridSpec(0, 2 * math.pi, 1e-3)
    path = build_front_path(Constant(0.0), grid)
    bike = solve_bike(path, 0.0)
    assert np.max(np.abs(bike.theta - grid.times)) <= 1e-8
    assert np.max(np.abs(rear_track(bike) - [-1.0, 0.0])) <= 1e-6
    assert no_slip_residual(bike, path) <= 1e-6


def test_self_convergence():
    p = Cosine(0.5, 0.3, 1.0)
    coarse = solve_bike(build_front_path(p, GridSpec(0, 20, 1e-3)), 0.3)
    fine = solve_bike(build_front_path(p, GridSpec(0, 20, 1e-5)), 0.3)
    assert abs(coarse.theta[-1] - fine.theta[-1]) <= 1e-6


def test_segment_has_unit_length():
    path = build_front_path(Cosine(1.5, 1.0, 1.0), GridSpec(0, 20, 1e-3))
    bike = solve_bike(path, 1.1)
    assert np.max(np.abs(np.hypot(*(bike.front - bike.rear).T) - 1.0)) <= 1e-15


@pytest.mark.parametrize("desc", list(CATALOG))
def test_no_slip(desc):
    path = build_front_path(make_potential(desc), GridSpec(0, 20, 1e-3))
    assert no_slip_residual(solve_bike(path, 0.3), path) <= 1e-5


def test_no_slip_converges_second_order():
    p = Cosine(0.5, 0.3, 1.0)
    res = []
    for h in (4e-3, 2e-3):
        path = build_front_path(p, GridSpec(0, 20, h))
        res.append(no_slip_residual(solve_bike(path, 0.3), path))
    assert 3.0 <= res[0] / res[1] <= 5.0


def test_shift_by_full_turn():
    path = build_front_path(Cosine(1.5, 1.0, 1.0), GridSpec(0, 20, 1e-3))
    theta = bike_angles(path, [0.4, 0.4 + 2 * math.pi])
    assert np.max(np.abs(theta[:, 1] - theta[:, 0] - 2 * math.pi)) <= 1e-10


@pytest.mark.parametrize("desc", list(CATALOG))
def test_double_angle_form(desc):
    """theta' equals 2s cos(theta) - 2r sin(theta) with the rotating-frame coefficients."""
    p = make_potential(desc)
    grid = GridSpec(0, 20, 1e-3)
    path = build_front_path(p, grid)
    bike = solve_bike(path, 0.9)
    psi = accumulate_phase(p, grid).psi
    t = grid.times
    c = [rotating_frame_coeffs(p, psi[k], t[k]) for k in range(grid.n + 1)]
    r = np.array([x.r for x in c])
    s = np.array([x.s for x in c])
    rhs = 2 * s * np.cos(bike.theta) - 2 * r * np.sin(bike.theta)
    lhs = path.Ydot * np.cos(bike.theta) - path.Xdot * np.sin(bike.theta)
    assert np.max(np.abs(lhs - rhs)) <= 1e-8


def test_turning_matches_hill_prediction():
    p = SechSquared(2.0, 1.0, 5.0)
    grid = GridSpec(0, 10, 1e-3)
    path = build_front_path(p, grid)
    bike = solve_bike(path, 0.0)
    steps = np.diff(bike.theta)
    turning = float(np.sum(steps))
    hill = solve_hill(p, init_from_theta(0.0), grid)
    predicted = 2 * hill.alpha[-1] + path.phi[-1]
    assert turning == pytest.approx(bike.theta[-1] - bike.theta[0], abs=1e-12)
    assert abs(turning - (predicted - 2 * hill.alpha[0])) <= 1e-5


def test_grid_mismatch():
    a = build_front_path(Constant(0.0), GridSpec(0, 1, 0.1))
    b = build_front_path(Constant(0.0), GridSpec(0, 1, 0.05))
    with pytest.raises(ValueError):
        no_slip_residual(solve_bike(a, 0.0), b)
