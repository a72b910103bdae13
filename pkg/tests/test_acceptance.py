"""Acceptance criteria, one test per criterion, each at its pinned tolerance.

Every test records a PASS/FAIL line shown in the pytest terminal summary.
"""

import math
import re

import numpy as np
import pytest

from hilltrack.bike import no_slip_residual, solve_bike
from hilltrack.cli import main
from hilltrack.equivalence import (
    double_angle_residual,
    frame_matrices,
    frame_matrix_audit,
    init_from_theta,
    verify_equivalence,
)
from hilltrack.export import read_csv
from hilltrack.frontpath import build_front_path, curvature, magnetic_simulate, path_distance
from hilltrack.numerics import GridSpec
from hilltrack.potential import CATALOG, accumulate_phase, make_potential
from hilltrack.schrodinger import monodromy, solve_hill, wronskian_series

POTENTIALS = list(CATALOG)
THETAS = [2 * math.pi * k / 8 for k in range(8)]
H = 1e-3
GRID = GridSpec(0.0, 20.0, H)
HALF_GRID = GridSpec(0.0, 20.0, H / 2)


@pytest.fixture(scope="module")
def residuals():
    """Bike-vs-Hill residuals per (potential, theta0) at h and h/2."""
    out = {}
    for desc in POTENTIALS:
        p = make_potential(desc)
        for th in THETAS:
            out[desc, th] = (
                verify_equivalence(p, th, GRID).max_residual,
                verify_equivalence(p, th, HALF_GRID).max_residual,
            )
    return out


def test_c1a_equivalence_residual(residuals, report_line):
    worst = max(r[0] for r in residuals.values())
    passed = worst <= 1e-5
    report_line("C1a bike-vs-Hill residual <= 1e-5 (5 potentials x 8 angles, h=1e-3)", passed, f"worst {worst:.3e}")
    assert passed


def test_c1b_equivalence_halving(residuals, report_line):
    ratios = {k: r[0] / r[1] if r[1] > 0 else math.inf for k, r in residuals.items()}
    failing = {k: v for k, v in ratios.items() if not v >= 12}
    worst_key = min(ratios, key=ratios.get)
    report_line(
        "C1b residual shrinks >= 12x when h=1e-3 is halved",
        not failing,
        f"{len(failing)}/{len(ratios)} cases below 12; min ratio {ratios[worst_key]:.2f} at {worst_key[0]}, "
        f"residuals {residuals[worst_key][0]:.2e} -> {residuals[worst_key][1]:.2e}",
    )
    assert not failing


def test_c1c_equivalence_order_in_truncation_regime(report_line):
    """Companion check: the halving ratio where truncation error dominates roundoff."""
    ratios = []
    for desc in POTENTIALS:
        p = make_potential(desc)
        worst = [
            max(verify_equivalence(p, th, GridSpec(0, 20, h)).max_residual for th in THETAS)
            for h in (0.02, 0.01)
        ]
        ratios.append(worst[0] / worst[1])
    passed = min(ratios) >= 12
    report_line("C1c residual shrinks >= 12x when h=0.02 is halved", passed, f"min ratio {min(ratios):.2f}")
    assert passed


def test_c2_magnetic_matches_front_path(report_line):
    worst = 0.0
    for desc in POTENTIALS:
        p = make_potential(desc)
        worst = max(worst, path_distance(magnetic_simulate(p, GRID), build_front_path(p, GRID)))
    passed = worst <= 1e-5
    report_line("C2 magnetic particle vs front path sup distance <= 1e-5", passed, f"worst {worst:.3e}")
    assert passed


def test_c3_circle_case(report_line):
    p = make_potential("const:0")
    grid = GridSpec(0.0, 2 * math.pi, H)
    t = grid.times
    path = build_front_path(p, grid)
    bike = solve_bike(path, 0.0)
    front = max(np.max(np.abs(path.X - (np.cos(t) - 1))), np.max(np.abs(path.Y - np.sin(t))))
    rear = np.max(np.hypot(bike.rear[:, 0] + 1, bike.rear[:, 1]))
    theta = np.max(np.abs(bike.theta - t))
    passed = front <= 1e-8 and rear <= 1e-6 and theta <= 1e-7
    report_line(
        "C3 p=0 circle: front 1e-8, rear 1e-6, theta 1e-7",
        passed,
        f"front {front:.2e}, rear {rear:.2e}, theta {theta:.2e}",
    )
    assert passed


def test_c4_stationary_case(report_line):
    p = make_potential("const:1")
    grid = GridSpec(0.0, 20.0, H)
    path = build_front_path(p, grid)
    phase = accumulate_phase(p, grid)
    still = bool(np.all(path.X == 0) and np.all(path.Y == 0))
    theta_dev = hill_dev = 0.0
    for th in THETAS:
        bike = solve_bike(path, th)
        theta_dev = max(theta_dev, np.max(np.abs(bike.theta - th)))
        hill = solve_hill(p, init_from_theta(th), grid)
        hill_dev = max(hill_dev, np.max(np.abs(2 * hill.alpha + phase.phi - th)))
    passed = still and theta_dev <= 1e-10 and hill_dev <= 1e-8
    report_line(
        "C4 p=1 stationary: front fixed, theta 1e-10, 2 alpha + phi 1e-8",
        passed,
        f"front fixed {still}, theta {theta_dev:.2e}, hill {hill_dev:.2e}",
    )
    assert passed


def test_c5_conservation(report_line):
    drift = 0.0
    for desc in POTENTIALS:
        p = make_potential(desc)
        w = wronskian_series(solve_hill(p, (1.0, 0.0), GRID), solve_hill(p, (0.0, 1.0), GRID))
        drift = max(drift, np.max(np.abs(w - w[0])) / abs(w[0]))
    det_err = 0.0
    for desc in POTENTIALS:
        p = make_potential(desc)
        if p.period is not None:
            det_err = max(det_err, abs(monodromy(p, H).det - 1))
    ident = np.max(np.abs(monodromy(make_potential("const:1"), H, 2 * math.pi).matrix - np.eye(2)))
    passed = drift <= 1e-9 and det_err <= 1e-8 and ident <= 1e-6
    report_line(
        "C5 Wronskian drift 1e-9, |det M - 1| 1e-8, M(const:1) = I to 1e-6",
        passed,
        f"drift {drift:.2e}, det {det_err:.2e}, identity {ident:.2e}",
    )
    assert passed


def test_c6_rotating_frame(report_line):
    gap = asym = trace = 0.0
    for desc in POTENTIALS:
        p = make_potential(desc)
        gap = max(gap, frame_matrix_audit(p, GRID))
        M = frame_matrices(p, GRID)
        asym = max(asym, np.max(np.abs(M[:, 0, 1] - M[:, 1, 0])))
        trace = max(trace, np.max(np.abs(M[:, 0, 0] + M[:, 1, 1])))
    passed = gap <= 1e-10 and asym <= 1e-10 and trace <= 1e-10
    report_line(
        "C6 rotating-frame matrix = [[r,s],[s,-r]], symmetric, traceless (1e-10)",
        passed,
        f"gap {gap:.2e}, asym {asym:.2e}, trace {trace:.2e}",
    )
    assert passed


def test_c7_double_angle(report_line):
    worst = 0.0
    for desc in POTENTIALS:
        p = make_potential(desc)
        for th in THETAS:
            worst = max(worst, double_angle_residual(p, GRID, init_from_theta(th)))
    passed = worst <= 1e-5
    report_line("C7 2 arg(w) vs bike driven by (2r, 2s) <= 1e-5", passed, f"worst {worst:.3e}")
    assert passed


def test_c8_kinematics(report_line):
    speed_err = curv_err = slip = 0.0
    slip_ratio = math.inf
    for desc in POTENTIALS:
        p = make_potential(desc)
        path = build_front_path(p, GRID)
        speed_err = max(speed_err, np.max(np.abs(np.hypot(path.Xdot, path.Ydot) - np.abs(1 - p(GRID.times)))))
        mask = np.abs(path.v) > 1e-6
        if mask.any():
            p_t = p(GRID.times)[mask]
            curv_err = max(curv_err, np.max(np.abs(curvature(path)[mask] - (1 + p_t) / (1 - p_t))))
        r1 = no_slip_residual(solve_bike(path, 0.3), path)
        half = build_front_path(p, HALF_GRID)
        r2 = no_slip_residual(solve_bike(half, 0.3), half)
        slip = max(slip, r1)
        if r2 > 0:
            slip_ratio = min(slip_ratio, r1 / r2)
    # O(h^2): halving the step cuts the residual by about 4
    passed = speed_err <= 1e-12 and curv_err <= 1e-6 and slip <= 1e-5 and slip_ratio >= 3
    report_line(
        "C8 |F'| = |1-p| 1e-12, curvature 1e-6, no-slip 1e-5 with O(h^2) convergence",
        passed,
        f"speed {speed_err:.2e}, curvature {curv_err:.2e}, no-slip {slip:.2e}, halving ratio {slip_ratio:.2f}",
    )
    assert passed


def test_c9_cli_contract(tmp_path, capsys, report_line):
    checks = {}
    out_file = tmp_path / "track.csv"
    code = main(["track", "cos:1.5,1,1", "--t1", "20", "--theta0", "0.3", "--out", str(out_file)])
    cols = read_csv(out_file)
    checks["csv round trip"] = code == 0 and np.array_equal(
        1.0 - make_potential("cos:1.5,1,1")(cols["t"]), cols["v"]
    )
    verify_codes = [main(["verify", d, "--t1", "20", "--theta0", "0"]) for d in POTENTIALS]
    checks["verify catalog exit 0"] = verify_codes == [0] * len(POTENTIALS)
    checks["exit 1 on tolerance"] = (
        main(["verify", "cos:0.5,0.3,1", "--t1", "20", "--h", "0.5", "--theta0", "0", "--tol", "1e-12"]) == 1
    )
    checks["exit 2 on parse error"] = main(["track", "cos:1", "--t1", "1", "--theta0", "0"]) == 2
    checks["exit 2 on missing period"] = main(["monodromy", "sech2:2,1,5"]) == 2
    out = capsys.readouterr().out
    checks["verify output parseable"] = len(re.findall(r"status=PASS", out)) == len(POTENTIALS)
    failed = [k for k, ok in checks.items() if not ok]
    report_line("C9 CLI contract", not failed, "all checks ok" if not failed else f"failed: {failed}")
    assert not failed


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
