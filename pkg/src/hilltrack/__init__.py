"""Bicycle-track realization of the stationary Schrodinger (Hill) equation.

A potential p(t) defines a front-wheel path; the bicycle angle along that path
equals ``2 arg(x + i x') + t + int_0^t p`` for the matching Hill solution.
"""

from .bike import BikeTrajectory, no_slip_residual, rear_track, solve_bike
from .equivalence import (
    EquivalenceReport,
    double_angle_residual,
    frame_matrix_audit,
    init_from_theta,
    rotating_frame_coeffs,
    theta_from_solution,
    verify_equivalence,
)
from .frontpath import FrontPath, MagneticPath, build_front_path, front_velocity, magnetic_simulate
from .numerics import GridSpec, Trajectory, rk4_integrate, unwrap_angle
from .potential import (
    CATALOG,
    Constant,
    Cosine,
    Potential,
    Sampled,
    SechSquared,
    Sum,
    accumulate_phase,
    evaluate,
    make_potential,
)
from .schrodinger import HillTrajectory, MonodromyResult, monodromy, pruefer_angle, solve_hill, wronskian

__version__ = "0.1.0"
