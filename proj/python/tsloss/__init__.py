"""Time-scale social loss model: delta calculus on hZ, closed-form
Euler-Lagrange minimizers, a tridiagonal oracle and the h-sweep."""

from ._tsloss import (
    Error,
    ModelParams,
    SweepReport,
    delta_derivative,
    delta_exp,
    delta_integral,
    el_coefficients,
    el_residual,
    jump_operators,
    ominus,
    optimal_path_continuous,
    optimal_path_hz,
    perturbation_check,
    qp_minimize,
    render_report,
    social_loss_continuous,
    social_loss_hz,
    solve_second_order,
    sweep,
)

__all__ = [
    "Error",
    "ModelParams",
    "SweepReport",
    "delta_derivative",
    "delta_exp",
    "delta_integral",
    "el_coefficients",
    "el_residual",
    "jump_operators",
    "ominus",
    "optimal_path_continuous",
    "optimal_path_hz",
    "perturbation_check",
    "qp_minimize",
    "render_report",
    "social_loss_continuous",
    "social_loss_hz",
    "solve_second_order",
    "sweep",
]
