"""Linear multistep methods with repeated global Richardson extrapolation."""

from fractions import Fraction

from ._core import (
    NumericalError,
    converge,
    converge_csv,
    is_stable,
    method_names,
    problem_names,
    rgre,
    root_condition,
    run_cli,
    solve,
    stability_angle,
)
from ._core import gamma as _gamma

__all__ = [
    "NumericalError",
    "converge",
    "converge_csv",
    "gamma",
    "is_stable",
    "method_names",
    "problem_names",
    "rgre",
    "root_condition",
    "run_cli",
    "solve",
    "stability_angle",
]


def gamma(p, ell):
    """Exact extrapolation weights, coarse grid first."""
    return [Fraction(int(num), int(den)) for num, den in _gamma(p, ell)]
