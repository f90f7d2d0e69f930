from .core_model import (
    gks_from_lindblad,
    project_to_six_params,
    project_operators,
    validate_inequality,
    is_physical,
    bloch_from_density,
    density_from_bloch,
)
from .dynamics import BlochDynamics
from .integrator import integrate_bloch, integrate_radial
from .synthesis import controls_for_path
from .extremal import ExtremalSolver
from .envelope import envelope_curve
from .analysis import (
    trap_radius,
    reachable,
    pure_state_rate,
    common_eigenvector,
    classify_purifiable,
)

__all__ = [
    "gks_from_lindblad",
    "project_to_six_params",
    "project_operators",
    "validate_inequality",
    "is_physical",
    "bloch_from_density",
    "density_from_bloch",
    "BlochDynamics",
    "integrate_bloch",
    "integrate_radial",
    "controls_for_path",
    "ExtremalSolver",
    "envelope_curve",
    "trap_radius",
    "reachable",
    "pure_state_rate",
    "common_eigenvector",
    "classify_purifiable",
]
