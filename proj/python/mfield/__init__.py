"""Mean-field vortex density equation: closed forms, radial and planar solvers, diagnostics."""

from ._core import (
    CharacteristicSolution,
    ConfigError,
    DomainError,
    NumericalError,
    barenblatt_density,
    density_from_mass,
    energy,
    largest_solution,
    list_scenarios,
    patch_density,
    patch_mass,
    patch_w2_closed_form,
    run_scenario,
    run_solver,
    sample_patch,
    step_finite_volume,
    total_mass,
    two_patch_state,
    validate_config,
    velocity,
    wasserstein_radial,
)

__all__ = [
    "CharacteristicSolution",
    "ConfigError",
    "DomainError",
    "NumericalError",
    "barenblatt_density",
    "density_from_mass",
    "energy",
    "largest_solution",
    "list_scenarios",
    "patch_density",
    "patch_mass",
    "patch_w2_closed_form",
    "run_scenario",
    "run_solver",
    "sample_patch",
    "step_finite_volume",
    "total_mass",
    "two_patch_state",
    "validate_config",
    "velocity",
    "wasserstein_radial",
]
