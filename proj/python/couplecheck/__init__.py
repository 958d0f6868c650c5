"""Exact couplings and contextuality checks for finite context-content systems."""

from ._core import (
    CouplecheckError,
    System,
    analyze,
    chsh_value,
    couple_with_equality_targets,
    independent_coupling,
    max_equality_probability,
    maximally_connected_coupling,
    scenario,
    scenarios,
    solve_feasibility,
)

__all__ = [
    "CouplecheckError",
    "System",
    "analyze",
    "chsh_value",
    "couple_with_equality_targets",
    "independent_coupling",
    "max_equality_probability",
    "maximally_connected_coupling",
    "scenario",
    "scenarios",
    "solve_feasibility",
]
