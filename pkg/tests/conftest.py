import pytest

from ecsc import (
    ScreeningSpec,
    default_solver_config,
    effective_potential,
    solve_bound_state,
)


@pytest.fixture(scope="session")
def solve():
    """Shortcut: numerically solve one screened-Coulomb state with default grids."""

    def _solve(state, strength, delta, units, g=1.0):
        spec = ScreeningSpec(delta=delta, strength=strength, g=g)
        pot = lambda r: effective_potential(r, spec, state.ell, units)
        return solve_bound_state(pot, state, units, default_solver_config(state, spec, units))

    return _solve
