"""Numerical radial bound-state solver, independent of the perturbation theory.

Solves chi'' = (2m/hbar^2) (V_eff(r) - E) chi on a uniform grid with Numerov
propagation.  Eigenvalues are bracketed by node counting (oscillation
theorem) and refined on the log-derivative mismatch of outward and inward
sweeps matched at the outermost classical turning point.

The caller supplies the full effective potential including the centrifugal
barrier (see :func:`ecsc.potential.effective_potential`); the solver only
needs ell for the r^(ell+1) series start near the origin.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import sqrt

import numpy as np
from scipy.integrate import simpson
from scipy.optimize import brentq

from .core import (
    DEFAULT_TOLERANCES,
    QuantumState,
    ScreeningSpec,
    UnitSystem,
    ValidationError,
)

try:
    from numba import njit
except ImportError:  # pragma: no cover - pure-python fallback, much slower
    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]

        def wrap(func):
            return func

        return wrap


class NoBoundStateError(RuntimeError):
    """No level with the requested node count exists below the continuum."""


class IterationLimitError(RuntimeError):
    """Refinement hit the iteration cap; ``bracket`` holds the best interval."""

    def __init__(self, message: str, bracket: tuple[float, float]):
        super().__init__(message)
        self.bracket = bracket


@dataclass(frozen=True)
class SolverConfig:
    """Uniform grid spacing, outer cutoff and convergence targets."""

    step: float
    r_max: float
    energy_abs_tol: float = DEFAULT_TOLERANCES.eigen_abs
    max_iterations: int = 200

    def __post_init__(self) -> None:
        if not self.step > 0.0 or not self.r_max > 0.0:
            raise ValidationError("step and r_max must be positive")
        if self.r_max / self.step < 16:
            raise ValidationError("grid must have a sensible number of points")
        if not self.energy_abs_tol > 0.0 or self.max_iterations < 4:
            raise ValidationError("bad convergence settings")


def default_solver_config(
    state: QuantumState, spec: ScreeningSpec, units: UnitSystem
) -> SolverConfig:
    """Grid scaled to the Coulomb length of the state: fine step, far cutoff."""
    length = state.principal * units.hbar**2 / (units.mass * spec.strength)
    return SolverConfig(step=1e-3 * length, r_max=40.0 * state.principal * length)


@dataclass(frozen=True)
class RadialFunction:
    """A solved bound state: normalized amplitude samples and metadata."""

    grid: np.ndarray
    values: np.ndarray
    node_count: int
    energy: float
    converged: bool

    def dump_two_column(self, destination) -> None:
        """Write plain two-column text (r, chi), one sample per line."""
        lines = [f"{r:.10e} {v:.10e}\n" for r, v in zip(self.grid, self.values)]
        if hasattr(destination, "write"):
            destination.writelines(lines)
        else:
            with open(destination, "w", encoding="utf-8") as fh:
                fh.writelines(lines)


@njit(cache=True)
def _nodes_outward(f, h, y0, y1):
    # full outward Numerov pass; returns the interior sign-change count
    h12 = h * h / 12.0
    n = f.shape[0]
    ym = y0
    yc = y1
    pm = 1.0 - h12 * f[0]
    pc = 1.0 - h12 * f[1]
    nodes = 0
    for i in range(1, n - 1):
        pn = 1.0 - h12 * f[i + 1]
        yn = ((12.0 - 10.0 * pc) * yc - pm * ym) / pn
        if (yn > 0.0 and yc < 0.0) or (yn < 0.0 and yc > 0.0):
            nodes += 1
        ym = yc
        yc = yn
        pm = pc
        pc = pn
        ay = abs(yc)
        if ay > 1e250:  # deep trial energies grow ~exp(kappa r); keep finite
            ym /= ay
            yc /= ay
    return nodes


@njit(cache=True)
def _sweep_outward(f, h, y0, y1, last, out):
    # fill out[0..last] inclusive; the range stays numerically tame because
    # the caller stops just past the outermost turning point
    h12 = h * h / 12.0
    out[0] = y0
    out[1] = y1
    pm = 1.0 - h12 * f[0]
    pc = 1.0 - h12 * f[1]
    for i in range(1, last):
        pn = 1.0 - h12 * f[i + 1]
        out[i + 1] = ((12.0 - 10.0 * pc) * out[i] - pm * out[i - 1]) / pn
        pm = pc
        pc = pn


@njit(cache=True)
def _sweep_inward(f, h, first, out):
    # fill out[first..M-1] from a decaying tail seed at r_max
    h12 = h * h / 12.0
    m = f.shape[0]
    out[m - 1] = 0.0
    out[m - 2] = 1e-30
    pp = 1.0 - h12 * f[m - 1]
    pc = 1.0 - h12 * f[m - 2]
    for i in range(m - 2, first, -1):
        pm = 1.0 - h12 * f[i - 1]
        out[i - 1] = ((12.0 - 10.0 * pc) * out[i] - pp * out[i + 1]) / pm
        pp = pc
        pc = pm
        a = abs(out[i - 1])
        if a > 1e250:
            for j in range(i - 1, m):
                out[j] /= a


def _potential_on_grid(potential, r: np.ndarray) -> np.ndarray:
    try:
        v = np.asarray(potential(r), dtype=float)
        if v.shape != r.shape:
            raise ValueError
        return v
    except Exception:
        return np.array([float(potential(x)) for x in r])


class _Shooter:
    """Shared state for one (potential, state, units, config) eigenproblem.

    ``potential`` must already contain the centrifugal barrier; ell is only
    used for the r^(ell+1) series start at the origin.
    """

    def __init__(self, potential, state: QuantumState, units: UnitSystem, config: SolverConfig):
        self.state = state
        self.config = config
        h = config.step
        m_pts = int(round(config.r_max / h))
        self.h = h
        self.r = h * np.arange(1, m_pts + 1)
        v = _potential_on_grid(potential, self.r)
        self.c = 2.0 * units.mass / units.hbar**2
        ell = state.ell
        self.base = self.c * v
        self.v_eff_min = float(np.min(v))
        # series start chi ~ r^(l+1) (1 + c1 r + c2 r^2): fit the Coulomb core
        # -a/r + v0 of the barrier-stripped potential at the first grid points
        r0, r1 = self.r[0], self.r[1]
        barrier0 = units.hbar**2 * ell * (ell + 1) / (2.0 * units.mass * r0**2)
        barrier1 = units.hbar**2 * ell * (ell + 1) / (2.0 * units.mass * r1**2)
        v0c, v1c = v[0] - barrier0, v[1] - barrier1
        self._a_core = (v1c - v0c) * r0 * r1 / (r1 - r0)
        self._v_origin = v0c + self._a_core / r0
        self._c1 = -self.c * self._a_core / (2.0 * (ell + 1))

    def start_values(self, energy: float) -> tuple[float, float]:
        ell = self.state.ell
        c2 = (0.5 * (self.c * self._a_core) ** 2 / (ell + 1)
              + self.c * (self._v_origin - energy)) / (4 * ell + 6)
        r0, r1 = self.r[0], self.r[1]
        y0 = r0 ** (ell + 1) * (1.0 + self._c1 * r0 + c2 * r0**2)
        y1 = r1 ** (ell + 1) * (1.0 + self._c1 * r1 + c2 * r1**2)
        return y0, y1

    def f_of(self, energy: float) -> np.ndarray:
        return self.base - self.c * energy

    def count_nodes(self, energy: float) -> int:
        y0, y1 = self.start_values(energy)
        return int(_nodes_outward(self.f_of(energy), self.h, y0, y1))

    def match_index(self, f: np.ndarray) -> int:
        allowed = np.nonzero(f < 0.0)[0]
        if allowed.size == 0:
            return -1
        return int(min(max(allowed[-1], 2), f.shape[0] - 3))

    def mismatch(self, energy: float) -> float:
        """Scaled Wronskian of outward and inward sweeps at the turning point."""
        f = self.f_of(energy)
        im = self.match_index(f)
        if im < 0:
            return np.nan
        y0, y1 = self.start_values(energy)
        yo = np.empty(im + 2)
        _sweep_outward(f, self.h, y0, y1, im + 1, yo)
        yi = np.empty(f.shape[0])
        _sweep_inward(f, self.h, im - 1, yi)
        num = (yo[im + 1] - yo[im - 1]) * yi[im] - (yi[im + 1] - yi[im - 1]) * yo[im]
        return num / (2.0 * self.h * (abs(yo[im] * yi[im]) + 1e-300))

    def assemble(self, energy: float) -> tuple[np.ndarray, np.ndarray]:
        f = self.f_of(energy)
        im = self.match_index(f)
        if im < 0:
            raise NoBoundStateError("no classically allowed region at the candidate energy")
        y0, y1 = self.start_values(energy)
        yo = np.empty(im + 2)
        _sweep_outward(f, self.h, y0, y1, im + 1, yo)
        yi = np.empty(f.shape[0])
        _sweep_inward(f, self.h, im - 1, yi)
        y = np.empty(f.shape[0])
        y[: im + 1] = yo[: im + 1]
        y[im:] = yi[im:] * (yo[im] / yi[im])
        # prepend the origin and normalize the density to one
        grid = np.concatenate(([0.0], self.r))
        vals = np.concatenate(([0.0], y))
        norm = sqrt(simpson(vals**2, x=grid))
        vals /= norm if norm > 0 else 1.0
        if vals[np.argmax(np.abs(vals))] < 0:
            vals = -vals
        return grid, vals


def _count_interior_nodes(values: np.ndarray) -> int:
    big = 1e-9 * np.max(np.abs(values))
    sig = values[np.abs(values) > big]
    return int(np.count_nonzero(np.signbit(sig[1:]) != np.signbit(sig[:-1])))


def energy_search_bracket(
    potential, state: QuantumState, units: UnitSystem, config: SolverConfig
) -> tuple[float, float]:
    """Interval [lo, hi] whose outward integrations carry n and n+1 nodes.

    Raises NoBoundStateError when no such interval exists below E = 0
    (potentials vanishing at infinity have their continuum there).
    """
    shooter = _Shooter(potential, state, units, config)
    return _bracket(shooter)


def _bracket(shooter: _Shooter) -> tuple[float, float]:
    n = shooter.state.n
    if shooter.v_eff_min >= 0.0:
        raise NoBoundStateError("effective potential is nowhere negative; nothing is bound")
    lo = shooter.v_eff_min
    hi = -1e-12 * abs(shooter.v_eff_min)
    c_hi = shooter.count_nodes(hi)
    if c_hi < n + 1:
        raise NoBoundStateError(
            f"fewer than {n + 1} nodes at the continuum edge; "
            f"state n={n}, l={shooter.state.ell} is not bound for this potential"
        )
    c_lo = shooter.count_nodes(lo)
    if c_lo > n:
        raise NoBoundStateError("lower search edge already oscillates; bad potential scale")
    for _ in range(shooter.config.max_iterations):
        if c_lo == n and c_hi == n + 1:
            return lo, hi
        mid = 0.5 * (lo + hi)
        c_mid = shooter.count_nodes(mid)
        if c_mid >= n + 1:
            hi, c_hi = mid, c_mid
        else:
            lo, c_lo = mid, c_mid
    return lo, hi


def solve_bound_state(
    potential, state: QuantumState, units: UnitSystem, config: SolverConfig
) -> RadialFunction:
    """Find the bound level with ``state.n`` interior nodes and its wavefunction.

    Node-count bisection narrows the energy window, then the log-derivative
    mismatch is driven to zero inside it; the assembled wavefunction is
    normalized to unit radial density.
    """
    shooter = _Shooter(potential, state, units, config)
    lo, hi = _bracket(shooter)
    n = shooter.state.n
    tol = config.energy_abs_tol
    target = max(tol / 8.0, 8.0 * np.finfo(float).eps * max(abs(lo), abs(hi)))
    iterations = 0
    while hi - lo > target:
        iterations += 1
        if iterations > config.max_iterations:
            if hi - lo > tol:
                raise IterationLimitError(
                    f"bisection did not reach {tol} (bracket width {hi - lo:.3e})",
                    (lo, hi),
                )
            break
        mid = 0.5 * (lo + hi)
        if shooter.count_nodes(mid) >= n + 1:
            hi = mid
        else:
            lo = mid

    energy = 0.5 * (lo + hi)
    converged = (hi - lo) <= tol
    g_lo, g_hi = shooter.mismatch(lo), shooter.mismatch(hi)
    if np.isfinite(g_lo) and np.isfinite(g_hi) and np.sign(g_lo) != np.sign(g_hi):
        try:
            energy = brentq(shooter.mismatch, lo, hi, xtol=0.25 * tol, rtol=4e-16)
            converged = True
        except ValueError:
            pass

    grid, vals = shooter.assemble(energy)
    return RadialFunction(
        grid=grid,
        values=vals,
        node_count=_count_interior_nodes(vals),
        energy=float(energy),
        converged=bool(converged),
    )
