"""Unperturbed Coulomb eigensystem: energies, radial functions, exact moments.

For strength A the bound levels and normalized radial amplitudes are

    E_N = -m A^2 / (2 hbar^2 N^2),          N = n + ell + 1,
    chi(r) = norm * r^(ell+1) exp(-beta r) * L_n^(2 ell + 1)(2 beta r),
    beta = m A / (N hbar^2),

with the associated Laguerre polynomial in the convention

    L_n^k(x) = sum_m (-1)^m (n+k)! / ((n-m)! (m+k)! m!) x^m.

Radial moments <r^k> are computed analytically from the Laguerre expansion
with exact integer arithmetic, which makes this module an oracle that is
independent of any numerical quadrature.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, sqrt

import numpy as np

from .core import DomainError, QuantumState, ScreeningSpec, UnitSystem


@dataclass(frozen=True)
class CoulombState:
    """A bound Coulomb level: its quantum numbers, decay rate and norm constant."""

    state: QuantumState
    beta: float
    norm: float


@lru_cache(maxsize=None)
def _laguerre_int_coeffs(n: int, k: int) -> tuple[int, ...]:
    # integer numerators of (-1)^m (n+k)!/((n-m)!(m+k)! m!), denominator m!
    return tuple((-1) ** m * comb(n + k, n - m) for m in range(n + 1))


def laguerre(n: int, k: int, x):
    """Associated Laguerre polynomial L_n^k(x); accepts scalars or arrays.

    Coefficients are built in exact integer arithmetic and converted to float
    once, so high orders do not accumulate factorial-ratio roundoff.
    """
    if n < 0 or k < 0:
        raise DomainError(f"need n >= 0 and k >= 0, got (n={n}, k={k})")
    nums = _laguerre_int_coeffs(n, k)
    coeffs = [nums[m] / factorial(m) for m in range(n + 1)]
    arr = np.asarray(x, dtype=float)
    acc = np.zeros_like(arr) + coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = acc * arr + c
    return acc if acc.ndim else float(acc)


def coulomb_energy(state: QuantumState, spec: ScreeningSpec, units: UnitSystem) -> float:
    """Unperturbed level E = -m A^2 / (2 hbar^2 (n + ell + 1)^2)."""
    big_n = state.principal
    return -units.mass * spec.strength**2 / (2.0 * units.hbar**2 * big_n**2)


def coulomb_beta(state: QuantumState, spec: ScreeningSpec, units: UnitSystem) -> float:
    """Exponential decay rate beta = m A / ((n + ell + 1) hbar^2)."""
    return units.mass * spec.strength / (state.principal * units.hbar**2)


@lru_cache(maxsize=None)
def _norm_ratio(n: int, ell: int) -> Fraction:
    # exact part of norm^2: n! / ((n + 2 ell + 1)! * 2 (n + ell + 1))
    return Fraction(factorial(n), factorial(n + 2 * ell + 1) * 2 * (n + ell + 1))


def coulomb_norm(state: QuantumState, spec: ScreeningSpec, units: UnitSystem) -> float:
    """Normalization constant making the radial density integrate to one."""
    beta = coulomb_beta(state, spec, units)
    ratio = _norm_ratio(state.n, state.ell)
    return sqrt(float(ratio) * (2.0 * beta) ** (2 * state.ell + 3))


def coulomb_state(state: QuantumState, spec: ScreeningSpec, units: UnitSystem) -> CoulombState:
    return CoulombState(state, coulomb_beta(state, spec, units), coulomb_norm(state, spec, units))


def coulomb_wavefunction(state: QuantumState, spec: ScreeningSpec, units: UnitSystem, r):
    """Normalized radial amplitude chi(r); accepts scalars or arrays."""
    arr = np.asarray(r, dtype=float)
    if np.any(arr <= 0.0):
        raise DomainError("radius must be positive")
    beta = coulomb_beta(state, spec, units)
    norm = coulomb_norm(state, spec, units)
    out = (
        norm
        * arr ** (state.ell + 1)
        * np.exp(-beta * arr)
        * laguerre(state.n, 2 * state.ell + 1, 2.0 * beta * arr)
    )
    return out if np.ndim(out) else float(out)


@lru_cache(maxsize=None)
def _moment_fraction(n: int, ell: int, k: int) -> Fraction:
    # <r^k> in units of (2 beta)^(-k), exact:
    #   ratio * sum_{p,q} c_p c_q (2 ell + 2 + k + p + q)!
    # with c_m the exact rational Laguerre coefficients.
    nums = _laguerre_int_coeffs(n, 2 * ell + 1)
    cs = [Fraction(nums[m], factorial(m)) for m in range(n + 1)]
    j = 2 * ell + 2 + k
    total = Fraction(0)
    for p, cp in enumerate(cs):
        for q, cq in enumerate(cs):
            total += cp * cq * factorial(j + p + q)
    return _norm_ratio(n, ell) * total


def radial_moment(state: QuantumState, spec: ScreeningSpec, units: UnitSystem, k: int) -> float:
    """Analytic <r^k> = integral chi^2 r^k dr for integer k >= -2."""
    if k < -2:
        raise DomainError(f"moment <r^{k}> not supported; need k >= -2 for all bound states")
    beta = coulomb_beta(state, spec, units)
    return float(_moment_fraction(state.n, state.ell, k)) / (2.0 * beta) ** k
