"""The exponential-cosine-screened Coulomb potential and its small-delta expansion.

The potential is

    V(r) = -(A/r) exp(-delta r) cos(g delta r)

with strength A > 0 and screening parameter delta >= 0.  For g = 1 it expands
for small delta*r as

    V(r) = -(A/r) * sum_i  V_i (delta r)^i,
    V_0 = 1, V_1 = -1, V_2 = 0, V_3 = 1/3, V_4 = -1/6, V_5 = 1/30, ...

where V_i = Re[(-1 - i_unit)^i] / i! follows from exp(-x) cos(x) =
Re exp(-(1+i_unit) x).  Everything past the bare Coulomb term is the
perturbation

    dV(r) = -A * sum_{i>=1} V_i delta^i r^(i-1)
          = A delta - (A delta^3/3) r^2 + (A delta^4/6) r^3 - ...
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

import numpy as np

from .core import DomainError, ScreeningSpec, UnitSystem, UnsupportedExpansionError

#: truncation orders accepted by perturbation_remainder (V_2 = 0, so 2 is never needed)
_REMAINDER_ORDERS = (1, 3, 4, 5)


@dataclass(frozen=True)
class SeriesCoefficient:
    """One dimensionless expansion coefficient V_i, kept as an exact rational."""

    index: int
    value: Fraction


@lru_cache(maxsize=None)
def _gauss_power(i: int) -> tuple[int, int]:
    # (-1 - i_unit)^i as an exact Gaussian integer (re, im)
    re, im = 1, 0
    for _ in range(i):
        re, im = -re + im, -re - im
    return re, im


def series_coefficient(i: int) -> Fraction:
    """Exact rational V_i of the g = 1 expansion; V_0 = 1 from the Coulomb limit."""
    if i < 0:
        raise DomainError(f"series index must be >= 0, got {i}")
    re, _ = _gauss_power(i)
    return Fraction(re, factorial(i))


def series_coefficients(order: int) -> list[SeriesCoefficient]:
    """All coefficients V_0 .. V_order."""
    return [SeriesCoefficient(i, series_coefficient(i)) for i in range(order + 1)]


def _check_positive_radius(r) -> np.ndarray:
    arr = np.asarray(r, dtype=float)
    if np.any(arr <= 0.0):
        raise DomainError("radius must be positive (Coulomb singularity at r = 0)")
    return arr


def evaluate_potential(r, spec: ScreeningSpec):
    """V(r) = -(A/r) exp(-delta r) cos(g delta r); accepts scalars or arrays."""
    arr = _check_positive_radius(r)
    out = -(spec.strength / arr) * np.exp(-spec.delta * arr) * np.cos(spec.g * spec.delta * arr)
    return out if out.ndim else float(out)


def effective_potential(r, spec: ScreeningSpec, ell: int, units: UnitSystem):
    """Screened potential plus the centrifugal barrier hbar^2 l(l+1)/(2 m r^2)."""
    if ell < 0:
        raise DomainError(f"ell must be >= 0, got {ell}")
    arr = _check_positive_radius(r)
    barrier = units.hbar**2 * ell * (ell + 1) / (2.0 * units.mass * arr**2)
    out = -(spec.strength / arr) * np.exp(-spec.delta * arr) * np.cos(spec.g * spec.delta * arr)
    out = out + barrier
    return out if out.ndim else float(out)


def perturbation_remainder(r, spec: ScreeningSpec, max_order: int = 4):
    """Truncated perturbation dV(r) = -A sum_{i=1..max_order} V_i delta^i r^(i-1).

    Only the g = 1 expansion is implemented; the default truncation keeps the
    terms through r^3, which is the working set of the closed-form theory.
    """
    if spec.g != 1.0:
        raise UnsupportedExpansionError(
            f"the small-delta expansion is only available for g = 1, got g = {spec.g}"
        )
    if max_order not in _REMAINDER_ORDERS:
        raise DomainError(f"max_order must be one of {_REMAINDER_ORDERS}, got {max_order}")
    arr = _check_positive_radius(r)
    acc = np.zeros_like(arr)
    for i in range(1, max_order + 1):
        vi = series_coefficient(i)
        if vi:
            acc = acc - spec.strength * float(vi) * spec.delta**i * arr ** (i - 1)
    return acc if acc.ndim else float(acc)
