"""Shared domain types: unit systems, quantum states, screening parameters."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum


class ValidationError(ValueError):
    """A domain object was constructed with invalid parameters."""


class DomainError(ValueError):
    """An operation was evaluated outside its mathematical domain."""


class UnsupportedExpansionError(ValueError):
    """A series-based result was requested outside the g = 1 expansion."""


class UnsupportedOrderError(ValueError):
    """A perturbation order with no closed form was requested."""


#: spectroscopic letters in order of increasing orbital angular momentum
_ORBITAL_LETTERS = "spdfghik"

_PRESETS = {
    "atomic": (1.0, 1.0),
    "hbar2m": (1.0, 0.5),
}


@dataclass(frozen=True)
class UnitSystem:
    """Explicit (hbar, mass) pair; every formula takes these, nothing is hardcoded."""

    hbar: float
    mass: float
    label: str = "custom"

    def __post_init__(self) -> None:
        if not self.hbar > 0.0 or not self.mass > 0.0:
            raise ValidationError(
                f"hbar and mass must be positive, got ({self.hbar}, {self.mass})"
            )


def make_unit_system(
    preset: str | None = None, *, hbar: float | None = None, mass: float | None = None
) -> UnitSystem:
    """Build a UnitSystem from a named preset or an explicit (hbar, mass) pair.

    Presets: "atomic" (hbar = m = 1) and "hbar2m" (hbar = 1, m = 1/2).
    """
    if preset is not None:
        if hbar is not None or mass is not None:
            raise ValidationError("give either a preset name or explicit hbar/mass, not both")
        try:
            h, m = _PRESETS[preset]
        except KeyError:
            raise ValidationError(
                f"unknown unit preset {preset!r}; expected one of {sorted(_PRESETS)}"
            ) from None
        return UnitSystem(h, m, label=preset)
    if hbar is None or mass is None:
        raise ValidationError("explicit unit system needs both hbar and mass")
    return UnitSystem(float(hbar), float(mass))


ATOMIC = make_unit_system("atomic")
HBAR2M = make_unit_system("hbar2m")


@dataclass(frozen=True, order=True)
class QuantumState:
    """Radial quantum number n (node count) and orbital angular momentum ell.

    The principal index is N = n + ell + 1, so "1s" is (n=0, ell=0) and
    "3d" is (n=0, ell=2).
    """

    n: int
    ell: int

    def __post_init__(self) -> None:
        if self.n < 0 or self.ell < 0:
            raise ValidationError(f"need n >= 0 and ell >= 0, got (n={self.n}, ell={self.ell})")

    @property
    def principal(self) -> int:
        return self.n + self.ell + 1

    @property
    def label(self) -> str:
        if self.ell >= len(_ORBITAL_LETTERS) or self.principal > 9:
            return f"(n={self.n},l={self.ell})"
        return f"{self.principal}{_ORBITAL_LETTERS[self.ell]}"


_LABEL_RE = re.compile(r"^([1-9])([a-z])$")


def state_from_label(label: str) -> QuantumState:
    """Parse a spectroscopic label like "1s", "2p", "3d" into a QuantumState."""
    m = _LABEL_RE.match(label.strip().lower())
    if m is None:
        raise ValidationError(f"not a spectroscopic label: {label!r}")
    principal = int(m.group(1))
    letter = m.group(2)
    ell = _ORBITAL_LETTERS.find(letter)
    if ell < 0:
        raise ValidationError(f"unknown orbital letter {letter!r} in {label!r}")
    if ell >= principal:
        raise ValidationError(f"invalid state {label!r}: l={ell} must be below N={principal}")
    return QuantumState(n=principal - ell - 1, ell=ell)


@dataclass(frozen=True)
class ScreeningSpec:
    """Screened-Coulomb parameters: strength A, screening delta, cosine factor g.

    g = 1 is the exponential-cosine-screened case; g = 0 reduces to the
    plain Yukawa form.
    """

    delta: float
    strength: float = 1.0
    g: float = 1.0

    def __post_init__(self) -> None:
        if self.delta < 0.0:
            raise ValidationError(f"screening parameter must be >= 0, got {self.delta}")
        if not self.strength > 0.0:
            raise ValidationError(f"strength must be positive, got {self.strength}")


class SecondOrderVariant(Enum):
    """Which second-order closed form to use for the first excited level.

    TRUNCATED keeps the two leading superpotential terms and is the form
    that reproduces the reference tables; FULL keeps all three terms.
    The two differ only for n = 1.
    """

    TRUNCATED = "truncated"
    FULL = "full"


@dataclass(frozen=True)
class EnergyBreakdown:
    """Energy split into zeroth order, the linear A*delta shift, and corrections.

    ``total`` is always the exact same-precision sum of the four parts.
    ``first_order_only`` marks levels where no second-order closed form
    exists (n > 2) and e2 is identically zero.
    """

    e0: float
    linear_shift: float
    e1: float
    e2: float
    variant: SecondOrderVariant
    first_order_only: bool = False
    total: float = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "total", self.e0 + self.linear_shift + self.e1 + self.e2)


@dataclass(frozen=True)
class Tolerances:
    """Default numerical gates shared across the package."""

    quadrature_rel: float = 1e-10
    eigen_abs: float = 1e-9
    grid_refine_abs: float = 1e-8

    def __post_init__(self) -> None:
        if min(self.quadrature_rel, self.eigen_abs, self.grid_refine_abs) <= 0.0:
            raise ValidationError("tolerances must be strictly positive")


DEFAULT_TOLERANCES = Tolerances()
