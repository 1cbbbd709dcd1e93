"""Closed-form perturbation theory for the screened Coulomb bound states.

With the potential split as pure Coulomb plus
dV = A delta - (A delta^3/3) r^2 + (A delta^4/6) r^3 - ..., the level with
quantum numbers (n, ell) acquires corrections

    E = E0 + A delta + E1 + E2,

where the first order is always E1 = -(A delta^3/3) <r^2> over the Coulomb
state.  In closed form, with p(ell) an integer polynomial:

    E1 = -hbar^4 p1(ell) delta^3 / (6 A m^2)
    E2 = hbar^6 c4(ell) delta^4 / (24 A^2 m^3)
         - hbar^10 c6(ell) delta^6 / (72 A^4 m^5)

The integer coefficient polynomials are constructed exactly and converted to
float only when multiplied by powers of delta, so the five-digit sextic
coefficients carry no transcription roundoff.

The same machinery provides the superpotentials (log-derivative corrections)
W0, W^(1), W^(2) and the moderated ground-state wavefunction

    psi(r) = norm * r^(ell+1) * exp(P(r)),    P(r) = sum_i p_i r^i, i = 1..5.

Second order is only available in closed form for n <= 2; for n = 1 two
printed alternatives exist (see SecondOrderVariant), and the TRUNCATED one
is the default because it reproduces the reference tables.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import exp, sqrt

import numpy as np
from scipy.integrate import quad

from .core import (
    DomainError,
    EnergyBreakdown,
    QuantumState,
    ScreeningSpec,
    SecondOrderVariant,
    UnitSystem,
    UnsupportedExpansionError,
    UnsupportedOrderError,
)
from .coulomb import coulomb_beta, coulomb_energy, coulomb_norm, radial_moment


def _require_expansion(spec: ScreeningSpec) -> None:
    if spec.g != 1.0:
        raise UnsupportedExpansionError(
            f"closed-form corrections assume g = 1, got g = {spec.g}"
        )


def _as_variant(variant) -> SecondOrderVariant:
    return variant if isinstance(variant, SecondOrderVariant) else SecondOrderVariant(variant)


def first_order_coefficient(n: int, ell: int) -> int:
    """Exact integer p1 with E1 = -hbar^4 p1 delta^3 / (6 A m^2), for n <= 2."""
    if n == 0:
        return (ell + 1) ** 2 * (ell + 2) * (2 * ell + 3)
    if n == 1:
        return (ell + 2) ** 2 * (ell + 7) * (2 * ell + 3)
    if n == 2:
        return (ell + 3) ** 2 * (ell + 2) * (2 * ell + 23)
    raise UnsupportedOrderError(f"no closed first-order coefficient for n = {n}")


def second_order_coefficients(
    n: int, ell: int, variant: SecondOrderVariant = SecondOrderVariant.TRUNCATED
) -> tuple[int, int]:
    """Exact integers (c4, c6) of the quartic and sextic second-order terms.

    The variant only matters for n = 1; the ground and second excited levels
    each have a single closed form.
    """
    variant = _as_variant(variant)
    if n == 0:
        c4 = (ell + 1) ** 3 * (ell + 2) * (2 * ell + 3) * (2 * ell + 5)
        c6 = (ell + 1) ** 6 * (ell + 2) * (2 * ell + 3) * (8 * ell**2 + 37 * ell + 43)
    elif n == 1:
        c4 = (ell + 2) ** 3 * (ell + 11) * (2 * ell + 3) * (2 * ell + 5)
        if variant is SecondOrderVariant.TRUNCATED:
            c6 = (ell + 2) ** 6 * (ell + 3) * (2 * ell + 3) * (7 * ell**2 + 101 * ell + 211)
        else:
            c6 = (ell + 2) ** 5 * (
                16 * ell**5 + 294 * ell**4 + 1795 * ell**3 + 5085 * ell**2 + 6878 * ell + 3568
            )
    elif n == 2:
        c4 = (ell + 2) * (ell + 3) ** 2 * (2 * ell + 5) * (2 * ell**2 + 45 * ell + 153)
        c6 = (ell + 2) * (ell + 3) ** 5 * (
            16 * ell**4 + 474 * ell**3 + 3879 * ell**2 + 12118 * ell + 12873
        )
    else:
        raise UnsupportedOrderError(
            f"no closed second-order form for n = {n}; only n <= 2 is available"
        )
    return c4, c6


def first_order_shift(state: QuantumState, spec: ScreeningSpec, units: UnitSystem) -> float:
    """First-order energy correction E1.

    Uses the closed integer-coefficient form for n <= 2 and the exact moment
    route E1 = -(A delta^3 / 3) <r^2> for higher radial excitations (the two
    agree identically where both exist).
    """
    _require_expansion(spec)
    hb, m = units.hbar, units.mass
    a_s, d = spec.strength, spec.delta
    if state.n <= 2:
        p1 = first_order_coefficient(state.n, state.ell)
        return -(hb**4) * p1 * d**3 / (6.0 * a_s * m**2)
    return -(a_s * d**3 / 3.0) * radial_moment(state, spec, units, 2)


def second_order_terms(
    state: QuantumState,
    spec: ScreeningSpec,
    units: UnitSystem,
    variant: SecondOrderVariant = SecondOrderVariant.TRUNCATED,
) -> tuple[float, float]:
    """The (quartic, sextic) pieces of E2, each returned positive; E2 = quartic - sextic."""
    _require_expansion(spec)
    c4, c6 = second_order_coefficients(state.n, state.ell, variant)
    hb, m = units.hbar, units.mass
    a_s, d = spec.strength, spec.delta
    quartic = hb**6 * c4 * d**4 / (24.0 * a_s**2 * m**3)
    sextic = hb**10 * c6 * d**6 / (72.0 * a_s**4 * m**5)
    return quartic, sextic


def second_order_shift(
    state: QuantumState,
    spec: ScreeningSpec,
    units: UnitSystem,
    variant: SecondOrderVariant = SecondOrderVariant.TRUNCATED,
) -> float:
    """Second-order energy correction E2 for n <= 2."""
    quartic, sextic = second_order_terms(state, spec, units, variant)
    return quartic - sextic


def total_energy(
    state: QuantumState,
    spec: ScreeningSpec,
    units: UnitSystem,
    variant: SecondOrderVariant = SecondOrderVariant.TRUNCATED,
) -> EnergyBreakdown:
    """Assembled level energy E0 + A delta + E1 + E2 with its parts.

    For n > 2 no second-order closed form exists; the breakdown carries
    e2 = 0 and is flagged ``first_order_only``.
    """
    variant = _as_variant(variant)
    e0 = coulomb_energy(state, spec, units)
    if spec.delta == 0.0:
        return EnergyBreakdown(e0, 0.0, 0.0, 0.0, variant)
    _require_expansion(spec)
    linear = spec.strength * spec.delta
    e1 = first_order_shift(state, spec, units)
    if state.n <= 2:
        return EnergyBreakdown(e0, linear, e1, second_order_shift(state, spec, units, variant), variant)
    return EnergyBreakdown(e0, linear, e1, 0.0, variant, first_order_only=True)


# ---------------------------------------------------------------------------
# superpotentials and the moderated ground-state wavefunction


@dataclass(frozen=True)
class GroundCoefficients:
    """Parameters (a, b, c, d) of the ground-level second-order superpotential.

    ``d`` carries a 1/delta term and is only formed for delta > 0.
    """

    a: float
    b: float
    c: float
    d: float | None


@dataclass(frozen=True)
class WavefunctionPolynomial:
    """Coefficients of the exponent polynomial P(r) = sum_i p_i r^i, i = 1..5."""

    p1: float
    p2: float
    p3: float
    p4: float
    p5: float

    def as_tuple(self) -> tuple[float, float, float, float, float]:
        return (self.p1, self.p2, self.p3, self.p4, self.p5)

    def evaluate(self, r):
        arr = np.asarray(r, dtype=float)
        out = ((((self.p5 * arr + self.p4) * arr + self.p3) * arr + self.p2) * arr + self.p1) * arr
        return out if out.ndim else float(out)

    def derivative(self, r):
        arr = np.asarray(r, dtype=float)
        out = (((5 * self.p5 * arr + 4 * self.p4) * arr + 3 * self.p3) * arr + 2 * self.p2) * arr + self.p1
        return out if out.ndim else float(out)


def ground_coefficients(ell: int, spec: ScreeningSpec, units: UnitSystem) -> GroundCoefficients:
    """The (a, b, c, d) parameter set entering W^(2) and P(r) for n = 0."""
    _require_expansion(spec)
    hb, m = units.hbar, units.mass
    a_s, d = spec.strength, spec.delta
    lp = ell + 1
    a = hb**2 * lp * (3 * ell + 7) * d**2 / (a_s * m) - 3.0 * a_s * m / (hb**2 * lp**2)
    b = (
        hb**4 * lp**2 * (8 * ell**2 + 37 * ell + 43) * d**2 / (2.0 * a_s**2 * m**2)
        - 1.5 * (2 * ell + 5) / lp
    )
    c = hb**2 * lp**3 / (9.0 * a_s * m)
    dd = b + 6.0 * a_s * m / (hb**2 * lp**2 * d) if d > 0.0 else None
    return GroundCoefficients(a, b, c, dd)


def superpotential_w0(state: QuantumState, spec: ScreeningSpec, units: UnitSystem):
    """Unperturbed ground superpotential W0(r), the negative scaled log-derivative of chi.

    W0(r) = -(hbar/sqrt(2m)) (ell+1)/r + sqrt(m/2) A / ((ell+1) hbar).
    Only the node-free n = 0 level has this node-free closed form.
    """
    if state.n != 0:
        raise UnsupportedOrderError(
            "unperturbed superpotentials are only closed-form for n = 0 (excited ones have nodes)"
        )
    hb, m = units.hbar, units.mass
    k = hb / sqrt(2.0 * m)
    const = sqrt(m / 2.0) * spec.strength / ((state.ell + 1) * hb)
    lp = state.ell + 1

    def w0(r):
        arr = np.asarray(r, dtype=float)
        if np.any(arr <= 0.0):
            raise DomainError("radius must be positive")
        out = -k * lp / arr + const
        return out if out.ndim else float(out)

    return w0


def superpotential_first(
    state: QuantumState, spec: ScreeningSpec, units: UnitSystem, truncated: bool = False
):
    """First-order superpotential W^(1)(r).

    For n = 0 this is the exact quadratic solution of the first-order
    Riccati equation,

        W^(1)(r) = -(hbar (ell+1) delta^3 r / (3 sqrt(2m)))
                   * (r + hbar^2 (ell+1)(ell+2) / (A m)),

    which vanishes at the origin and has no interior root.  For n >= 1 the
    node difficulties are bypassed with the hierarchy form

        W^(1)(r) ~ -(hbar N delta^3 / (3 sqrt(2m)))
                   * (r^2 + hbar^2 N(N+1)/(A m) r - 2 hbar^4 (N-1) N^2/(A^2 m^2)),

    N = n + ell + 1.  ``truncated`` keeps only the r^2 and r terms, which is
    the route behind the TRUNCATED second-order closed forms.
    """
    _require_expansion(spec)
    hb, m = units.hbar, units.mass
    a_s, d = spec.strength, spec.delta
    big_n = state.principal
    k = hb / sqrt(2.0 * m)
    pref = -k * big_n * d**3 / 3.0
    lin = hb**2 * big_n * (big_n + 1) / (a_s * m)
    if state.n == 0 or truncated:
        const = 0.0
    else:
        const = -2.0 * hb**4 * (big_n - 1) * big_n**2 / (a_s**2 * m**2)

    def w1(r):
        arr = np.asarray(r, dtype=float)
        out = pref * (arr**2 + lin * arr + const)
        return out if out.ndim else float(out)

    return w1


def superpotential_second_ground(ell: int, spec: ScreeningSpec, units: UnitSystem):
    """Second-order ground superpotential W^(2)(r) for n = 0.

    W^(2)(r) = -(hbar delta^4 c r / (2 sqrt(2m)))
               * (delta^2 r^3 + a r^2 + b (r + hbar^2 (ell+1)(ell+2)/(A m)))
               - (hbar (ell+1) / (sqrt(2m) A)) E2.

    The trailing constant adjusts the asymptotic decay rate for the
    second-order energy shift.  At delta = 0 the function is identically zero.
    """
    hb, m = units.hbar, units.mass
    a_s, d = spec.strength, spec.delta
    if d == 0.0:
        def w2_zero(r):
            arr = np.asarray(r, dtype=float)
            out = 0.0 * arr
            return out if out.ndim else 0.0

        return w2_zero
    _require_expansion(spec)
    k = hb / sqrt(2.0 * m)
    gc = ground_coefficients(ell, spec, units)
    cr = hb**2 * (ell + 1) * (ell + 2) / (a_s * m)
    e2 = second_order_shift(QuantumState(0, ell), spec, units)
    tail = -k * (ell + 1) / a_s * e2

    def w2(r):
        arr = np.asarray(r, dtype=float)
        out = -(k * gc.c * d**4 / 2.0) * arr * (d**2 * arr**3 + gc.a * arr**2 + gc.b * (arr + cr))
        out = out + tail
        return out if out.ndim else float(out)

    return w2


def wavefunction_polynomial(ell: int, spec: ScreeningSpec, units: UnitSystem) -> WavefunctionPolynomial:
    """Exponent coefficients p1..p5 of the moderated ground-state wavefunction.

    At delta = 0 only p1 = -beta survives (pure Coulomb decay).
    """
    hb, m = units.hbar, units.mass
    a_s, d = spec.strength, spec.delta
    beta = a_s * m / ((ell + 1) * hb**2)
    if d == 0.0:
        return WavefunctionPolynomial(-beta, 0.0, 0.0, 0.0, 0.0)
    _require_expansion(spec)
    gc = ground_coefficients(ell, spec, units)
    e2 = second_order_shift(QuantumState(0, ell), spec, units)
    p1 = (ell + 1) * e2 / a_s - beta
    p2 = 2.25 * (ell + 2) / (ell + 1) ** 2 * gc.c**2 * gc.d * d**4
    p3 = gc.c * gc.d * d**4 / 6.0
    p4 = gc.a * gc.c * d**4 / 8.0
    p5 = gc.c * d**6 / 10.0
    return WavefunctionPolynomial(p1, p2, p3, p4, p5)


def moderated_validity_radius(ell: int, spec: ScreeningSpec, units: UnitSystem) -> float:
    """Radius beyond which the moderated ground wavefunction stops decaying.

    The exponent polynomial carries a positive r^5 tail for delta > 0, so
    the closed form is an asymptotic approximation valid only inside this
    radius (infinite in the Coulomb limit).  Sampling or integrating the
    wavefunction should stay within it.  Turning radii beyond 200 Coulomb
    lengths are reported as infinite; the amplitude there is already
    negligible.
    """
    if spec.delta == 0.0:
        return float("inf")
    poly = wavefunction_polynomial(ell, spec, units)
    beta = coulomb_beta(QuantumState(0, ell), spec, units)
    peak = (ell + 1) / beta
    rs = np.linspace(peak, 200.0 / beta, 20000)
    rate = (ell + 1) / rs + poly.derivative(rs)
    # the first zero of the log-derivative is the peak itself; the breakdown
    # is where the rate turns nonnegative again after the decaying stretch
    decaying = np.nonzero(rate < 0.0)[0]
    if decaying.size == 0:
        return float(peak)
    turned = np.nonzero(rate[decaying[0]:] >= 0.0)[0]
    return float(rs[decaying[0] + turned[0]]) if turned.size else float("inf")


def ground_wavefunction(
    ell: int, spec: ScreeningSpec, units: UnitSystem, renormalize: bool = False
):
    """Moderated ground-state radial wavefunction for n = 0.

    Returns (psi, poly) where psi(r) = norm * r^(ell+1) * exp(P(r)) and poly
    holds the coefficients of P.  By default the Coulomb normalization
    constant is kept, so psi is not exactly unit-normalized once delta > 0;
    pass ``renormalize=True`` to rescale numerically (useful for plotting).
    The closed form is asymptotic: see :func:`moderated_validity_radius`.
    """
    state = QuantumState(0, ell)
    poly = wavefunction_polynomial(ell, spec, units)
    scale = coulomb_norm(state, spec, units)
    if renormalize:
        beta = coulomb_beta(state, spec, units)
        r_stop = min(60.0 / beta, moderated_validity_radius(ell, spec, units))
        density = lambda x: (x ** (ell + 1) * exp(poly.evaluate(x))) ** 2
        val, _ = quad(density, 0.0, r_stop, limit=200)
        scale = 1.0 / sqrt(val)

    def psi(r):
        arr = np.asarray(r, dtype=float)
        if np.any(arr <= 0.0):
            raise DomainError("radius must be positive")
        out = scale * arr ** (ell + 1) * np.exp(poly.evaluate(arr))
        return out if out.ndim else float(out)

    return psi, poly
