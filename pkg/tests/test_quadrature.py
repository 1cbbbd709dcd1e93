import math

import pytest

from ecsc import (
    ATOMIC,
    HBAR2M,
    NodeSingularityError,
    QuadratureSpec,
    QuantumState,
    ScreeningSpec,
    ToleranceNotMetError,
    ValidationError,
    first_order_energy_numeric,
    first_order_shift,
    integrate_density,
    integrate_density_with_error,
    radial_moment,
    second_order_energy_numeric,
    second_order_residual_report,
    second_order_shift,
    state_from_label,
    superpotential_first,
    superpotential_first_numeric,
)

SQ2 = math.sqrt(2.0)
GAUSS = QuadratureSpec(scheme="gauss")


class TestQuadratureSpec:
    def test_defaults(self):
        q = QuadratureSpec()
        assert q.scheme == "adaptive" and q.rel_tol == 1e-10 and q.r_max_factor == 40.0

    def test_validation(self):
        with pytest.raises(ValidationError):
            QuadratureSpec(scheme="monte-carlo")
        with pytest.raises(ValidationError):
            QuadratureSpec(rel_tol=0.0)
        with pytest.raises(ValidationError):
            QuadratureSpec(r_max_factor=10.0)


class TestIntegrateDensity:
    @pytest.mark.parametrize("qspec", [None, GAUSS])
    def test_normalization(self, qspec):
        st = state_from_label("1s")
        got = integrate_density(st, ScreeningSpec(delta=0.1), ATOMIC, lambda r: 1.0, qspec)
        assert got == pytest.approx(1.0, abs=1e-10)

    @pytest.mark.parametrize("qspec", [None, GAUSS])
    def test_ground_mean_square(self, qspec):
        st = state_from_label("1s")
        got = integrate_density(st, ScreeningSpec(delta=0.1), ATOMIC, lambda r: r**2, qspec)
        assert got == pytest.approx(3.0, abs=3e-10)

    def test_2s_mean_square(self):
        st = state_from_label("2s")
        got = integrate_density(st, ScreeningSpec(delta=0.1), ATOMIC, lambda r: r**2)
        assert got == pytest.approx(42.0, abs=5e-9)

    @pytest.mark.parametrize("label", ["2p", "3s", "3d"])
    def test_matches_analytic_moments(self, label):
        st = state_from_label(label)
        spec = ScreeningSpec(delta=0.0, strength=4.0)
        for k in (1, 3):
            got = integrate_density(st, spec, HBAR2M, lambda r: r**k)
            assert got == pytest.approx(radial_moment(st, spec, HBAR2M, k), rel=1e-10)

    def test_error_estimate_brackets_refinement(self):
        # halving rel_tol moves the value by less than the reported estimate
        st = state_from_label("2s")
        spec = ScreeningSpec(delta=0.05)
        f = lambda r: r**2 * math.exp(-0.05 * r)
        v1, e1 = integrate_density_with_error(st, spec, ATOMIC, f, QuadratureSpec(rel_tol=1e-8))
        v2, _ = integrate_density_with_error(st, spec, ATOMIC, f, QuadratureSpec(rel_tol=5e-9))
        assert abs(v1 - v2) <= max(e1, 1e-13 * abs(v1))

    def test_tolerance_failure_carries_best_estimate(self):
        st = state_from_label("1s")
        nasty = lambda r: math.sin(1e5 * r)
        with pytest.raises(ToleranceNotMetError) as exc:
            integrate_density(st, ScreeningSpec(delta=0.0), ATOMIC, nasty,
                              QuadratureSpec(rel_tol=1e-13))
        assert math.isfinite(exc.value.best_estimate)
        assert exc.value.error_estimate > 0.0


class TestFirstOrderNumeric:
    def test_ground_value(self):
        st = state_from_label("1s")
        got = first_order_energy_numeric(st, ScreeningSpec(delta=0.1), ATOMIC)
        assert got == pytest.approx(-0.001, abs=1e-12)

    def test_2s_value(self):
        st = state_from_label("2s")
        got = first_order_energy_numeric(st, ScreeningSpec(delta=0.05), ATOMIC)
        assert got == pytest.approx(-14.0 * 0.05**3, abs=1e-11)

    def test_zero_screening(self):
        st = state_from_label("3d")
        assert first_order_energy_numeric(st, ScreeningSpec(delta=0.0), ATOMIC) == 0.0

    @pytest.mark.parametrize("units,strength", [(ATOMIC, 1.0), (HBAR2M, 8.0)])
    def test_closed_form_equivalence(self, units, strength):
        for n in (0, 1, 2):
            for ell in (0, 1, 2, 3):
                for delta in (0.02, 0.1):
                    st = QuantumState(n, ell)
                    spec = ScreeningSpec(delta=delta, strength=strength)
                    num = first_order_energy_numeric(st, spec, units)
                    closed = first_order_shift(st, spec, units)
                    assert abs(num - closed) <= 1e-10 * abs(closed)


class TestSuperpotentialNumeric:
    def test_matches_closed_form(self):
        for ell in (0, 1):
            for delta in (0.05, 0.1):
                st = QuantumState(0, ell)
                spec = ScreeningSpec(delta=delta)
                w_num = superpotential_first_numeric(st, spec, ATOMIC)
                w_closed = superpotential_first(st, spec, ATOMIC)
                for r in (0.3, 1.0, 2.0, 5.0, 9.0):
                    assert w_num(r) == pytest.approx(w_closed(r), abs=1e-9)

    def test_frozen_ground_value(self):
        # -(delta^3/(3 sqrt 2)) r (r + 2) at r = 1
        st = state_from_label("1s")
        w_num = superpotential_first_numeric(st, ScreeningSpec(delta=0.1), ATOMIC)
        assert w_num(1.0) == pytest.approx(-7.0710678118654754e-4, abs=1e-9)

    def test_origin_limit(self):
        st = state_from_label("1s")
        w_num = superpotential_first_numeric(st, ScreeningSpec(delta=0.1), ATOMIC)
        assert w_num(0.0) == 0.0
        assert abs(w_num(1e-4)) < 1e-7

    def test_excited_states_refused(self):
        with pytest.raises(NodeSingularityError):
            superpotential_first_numeric(state_from_label("2s"), ScreeningSpec(delta=0.1), ATOMIC)


class TestSecondOrderNumeric:
    def test_ground_with_closed_w(self):
        st = state_from_label("1s")
        spec = ScreeningSpec(delta=0.1)
        w1 = superpotential_first(st, spec, ATOMIC)
        got = second_order_energy_numeric(st, spec, ATOMIC, w1)
        assert got == pytest.approx(1.2141666666666667e-4, abs=1e-10)

    def test_ground_with_numeric_w(self):
        # full numeric chain: cumulative-integral W fed back into the integral
        st = state_from_label("1s")
        spec = ScreeningSpec(delta=0.1)
        w1 = superpotential_first_numeric(st, spec, ATOMIC)
        got = second_order_energy_numeric(st, spec, ATOMIC, w1)
        closed = second_order_shift(st, spec, ATOMIC)
        assert got == pytest.approx(closed, rel=1e-9)

    def test_heavy_case(self):
        st = state_from_label("2p")
        spec = ScreeningSpec(delta=0.2, strength=8.0)
        w1 = superpotential_first(st, spec, HBAR2M)
        got = second_order_energy_numeric(st, spec, HBAR2M, w1)
        assert got == pytest.approx(0.0064133333333333, abs=1e-8)

    def test_zero_screening(self):
        st = state_from_label("1s")
        spec = ScreeningSpec(delta=0.0)
        w1 = superpotential_first(st, spec, ATOMIC)
        assert second_order_energy_numeric(st, spec, ATOMIC, w1) == 0.0

    @pytest.mark.parametrize("units,strength", [(ATOMIC, 1.0), (HBAR2M, 8.0)])
    def test_ground_equivalence_grid(self, units, strength):
        for ell in (0, 1, 2, 3):
            for delta in (0.02, 0.1):
                st = QuantumState(0, ell)
                spec = ScreeningSpec(delta=delta, strength=strength)
                w1 = superpotential_first(st, spec, units)
                num = second_order_energy_numeric(st, spec, units, w1)
                closed = second_order_shift(st, spec, units)
                assert abs(num - closed) <= 1e-9 * abs(closed)


class TestResidualReport:
    def test_quartic_isolation(self):
        for n in (1, 2):
            st = QuantumState(n, 1)
            spec = ScreeningSpec(delta=0.1)
            rep = second_order_residual_report(st, spec, ATOMIC)
            assert rep["quartic_numeric"] == pytest.approx(rep["quartic_closed"], rel=1e-10)

    def test_first_excited_residuals_are_real(self):
        # two-term W integral gives 1856 delta^6 at ell = 0 against the printed
        # 1688 (truncated) and 114176/72 (full); the all-terms W gives 14336/9
        st = state_from_label("2s")
        spec = ScreeningSpec(delta=0.1)
        rep = second_order_residual_report(st, spec, ATOMIC)
        d6 = spec.delta**6
        assert rep["numeric_truncated_w"] == pytest.approx(55 * spec.delta**4 - 1856 * d6, rel=1e-9)
        assert rep["numeric_full_w"] == pytest.approx(
            55 * spec.delta**4 - (14336.0 / 9.0) * d6, rel=1e-9
        )
        assert rep["residual_truncated"] == pytest.approx(-(1856 - 121536 / 72) * d6, rel=1e-6)
        assert rep["residual_full"] == pytest.approx(-(14336 / 9 - 114176 / 72) * d6, rel=1e-4)

    def test_second_excited_truncated_matches_closed(self):
        # for n = 2 the two-term route reproduces the printed form exactly
        st = state_from_label("3s")
        spec = ScreeningSpec(delta=0.1)
        rep = second_order_residual_report(st, spec, ATOMIC)
        assert rep["numeric_truncated_w"] == pytest.approx(rep["closed_truncated"], rel=1e-9)
        assert rep["closed_full"] is None

    def test_rejected_for_ground_state(self):
        from ecsc import DomainError

        with pytest.raises(DomainError):
            second_order_residual_report(state_from_label("1s"), ScreeningSpec(delta=0.1), ATOMIC)
