"""
Unit tests for the cavity service.
"""

import math

import numpy as np
import pytest
from pydantic import ValidationError

from qwalk_geophase.modules.cavity.schemas import (
    CavityParams,
    CavityRequest,
    Regime,
    eta_from_dipole,
)
from qwalk_geophase.modules.cavity.services import (
    get_cavity_service,
    initial_density,
    kossakowski,
    lorentzian_dos,
)
from qwalk_geophase.shared.exceptions import ValidationException, ValidityException
from qwalk_geophase.shared.utils import phase_distance, wrap_phase


@pytest.fixture
def high_params():
    """Fast-rotation parameters with the cavity at omega + Omega0_bar."""
    return CavityRequest().params()


@pytest.fixture
def low_params():
    """Slow-rotation parameters with the cavity at Omega0_bar + omega."""
    return CavityRequest(omega=1e5, R=1e-3, V=1e-3, Q=1e7).params()


@pytest.mark.unit
class TestLorentzian:
    """Tests for the cavity mode density."""

    def test_peak_value(self):
        """The peak at omega_c is Q / omega_c."""
        assert lorentzian_dos(2e9, 2e9, 1e4) == pytest.approx(1e4 / 2e9)

    def test_half_width(self):
        """One linewidth away the density halves."""
        omega_c, q = 2e9, 1e4
        width = omega_c / q

        assert lorentzian_dos(omega_c + width, omega_c, q) == pytest.approx(0.5 * q / omega_c)
        assert lorentzian_dos(omega_c - width, omega_c, q) == pytest.approx(0.5 * q / omega_c)

    def test_far_detuning(self):
        """Ten linewidths away the density is below 1% of the peak."""
        omega_c, q = 2e9, 1e4

        assert lorentzian_dos(omega_c + 10.0 * omega_c / q, omega_c, q) < 0.01 * q / omega_c

    @pytest.mark.parametrize("q", [0.0, -5.0])
    def test_non_positive_quality_rejected(self, q):
        """Q must be positive."""
        with pytest.raises(ValidationException):
            lorentzian_dos(1.0, 1.0, q)


@pytest.mark.unit
class TestParameters:
    """Tests for parameter resolution and validation."""

    def test_cavity_defaults_to_upper_sideband(self, high_params):
        """Without omega_c the cavity sits at omega + Omega0_bar."""
        assert high_params.omega_c == pytest.approx(high_params.omega + high_params.omega_bar)

    def test_eta_from_dipole(self):
        """A dipole moment fixes eta unless eta is given."""
        from_dipole = CavityRequest(dipole=1e-29).params()
        explicit = CavityRequest(dipole=1e-29, eta=3e-6).params()

        assert from_dipole.eta == pytest.approx(eta_from_dipole(1e-29, 1e-7))
        assert explicit.eta == 3e-6

    def test_large_zeta_rejected(self):
        """omega^2 R^2 / c^2 >= 0.1 is outside the first-order expansion."""
        with pytest.raises(ValidationError):
            CavityParams(Omega0=1e7, omega=1e8, R=1.0, V=1.0, omega_c=1e8)

    def test_regimes(self, high_params, low_params):
        """The rotation-to-gap ratio selects the regime."""
        service = get_cavity_service()

        assert service.regime(high_params) == Regime.HIGH
        assert service.regime(low_params) == Regime.LOW

    def test_intermediate_rotation_rejected(self):
        """omega comparable to Omega0_bar is in neither regime."""
        params = CavityRequest(omega=1e7).params()

        with pytest.raises(ValidationException):
            get_cavity_service().regime(params)

    def test_wrong_regime_formula_rejected(self, low_params):
        """The fast-rotation rates refuse slow-rotation parameters."""
        with pytest.raises(ValidationException):
            get_cavity_service().rates_high(low_params)


@pytest.mark.unit
class TestRates:
    """Tests for the transition rates and Lindblad coefficients."""

    def test_zero_radius_is_inertial_only(self):
        """With zeta = 0, A = B = eta rho(Omega0) Omega0 / 4."""
        params = CavityParams(Omega0=1e7, omega=5e9, R=0.0, V=1e-7, omega_c=5.01e9)

        rates = get_cavity_service().rates_high(params)

        expected = 0.25 * params.eta * lorentzian_dos(1e7, 5.01e9, params.Q) * 1e7
        assert rates.A == pytest.approx(expected)
        assert rates.B == pytest.approx(expected)
        assert rates.noninertial == (0.0, 0.0)

    def test_low_regime_has_no_absorption(self, low_params):
        """A = B in the slow-rotation regime."""
        rates = get_cavity_service().rates_low(low_params)

        assert rates.gamma_up.total == 0.0
        assert rates.A == pytest.approx(rates.B)

    def test_low_regime_zero_radius(self):
        """With zeta = 0 the emission rate is eta rho(Omega0) Omega0."""
        params = CavityParams(Omega0=1e7, omega=1e5, R=0.0, V=1e-3, omega_c=1.01e7, Q=1e4)

        rates = get_cavity_service().rates_low(params)

        expected = params.eta * lorentzian_dos(1e7, 1.01e7, 1e4) * 1e7
        assert rates.gamma_down.total == pytest.approx(expected)

    def test_kossakowski_is_hermitian(self):
        """The dissipator matrix is Hermitian and positive for |B| <= A."""
        a = kossakowski(0.3, 0.2)

        assert np.allclose(a, a.conj().T)
        assert np.all(np.linalg.eigvalsh(a) >= -1e-15)

    def test_sweep_is_worker_independent(self, high_params):
        """Rows come back in ascending omega_c for any worker count."""
        service = get_cavity_service()
        centre = high_params.omega_c
        omega_cs = [centre * 1.001, centre, centre * 0.999]

        serial = service.rate_sweep(high_params, omega_cs, workers=1)
        parallel = service.rate_sweep(high_params, omega_cs, workers=2)

        assert [r.omega_c for r in serial] == sorted(omega_cs)
        assert [r.model_dump() for r in serial] == [r.model_dump() for r in parallel]


@pytest.mark.unit
class TestPhaseSplit:
    """Tests for the inertial and non-inertial phase split."""

    def test_fast_rotation_is_non_inertial(self, high_params):
        """With the cavity at omega_+ the non-inertial phase dominates."""
        split = get_cavity_service().gp_regimes(high_params)

        assert split.regime == Regime.HIGH
        assert split.ratio > 1e5

    def test_slow_rotation_is_comparable(self, low_params):
        """With Q = 1e7 both contributions are of the same order."""
        split = get_cavity_service().gp_regimes(low_params)

        assert split.regime == Regime.LOW
        assert 0.1 <= split.ratio <= 10.0

    def test_quadratic_in_cycle_count(self, high_params):
        """Both phase contributions grow as n^2."""
        inertial, noninertial = get_cavity_service().n_scaling(high_params, [1e3, 1e4, 1e5])

        assert inertial == pytest.approx(2.0, abs=0.01)
        assert noninertial == pytest.approx(2.0, abs=0.01)

    @pytest.mark.parametrize("theta", [0.0, math.pi])
    def test_poles_have_no_nonunitary_phase(self, high_params, theta):
        """The sin^2 theta factor vanishes at the poles."""
        params = high_params.model_copy(update={"theta": theta})

        split = get_cavity_service().gp_regimes(params)

        assert split.nonunitary == pytest.approx(0.0, abs=1e-30)

    def test_vanishing_parts_have_no_slope(self, high_params):
        """At theta = 0 neither part has a log-log slope."""
        params = high_params.model_copy(update={"theta": 0.0})

        assert math.isinf(get_cavity_service().gp_regimes(params).ratio)
        assert get_cavity_service().n_scaling(params, [1.0, 2.0]) == (None, None)

    def test_validity_guard(self):
        """4AT above 0.1 refuses the first-order phase."""
        with pytest.raises(ValidityException):
            get_cavity_service().gp_first_order(0.01, 0.0, 1.0, math.pi / 2.0, 1.0)


@pytest.mark.unit
class TestExactPhase:
    """Tests for the quadrature, master-equation and trajectory phases."""

    def test_no_dissipation_gives_solid_angle(self):
        """A = B = 0 leaves -pi n (1 - cos theta)."""
        theta = math.pi / 3.0

        value = get_cavity_service().gp_exact(0.0, 0.0, 1.0, theta, 2.0 * math.pi)

        assert value == pytest.approx(-math.pi * (1.0 - math.cos(theta)), abs=1e-10)

    def test_first_order_agrees_for_weak_dissipation(self):
        """The first-order non-unitary phase is within 1% of the quadrature."""
        service = get_cavity_service()
        A, B, theta = 1e-4, 5e-5, math.pi / 3.0
        unitary = -math.pi * (1.0 - math.cos(theta))

        exact = service.gp_exact(A, B, 1.0, theta, 2.0 * math.pi) - unitary
        first = service.gp_first_order(A, B, 1.0, theta, 1.0) - unitary

        assert first == pytest.approx(exact, rel=1e-2)

    def test_negative_decay_rejected(self):
        """A must be non-negative."""
        with pytest.raises(ValidationException):
            get_cavity_service().gp_exact(-1.0, 0.0, 1.0, 0.5, 1.0)

    def test_master_equation_matches_closed_form(self):
        """Integrating the Lindblad equation reproduces the closed-form rho."""
        service = get_cavity_service()
        A, B, theta = 0.05, 0.02, math.pi / 3.0
        times = np.linspace(0.0, 10.0, 21)

        numeric = service.lindblad_evolve(A, B, 1.0, initial_density(theta), times)
        closed = service.reduced_density(A, B, 1.0, theta, times)

        assert np.max(np.abs(numeric - closed)) < 1e-7

    def test_closed_form_keeps_unit_trace(self):
        """rho(tau) has unit trace."""
        rho = get_cavity_service().reduced_density(0.05, 0.02, 1.0, 1.0, [0.0, 1.0, 5.0])

        assert np.allclose(np.trace(rho, axis1=1, axis2=2), 1.0)
        assert np.allclose(rho[0], initial_density(1.0))

    def test_bad_initial_state_rejected(self):
        """rho0 must be 2x2."""
        with pytest.raises(ValidationException):
            get_cavity_service().lindblad_evolve(0.1, 0.0, 1.0, np.eye(3), [0.0, 1.0])

    def test_trajectory_phase_matches_quadrature(self):
        """The sampled mixed-state phase equals the wrapped quadrature."""
        service = get_cavity_service()
        A, B, theta, T = 1e-3, 5e-4, math.pi / 3.0, 2.0 * math.pi

        trajectory = service.gp_trajectory_numeric(A, B, 1.0, theta, T)
        exact = service.gp_exact(A, B, 1.0, theta, T)

        assert phase_distance(trajectory, wrap_phase(exact)) < 1e-4
