"""
Unit tests for the geometric phase service.
"""

import math

import numpy as np
import pytest
from scipy.stats import unitary_group

from qwalk_geophase.modules.geophase.schemas import PureCurve
from qwalk_geophase.modules.geophase.services import (
    bloch_state,
    bloch_vector,
    get_geophase_service,
    sigma_dot,
)
from qwalk_geophase.modules.stargeo.services import get_star_geometry_service
from qwalk_geophase.shared.exceptions import ValidationException
from qwalk_geophase.shared.utils import phase_distance, wrap_phase

AXES = ((1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0))


def _circle(theta: float, samples: int = 2001) -> PureCurve:
    phi = np.linspace(0.0, 2.0 * math.pi, samples)
    s, c = math.sin(theta), math.cos(theta)
    states = [bloch_state((s * math.cos(p), s * math.sin(p), c)) for p in phi]
    return PureCurve.from_states(phi, states)


@pytest.mark.unit
class TestBlochHelpers:
    """Tests for the qubit helpers."""

    def test_bloch_round_trip(self):
        """bloch_vector inverts bloch_state."""
        n = np.array([0.3, -0.5, 0.81])
        n = n / np.linalg.norm(n)

        assert np.allclose(bloch_vector(bloch_state(n)), n)

    def test_sigma_dot_squares_to_identity(self):
        """(n.sigma)^2 = 1 for a unit vector."""
        n = np.array([0.6, 0.0, 0.8])

        assert np.allclose(sigma_dot(n) @ sigma_dot(n), np.eye(2))


@pytest.mark.unit
class TestBargmann:
    """Tests for the Bargmann invariant and discrete phase."""

    def test_pauli_triangle(self):
        """The x, y, z eigenstate triangle has phase -pi/4."""
        service = get_geophase_service()

        value = service.gp_discrete([bloch_state(a) for a in AXES])

        assert value == pytest.approx(-math.pi / 4.0, abs=1e-12)

    def test_minus_half_solid_angle(self):
        """The discrete phase is minus half the signed solid angle."""
        service = get_geophase_service()
        n1, n2, n3 = (0.0, 0.0, 1.0), (0.8, 0.0, 0.6), (0.0, 0.6, 0.8)

        value = service.gp_discrete([bloch_state(n) for n in (n1, n2, n3)])

        expected = -0.5 * service.strackee_solid_angle(n1, n2, n3)
        assert value == pytest.approx(expected, abs=1e-12)

    def test_invariant_under_rephasing_and_unitaries(self, random_state):
        """Per-state phases and a common unitary leave the invariant unchanged."""
        service = get_geophase_service()
        states = [random_state(4) for _ in range(5)]
        u = unitary_group.rvs(4, random_state=7)

        base = service.bargmann(states)
        rephased = service.bargmann([np.exp(1j * k) * s for k, s in enumerate(states)])
        rotated = service.bargmann([u @ s for s in states])

        assert rephased == pytest.approx(base, abs=1e-12)
        assert rotated == pytest.approx(base, abs=1e-12)

    def test_orthogonal_neighbours_rejected(self):
        """Orthogonal neighbours leave the phase undefined."""
        service = get_geophase_service()

        with pytest.raises(ValidationException):
            service.bargmann([np.array([1.0, 0.0]), np.array([0.0, 1.0]), np.array([1.0, 1.0])])

    def test_single_state_rejected(self):
        """At least two states are needed."""
        with pytest.raises(ValidationException):
            get_geophase_service().bargmann([np.array([1.0, 0.0])])


@pytest.mark.unit
class TestCurvePhase:
    """Tests for GeometricPhaseService.gp_curve()."""

    @pytest.mark.parametrize("theta", [0.4, math.pi / 3.0, 2.0])
    def test_bloch_circle(self, theta):
        """A closed circle at colatitude theta has phase -pi(1 - cos theta)."""
        value = get_geophase_service().gp_curve(_circle(theta, 4001))

        assert phase_distance(value, -math.pi * (1.0 - math.cos(theta))) < 1e-6

    def test_trapezoid_matches_overlap(self):
        """Both discretizations agree on a smooth circle."""
        service = get_geophase_service()
        curve = _circle(1.0)

        assert phase_distance(
            service.gp_curve(curve, "trapezoid"), service.gp_curve(curve, "overlap")
        ) < 1e-5

    @pytest.mark.parametrize("dim", [2, 3, 5])
    def test_geodesic_phase_vanishes(self, dim):
        """The phase along a geodesic is zero."""
        stars = get_star_geometry_service()
        psi1, psi2 = stars.canonical_endpoints(dim, 1.0472)

        value = get_geophase_service().gp_curve(stars.geodesic(psi1, psi2, 401))

        assert abs(value) < 1e-8

    def test_gauge_invariance(self, rng):
        """Random per-sample phases do not change the overlap phase."""
        service = get_geophase_service()
        curve = _circle(0.9, 301)
        phases = np.exp(1j * rng.uniform(0, 2 * math.pi, size=len(curve)))
        regauged = PureCurve.from_states(curve.params, curve.states * phases[:, None])

        assert phase_distance(service.gp_curve(regauged), service.gp_curve(curve)) < 1e-12

    def test_orthogonal_endpoints_rejected(self):
        """An open curve with orthogonal endpoints raises."""
        s = np.linspace(0.0, math.pi / 2.0, 50)
        curve = PureCurve.from_states(s, np.stack([np.cos(s), np.sin(s)], axis=1))

        with pytest.raises(ValidationException):
            get_geophase_service().gp_curve(curve)

    def test_unknown_method_rejected(self):
        """Only overlap and trapezoid are accepted."""
        with pytest.raises(ValidationException):
            get_geophase_service().gp_curve(_circle(0.5, 11), "simpson")


@pytest.mark.unit
class TestMixedUnitary:
    """Tests for the interferometric mixed-state phase."""

    @pytest.mark.parametrize("r,theta", [(0.5, math.pi / 3.0), (0.9, 0.7), (0.2, 2.2)])
    def test_precession_closed_form(self, r, theta):
        """The sampled phase equals arctan[r tan(pi cos theta)] modulo pi."""
        service = get_geophase_service()
        _, rho0, us = service.precession_path(theta, r, 801)

        phase = service.gp_mixed_unitary(rho0, us).phase
        expected = service.mixed_precession_gp(r, theta)

        assert phase_distance(phase, expected, period=math.pi) < 1e-6

    def test_pure_state_limit(self):
        """For r = 1 the phase is the pure-state -pi(1 - cos theta)."""
        service = get_geophase_service()
        theta = 0.8
        _, rho0, us = service.precession_path(theta, 1.0, 801)

        phase = service.gp_mixed_unitary(rho0, us).phase

        assert phase_distance(phase, -math.pi * (1.0 - math.cos(theta))) < 1e-6

    def test_path_must_start_at_identity(self):
        """A unitary path starting elsewhere raises."""
        service = get_geophase_service()
        _, rho0, us = service.precession_path(0.5, 0.5, 11)

        with pytest.raises(ValidationException):
            service.gp_mixed_unitary(rho0, us[1:])


@pytest.mark.unit
class TestMixedNonunitary:
    """Tests for the non-unitary mixed-state phase."""

    def test_dephasing_matches_exact(self):
        """The trajectory phase agrees with the closed form."""
        service = get_geophase_service()
        theta, eta, lam = math.pi / 3.0, 1.0, 0.01

        phase = service.gp_mixed_nonunitary(service.dephasing_trajectory(theta, eta, lam))

        assert phase_distance(phase, service.dephasing_gp_exact(theta, eta, lam)) < 1e-3

    def test_no_dephasing_reduces_to_pure(self):
        """With lam = 0 the exact phase is -pi(1 - cos theta)."""
        service = get_geophase_service()

        value = service.dephasing_gp_exact(0.7, 1.0, 0.0)

        assert value == pytest.approx(wrap_phase(-math.pi * (1.0 - math.cos(0.7))))

    def test_first_order_expansion(self):
        """The first-order formula tracks the exact phase for small lam."""
        service = get_geophase_service()
        theta, eta, lam = math.pi / 3.0, 1.0, 1e-3

        exact = service.dephasing_gp_exact(theta, eta, lam)
        first = service.dephasing_gp_first_order(theta, eta, lam)

        assert phase_distance(exact, first) < 1e-4

    def test_non_hermitian_trajectory_rejected(self):
        """density_trajectory checks hermiticity."""
        rho = np.array([[[0.5, 0.5], [0.0, 0.5]]] * 3, dtype=complex)

        with pytest.raises(ValidationException):
            get_geophase_service().density_trajectory([0.0, 1.0, 2.0], rho)


@pytest.mark.unit
class TestUhlmann:
    """Tests for the qubit Uhlmann phase."""

    def test_cyclic_closed_form(self):
        """At tau = 2 pi the phase is arctan[(r n_z / sqrt(k)) tan(pi sqrt(k))]."""
        r, theta = 0.5, math.pi / 4.0
        n = (math.sin(theta), 0.0, math.cos(theta))
        k = 1.0 - (r * n[0]) ** 2

        result = get_geophase_service().uhlmann_phase_qubit(r, n, 2.0 * math.pi)

        expected = math.atan(r * n[2] / math.sqrt(k) * math.tan(math.pi * math.sqrt(k)))
        assert result.value == pytest.approx(expected, abs=1e-12)

    def test_maximally_mixed_is_zero(self):
        """r = 0 gives a vanishing phase."""
        result = get_geophase_service().uhlmann_phase_qubit(0.0, (0.0, 0.0, 1.0), 1.3)

        assert result.value == pytest.approx(0.0, abs=1e-15)

    def test_pole_is_continued(self):
        """tau = pi puts cos(tau/2) on its zero and is flagged."""
        result = get_geophase_service().uhlmann_phase_qubit(0.5, (0.6, 0.0, 0.8), math.pi)

        assert result.pole_continued
        assert abs(result.value) <= math.pi / 2.0

    def test_n_must_lie_in_xz_plane(self):
        """A non-zero n_y is rejected."""
        with pytest.raises(ValidationException):
            get_geophase_service().uhlmann_phase_qubit(0.5, (0.0, 1.0, 0.0), 1.0)


@pytest.mark.unit
class TestWeakValue:
    """Tests for weak values and pointer readouts."""

    def test_pauli_weak_value(self):
        """sigma_z between |+x> and |+y> has weak value i."""
        service = get_geophase_service()
        pre, post = bloch_state(AXES[0]), bloch_state(AXES[1])

        z = service.weak_value(pre, post, sigma_dot(AXES[2]))

        assert z == pytest.approx(1.0j, abs=1e-12)
        assert service.weak_value_pauli(AXES[2], AXES[0], AXES[1]) == pytest.approx(z)

    def test_closed_form_matches_matrix_elements(self, rng):
        """The Pauli closed form agrees with <m|A|n>/<m|n> for random axes."""
        service = get_geophase_service()
        q, n, m = (v / np.linalg.norm(v) for v in rng.normal(size=(3, 3)))

        z = service.weak_value(bloch_state(n), bloch_state(m), sigma_dot(q))

        assert service.weak_value_pauli(q, n, m) == pytest.approx(z, abs=1e-10)

    def test_pointer_recovers_phase(self):
        """Gaussian pointer shifts give back arg A_w."""
        service = get_geophase_service()
        z = complex(0.3, -1.2)

        dq, dp = service.pointer_shifts(z, 1e-3, 2.0)

        assert service.gp_from_pointer(dq, dp, 2.0) == pytest.approx(math.atan2(z.imag, z.real))

    def test_qubit_pointer_readout(self):
        """A weakly coupled qubit pointer reconstructs the weak value."""
        service = get_geophase_service()
        pre, post = bloch_state(AXES[0]), bloch_state((0.0, 0.6, 0.8))
        obs = sigma_dot(AXES[2])
        z = service.weak_value(pre, post, obs)

        readout = service.qubit_pointer_readout(pre, post, obs, AXES[2], AXES[0], 1e-4)

        assert abs(readout.weak_value - z) < 1e-2

    def test_orthogonal_selection_rejected(self):
        """Orthogonal pre- and post-selection has no weak value."""
        with pytest.raises(ValidationException):
            get_geophase_service().weak_value(
                np.array([1.0, 0.0]), np.array([0.0, 1.0]), sigma_dot(AXES[0])
            )

    def test_zero_shifts_rejected(self):
        """Vanishing shifts leave the phase undefined."""
        with pytest.raises(ValidationException):
            get_geophase_service().gp_from_pointer(0.0, 0.0, 1.0)
