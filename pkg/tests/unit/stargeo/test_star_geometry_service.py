"""
Unit tests for the Majorana-star geometry service.
"""

import math

import numpy as np
import pytest

from qwalk_geophase.modules.geophase.services import get_geophase_service
from qwalk_geophase.modules.stargeo.services import (
    coherent_state,
    dual_pairs,
    get_star_geometry_service,
    ray_phases,
    star_bloch_vectors,
    stereographic,
)
from qwalk_geophase.shared.exceptions import TrackingException, ValidationException
from qwalk_geophase.shared.utils import wrap_phase


@pytest.mark.unit
class TestStars:
    """Tests for the state <-> stars maps."""

    @pytest.mark.parametrize("dim", [2, 3, 4, 6])
    def test_round_trip_up_to_phase(self, dim, random_state):
        """stars_to_state(state_to_stars(c)) is c up to a global phase."""
        service = get_star_geometry_service()
        c = random_state(dim)

        rebuilt = service.stars_to_state(service.state_to_stars(c))

        assert abs(np.vdot(c, rebuilt)) == pytest.approx(1.0, abs=1e-9)

    def test_coherent_state_has_degenerate_stars(self):
        """A spin-coherent state has all stars at its Bloch point."""
        service = get_star_geometry_service()
        star = np.array([math.cos(0.4), math.sin(0.4) * np.exp(0.3j)])

        bloch = star_bloch_vectors(service.state_to_stars(coherent_state(star, 4)))

        expected = star_bloch_vectors([star])[0]
        assert np.allclose(bloch, expected, atol=1e-10)

    def test_top_state_has_stars_at_infinity(self):
        """(0, 0, 1) puts both stars at the south pole."""
        stars = get_star_geometry_service().state_to_stars([0.0, 0.0, 1.0])

        assert stars.at_infinity.all()
        assert np.allclose(star_bloch_vectors(stars), [[0.0, 0.0, -1.0]] * 2)

    def test_missing_degree_adds_infinite_star(self):
        """A vanishing first amplitude gives exactly one star at |1>."""
        stars = get_star_geometry_service().state_to_stars([0.0, 1.0, 1.0])

        assert int(stars.at_infinity.sum()) == 1
        assert len(stars) == 2

    def test_single_level_rejected(self):
        """A one-level state has no stars."""
        with pytest.raises(ValidationException):
            get_star_geometry_service().state_to_stars([1.0])

    def test_stereographic_of_equator(self):
        """An equator point maps to the unit circle."""
        assert abs(stereographic(np.array([[0.0, 1.0, 0.0]]))[0]) == pytest.approx(1.0)


@pytest.mark.unit
class TestRayPhases:
    """Tests for the geodesic curve labels."""

    def test_qutrit_phases(self):
        """For n = 3 the labels are +-pi/2."""
        assert np.allclose(np.sort(ray_phases(3)), [-math.pi / 2.0, math.pi / 2.0])

    def test_odd_pairs(self):
        """For n = 3 the two curves are dual to each other."""
        pairs, self_dual = dual_pairs(3)

        assert pairs == [(0, 1)]
        assert self_dual is None

    def test_even_has_self_dual_curve(self):
        """For n = 4 curve 1 is self-dual and 0, 2 form a pair."""
        pairs, self_dual = dual_pairs(4)

        assert pairs == [(0, 2)]
        assert self_dual == 1
        assert ray_phases(4)[self_dual] == pytest.approx(0.0, abs=1e-12)

    @pytest.mark.parametrize("n", [3, 4, 5, 6, 7, 8])
    def test_pair_indices_sum_to_n_minus_two(self, n):
        """Dual indices satisfy i + j = n - 2 mod (n - 1) and cover every curve once."""
        pairs, self_dual = dual_pairs(n)

        extra = [] if self_dual is None else [self_dual]
        covered = sorted([i for pair in pairs for i in pair] + extra)
        assert covered == list(range(n - 1))
        assert all((i + j) % (n - 1) == n - 2 for i, j in pairs)
        assert (self_dual is not None) == (n % 2 == 0)

    @pytest.mark.parametrize("n", [5, 7])
    def test_odd_pairs_never_sum_to_zero(self, n):
        """For odd n no two curves with i + j = 0 mod (n - 1) are mirror images."""
        phases = ray_phases(n)
        zero_sums = [
            (i, j) for i in range(n - 1) for j in range(i + 1, n - 1) if (i + j) % (n - 1) == 0
        ]

        assert all(abs(wrap_phase(phases[i] + phases[j])) > 1e-3 for i, j in zero_sums)

    def test_odd_radii_are_equal(self):
        """For n = 5 the stars emerge at odd multiples of pi/4, so all radii agree."""
        service = get_star_geometry_service()

        radii = [service.geodesic_radius(5, math.pi / 3.0, k) for k in range(4)]

        assert np.allclose(radii, radii[0])


@pytest.mark.unit
class TestGeodesic:
    """Tests for geodesics and their star decomposition."""

    def test_canonical_endpoints_overlap(self):
        """The canonical endpoints have overlap cos(theta)."""
        psi1, psi2 = get_star_geometry_service().canonical_endpoints(5, 1.0)

        assert np.vdot(psi1, psi2).real == pytest.approx(math.cos(1.0))

    def test_geodesic_hits_endpoints(self, random_state):
        """The sampled geodesic starts at psi1 and ends on the ray of psi2."""
        service = get_star_geometry_service()
        psi1, psi2 = random_state(4), random_state(4)

        curve = service.geodesic(psi1, psi2, 101)

        assert abs(np.vdot(curve.states[0], psi1)) == pytest.approx(1.0)
        assert abs(np.vdot(curve.states[-1], psi2)) == pytest.approx(1.0)
        assert abs(get_geophase_service().gp_curve(curve)) < 1e-9

    def test_orthogonal_endpoints_rejected(self):
        """Orthogonal endpoints have no unique geodesic."""
        with pytest.raises(ValidationException):
            get_star_geometry_service().geodesic([1.0, 0.0], [0.0, 1.0])

    def test_qutrit_radius_closed_form(self):
        """For n = 3 both circles have radius beta = sqrt(1 - cos theta)."""
        service = get_star_geometry_service()
        theta = math.pi / 3.0

        radii = [service.geodesic_radius(3, theta, k) for k in range(2)]

        assert np.allclose(radii, math.sqrt(1.0 - math.cos(theta)))

    @pytest.mark.parametrize("dim", [3, 4, 5])
    def test_star_curves_are_circles(self, dim):
        """Each star traces a plane circle of the closed-form radius."""
        service = get_star_geometry_service()
        psi1, psi2 = service.canonical_endpoints(dim, math.pi / 3.0)

        result = service.geodesic_decompose(psi1, psi2, 401)

        fitted = np.array([f.radius for f in result.fits])
        assert len(result.curves) == dim - 1
        assert np.max(np.abs(fitted - result.radii)) < 1e-6
        assert max(f.plane_residual for f in result.fits) < 1e-8
        assert result.reflection_residual() < 1e-8

    @pytest.mark.slow
    @pytest.mark.parametrize("dim", [6, 7, 8])
    @pytest.mark.parametrize("theta", [math.pi / 5.0, math.pi / 3.0])
    def test_many_stars_track_through_the_endpoints(self, dim, theta):
        """Stars emerging from the degenerate endpoint as t^(1/(n-1)) stay tracked."""
        service = get_star_geometry_service()
        psi1, psi2 = service.canonical_endpoints(dim, theta)

        result = service.geodesic_decompose(psi1, psi2, 2001)

        fitted = np.array([f.radius for f in result.fits])
        assert len(result.curves) == dim - 1
        assert result.max_jump_ratio < 0.5
        assert np.max(np.abs(fitted - result.radii)) < 1e-6
        assert max(f.plane_residual for f in result.fits) < 1e-8

    def test_tracking_failure(self):
        """A coarse grid with a strict tolerance raises TrackingException."""
        service = get_star_geometry_service()
        psi1, psi2 = service.canonical_endpoints(4, 1.2)

        with pytest.raises(TrackingException):
            service.geodesic_decompose(psi1, psi2, 5, jump_ratio=1e-6)

    def test_non_degenerate_endpoint_rejected(self, random_state):
        """Endpoints must have coincident stars."""
        service = get_star_geometry_service()
        psi1, _ = service.canonical_endpoints(3, 0.5)

        with pytest.raises(ValidationException):
            service.geodesic_decompose(psi1, random_state(3), 21)


@pytest.mark.unit
class TestNullPhaseCurves:
    """Tests for qutrit null phase curves."""

    def test_family_one_is_null_phase(self):
        """Every Bargmann triple on the first family is real positive."""
        service = get_star_geometry_service()

        check = service.npc_check(service.npc_family_one(math.pi / 3.0, 201))

        assert check.is_null_phase
        assert check.triples > 0

    def test_family_one_has_vanishing_phase(self):
        """The open-curve phase of an NPC is zero."""
        service = get_star_geometry_service()

        value = get_geophase_service().gp_curve(service.npc_family_one(math.pi / 3.0, 401))

        assert abs(value) < 1e-9

    def test_dual_curves_regenerate_family_one(self):
        """The mirror-star construction reproduces the explicit curve."""
        service = get_star_geometry_service()
        theta = math.pi / 3.0
        explicit = service.npc_family_one(theta, 101)
        eta, gamma = service.npc_dual_angles(theta, explicit.params)
        u = service.degenerate_mapping_unitary(
            [1.0, 0.0, 0.0], [math.cos(theta), math.sin(theta), 0.0]
        )

        dual = service.npc_from_dual_curves(explicit.params, eta, gamma, theta, u)

        overlaps = np.abs(np.sum(explicit.states.conj() * dual.states, axis=1))
        assert np.allclose(overlaps, 1.0, atol=1e-8)

    def test_dual_angles_meet_boundary_conditions(self):
        """eta and gamma start at 0 and end at (2 acos sqrt(cos theta), 0)."""
        service = get_star_geometry_service()
        theta = math.pi / 3.0
        s = np.linspace(0.0, theta, 201)

        eta, gamma = service.npc_dual_angles(theta, s)

        assert eta[0] == pytest.approx(0.0, abs=1e-9)
        assert gamma[0] == pytest.approx(0.0, abs=1e-9)
        assert eta[-1] == pytest.approx(2.0 * math.acos(math.sqrt(math.cos(theta))), abs=1e-6)
        assert gamma[-1] == pytest.approx(0.0, abs=1e-6)

    def test_mapping_unitary_is_unitary(self, random_state):
        """The degenerate mapping is unitary and sends psi1 to (1, 0, 0)."""
        service = get_star_geometry_service()
        psi1, psi2 = random_state(3), random_state(3)

        u = service.degenerate_mapping_unitary(psi1, psi2)

        assert np.allclose(u @ u.conj().T, np.eye(3), atol=1e-12)
        assert np.allclose(u @ psi1, [1.0, 0.0, 0.0], atol=1e-12)

    def test_boundary_conditions_enforced(self):
        """Dual angles off the endpoints are rejected."""
        s = np.linspace(0.0, 1.0, 11)

        with pytest.raises(ValidationException):
            get_star_geometry_service().npc_from_dual_curves(
                s, np.full(11, 0.1), np.zeros(11), math.pi / 3.0
            )

    def test_family_two_is_null_phase(self):
        """A constant phase on the third amplitude keeps every triple real."""
        service = get_star_geometry_service()

        check = service.npc_check(service.npc_family_two(math.pi / 3.0, 0.7, 201))

        assert check.is_null_phase


@pytest.mark.unit
class TestCircleFit:
    """Tests for the plane-circle fit."""

    def test_latitude_circle(self):
        """Points at height 0.6 lie on a circle of radius 0.8."""
        phi = np.linspace(0.0, 2.0 * math.pi, 40, endpoint=False)
        points = np.column_stack([0.8 * np.cos(phi), 0.8 * np.sin(phi), np.full_like(phi, 0.6)])

        fit = get_star_geometry_service().circle_fit(points)

        assert fit.radius == pytest.approx(0.8)
        assert np.allclose(fit.center, [0.0, 0.0, 0.6])
        assert fit.plane_residual < 1e-12
        assert fit.radius_residual < 1e-12

    def test_single_point(self):
        """A stationary star is a circle of radius zero."""
        points = np.tile([0.0, 0.0, 1.0], (5, 1))

        fit = get_star_geometry_service().circle_fit(points)

        assert fit.radius == 0.0
