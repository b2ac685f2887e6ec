"""
Unit tests for the topology service.
"""

import math

import numpy as np
import pytest

from qwalk_geophase.modules.topo.services import get_topo_service
from qwalk_geophase.modules.walks.schemas import WalkSpec, WalkVariant
from qwalk_geophase.modules.walks.services import get_walk_service
from qwalk_geophase.shared.exceptions import ServiceException, ValidationException

PI = math.pi
INNER = (-3.0 * PI / 8.0, PI / 4.0)
OUTER = (-3.0 * PI / 8.0, 5.0 * PI / 8.0)


@pytest.mark.unit
class TestSplitStepWinding:
    """Tests for the momentum-space winding of the split-step walk."""

    @pytest.mark.parametrize("gamma", [0.0, 0.1, 0.25, 0.9 * 0.5624])
    def test_winding_persists_below_critical(self, gamma):
        """|W| = 1 along theta2 = pi/8 for every gamma below gamma_c."""
        result = get_topo_service().ssq_winding(-3.0 * PI / 8.0, PI / 8.0, gamma)

        assert abs(result.value) == pytest.approx(1.0, abs=1e-3)
        assert result.kcount == 2001

    def test_trivial_line(self):
        """W = 0 along theta2 = 5pi/8 below its gamma_c."""
        result = get_topo_service().ssq_winding(-3.0 * PI / 8.0, 5.0 * PI / 8.0, 0.25)

        assert result.value == pytest.approx(0.0, abs=1e-3)

    def test_dvector_form_agrees(self):
        """The integral and d-vector forms give the same integer for a unitary walk."""
        result = get_topo_service().ssq_winding(-3.0 * PI / 8.0, PI / 8.0, 0.0)

        assert result.dvector is not None
        assert abs(result.dvector) == pytest.approx(abs(result.value), abs=1e-3)

    def test_dvector_skipped_with_gain_loss(self):
        """The d-vector form needs a real n(k)."""
        result = get_topo_service().ssq_winding(-3.0 * PI / 8.0, PI / 8.0, 0.1)

        assert result.dvector is None

    def test_two_dimensional_grid_rejected(self):
        """Winding numbers are one-dimensional."""
        spec = WalkSpec(variant=WalkVariant.DTQW2D, theta1=0.4, theta2=1.1, size=2)
        band = get_walk_service().band_grid(spec, kcount=8)

        with pytest.raises(ValidationException):
            get_topo_service().winding_momentum(band)

    def test_smooth_gauge_closes_the_loop(self, rng):
        """After smoothing every neighbour overlap is real and positive."""
        k = np.linspace(0.0, 2.0 * PI, 64, endpoint=False)
        psi = np.stack([np.cos(k / 2.0), np.sin(k / 2.0)], axis=-1).astype(complex)
        psi *= np.exp(1j * rng.uniform(0.0, 2.0 * PI, size=64))[:, None]

        smooth = get_topo_service().smooth_gauge(psi)

        links = np.einsum("ka,ka->k", np.conj(smooth), np.roll(smooth, -1, axis=0))
        assert np.max(np.abs(np.angle(links) - np.angle(links[0]))) < 1e-10
        assert np.all(links.real > 0.0)


@pytest.mark.unit
class TestChern:
    """Tests for the plaquette Chern number of the 2D walk."""

    @pytest.mark.parametrize("grid", [48, 96])
    def test_topological_point(self, grid):
        """theta1 = theta2 = 7pi/6 has C = +1 on every grid."""
        result = get_topo_service().chern_walk(
            7.0 * PI / 6.0, 7.0 * PI / 6.0, grid=grid, full_angle=True
        )

        assert result.value == 1
        assert result.grid == (grid, grid)

    def test_trivial_point(self):
        """theta1 = 3pi/2, theta2 = pi has C = 0."""
        result = get_topo_service().chern_walk(1.5 * PI, PI, grid=48, full_angle=True)

        assert result.value == 0
        assert result.trivial

    def test_trivial_point_is_gapless_with_half_angles(self):
        """With R = exp(-i theta sigma_y / 2), (3pi/2, pi) closes the gap at k = 0."""
        spec = WalkSpec(variant=WalkVariant.DTQW2D, theta1=1.5 * PI, theta2=PI, size=2)

        u = get_walk_service().bloch_step(spec, np.zeros((1, 2)))[0]

        assert np.allclose(u, np.eye(2), atol=1e-12)
        with pytest.raises(ServiceException):
            get_topo_service().chern_walk(1.5 * PI, PI, grid=48, full_angle=False)

    def test_flux_sums_to_integer(self):
        """The plaquette field sums to 2 pi C."""
        result = get_topo_service().chern_walk(
            7.0 * PI / 6.0, 7.0 * PI / 6.0, grid=48, full_angle=True
        )

        assert np.sum(result.field) == pytest.approx(2.0 * PI * result.value, abs=1e-8)

    def test_sign_of_angles_is_a_gauge(self):
        """Negating both angles conjugates the step by sigma_z and keeps C."""
        service = get_topo_service()

        plus = service.chern_walk(7.0 * PI / 6.0, 7.0 * PI / 6.0, grid=48, full_angle=True)
        minus = service.chern_walk(-7.0 * PI / 6.0, -7.0 * PI / 6.0, grid=48, full_angle=True)

        assert minus.value == plus.value

    def test_one_dimensional_grid_rejected(self):
        """Chern numbers need a 2D grid."""
        spec = WalkSpec(variant=WalkVariant.DTQW1D, theta1=0.4, size=2)
        band = get_walk_service().band_grid(spec, kcount=16)

        with pytest.raises(ValidationException):
            get_topo_service().chern_fhs(band)

    def test_sweep_matches_single_points(self):
        """A one-point sweep returns the single-point value."""
        points = get_topo_service().chern_sweep(
            [7.0 * PI / 6.0], [7.0 * PI / 6.0], grid=48, full_angle=True
        )

        assert len(points) == 1
        assert points[0].invariant == 1.0
        assert not points[0].failed


@pytest.mark.unit
class TestRealspaceWinding:
    """Tests for the mean displacement under sublattice detection."""

    def test_topological_phase_is_quantized(self):
        """The mean displacement settles at |W| = 1."""
        result = get_topo_service().winding_realspace(-3.0 * PI / 8.0, PI / 8.0)

        assert abs(result.value) == pytest.approx(1.0, abs=0.05)
        assert result.partial.shape == (200,)

    def test_trivial_phase(self):
        """The mean displacement vanishes where W = 0."""
        result = get_topo_service().winding_realspace(-3.0 * PI / 8.0, 5.0 * PI / 8.0)

        assert result.value == pytest.approx(0.0, abs=0.05)

    @pytest.mark.parametrize("p_measure", [0.0, 1.5])
    def test_measurement_strength_range(self, p_measure):
        """p_M must lie in (0, 1]."""
        with pytest.raises(ValidationException):
            get_topo_service().winding_realspace(0.1, 0.2, p_measure=p_measure)

    def test_sweep_is_ordered(self):
        """Sweep results come back sorted by theta1."""
        results = get_topo_service().realspace_sweep([0.3, -0.3], PI / 8.0, steps=20, size=31)

        assert [t for t, _ in results] == [-0.3, 0.3]


@pytest.mark.unit
class TestEdgeSpectrum:
    """Tests for the two-domain split-step chain."""

    def test_domain_map(self):
        """Inner angle inside |x| <= L_B, outer angle elsewhere."""
        angles = get_topo_service().domain_map(11, 1.0, 2.0, 2)

        assert list(angles) == [2.0, 2.0, 2.0, 1.0, 1.0, 1.0, 1.0, 1.0, 2.0, 2.0, 2.0]

    def test_unitary_chain_has_two_edge_states(self):
        """Without gain/loss two real-lambda states sit at the walls."""
        spectrum = get_topo_service().edge_spectrum_1d(INNER, OUTER, gamma=0.0)

        assert int(spectrum.midgap.sum()) == 2
        assert np.all(spectrum.wall_weight[spectrum.midgap] > 0.5)
        assert np.max(np.abs(np.abs(spectrum.eigenvalues) - 1.0)) < 1e-9
        assert spectrum.walls == (-50, 50)

    def test_degenerate_edge_states_are_split_by_wall(self):
        """At gamma = 0 each of the two E = 0 states sits at one wall."""
        spectrum = get_topo_service().edge_spectrum_1d(INNER, OUTER, gamma=0.0)

        localized = spectrum.localized[spectrum.midgap]
        assert int(spectrum.midgap.sum()) == 2
        assert localized.all()
        assert spectrum.isolated
        assert np.all(spectrum.ipr[spectrum.midgap] > 0.1)

    def test_edge_states_persist_below_critical(self):
        """gamma = 0.2 keeps exactly two mid-gap states."""
        spectrum = get_topo_service().edge_spectrum_1d(INNER, OUTER, gamma=0.2)

        assert int(spectrum.midgap.sum()) == 2

    def test_broken_phase_floods_the_gap(self):
        """Above gamma_c many real-lambda states appear."""
        spectrum = get_topo_service().edge_spectrum_1d(INNER, OUTER, gamma=0.25)

        assert int(spectrum.midgap.sum()) > 2

    def test_walls_need_bulk(self):
        """Domain walls too close to the boundary are rejected."""
        with pytest.raises(ValidationException):
            get_topo_service().edge_spectrum_1d(INNER, OUTER, size=201, half_width=95)


@pytest.mark.unit
class TestSsh:
    """Tests for the SSH reference chain."""

    def test_trivial_chain(self):
        """v > w has W = 0 and no zero modes."""
        report = get_topo_service().ssh_reference(1.0, 0.5, cells=100)

        assert report.winding == pytest.approx(0.0, abs=1e-3)
        assert report.zero_modes.shape[1] == 0
        assert report.polarization is None

    def test_topological_chain(self):
        """w > v has W = 1 and two sublattice-polarized zero modes."""
        report = get_topo_service().ssh_reference(0.5, 1.0, cells=100)

        assert report.winding == pytest.approx(1.0, abs=1e-3)
        assert report.zero_modes.shape[1] == 2
        assert np.allclose(np.sort(report.polarization), [0.0, 1.0], atol=1e-6)

    def test_dimerized_limit_has_end_site_modes(self):
        """v = 0 leaves one zero mode on each end site."""
        report = get_topo_service().ssh_reference(0.0, 1.0, cells=100)

        ends = {int(np.argmax(np.abs(m))) for m in report.zero_modes.T}
        assert ends == {0, 199}

    def test_gapless_chain(self):
        """v = w closes the gap at k = pi and leaves W undefined."""
        report = get_topo_service().ssh_reference(1.0, 1.0, cells=20)

        assert report.winding is None
        assert report.dispersion.min() == pytest.approx(0.0, abs=1e-12)

    def test_negative_hopping_rejected(self):
        """Hoppings are non-negative."""
        with pytest.raises(ValidationException):
            get_topo_service().ssh_reference(-1.0, 1.0)

    def test_dispersion_closed_form(self):
        """E(k) = sqrt(v^2 + w^2 + 2 v w cos k)."""
        report = get_topo_service().ssh_reference(0.5, 1.0, cells=4, kcount=64)

        expected = np.sqrt(1.25 + np.cos(report.k))
        assert np.allclose(report.dispersion, expected)


@pytest.mark.unit
class TestExceptionalPoint:
    """Tests for the 3x3 coalescence example."""

    def test_coalescence_at_minus_five_quarters(self):
        """At beta = -5/4 two eigenvalues merge at 1/2."""
        report = get_topo_service().exceptional_point_demo([-1.25, -0.5])

        assert report.spread[0] < 1e-6
        assert report.spread[1] > 0.1
        assert report.condition[0] > 1e4
        assert np.sort(report.eigenvalues[0].real) == pytest.approx([-1.0, 0.5, 0.5], abs=1e-6)

    def test_default_sweep(self):
        """The default beta grid has 61 points."""
        report = get_topo_service().exceptional_point_demo()

        assert report.eigenvalues.shape == (61, 3)


@pytest.mark.unit
class TestPhaseDiagram:
    """Tests for the winding sweep."""

    def test_sweep_is_worker_independent(self):
        """One and two workers give the same ordered points."""
        service = get_topo_service()
        args = ([-3.0 * PI / 8.0], [5.0 * PI / 8.0, PI / 8.0], [0.0])

        serial = service.phase_diagram_1d(*args, kcount=256, workers=1)
        parallel = service.phase_diagram_1d(*args, kcount=256, workers=2)

        assert [p.theta2 for p in serial] == sorted(p.theta2 for p in serial)
        assert [p.invariant for p in serial] == [p.invariant for p in parallel]
        assert abs(serial[0].invariant) == pytest.approx(1.0, abs=1e-2)
        assert serial[1].invariant == pytest.approx(0.0, abs=1e-2)

    def test_gap_closing_is_reported_as_failure(self):
        """A point where the bands touch is flagged instead of raising."""
        service = get_topo_service()

        points = service.phase_diagram_1d([0.0], [0.0], kcount=64)

        assert points[0].failed
        assert math.isnan(points[0].invariant)


def test_gauge_smoothing_rejects_orthogonal_neighbours():
    """Orthogonal neighbours leave the gauge undefined."""
    psi = np.array([[1.0, 0.0], [0.0, 1.0], [1.0, 0.0]], dtype=complex)

    with pytest.raises(ServiceException):
        get_topo_service().smooth_gauge(psi)


@pytest.mark.unit
class TestDvectorWinding:
    """Tests for the two-band d-vector winding."""

    def test_unit_circle(self):
        """n(k) = (cos k, sin k, 0) winds once around z."""
        k = np.linspace(-PI, PI, 200, endpoint=False)
        n = np.stack([np.cos(k), np.sin(k), np.zeros_like(k)], axis=-1)

        assert get_topo_service().winding_dvector(n) == pytest.approx(1.0)

    def test_reversed_circle(self):
        """Reversing the orientation flips the sign."""
        k = np.linspace(-PI, PI, 200, endpoint=False)
        n = np.stack([np.cos(k), -np.sin(k), np.zeros_like(k)], axis=-1)

        assert get_topo_service().winding_dvector(n) == pytest.approx(-1.0)

    def test_complex_vector_rejected(self):
        """The d-vector form needs real n(k)."""
        n = np.array([[1.0, 0.5j, 0.0], [0.0, 1.0, 0.0]])

        with pytest.raises(ValidationException):
            get_topo_service().winding_dvector(n)

    def test_vector_through_axis_rejected(self):
        """n(k) parallel to the axis leaves the angle undefined."""
        n = np.array([[1.0, 0.0, 0.0], [0.0, 0.0, 1.0], [0.0, 1.0, 0.0]])

        with pytest.raises(ServiceException):
            get_topo_service().winding_dvector(n)


@pytest.mark.unit
class TestEdgeBands2d:
    """Tests for the two-domain strip."""

    def test_unitary_strip(self):
        """Without gain/loss every kx block is unitary."""
        spectrum = get_topo_service().edge_bands_2d(
            (7.0 * PI / 6.0, 7.0 * PI / 6.0),
            (1.5 * PI, PI),
            size_y=61,
            kx_count=6,
            full_angle=True,
        )

        assert spectrum.eigenvalues.shape == (6, 122)
        assert np.max(np.abs(np.abs(spectrum.eigenvalues) - 1.0)) < 1e-9
        assert spectrum.walls == (-15, 15)
        assert spectrum.kx[0] == pytest.approx(-PI / 2.0)

    def test_strip_is_worker_independent(self):
        """kx blocks are assembled in order for any worker count."""
        service = get_topo_service()
        args = ((7.0 * PI / 6.0, 7.0 * PI / 6.0), (1.5 * PI, PI))

        options = {"size_y": 61, "kx_count": 4, "full_angle": True}

        serial = service.edge_bands_2d(*args, **options, workers=1)
        parallel = service.edge_bands_2d(*args, **options, workers=2)

        assert np.array_equal(serial.eigenvalues, parallel.eigenvalues)

    def test_narrow_strip_rejected(self):
        """Walls need bulk between them and the strip edge."""
        with pytest.raises(ValidationException):
            get_topo_service().edge_bands_2d((0.1, 0.2), (0.3, 0.4), size_y=21)
