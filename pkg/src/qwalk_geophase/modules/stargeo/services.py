"""
Majorana-star services.

The n-level state c is mapped to the polynomial with descending
coefficients f_r = (-1)^r c_r / sqrt(r!(n-1-r)!); its roots x_k give the
stars (1, x_k)/sqrt(1 + |x_k|^2) and a missing degree adds stars at |1>.
Geodesics between states whose stars are all degenerate split into one
circular arc per star on the Bloch sphere.
"""

import math
from typing import Callable, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.optimize import linear_sum_assignment
from scipy.spatial.distance import cdist, pdist
from scipy.special import comb, factorial

from ...core.config import get_settings
from ...core.logging import get_logger
from ...shared.exceptions import TrackingException, ValidationException
from ...shared.utils import wrap_phase
from ..geophase.schemas import PureCurve
from ..numkit.services import get_numkit_service
from .schemas import BlochCurve, CircleFit, GeodesicDecomposition, NpcCheck, StarSet

logger = get_logger(__name__)

DEGENERATE_FIDELITY = 1e-12
ORTHOGONAL_TOL = 1e-12
BOUNDARY_TOL = 1e-9
STAR_MATCH_TOL = 1e-8

StarsLike = Union[StarSet, Sequence[Sequence[complex]], np.ndarray]


def _unit(c: Sequence[complex]) -> np.ndarray:
    c = np.asarray(c, dtype=complex).ravel()
    norm = np.linalg.norm(c)
    if c.size == 0 or norm == 0.0:
        raise ValidationException("Zero state vector")
    return c / norm


def _binomials(m: int) -> np.ndarray:
    return comb(m, np.arange(m + 1))


def coherent_state(star: Sequence[complex], m: int) -> np.ndarray:
    """Symmetric state |chi>^(x m) in the Dicke basis, c_r = sqrt(C(m,r)) a^(m-r) b^r."""
    a, b = _unit(star)
    r = np.arange(m + 1)
    return np.sqrt(_binomials(m)) * a ** (m - r) * b**r


def star_bloch_vectors(stars: StarsLike) -> np.ndarray:
    """Bloch vectors of the stars, shape (n-1, 3)."""
    arr = stars.stars if isinstance(stars, StarSet) else np.asarray(stars, dtype=complex)
    arr = np.asarray(arr, dtype=complex).reshape(-1, 2)
    arr = arr / np.linalg.norm(arr, axis=1, keepdims=True)
    a, b = arr[:, 0], arr[:, 1]
    cross = a.conj() * b
    return np.column_stack(
        [2.0 * cross.real, 2.0 * cross.imag, np.abs(a) ** 2 - np.abs(b) ** 2]
    )


def stereographic(points: np.ndarray) -> np.ndarray:
    """Star coordinate x = (p_x + i p_y)/(1 + p_z) of Bloch points."""
    points = np.atleast_2d(points)
    with np.errstate(divide="ignore", invalid="ignore"):
        return (points[:, 0] + 1j * points[:, 1]) / (1.0 + points[:, 2])


def ray_phases(n: int) -> np.ndarray:
    """Phases phi_k = arg(Delta w_k) labelling the geodesic star curves.

    w_k = exp(2 pi i k/(n-1)) and Delta is an (n-1)-th root of prod w_k.
    For odd n, prod w_k = -1 and Delta = exp(i pi/(n-1)); every root of -1
    puts the stars at the same directions. For even n, prod w_k = 1 and
    Delta = exp(-i pi (n-2)/(n-1)), which puts the self-dual curve (phase 0)
    at index (n-2)/2.
    """
    m = n - 1
    delta = math.pi / m if m % 2 == 0 else -math.pi * (m - 1) / m
    return np.array([wrap_phase(delta + 2.0 * math.pi * k / m) for k in range(m)])


def dual_pairs(n: int) -> Tuple[List[Tuple[int, int]], Optional[int]]:
    """Dual curve pairs (i, j) with phi_i + phi_j = 0 mod 2 pi.

    With the labels of :func:`ray_phases` this is i + j = n - 2 mod (n - 1)
    for either parity; for even n curve (n-2)/2 is self-dual on the great
    circle. For odd n, i + j = 0 mod (n - 1) cannot hold: phi_i + phi_j is an
    odd multiple of pi/(n-1) for every choice of Delta.

    Returns:
        (pairs, self_dual index or None)
    """
    phases = ray_phases(n)
    pairs: List[Tuple[int, int]] = []
    self_dual = None
    for i in range(len(phases)):
        for j in range(i, len(phases)):
            if abs(wrap_phase(phases[i] + phases[j])) < 1e-9:
                if i == j:
                    self_dual = i
                else:
                    pairs.append((i, j))
    return pairs, self_dual


class StarGeometryService:
    """Service for Majorana-star geometry of geodesics and null phase curves."""

    def __init__(self):
        """Initialize star geometry service."""
        settings = get_settings()
        self.samples = settings.CURVE_SAMPLES
        self.numkit = get_numkit_service()

    # -- stars -------------------------------------------------------------

    def majorana_coefficients(self, c: Sequence[complex]) -> np.ndarray:
        """Descending polynomial coefficients f_r = (-1)^r c_r/sqrt(r!(m-r)!)."""
        c = _unit(c)
        m = c.size - 1
        r = np.arange(m + 1)
        return (-1.0) ** r * c / np.sqrt(factorial(r) * factorial(m - r))

    def state_to_stars(self, c: Sequence[complex]) -> StarSet:
        """Majorana stars of a state.

        Roots are taken with clustering from numkit; a state whose stars all
        coincide is recognised through the mean root and returned exactly.

        Args:
            c: State coefficients, at least two levels

        Returns:
            StarSet of size len(c) - 1

        Raises:
            ValidationException: If the vector is zero or one-dimensional
        """
        c = _unit(c)
        m = c.size - 1
        if m < 1:
            raise ValidationException("A state needs at least two levels to have stars")
        f = self.majorana_coefficients(c)

        degenerate = self._degenerate_star(c, f)
        if degenerate is not None:
            star, infinite = degenerate
            return StarSet(stars=np.tile(star, (m, 1)), at_infinity=np.full(m, infinite))

        root_set = self.numkit.poly_roots(f)
        finite = root_set.finite_multiset()
        stars = [np.array([1.0, x]) / math.sqrt(1.0 + abs(x) ** 2) for x in finite]
        stars += [np.array([0.0, 1.0], dtype=complex)] * root_set.infinite
        flags = [False] * len(finite) + [True] * root_set.infinite
        return StarSet(stars=np.asarray(stars, dtype=complex), at_infinity=np.asarray(flags))

    def _degenerate_star(
        self, c: np.ndarray, f: np.ndarray
    ) -> Optional[Tuple[np.ndarray, bool]]:
        m = c.size - 1
        if abs(f[0]) <= 1e-14 * np.max(np.abs(f)):
            if np.allclose(c[:-1], 0.0, atol=1e-14):
                return np.array([0.0, 1.0], dtype=complex), True
            return None
        if m == 1:
            return None
        mean_root = -f[1] / (m * f[0])
        star = np.array([1.0, mean_root]) / math.sqrt(1.0 + abs(mean_root) ** 2)
        fidelity = abs(np.vdot(coherent_state(star, m), c))
        if fidelity > 1.0 - DEGENERATE_FIDELITY:
            return star.astype(complex), False
        return None

    def stars_to_state(self, stars: StarsLike) -> np.ndarray:
        """Normalized symmetrized product of the stars (global phase free)."""
        arr = stars.stars if isinstance(stars, StarSet) else np.asarray(stars, dtype=complex)
        arr = np.asarray(arr, dtype=complex).reshape(-1, 2)
        if len(arr) == 0:
            raise ValidationException("Empty star set")
        poly = np.array([1.0 + 0.0j])
        for a, b in arr:
            poly = np.convolve(poly, [a, b])
        state = poly / np.sqrt(_binomials(len(arr)))
        return _unit(state)

    def rotate_state(self, c: Sequence[complex], u: np.ndarray) -> np.ndarray:
        """Apply a qubit unitary to every star of a state."""
        stars = self.state_to_stars(c).stars
        return self.stars_to_state(stars @ np.asarray(u, dtype=complex).T)

    # -- geodesics ---------------------------------------------------------

    def geodesic(
        self, psi1: Sequence[complex], psi2: Sequence[complex], samples: Optional[int] = None
    ) -> PureCurve:
        """Geodesic between two nonorthogonal states.

        psi2 is rephased so that <psi1|psi2> = cos(theta) is real positive,
        then |Psi(s)> = cos s |psi1> + sin s (|psi2> - xi |psi1>)/sqrt(1 - xi^2)
        for s in [0, theta].

        Raises:
            ValidationException: If the endpoints are orthogonal
        """
        samples = samples or self.samples
        if samples < 2:
            raise ValidationException("A geodesic needs at least two samples")
        psi1, psi2 = _unit(psi1), _unit(psi2)
        if psi1.size != psi2.size:
            raise ValidationException("Endpoints have different dimensions")
        overlap = np.vdot(psi1, psi2)
        xi = abs(overlap)
        if xi <= ORTHOGONAL_TOL:
            raise ValidationException("Orthogonal endpoints, the geodesic is not unique")

        if xi >= 1.0 - 1e-15:
            logger.debug("identical endpoints, constant geodesic")
            return PureCurve(params=np.zeros(samples), states=np.tile(psi1, (samples, 1)))

        theta = math.acos(xi)
        perp = (psi2 * np.exp(-1j * np.angle(overlap)) - xi * psi1) / math.sqrt(1.0 - xi**2)
        s = np.linspace(0.0, theta, samples)
        states = np.outer(np.cos(s), psi1) + np.outer(np.sin(s), perp)
        return PureCurve.from_states(s, states)

    @staticmethod
    def canonical_endpoints(n: int, theta: float) -> Tuple[np.ndarray, np.ndarray]:
        """Degenerate-star endpoints |0>^(n-1) and |phi>^(n-1), overlap cos(theta).

        |phi> = (alpha, beta) with alpha = cos(theta)^(1/(n-1)).
        """
        if n < 2:
            raise ValidationException("Dimension must be at least two")
        if not 0.0 <= theta < math.pi / 2:
            raise ValidationException("theta must lie in [0, pi/2)")
        m = n - 1
        alpha = math.cos(theta) ** (1.0 / m)
        beta = math.sqrt(max(0.0, 1.0 - alpha**2))
        psi1 = np.zeros(n, dtype=complex)
        psi1[0] = 1.0
        return psi1, coherent_state([alpha, beta], m)

    @staticmethod
    def geodesic_radius(n: int, theta: float, k: int) -> float:
        """Radius of the k-th star circle, 2b/sqrt(4b^2 - a^2 (conj(Dw) - Dw)^2)."""
        m = n - 1
        if not 0 <= k < m:
            raise ValidationException(f"Curve index {k} outside [0, {m})")
        alpha = math.cos(theta) ** (1.0 / m)
        beta = math.sqrt(max(0.0, 1.0 - alpha**2))
        if beta == 0.0:
            return 0.0
        z = np.exp(1j * ray_phases(n)[k])
        denom = 4.0 * beta**2 - alpha**2 * (np.conj(z) - z) ** 2
        return float(2.0 * beta / math.sqrt(float(np.real(denom))))

    @staticmethod
    def circle_fit(points: np.ndarray) -> CircleFit:
        """Fit the plane circle through sphere points.

        The plane normal is the least-variance direction of the centred
        points; for points on the unit sphere the circle center is d m with
        d = <p.m>.
        """
        points = np.asarray(points, dtype=float)
        mean = points.mean(axis=0)
        spread = points - mean
        if np.max(np.linalg.norm(spread, axis=1)) < 1e-14:
            normal = mean / np.linalg.norm(mean)
            return CircleFit(
                center=points[0].copy(),
                normal=normal,
                radius=0.0,
                plane_residual=0.0,
                radius_residual=0.0,
            )
        _, _, vt = np.linalg.svd(spread)
        normal = vt[-1]
        heights = points @ normal
        d = float(np.mean(heights))
        if d < 0.0:
            normal, heights, d = -normal, -heights, -d
        center = d * normal
        dist = np.linalg.norm(points - center, axis=1)
        radius = float(np.mean(dist))
        return CircleFit(
            center=center,
            normal=normal,
            radius=radius,
            plane_residual=float(np.max(np.abs(heights - d))),
            radius_residual=float(np.max(np.abs(dist - radius))),
        )

    @staticmethod
    def _canonical_frame(b1: np.ndarray, b2: np.ndarray) -> np.ndarray:
        """Rotation taking b1 to +z and b2 into the xz-plane with x >= 0."""
        ez = b1 / np.linalg.norm(b1)
        ex = b2 - np.dot(b2, ez) * ez
        if np.linalg.norm(ex) < 1e-12:
            trial = np.array([1.0, 0.0, 0.0]) if abs(ez[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
            ex = trial - np.dot(trial, ez) * ez
        ex = ex / np.linalg.norm(ex)
        ey = np.cross(ez, ex)
        return np.vstack([ex, ey, ez])

    def _endpoint_star(self, psi: np.ndarray, name: str) -> np.ndarray:
        bloch = star_bloch_vectors(self.state_to_stars(psi))
        if np.max(np.linalg.norm(bloch - bloch[0], axis=1)) > STAR_MATCH_TOL:
            raise ValidationException(
                f"Endpoint {name} does not have a fully degenerate star",
                details={"spread": float(np.max(np.linalg.norm(bloch - bloch[0], axis=1)))},
            )
        return bloch[0]

    def geodesic_decompose(
        self,
        psi1: Sequence[complex],
        psi2: Sequence[complex],
        samples: Optional[int] = None,
        jump_ratio: float = 0.5,
    ) -> GeodesicDecomposition:
        """Split a geodesic between degenerate-star states into star circles.

        Stars are computed per sample and rotated into the canonical frame.
        At the first interior sample every star is labelled by the nearest
        ray phase phi_k; afterwards stars are carried along by minimal-distance
        bipartite matching against the previous sample, rescaled about the
        nearer degenerate endpoint.

        Args:
            psi1: Start state, all stars coincident
            psi2: End state, all stars coincident, nonorthogonal to psi1
            samples: Samples along the geodesic (at least 3)
            jump_ratio: Largest allowed distance from the rescaled previous
                position, relative to half the smallest star separation

        Returns:
            GeodesicDecomposition in the canonical frame

        Raises:
            ValidationException: If an endpoint is not degenerate
            TrackingException: If a matching step exceeds ``jump_ratio``
        """
        samples = samples or self.samples
        if samples < 3:
            raise ValidationException("Decomposition needs at least three samples")
        psi1, psi2 = _unit(psi1), _unit(psi2)
        n = psi1.size
        m = n - 1
        if m < 1:
            raise ValidationException("Dimension must be at least two")

        curve = self.geodesic(psi1, psi2, samples)
        b1 = self._endpoint_star(psi1, "psi1")
        b2 = self._endpoint_star(psi2, "psi2")
        frame = self._canonical_frame(b1, b2)
        xi = min(1.0, abs(np.vdot(psi1, psi2)))
        theta = 0.0 if xi >= 1.0 - 1e-15 else math.acos(xi)
        alpha = xi ** (1.0 / m)
        labels = ray_phases(n)
        pairing, self_dual = dual_pairs(n)
        logger.debug("decomposing geodesic", n=n, theta=theta, samples=samples)

        raw = np.array([star_bloch_vectors(self.state_to_stars(s)) for s in curve.states])
        raw = raw @ frame.T

        tracked = np.empty_like(raw)
        tracked[0] = raw[0]
        if theta == 0.0:
            tracked[:] = raw[0]
            worst = 0.0
        else:
            phases = np.angle(stereographic(raw[1]))
            cost = np.abs(
                np.vectorize(wrap_phase)(phases[:, np.newaxis] - labels[np.newaxis, :])
            )
            rows, cols = linear_sum_assignment(cost)
            order = np.empty(m, dtype=int)
            order[cols] = rows
            tracked[1] = raw[1][order]
            worst = self._track(raw, tracked, jump_ratio)

        curves = [BlochCurve(params=curve.params, points=tracked[:, k]) for k in range(m)]
        radii = np.array([self.geodesic_radius(n, theta, k) for k in range(m)])
        fits = [self.circle_fit(c.points) for c in curves]
        return GeodesicDecomposition(
            theta=theta,
            alpha=alpha,
            curves=curves,
            labels=labels,
            pairing=pairing,
            self_dual=self_dual,
            radii=radii,
            fits=fits,
            frame=frame,
            max_jump_ratio=worst,
        )

    @staticmethod
    def _track(raw: np.ndarray, tracked: np.ndarray, jump_ratio: float) -> float:
        """Continue labelled stars by bipartite matching; returns the worst step ratio.

        Stars leave and reach the degenerate endpoints as t^(1/(n-1)), so each
        previous position is first rescaled about the nearer endpoint. The jump
        is the distance from that prediction, over half the predicted separation.
        """
        m = raw.shape[1]
        last = len(raw) - 1
        worst = 0.0
        for i in range(2, len(raw)):
            anchor = raw[0, 0] if 2 * i <= last else raw[-1, 0]
            offsets = tracked[i - 1] - anchor
            before = float(np.mean(np.linalg.norm(offsets, axis=1)))
            after = float(np.mean(np.linalg.norm(raw[i] - anchor, axis=1)))
            scale = after / before if before > 1e-12 else 1.0
            predicted = anchor + scale * offsets

            distance = cdist(predicted, raw[i])
            rows, cols = linear_sum_assignment(distance)
            tracked[i] = raw[i][cols[np.argsort(rows)]]
            if m < 2:
                continue
            sep_pred = float(np.min(pdist(predicted)))
            sep_next = float(np.min(pdist(tracked[i])))
            if min(sep_pred, sep_next) <= 1e-9:
                continue
            step = float(np.max(distance[rows, cols]))
            ratio = step / (0.5 * sep_pred)
            worst = max(worst, ratio)
            if ratio > jump_ratio:
                logger.error("star tracking jump", sample=i, ratio=ratio)
                raise TrackingException(
                    "Star tracking step exceeds tolerance",
                    details={"sample": i, "ratio": ratio, "tolerance": jump_ratio},
                )
        return worst

    # -- null phase curves -------------------------------------------------

    def degenerate_mapping_unitary(
        self, psi1: Sequence[complex], psi2: Sequence[complex]
    ) -> np.ndarray:
        """Qutrit unitary taking (psi1, psi2) to the degenerate-star pair.

        U psi1 = (1, 0, 0) and U psi2 = (alpha^2, sqrt(2) alpha beta, beta^2)
        once the overlap is real positive, alpha^2 = cos(theta).

        Raises:
            ValidationException: If the states are not qutrits or orthogonal
        """
        psi1, psi2 = _unit(psi1), _unit(psi2)
        if psi1.size != 3 or psi2.size != 3:
            raise ValidationException("Degenerate mapping is defined for qutrits")
        overlap = np.vdot(psi1, psi2)
        xi = abs(overlap)
        if xi <= ORTHOGONAL_TOL:
            raise ValidationException("Orthogonal pair has no degenerate mapping")
        if xi >= 1.0 - 1e-15:
            return self._completion(psi1)

        sin_theta = math.sqrt(1.0 - xi**2)
        perp = (psi2 * np.exp(-1j * np.angle(overlap)) - xi * psi1) / sin_theta
        third = np.conj(np.cross(psi1, perp))
        third = third / np.linalg.norm(third)
        stage_one = np.vstack([psi1.conj(), perp.conj(), third.conj()])

        alpha = math.sqrt(xi)
        beta = math.sqrt(1.0 - xi)
        a = math.sqrt(2.0) * alpha * beta / sin_theta
        b = beta**2 / sin_theta
        stage_two = np.array([[1.0, 0.0, 0.0], [0.0, a, -b], [0.0, b, a]], dtype=complex)
        return stage_two @ stage_one

    @staticmethod
    def _completion(psi: np.ndarray) -> np.ndarray:
        basis = np.linalg.qr(np.column_stack([psi, np.eye(3, dtype=complex)]))[0]
        basis[:, 0] = psi
        return basis.conj().T

    def npc_from_dual_curves(
        self,
        params: Sequence[float],
        eta: Sequence[float],
        gamma: Sequence[float],
        theta: float,
        unitary: Optional[np.ndarray] = None,
    ) -> PureCurve:
        """Qutrit curve whose two stars are the dual pair (eta, +-gamma).

        |psi> = (cos(eta/2), e^{i gamma} sin(eta/2)) and its mirror
        |psi'> with -gamma are symmetrized into
        N (cos^2(eta/2), sqrt(2) cos(eta/2) sin(eta/2) cos(gamma), sin^2(eta/2)),
        then mapped back with U^dagger when ``unitary`` is given.

        Raises:
            ValidationException: If the boundary conditions
                eta(s1) = 0, eta(s2) = 2 acos(alpha), gamma(s1) = gamma(s2) = 0
                do not hold
        """
        params = np.asarray(params, dtype=float)
        eta = np.asarray(eta, dtype=float)
        gamma = np.asarray(gamma, dtype=float)
        if not (len(params) == len(eta) == len(gamma)):
            raise ValidationException("params, eta and gamma must have equal length")
        alpha = math.sqrt(math.cos(theta))
        target = 2.0 * math.acos(alpha)
        violations = {
            "eta_start": abs(eta[0]),
            "eta_end": abs(eta[-1] - target),
            "gamma_start": abs(wrap_phase(gamma[0])),
            "gamma_end": abs(wrap_phase(gamma[-1])),
        }
        bad = {k: v for k, v in violations.items() if v > BOUNDARY_TOL}
        if bad:
            raise ValidationException("Dual-curve boundary conditions violated", details=bad)

        c, s = np.cos(eta / 2.0), np.sin(eta / 2.0)
        states = np.column_stack(
            [c**2, math.sqrt(2.0) * c * s * np.cos(gamma), s**2]
        ).astype(complex)
        if unitary is not None:
            states = states @ np.asarray(unitary, dtype=complex).conj()
        return PureCurve.from_states(params, states)

    @staticmethod
    def _default_g(theta: float) -> Callable[[np.ndarray], np.ndarray]:
        return lambda s: np.cos(s * (s - theta))

    def npc_family_one(
        self,
        theta: float,
        samples: Optional[int] = None,
        g: Optional[Callable[[np.ndarray], np.ndarray]] = None,
    ) -> PureCurve:
        """NPC (g cos s, g sin s, sqrt(1 - g^2)) from (1,0,0) to (cos t, sin t, 0)."""
        return self.npc_family_two(theta, 0.0, samples, g)

    def npc_family_two(
        self,
        theta: float,
        chi: float,
        samples: Optional[int] = None,
        g: Optional[Callable[[np.ndarray], np.ndarray]] = None,
    ) -> PureCurve:
        """The first family with the third amplitude multiplied by e^{i chi}."""
        samples = samples or self.samples
        g = g or self._default_g(theta)
        s = np.linspace(0.0, theta, samples)
        gs = np.clip(g(s), 0.0, 1.0)
        states = np.column_stack(
            [gs * np.cos(s), gs * np.sin(s), np.exp(1j * chi) * np.sqrt(1.0 - gs**2)]
        )
        return PureCurve.from_states(s, states)

    def npc_dual_angles(
        self,
        theta: float,
        s: Sequence[float],
        g: Optional[Callable[[np.ndarray], np.ndarray]] = None,
    ) -> Tuple[np.ndarray, np.ndarray]:
        """eta(s), gamma(s) whose dual pair regenerates the first NPC family.

        With A = g cos s, B = b sqrt(1-g^2) - a g sin s and
        C = a sqrt(1-g^2) + b g sin s: eta = acos((A-C)/(A+C)) and
        cos(gamma) = -B/sqrt(2AC).

        Raises:
            ValidationException: If 2AC < B^2 somewhere, i.e. the stars are
                not a mirror pair at that point
        """
        s = np.asarray(s, dtype=float)
        g = g or self._default_g(theta)
        gs = np.clip(g(s), 0.0, 1.0)
        root = np.sqrt(1.0 - gs**2)
        alpha2 = math.cos(theta)
        sin_theta = math.sin(theta)
        a = math.sqrt(2.0 * alpha2 * (1.0 - alpha2)) / sin_theta
        b = (1.0 - alpha2) / sin_theta
        big_a = gs * np.cos(s)
        big_b = b * root - a * gs * np.sin(s)
        big_c = a * root + b * gs * np.sin(s)
        disc = 2.0 * big_a * big_c - big_b**2
        if np.min(disc) < -BOUNDARY_TOL:
            raise ValidationException(
                "Curve stars are not a mirror pair", details={"min": float(np.min(disc))}
            )
        eta = np.arccos(np.clip((big_a - big_c) / (big_a + big_c), -1.0, 1.0))
        # + 0.0 turns -0.0 into 0.0 so gamma is 0, not pi, where B vanishes
        gamma = np.arctan2(np.sqrt(np.maximum(disc, 0.0)), -big_b + 0.0)
        return eta, gamma

    def npc_check(self, curve: PureCurve, points: int = 20) -> NpcCheck:
        """Scan Delta_3 over every triple of up to ``points`` evenly spaced samples.

        Raises:
            ValidationException: If two scanned samples are orthogonal
        """
        idx = np.unique(np.linspace(0, len(curve) - 1, min(points, len(curve))).round())
        states = curve.states[idx.astype(int)]
        gram = states.conj() @ states.T
        if np.min(np.abs(gram)) <= ORTHOGONAL_TOL:
            raise ValidationException("Orthogonal samples on the curve")
        delta = np.einsum("ij,jk,ki->ijk", gram, gram, gram)
        k = len(states)
        i, j, l = np.meshgrid(np.arange(k), np.arange(k), np.arange(k), indexing="ij")
        mask = (i < j) & (j < l)
        values = delta[mask]
        if values.size == 0:
            return NpcCheck(is_null_phase=True, min_real=1.0, max_imag=0.0, triples=0)
        min_real = float(np.min(values.real))
        max_imag = float(np.max(np.abs(values.imag)))
        return NpcCheck(
            is_null_phase=min_real > 1e-10 and max_imag < 1e-9,
            min_real=min_real,
            max_imag=max_imag,
            triples=int(values.size),
        )


_star_geometry_service = None


def get_star_geometry_service() -> StarGeometryService:
    """Get star geometry service instance (singleton pattern)."""
    global _star_geometry_service
    if _star_geometry_service is None:
        _star_geometry_service = StarGeometryService()
    return _star_geometry_service
