"""
Geometric-phase services for pure and mixed states.

Bargmann invariants, the kinematic phase of sampled curves, the
interferometric and non-unitary mixed-state phases, the qubit Uhlmann
phase and weak values with their pointer readouts.
"""

import math
from typing import Optional, Sequence, Tuple

import numpy as np
import scipy.linalg
from scipy.integrate import trapezoid

from ...core.config import get_settings
from ...core.logging import get_logger
from ...shared.exceptions import ServiceException, ValidationException
from ...shared.utils import wrap_phase
from ..numkit.services import PAULI
from .schemas import (
    DensityTrajectory,
    MixedPhaseResult,
    PointerReadout,
    PureCurve,
    UhlmannResult,
)

logger = get_logger(__name__)

WEIGHT_TOL = 1e-12
VISIBILITY_TOL = 1e-14
DEGENERATE_PURITY = 1e-6


def bloch_state(n: Sequence[float]) -> np.ndarray:
    """Qubit state whose Bloch vector is ``n`` (normalized internally)."""
    n = np.asarray(n, dtype=float)
    n = n / np.linalg.norm(n)
    theta = math.acos(max(-1.0, min(1.0, n[2])))
    phi = math.atan2(n[1], n[0])
    return np.array(
        [math.cos(theta / 2.0), np.exp(1j * phi) * math.sin(theta / 2.0)], dtype=complex
    )


def bloch_vector(psi: np.ndarray) -> np.ndarray:
    """Bloch vector of a qubit state."""
    psi = np.asarray(psi, dtype=complex)
    psi = psi / np.linalg.norm(psi)
    return np.array([np.real(np.vdot(psi, s @ psi)) for s in PAULI])


def sigma_dot(n: Sequence[float]) -> np.ndarray:
    """n . sigma for a real 3-vector."""
    n = np.asarray(n, dtype=float)
    return n[0] * PAULI[0] + n[1] * PAULI[1] + n[2] * PAULI[2]


def qubit_density(r: float, n: Sequence[float]) -> np.ndarray:
    """(1 + r n.sigma)/2 for a unit vector n."""
    n = np.asarray(n, dtype=float)
    return 0.5 * (np.eye(2) + r * sigma_dot(n / np.linalg.norm(n)))


class GeometricPhaseService:
    """Service for geometric-phase computations."""

    def __init__(self):
        """Initialize geometric phase service."""
        self.samples = get_settings().CURVE_SAMPLES

    # -- pure states -------------------------------------------------------

    @staticmethod
    def _unit_rows(states: Sequence[np.ndarray]) -> np.ndarray:
        arr = np.asarray([np.asarray(s, dtype=complex).ravel() for s in states])
        norms = np.linalg.norm(arr, axis=1)
        if np.any(norms == 0.0):
            raise ValidationException("Zero state vector")
        return arr / norms[:, np.newaxis]

    def bargmann(self, states: Sequence[np.ndarray]) -> complex:
        """Cyclic product of overlaps <Psi_1|Psi_2><Psi_2|Psi_3>...<Psi_n|Psi_1>.

        Args:
            states: n >= 2 state vectors of a common dimension

        Returns:
            The Bargmann invariant Delta_n

        Raises:
            ValidationException: If fewer than two states are given or
                cyclic neighbours are orthogonal
        """
        if len(states) < 2:
            raise ValidationException("Bargmann invariant needs at least two states")
        arr = self._unit_rows(states)
        overlaps = np.sum(arr.conj() * np.roll(arr, -1, axis=0), axis=1)
        if np.min(np.abs(overlaps)) <= 1e-12:
            raise ValidationException(
                "Orthogonal neighbouring states, Bargmann invariant has no argument",
                details={"min_overlap": float(np.min(np.abs(overlaps)))},
            )
        return complex(np.prod(overlaps))

    def gp_discrete(self, states: Sequence[np.ndarray]) -> float:
        """Geometric phase -arg Delta_n on the principal branch."""
        return wrap_phase(-float(np.angle(self.bargmann(states))))

    def gp_curve(self, curve: PureCurve, method: str = "overlap") -> float:
        """Kinematic geometric phase of an open sampled curve.

        ``overlap`` sums arguments of neighbouring overlaps and is exactly
        gauge invariant on the samples; ``trapezoid`` integrates
        Im<Psi|dPsi/ds> with centred differences.

        Raises:
            ValidationException: If the endpoints are orthogonal or the
                method is unknown
        """
        states = curve.states
        endpoint = np.vdot(states[0], states[-1])
        if abs(endpoint) <= 1e-12:
            raise ValidationException("Orthogonal endpoints, geometric phase undefined")
        total = float(np.angle(endpoint))

        if method == "overlap":
            overlaps = np.sum(states[:-1].conj() * states[1:], axis=1)
            dynamical = float(np.sum(np.angle(overlaps)))
        elif method == "trapezoid":
            derivative = np.gradient(states, curve.params, axis=0)
            connection = np.imag(np.sum(states.conj() * derivative, axis=1))
            dynamical = float(trapezoid(connection, curve.params))
        else:
            raise ValidationException(f"Unknown curve phase method '{method}'")
        return wrap_phase(total - dynamical)

    @staticmethod
    def strackee_solid_angle(
        n1: Sequence[float], n2: Sequence[float], n3: Sequence[float]
    ) -> float:
        """Signed solid angle of the geodesic triangle spanned by three unit vectors."""
        a, b, c = (np.asarray(v, dtype=float) / np.linalg.norm(v) for v in (n1, n2, n3))
        num = float(np.dot(a, np.cross(b, c)))
        den = 1.0 + float(np.dot(a, b) + np.dot(a, c) + np.dot(b, c))
        return 2.0 * math.atan2(num, den)

    # -- mixed states, unitary evolution -----------------------------------

    def gp_mixed_unitary(
        self, rho0: np.ndarray, upath: Sequence[np.ndarray]
    ) -> MixedPhaseResult:
        """Interferometric mixed-state phase of a sampled unitary path.

        arg sum_k w_k <k|U(T)|k> exp(-int <k|U^dag dU/dtau|k> dtau), with the
        connection integral summed as diagonal elements of log(U_i^dag U_{i+1}).

        Args:
            rho0: Initial density matrix
            upath: Unitaries U(tau_i) with U(tau_0) = 1

        Raises:
            ValidationException: If U(0) is not the identity
            ServiceException: If the total visibility vanishes
        """
        rho0 = np.asarray(rho0, dtype=complex)
        us = np.asarray(upath, dtype=complex)
        d = rho0.shape[0]
        if not np.allclose(us[0], np.eye(d), atol=1e-10):
            raise ValidationException("Unitary path must start at the identity")

        w, vecs = scipy.linalg.eigh(rho0)
        w, vecs = w[::-1], vecs[:, ::-1]
        degenerate = bool(np.min(np.abs(np.diff(w))) < DEGENERATE_PURITY) if d > 1 else False
        if degenerate:
            logger.warning("Degenerate initial spectrum, using the computational eigenbasis")
            vecs = np.eye(d, dtype=complex)
            w = np.real(np.diag(rho0))

        connection = np.zeros(d, dtype=complex)
        for u_a, u_b in zip(us[:-1], us[1:]):
            step = scipy.linalg.logm(u_a.conj().T @ u_b)
            connection += np.einsum("ik,ij,jk->k", vecs.conj(), step, vecs)

        final = np.einsum("ik,ij,jk->k", vecs.conj(), us[-1], vecs)
        total = np.sum(w * final * np.exp(-connection))
        visibility = abs(total)
        if visibility <= VISIBILITY_TOL:
            raise ServiceException("Zero total visibility, mixed-state phase undefined")
        note = "initial state is maximally mixed" if degenerate else None
        return MixedPhaseResult(
            phase=wrap_phase(float(np.angle(total))),
            visibility=visibility,
            degenerate=degenerate,
            note=note,
        )

    @staticmethod
    def precession_path(
        theta: float, r: float, samples: int, omega: float = 1.0
    ) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Spin-1/2 precession about z for one full period.

        Returns:
            (times, rho0, unitaries) with rho0 = (1 + r n.sigma)/2,
            n = (sin theta, 0, cos theta) and U(t) = exp(-i omega t sigma_z/2)
        """
        times = np.linspace(0.0, 2.0 * math.pi / omega, samples)
        rho0 = qubit_density(r, (math.sin(theta), 0.0, math.cos(theta)))
        phases = np.exp(-0.5j * omega * times)
        us = np.zeros((samples, 2, 2), dtype=complex)
        us[:, 0, 0] = phases
        us[:, 1, 1] = phases.conj()
        return times, rho0, us

    @staticmethod
    def mixed_precession_gp(r: float, theta: float) -> float:
        """Closed form arctan[r tan(pi cos theta)], defined modulo pi."""
        return math.atan(r * math.tan(math.pi * math.cos(theta)))

    # -- mixed states, non-unitary evolution -------------------------------

    def density_trajectory(
        self, times: Sequence[float], rhos: Sequence[np.ndarray]
    ) -> DensityTrajectory:
        """Eigendecompose density matrices along a trajectory.

        Eigenvalues are ordered descending. Eigenvector phases are fixed so
        that neighbouring overlaps are real and positive.

        Raises:
            ValidationException: If a matrix is not Hermitian with unit
                trace and eigenvalues in [0, 1]
        """
        times = np.asarray(times, dtype=float)
        rho = np.asarray(rhos, dtype=complex)
        if rho.ndim != 3 or rho.shape[0] != len(times) or rho.shape[1] != rho.shape[2]:
            raise ValidationException("rho must have shape (len(times), d, d)")
        if np.any(np.diff(times) < 0):
            raise ValidationException("times must be ascending")
        if not np.allclose(rho, np.conj(np.transpose(rho, (0, 2, 1))), atol=1e-12):
            raise ValidationException("Density matrices must be Hermitian")
        traces = np.real(np.trace(rho, axis1=1, axis2=2))
        if np.max(np.abs(traces - 1.0)) > 1e-12:
            raise ValidationException("Density matrices must have unit trace")

        w, v = np.linalg.eigh(rho)
        w, v = w[:, ::-1], v[:, :, ::-1]
        if np.min(w) < -1e-12 or np.max(w) > 1.0 + 1e-12:
            raise ValidationException("Eigenvalues outside [0, 1]")

        # deterministic gauge at tau_0, then parallel transport
        first = v[0]
        pivot = np.argmax(np.abs(first), axis=0)
        first = first * np.exp(-1j * np.angle(first[pivot, np.arange(first.shape[1])]))
        v[0] = first
        for i in range(1, len(times)):
            ov = np.sum(v[i - 1].conj() * v[i], axis=0)
            v[i] = v[i] * np.exp(-1j * np.angle(ov))[np.newaxis, :]
        return DensityTrajectory(times=times, rho=rho, eigenvalues=w, eigenvectors=v)

    def gp_mixed_nonunitary(self, traj: DensityTrajectory) -> float:
        """Non-unitary mixed-state phase from instantaneous eigenpairs.

        arg sum_k sqrt(p_k(0) p_k(T)) <phi_k(0)|phi_k(T)> exp(-int <phi_k|dphi_k>),
        dropping eigenvectors with p_k(0) below 1e-12.

        Raises:
            ServiceException: If every weight vanishes
        """
        p0, pt = traj.eigenvalues[0], traj.eigenvalues[-1]
        v = traj.eigenvectors
        total = 0.0 + 0.0j
        kept = 0
        for k in range(v.shape[2]):
            if p0[k] < WEIGHT_TOL:
                continue
            branch = v[:, :, k]
            overlaps = np.sum(branch[:-1].conj() * branch[1:], axis=1)
            transport = np.exp(-1j * np.sum(np.angle(overlaps)))
            weight = math.sqrt(max(p0[k], 0.0) * max(pt[k], 0.0))
            total += weight * np.vdot(branch[0], branch[-1]) * transport
            kept += 1
        if kept == 0 or abs(total) <= VISIBILITY_TOL:
            raise ServiceException("All eigenvalue weights vanish, phase undefined")
        return wrap_phase(float(np.angle(total)))

    @staticmethod
    def dephasing_rho(theta0: float, eta: float, lam: float, t: np.ndarray) -> np.ndarray:
        """Dephasing qubit precessing at eta with coherence decay lam."""
        c, s = math.cos(theta0), math.sin(theta0)
        t = np.asarray(t, dtype=float)
        off = s * np.exp(-1j * eta * t - lam * t)
        rho = np.zeros((len(t), 2, 2), dtype=complex)
        rho[:, 0, 0] = 1.0 + c
        rho[:, 1, 1] = 1.0 - c
        rho[:, 0, 1] = off
        rho[:, 1, 0] = off.conj()
        return 0.5 * rho

    def dephasing_trajectory(
        self, theta0: float, eta: float, lam: float, samples: Optional[int] = None
    ) -> DensityTrajectory:
        """Trajectory of the dephasing qubit over one period 2 pi / eta."""
        samples = samples or self.samples
        t = np.linspace(0.0, 2.0 * math.pi / eta, samples)
        return self.density_trajectory(t, self.dephasing_rho(theta0, eta, lam, t))

    @staticmethod
    def dephasing_gp_exact(theta0: float, eta: float, lam: float) -> float:
        """Closed-form non-unitary phase of the dephasing qubit over one period."""
        c, s = math.cos(theta0), math.sin(theta0)
        if lam == 0.0:
            return wrap_phase(-math.pi * (1.0 - c))
        big_s = math.sqrt(c * c + math.exp(-4.0 * math.pi * lam / eta) * s * s)
        ratio = ((1.0 - c) * (c + big_s)) / ((1.0 + c) * (big_s - c))
        return wrap_phase(-math.pi + eta / (4.0 * lam) * math.log(ratio))

    @staticmethod
    def dephasing_gp_first_order(theta0: float, eta: float, lam: float) -> float:
        """First order in lam/eta of the dephasing phase."""
        c, s = math.cos(theta0), math.sin(theta0)
        return -math.pi * (1.0 - c) + math.pi**2 * c * s * s * lam / eta

    # -- Uhlmann -----------------------------------------------------------

    def uhlmann_phase_qubit(self, r: float, n: Sequence[float], tau: float) -> UhlmannResult:
        """Closed-form Uhlmann phase of a qubit with n in the xz-plane.

        Numerator and denominator are multiplied by cos(tau/2) cos(tau~/2) so
        the arctangent stays finite across tangent poles.

        Raises:
            ValidationException: If r is outside [0, 1], n is not a unit
                vector with n_y = 0, or r |n_x| >= 1
        """
        n = np.asarray(n, dtype=float)
        if not 0.0 <= r <= 1.0:
            raise ValidationException(f"Purity r={r} outside [0, 1]")
        if abs(np.linalg.norm(n) - 1.0) > 1e-9 or abs(n[1]) > 1e-12:
            raise ValidationException("n must be a unit vector with n_y = 0")
        nx, nz = float(n[0]), float(n[2])
        k = 1.0 - r * r * nx * nx
        if k <= 0.0:
            raise ValidationException("r |n_x| must be below 1")
        if r < DEGENERATE_PURITY:
            logger.warning("Purity below 1e-6, Uhlmann phase reported as 0", r=r)

        root = math.sqrt(k)
        tau_t = tau * root
        nx_t = math.sqrt(1.0 - r * r) * nx / root
        nz_t = nz / root

        ca, sa = math.cos(tau / 2.0), math.sin(tau / 2.0)
        cb, sb = math.cos(tau_t / 2.0), math.sin(tau_t / 2.0)
        num = r * (nz_t * sb * ca - nz * sa * cb)
        den = ca * cb + (nz * nz_t + math.sqrt(1.0 - r * r) * nx * nx_t) * sa * sb

        continued = abs(ca) < 1e-12 or abs(cb) < 1e-12
        if abs(den) < 1e-15:
            value = math.copysign(math.pi / 2.0, num) if num != 0.0 else 0.0
            continued = True
        else:
            value = math.atan(num / den)
        if continued:
            logger.warning("Tangent pole continued in Uhlmann phase", tau=tau, r=r)
        return UhlmannResult(value=value, pole_continued=continued, denominator=den)

    # -- weak values -------------------------------------------------------

    @staticmethod
    def weak_value(pre: np.ndarray, post: np.ndarray, obs: np.ndarray) -> complex:
        """A_w = <post|A|pre> / <post|pre>.

        Raises:
            ValidationException: If pre- and post-selected states are orthogonal
        """
        pre = np.asarray(pre, dtype=complex)
        post = np.asarray(post, dtype=complex)
        denom = np.vdot(post, pre)
        if abs(denom) <= 1e-12 * np.linalg.norm(pre) * np.linalg.norm(post):
            raise ValidationException("Orthogonal pre- and post-selection")
        return complex(np.vdot(post, np.asarray(obs, dtype=complex) @ pre) / denom)

    @staticmethod
    def weak_value_pauli(
        q: Sequence[float], n: Sequence[float], m: Sequence[float]
    ) -> complex:
        """Closed-form weak value of q.sigma for pre Bloch n and post Bloch m."""
        q, n, m = (np.asarray(v, dtype=float) for v in (q, n, m))
        denom = 1.0 + float(np.dot(n, m))
        if abs(denom) <= 1e-12:
            raise ValidationException("Orthogonal pre- and post-selection")
        return complex(np.dot(q, n) + np.dot(q, m), np.dot(q, np.cross(n, m))) / denom

    @staticmethod
    def pointer_shifts(
        z: complex, kappa: float, sigma: float, hbar: float = 1.0
    ) -> Tuple[float, float]:
        """Gaussian pointer shifts (dq, dp) produced by weak value z."""
        return kappa * sigma**2 * z.imag, -hbar * kappa * z.real

    @staticmethod
    def gp_from_pointer(dq: float, dp: float, sigma: float, hbar: float = 1.0) -> float:
        """Phase of the weak value recovered from Gaussian pointer shifts.

        Returns arg z = atan2(hbar dq, -sigma^2 dp) for a positive coupling.

        Raises:
            ValidationException: If both shifts vanish
        """
        if dq == 0.0 and dp == 0.0:
            raise ValidationException("Both pointer shifts vanish, phase undefined")
        return math.atan2(hbar * dq, -(sigma**2) * dp)

    @staticmethod
    def pointer_expectation(
        q: Sequence[float], n: Sequence[float], m: Sequence[float], z: complex, kappa: float
    ) -> float:
        """First-order <q.sigma> of a qubit pointer with coupling axis n and Bloch m."""
        q, n, m = (np.asarray(v, dtype=float) for v in (q, n, m))
        return float(
            np.dot(q, m)
            + 2.0 * kappa * np.dot(np.cross(q, n), m) * z.real
            + 2.0 * kappa * (np.dot(q, n) - np.dot(n, m) * np.dot(q, m)) * z.imag
        )

    def qubit_pointer_readout(
        self,
        pre: np.ndarray,
        post: np.ndarray,
        obs: np.ndarray,
        n: Sequence[float],
        m: Sequence[float],
        kappa: float,
    ) -> PointerReadout:
        """Simulate a qubit pointer coupled through exp(-i kappa A (x) n.sigma).

        The pointer starts with Bloch vector m orthogonal to n. After
        post-selection, <(n x m).sigma> = 2 kappa Re A_w and
        <n.sigma> = 2 kappa Im A_w to first order in kappa.

        Raises:
            ValidationException: If m is not orthogonal to n
        """
        n = np.asarray(n, dtype=float) / np.linalg.norm(n)
        m = np.asarray(m, dtype=float) / np.linalg.norm(m)
        if abs(np.dot(n, m)) > 1e-9:
            raise ValidationException("Pointer Bloch vector must be orthogonal to n")
        pre = np.asarray(pre, dtype=complex) / np.linalg.norm(pre)
        post = np.asarray(post, dtype=complex) / np.linalg.norm(post)
        coupling = scipy.linalg.expm(
            -1j * kappa * np.kron(np.asarray(obs, dtype=complex), sigma_dot(n))
        )
        joint = coupling @ np.kron(pre, bloch_state(m))
        pointer = np.kron(post.conj(), np.eye(2)) @ joint
        norm = np.real(np.vdot(pointer, pointer))
        if norm <= 1e-24:
            raise ValidationException("Post-selection probability vanishes")

        def expect(axis: np.ndarray) -> float:
            return float(np.real(np.vdot(pointer, sigma_dot(axis) @ pointer)) / norm)

        rx = expect(np.cross(n, m))
        ry = expect(n)
        return PointerReadout(
            readout_x=rx,
            readout_y=ry,
            weak_value=complex(rx, ry) / (2.0 * kappa),
            kappa=kappa,
        )


# Singleton instance
_geophase_service = None


def get_geophase_service() -> GeometricPhaseService:
    """Get geometric phase service singleton instance."""
    global _geophase_service
    if _geophase_service is None:
        _geophase_service = GeometricPhaseService()
    return _geophase_service
