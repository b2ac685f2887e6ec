"""
Transition rates and geometric phase of a rotating atom in a cavity.

Density matrices use the (e, g) basis: the excited level is the first
component and the north pole of the Bloch sphere. The atom evolves under
H = (Omega/2) sigma_z plus a dissipator with Kossakowski coefficients
a11 = a22 = A, a12 = -iB, a21 = iB.
"""

import math
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy.integrate import solve_ivp

from ...core.config import get_settings
from ...core.logging import get_logger
from ...shared.exceptions import (
    ConvergenceException,
    ServiceException,
    ValidationException,
    ValidityException,
)
from ...shared.services.sweep_service import SweepService
from ..geophase.services import get_geophase_service
from ..numkit.services import PAULI, get_numkit_service
from .schemas import CavityParams, GpSplit, LindbladAB, RatePair, RateRow, Regime, zeta

logger = get_logger(__name__)

HIGH_RATIO = 10.0
LOW_RATIO = 0.1
VALIDITY_BOUND = 0.1
# first-order sideband weight of the high-rotation rates
SIDEBAND_HIGH = 9.0 / 20.0
# second-order Doppler weight of the low-rotation rates
DOPPLER_LOW = 2.0 / 5.0


def _check_q(Q: float) -> None:
    if Q <= 0.0:
        raise ValidationException(f"Quality factor must be positive, got {Q}")


def lorentzian_dos(omega_k, omega_c: float, Q: float):
    """Cavity mode density (omega_c/Q) / ((omega_c/Q)^2 + (omega_k - omega_c)^2).

    Normalized so that the peak value at omega_k = omega_c is Q/omega_c.

    Raises:
        ValidationException: If Q is not positive
    """
    _check_q(Q)
    width = omega_c / Q
    return width / (width**2 + (np.asarray(omega_k, dtype=float) - omega_c) ** 2)


def lorentzian_derivative(omega_k, omega_c: float, Q: float):
    """d rho / d omega_k of :func:`lorentzian_dos`."""
    _check_q(Q)
    width = omega_c / Q
    detuning = np.asarray(omega_k, dtype=float) - omega_c
    return -2.0 * width * detuning / (width**2 + detuning**2) ** 2


def kossakowski(A: float, B: float) -> np.ndarray:
    """Kossakowski matrix of the atomic dissipator in the Pauli basis."""
    a = np.zeros((3, 3), dtype=complex)
    a[0, 0] = a[1, 1] = A
    a[0, 1] = -1j * B
    a[1, 0] = 1j * B
    return a


def initial_density(theta: float) -> np.ndarray:
    """|psi><psi| for cos(theta/2)|e> + sin(theta/2)|g>."""
    psi = np.array([math.cos(theta / 2.0), math.sin(theta / 2.0)], dtype=complex)
    return np.outer(psi, psi.conj())


class CavityService:
    """Service for rotating-atom cavity computations."""

    def __init__(self):
        """Initialize cavity service."""
        settings = get_settings()
        self.samples = settings.CURVE_SAMPLES
        self.numkit = get_numkit_service()
        self.geophase = get_geophase_service()

    # -- rates -------------------------------------------------------------

    @staticmethod
    def regime(params: CavityParams) -> Regime:
        """Regime selected by omega / Omega0_bar.

        Raises:
            ValidationException: If the ratio lies between 0.1 and 10
        """
        ratio = params.omega / params.omega_bar
        if ratio > HIGH_RATIO:
            return Regime.HIGH
        if ratio < LOW_RATIO:
            return Regime.LOW
        logger.error("Rotation outside both regimes", ratio=ratio)
        raise ValidationException(
            f"omega / Omega0_bar = {ratio:.4g} is in neither the high (> 10) "
            "nor the low (< 0.1) rotation regime",
            details={"ratio": ratio},
        )

    def rates_high(self, params: CavityParams) -> LindbladAB:
        """Emission and absorption rates for omega >> Omega0_bar.

        Gamma_down = eta [rho(O0) O0 - (zeta/2) O0^2 rho'(O0) + (9/20) zeta w+ rho(w+)],
        Gamma_up = eta (9/20) zeta w- rho(w-), with w+- = omega +- Omega0_bar.
        Only rho(O0) O0 is independent of the rotation.

        Raises:
            ValidationException: If omega / Omega0_bar <= 10
        """
        if self.regime(params) != Regime.HIGH:
            raise ValidationException("rates_high needs omega / Omega0_bar > 10")
        p = params
        z = p.zeta

        def dos(w: float) -> float:
            return float(lorentzian_dos(w, p.omega_c, p.Q))

        inertial = p.eta * dos(p.Omega0) * p.Omega0
        curvature = -0.5 * z * p.Omega0**2 * float(
            lorentzian_derivative(p.Omega0, p.omega_c, p.Q)
        )
        down = p.eta * (curvature + SIDEBAND_HIGH * z * p.omega_plus * dos(p.omega_plus))
        up = p.eta * SIDEBAND_HIGH * z * p.omega_minus * dos(p.omega_minus)
        result = LindbladAB(
            regime=Regime.HIGH,
            gamma_down=RatePair(inertial=inertial, noninertial=down),
            gamma_up=RatePair(inertial=0.0, noninertial=up),
        )
        self._check_signs(result)
        return result

    def rates_low(self, params: CavityParams) -> LindbladAB:
        """Emission rate for omega << Omega0_bar; absorption vanishes.

        The non-inertial part carries the sidebands at Omega0_bar +- omega
        and the second-order Doppler term weighted by 2/5.

        Raises:
            ValidationException: If omega / Omega0_bar >= 0.1
        """
        if self.regime(params) != Regime.LOW:
            raise ValidationException("rates_low needs omega / Omega0_bar < 0.1")
        p = params
        z = p.zeta
        side_p = p.omega_bar + p.omega
        side_m = p.omega_bar - p.omega

        def weighted(w: float) -> float:
            return float(lorentzian_dos(w, p.omega_c, p.Q)) * w

        inertial = p.eta * weighted(p.Omega0)
        curvature = -0.5 * z * p.Omega0**2 * float(
            lorentzian_derivative(p.Omega0, p.omega_c, p.Q)
        )
        sidebands = 0.25 * z * (weighted(side_p) + weighted(side_m))
        doppler = zeta(p.Omega0, p.R) * weighted(p.Omega0) - 0.5 * (
            zeta(side_p, p.R) * weighted(side_p) + zeta(side_m, p.R) * weighted(side_m)
        )
        down = p.eta * (curvature + sidebands - DOPPLER_LOW * doppler)
        result = LindbladAB(
            regime=Regime.LOW,
            gamma_down=RatePair(inertial=inertial, noninertial=down),
            gamma_up=RatePair(inertial=0.0, noninertial=0.0),
        )
        self._check_signs(result)
        return result

    def rates(self, params: CavityParams) -> LindbladAB:
        """Rates in whichever regime the parameters select."""
        if self.regime(params) == Regime.HIGH:
            return self.rates_high(params)
        return self.rates_low(params)

    @staticmethod
    def _check_signs(rates: LindbladAB) -> None:
        if rates.gamma_down.total < 0.0 or rates.gamma_up.total < 0.0:
            logger.warning(
                "Negative transition rate, first-order expansion unreliable",
                gamma_down=rates.gamma_down.total,
                gamma_up=rates.gamma_up.total,
            )

    # -- reduced dynamics --------------------------------------------------

    @staticmethod
    def reduced_density(
        A: float, B: float, Omega: float, theta: float, tau: Sequence[float]
    ) -> np.ndarray:
        """Closed-form rho(tau) in the (e, g) basis, shape (len(tau), 2, 2).

        rho_ee = exp(-4A tau) cos^2(theta/2) + (B - A)/(2A) (exp(-4A tau) - 1),
        rho_eg = exp(-2A tau - i Omega tau) sin(theta) / 2.
        """
        if A < 0.0:
            raise ValidationException(f"A must be non-negative, got {A}")
        tau = np.atleast_1d(np.asarray(tau, dtype=float))
        decay = np.exp(-4.0 * A * tau)
        if A > 0.0:
            drift = (B - A) / (2.0 * A) * np.expm1(-4.0 * A * tau)
        else:
            drift = -2.0 * B * tau
        ee = decay * math.cos(theta / 2.0) ** 2 + drift
        eg = 0.5 * math.sin(theta) * np.exp(-2.0 * A * tau - 1j * Omega * tau)
        rho = np.empty((len(tau), 2, 2), dtype=complex)
        rho[:, 0, 0] = ee
        rho[:, 1, 1] = 1.0 - ee
        rho[:, 0, 1] = eg
        rho[:, 1, 0] = eg.conj()
        return rho

    @staticmethod
    def lindblad_rhs(A: float, B: float, Omega: float):
        """Right-hand side d vec(rho)/dt of the atomic master equation."""
        a = kossakowski(A, B)
        h = 0.5 * Omega * PAULI[2]
        terms = [
            (a[i, j], PAULI[i], PAULI[j])
            for i in range(3)
            for j in range(3)
            if a[i, j] != 0.0
        ]

        def rhs(_t: float, y: np.ndarray) -> np.ndarray:
            rho = y.reshape(2, 2)
            out = -1j * (h @ rho - rho @ h)
            for coeff, si, sj in terms:
                out = out + 0.5 * coeff * (
                    2.0 * sj @ rho @ si - si @ sj @ rho - rho @ si @ sj
                )
            return out.ravel()

        return rhs

    def lindblad_evolve(
        self,
        A: float,
        B: float,
        Omega: float,
        rho0: np.ndarray,
        times: Sequence[float],
        rtol: float = 1e-10,
        atol: float = 1e-12,
    ) -> np.ndarray:
        """Integrate the master equation and sample rho at ``times``.

        Raises:
            ValidationException: If rho0 is not 2x2 or times are not ascending
            ConvergenceException: If the integrator fails
        """
        rho0 = np.asarray(rho0, dtype=complex)
        times = np.asarray(times, dtype=float)
        if rho0.shape != (2, 2):
            raise ValidationException(f"rho0 must be 2x2, got {rho0.shape}")
        if times.ndim != 1 or np.any(np.diff(times) < 0):
            raise ValidationException("times must be a 1D ascending array")

        sol = solve_ivp(
            self.lindblad_rhs(A, B, Omega),
            (float(times[0]), float(times[-1])),
            rho0.ravel(),
            method="DOP853",
            t_eval=times,
            rtol=rtol,
            atol=atol,
        )
        if not sol.success:
            logger.error("Lindblad integration failed", message=sol.message)
            raise ConvergenceException(f"Lindblad integration failed: {sol.message}")
        return sol.y.T.reshape(len(times), 2, 2)

    # -- geometric phase ---------------------------------------------------

    def gp_exact(self, A: float, B: float, Omega: float, theta: float, T: float) -> float:
        """Geometric phase of the dissipative atom after time T, by quadrature.

        -(Omega/2) int_0^T [1 - X / sqrt(exp(4A tau) sin^2 theta + X^2)] dtau
        with X = cos theta - (B/A)(exp(4A tau) - 1), including the unitary part.

        Raises:
            ValidationException: If A or T is negative
            ServiceException: If the integrand overflows
            ConvergenceException: If the quadrature does not converge
        """
        if A < 0.0 or T < 0.0:
            raise ValidationException("gp_exact needs A >= 0 and T >= 0")
        c, s2 = math.cos(theta), math.sin(theta) ** 2
        if 4.0 * A * T > 700.0:
            raise ServiceException("exp(4 A T) overflows, shorten T", details={"AT": A * T})

        def integrand(tau: float) -> float:
            growth = 4.0 * A * tau
            if A > 0.0:
                x = c - (B / A) * math.expm1(growth)
            else:
                x = c - 4.0 * B * tau
            norm = math.sqrt(math.exp(growth) * s2 + x * x)
            if norm == 0.0:
                return 1.0
            return 1.0 - x / norm

        value = -0.5 * Omega * self.numkit.integrate_1d(integrand, 0.0, T)
        logger.debug("Exact cavity phase", A=A, B=B, T=T, value=value)
        return float(value)

    @staticmethod
    def nonunitary_gp(A: float, B: float, Omega0: float, theta: float, n: float) -> float:
        """-(2 pi^2 n^2 / Omega0)(2B + A cos theta) sin^2 theta."""
        return (
            -2.0
            * math.pi**2
            * n**2
            / Omega0
            * (2.0 * B + A * math.cos(theta))
            * math.sin(theta) ** 2
        )

    @staticmethod
    def validity(A: float, Omega0: float, n: float) -> float:
        """4 A T for T = 2 pi n / Omega0."""
        return 4.0 * A * 2.0 * math.pi * n / Omega0

    def _guard(self, A: float, Omega0: float, n: float) -> float:
        value = self.validity(A, Omega0, n)
        if value > VALIDITY_BOUND:
            logger.error("First-order phase outside validity", four_a_t=value)
            raise ValidityException(
                f"4AT = {value:.3g} exceeds {VALIDITY_BOUND}, use gp_exact",
                details={"four_a_t": value},
            )
        return value

    def gp_first_order(
        self, A: float, B: float, Omega0: float, theta: float, n: float
    ) -> float:
        """Unitary phase -pi n (1 - cos theta) plus the first-order non-unitary part.

        Raises:
            ValidityException: If 4AT > 0.1
        """
        self._guard(A, Omega0, n)
        unitary = -math.pi * n * (1.0 - math.cos(theta))
        return unitary + self.nonunitary_gp(A, B, Omega0, theta, n)

    def gp_regimes(self, params: CavityParams) -> GpSplit:
        """Unitary, inertial and non-inertial geometric phase after n quasi-cycles.

        Raises:
            ValidationException: If the rotation is in neither regime
            ValidityException: If 4AT > 0.1
        """
        rates = self.rates(params)
        p = params
        check = self._guard(rates.A, p.Omega0, p.n)
        a_in, b_in = rates.inertial
        a_nin, b_nin = rates.noninertial
        split = GpSplit(
            regime=rates.regime,
            unitary=-math.pi * p.n * (1.0 - math.cos(p.theta)),
            inertial=self.nonunitary_gp(a_in, b_in, p.Omega0, p.theta, p.n),
            noninertial=self.nonunitary_gp(a_nin, b_nin, p.Omega0, p.theta, p.n),
            n=p.n,
            validity=check,
        )
        logger.debug(
            "Cavity phase split",
            regime=split.regime.value,
            inertial=split.inertial,
            noninertial=split.noninertial,
        )
        return split

    def gp_trajectory_numeric(
        self,
        A: float,
        B: float,
        Omega: float,
        theta: float,
        T: float,
        samples: Optional[int] = None,
        integrate: bool = False,
    ) -> float:
        """Mixed-state phase of the sampled trajectory rho(tau), tau in [0, T].

        Uses the closed-form rho by default; ``integrate=True`` samples the
        master equation instead. Result in (-pi, pi].
        """
        samples = samples or self.samples
        times = np.linspace(0.0, T, samples)
        if integrate:
            rho = self.lindblad_evolve(A, B, Omega, initial_density(theta), times)
            rho = 0.5 * (rho + np.conj(np.transpose(rho, (0, 2, 1))))
            rho = rho / np.real(np.trace(rho, axis1=1, axis2=2))[:, None, None]
        else:
            rho = self.reduced_density(A, B, Omega, theta, times)
        traj = self.geophase.density_trajectory(times, rho)
        return self.geophase.gp_mixed_nonunitary(traj)

    # -- sweeps ------------------------------------------------------------

    def rate_sweep(
        self,
        params: CavityParams,
        omega_cs: Sequence[float],
        workers: Optional[int] = None,
    ) -> list:
        """Rates and phase split for every cavity frequency in ``omega_cs``."""

        def _row(omega_c: float) -> RateRow:
            point = params.model_copy(update={"omega_c": omega_c})
            rates = self.rates(point)
            a_in, b_in = rates.inertial
            a_nin, b_nin = rates.noninertial
            return RateRow(
                omega_c=omega_c,
                gamma_down=rates.gamma_down.total,
                gamma_up=rates.gamma_up.total,
                A=rates.A,
                B=rates.B,
                phi_inertial=self.nonunitary_gp(a_in, b_in, point.Omega0, point.theta, point.n),
                phi_noninertial=self.nonunitary_gp(
                    a_nin, b_nin, point.Omega0, point.theta, point.n
                ),
                n=point.n,
            )

        keys = [float(w) for w in omega_cs]
        return [row for _, row in SweepService(workers).run(_row, keys)]

    def n_scaling(
        self, params: CavityParams, ns: Sequence[float]
    ) -> Tuple[Optional[float], Optional[float]]:
        """Log-log slopes of |inertial| and |non-inertial| phase against n.

        A slope is None when that part vanishes.
        """
        logn = np.log(np.asarray(ns, dtype=float))
        inert, nonin = [], []
        for n in ns:
            split = self.gp_regimes(params.model_copy(update={"n": float(n)}))
            inert.append(abs(split.inertial))
            nonin.append(abs(split.noninertial))
        slopes = []
        for values in (inert, nonin):
            values = np.asarray(values)
            if np.any(values == 0.0):
                slopes.append(None)
            else:
                slopes.append(float(np.polyfit(logn, np.log(values), 1)[0]))
        return slopes[0], slopes[1]


# Singleton instance
_cavity_service = None


def get_cavity_service() -> CavityService:
    """Get cavity service singleton instance."""
    global _cavity_service
    if _cavity_service is None:
        _cavity_service = CavityService()
    return _cavity_service
