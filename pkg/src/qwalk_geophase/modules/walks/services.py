"""
Discrete-time quantum-walk engines.

Steps are stored as a sequence of stencil factors (coin mixing, diagonal
phases or gains, conditional shifts) and applied site-wise; dense matrices
are built only on request. Momentum-space operators come from the same
factor sequence, so real-space and Bloch forms cannot drift apart.

Conventions: the shift moves |up> to n+1 and |down> to n-1, the coin is
R(theta) = exp(-i theta sigma_y / 2) and amplitudes transform to momentum
as psi(k) = sum_n exp(ikn) psi_n.
"""

import math
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy import stats

from ...core.config import get_settings
from ...core.logging import get_logger
from ...shared.exceptions import ServiceException, ValidationException
from ..numkit.services import PAULI
from .schemas import (
    BandGrid,
    Coin4D,
    CriticalGamma,
    NormRegime,
    StateVector,
    SymmetryCheck,
    WalkFrame,
    WalkSpec,
    WalkTrajectory,
    WalkVariant,
)

logger = get_logger(__name__)

GAP_TOL = 1e-8
SYMMETRY_TOL = 1e-10

SIGMA_X, SIGMA_Y, SIGMA_Z = PAULI

Factor = Tuple[str, object]


def rotation(theta: Union[float, np.ndarray]) -> np.ndarray:
    """Coin R(theta) = exp(-i theta sigma_y / 2), broadcast over arrays."""
    theta = np.asarray(theta, dtype=float)
    c, s = np.cos(theta / 2.0), np.sin(theta / 2.0)
    out = np.empty(theta.shape + (2, 2), dtype=complex)
    out[..., 0, 0] = c
    out[..., 0, 1] = -s
    out[..., 1, 0] = s
    out[..., 1, 1] = c
    return out


def coin_4d(kind: Coin4D) -> np.ndarray:
    """Hadamard (H x H), Grover or Fourier coin on the 4D coin space."""
    if kind == Coin4D.HADAMARD:
        h = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2.0)
        return np.kron(h, h)
    if kind == Coin4D.GROVER:
        return 0.5 * np.ones((4, 4), dtype=complex) - np.eye(4, dtype=complex)
    w = np.exp(0.5j * math.pi * np.outer(np.arange(4), np.arange(4)))
    return 0.5 * w


def coin_4d_initial(kind: Coin4D) -> np.ndarray:
    """Initial coin state used with each 4D coin."""
    if kind == Coin4D.HADAMARD:
        q = np.array([1.0, -1j]) / math.sqrt(2.0)
        return np.kron(q, q)
    if kind == Coin4D.GROVER:
        return 0.5 * np.array([1.0, -1.0, -1.0, 1.0], dtype=complex)
    a = (1.0 - 1j) / math.sqrt(2.0)
    return 0.5 * np.array([1.0, a, 1.0, -a], dtype=complex)


def general_coin(eta: float, theta: float, xi: float) -> np.ndarray:
    """Euler-parametrized coin exp(i eta sz/2) exp(i theta sy/2) exp(i xi sz/2)."""
    return np.diag(_diag_sz(0.5j * eta)) @ rotation(-theta) @ np.diag(_diag_sz(0.5j * xi))


def _diag_sz(a: Union[float, complex]) -> np.ndarray:
    """exp(a sigma_z) as the diagonal (exp(a), exp(-a))."""
    return np.array([np.exp(a), np.exp(-a)], dtype=complex)


def _over_sin(n: np.ndarray, cos_e: np.ndarray) -> np.ndarray:
    """Divide Bloch components by sin E, zeroing points where the gap closes."""
    sin_e = np.sin(np.arccos(np.asarray(cos_e, dtype=complex)))
    closed = np.abs(sin_e) <= GAP_TOL
    out = n / np.where(closed, 1.0, sin_e)[..., None]
    out[closed] = 0.0
    return out


class WalkStep:
    """One walk step as an ordered list of stencil factors.

    Factors are ("coin", C) with C of shape (..., d, d), ("diag", D) with D of
    shape (..., d) and ("shift", displacements) with one lattice vector per
    coin component. ``momentum`` fixes the quasi-momentum of lattice axes
    that are reduced to a single site (strip geometries).
    """

    def __init__(
        self,
        factors: List[Factor],
        lattice_shape: Tuple[int, ...],
        coin_dim: int,
        momentum: Optional[Sequence[Optional[float]]] = None,
    ):
        self.factors = factors
        self.lattice_shape = tuple(lattice_shape)
        self.coin_dim = coin_dim
        self.momentum = list(momentum) if momentum is not None else [None] * len(
            self.lattice_shape
        )

    @property
    def dim(self) -> int:
        """Dimension of the full site-coin space."""
        return int(np.prod(self.lattice_shape)) * self.coin_dim

    def _shift(self, psi: np.ndarray, disps: Sequence[Tuple[int, ...]]) -> np.ndarray:
        axes = tuple(range(len(self.lattice_shape)))
        out = np.empty_like(psi)
        for c, disp in enumerate(disps):
            phase = 1.0
            roll = []
            for axis, d in enumerate(disp):
                k = self.momentum[axis]
                if k is not None:
                    phase *= np.exp(1j * k * d)
                    roll.append(0)
                else:
                    roll.append(d)
            out[..., c, :] = phase * np.roll(psi[..., c, :], shift=roll, axis=axes)
        return out

    def _apply_batched(self, psi: np.ndarray) -> np.ndarray:
        for kind, data in self.factors:
            if kind == "coin":
                psi = np.einsum("...ab,...bz->...az", data, psi)
            elif kind == "diag":
                psi = psi * np.asarray(data)[..., None]
            else:
                psi = self._shift(psi, data)
        return psi

    def apply(self, psi: np.ndarray) -> np.ndarray:
        """Apply one step to amplitudes of shape lattice + (coin,)."""
        psi = np.asarray(psi, dtype=complex)
        expected = self.lattice_shape + (self.coin_dim,)
        if psi.shape != expected:
            raise ValidationException(
                f"State shape {psi.shape} does not match lattice {expected}"
            )
        return self._apply_batched(psi[..., None])[..., 0]

    def dense(self) -> np.ndarray:
        """Dense step matrix on the flattened (site, coin) basis."""
        n = self.dim
        basis = np.eye(n, dtype=complex).reshape(self.lattice_shape + (self.coin_dim, n))
        return self._apply_batched(basis).reshape(n, n)

    def bloch(self, k: np.ndarray) -> np.ndarray:
        """Momentum-space step U(k) for k of shape (...) in 1D or (..., 2) in 2D.

        The result has shape k-grid + (coin, coin); a length-one 1D grid
        still gives a stack of one matrix.

        Raises:
            ValidationException: If a factor depends on the site
        """
        k = np.asarray(k, dtype=float)
        ndim = len(self.lattice_shape)
        if ndim == 1:
            k = k[..., None]
        grid = k.shape[:-1]
        d = self.coin_dim
        u = np.broadcast_to(np.eye(d, dtype=complex), grid + (d, d)).copy()
        for kind, data in self.factors:
            if kind == "coin":
                c = np.asarray(data)
                if c.shape != (d, d):
                    raise ValidationException("Momentum form needs a homogeneous coin")
                u = np.einsum("ab,...bz->...az", c, u)
            elif kind == "diag":
                g = np.asarray(data)
                if g.shape != (d,):
                    raise ValidationException(
                        "Momentum form needs translation-invariant phases"
                    )
                u = g[:, None] * u
            else:
                disps = np.asarray(data, dtype=float)
                phases = np.exp(1j * np.einsum("...j,cj->...c", k, disps))
                u = phases[..., :, None] * u
        return u


class WalkService:
    """Service for walk construction, evolution and band structure."""

    def __init__(self):
        """Initialize walk service."""
        settings = get_settings()
        self.kcount = settings.WINDING_KCOUNT
        self.grid = settings.CHERN_GRID

    def default_kcount(self, spec: WalkSpec) -> int:
        """k-grid size per axis used when none is given."""
        return self.grid if spec.is_2d else self.kcount

    # ------------------------------------------------------------------
    # Construction
    # ------------------------------------------------------------------

    @staticmethod
    def sites(spec: WalkSpec) -> Union[np.ndarray, Tuple[np.ndarray, np.ndarray]]:
        """Site coordinates x = index - N // 2 (per axis in 2D)."""
        coords = tuple(np.arange(n) - n // 2 for n in spec.lattice_shape)
        return coords if spec.is_2d else coords[0]

    @staticmethod
    def _angle_field(spec: WalkSpec, value, shape: Tuple[int, ...], name: str):
        if not isinstance(value, np.ndarray):
            return spec.angle_scale * float(value)
        try:
            return spec.angle_scale * np.broadcast_to(value, shape).astype(float)
        except ValueError:
            logger.error("Per-site map does not cover the lattice", name=name)
            raise ValidationException(
                f"{name} map of shape {value.shape} does not cover lattice {shape}"
            )

    def build_step(self, spec: WalkSpec, momentum_x: Optional[float] = None) -> WalkStep:
        """Build the one-step operator of a walk.

        Operators compose right to left as written in the step formulas;
        the factor list is stored in application order.

        Args:
            spec: Walk description
            momentum_x: For 2D walks, replace the x axis by one site at this
                quasi-momentum (strip geometry)

        Returns:
            WalkStep

        Raises:
            ValidationException: If a per-site map is inconsistent with the lattice
        """
        shape = spec.lattice_shape
        if momentum_x is not None:
            if not spec.is_2d:
                raise ValidationException("Strip geometry needs a 2D walk")
            shape = (1, shape[1])
        t1 = self._angle_field(spec, spec.theta1, shape, "theta1")
        t2 = self._angle_field(spec, spec.theta2, shape, "theta2")
        if spec.variant != WalkVariant.SSQW1D and (
            spec.stride != 1 or spec.frame != WalkFrame.NATURAL
        ):
            raise ValidationException("Stride and frame apply to the split-step walk only")
        momentum = [momentum_x, None] if momentum_x is not None else None

        variant = spec.variant
        if variant == WalkVariant.DTQW1D:
            factors = [("coin", rotation(t1)), ("shift", [(1,), (-1,)])]
        elif variant == WalkVariant.ELECTRIC1D:
            factors = [("coin", rotation(t1)), ("shift", [(1,), (-1,)])]
            if spec.phi != 0.0:
                x = np.arange(spec.size) - spec.size // 2
                field = np.repeat(np.exp(1j * spec.phi * x)[:, None], 2, axis=1)
                factors.append(("diag", field))
        elif variant == WalkVariant.SSQW1D:
            factors = self._split_step_factors(spec, t1, t2)
        elif variant == WalkVariant.DTQW2D:
            factors = self._dtqw2d_factors(spec, t1, t2)
        else:
            factors = [
                ("coin", coin_4d(spec.coin4d)),
                ("shift", [(1, 1), (1, -1), (-1, 1), (-1, -1)]),
            ]
        logger.debug("Walk step built", variant=variant.value, lattice=shape)
        return WalkStep(factors, shape, spec.coin_dim, momentum)

    @staticmethod
    def _split_step_factors(spec: WalkSpec, t1, t2) -> List[Factor]:
        s = spec.stride
        up, down = [(s,), (0,)], [(0,), (-s,)]
        gain, loss = _diag_sz(spec.gamma), _diag_sz(-spec.gamma)
        phase = _diag_sz(1j * spec.coin_phase)
        middle: List[Factor] = [
            ("diag", phase),
            ("diag", loss),
            ("shift", up),
            ("coin", rotation(t2)),
            ("diag", phase),
            ("diag", gain),
            ("shift", down),
        ]
        if spec.frame == WalkFrame.SYMMETRIC:
            half = rotation(np.asarray(t1) / 2.0)
            return [("coin", half)] + middle + [("coin", half)]
        return [("coin", rotation(t1))] + middle

    @staticmethod
    def _dtqw2d_factors(spec: WalkSpec, t1, t2) -> List[Factor]:
        tx, ty = [(1, 0), (-1, 0)], [(0, 1), (0, -1)]
        r1, r2 = rotation(t1), rotation(t2)
        return [
            ("shift", tx),
            ("diag", _diag_sz(-spec.gamma_x)),
            ("coin", r1),
            ("shift", tx),
            ("diag", _diag_sz(spec.gamma_x)),
            ("coin", r2),
            ("shift", ty),
            ("diag", _diag_sz(-spec.gamma_y)),
            ("coin", r1),
            ("shift", ty),
            ("diag", _diag_sz(spec.gamma_y)),
        ]

    def general_step(self, eta: float, theta: float, xi: float, size: int) -> WalkStep:
        """One-dimensional walk with the three-parameter Euler coin."""
        return WalkStep(
            [("coin", general_coin(eta, theta, xi)), ("shift", [(1,), (-1,)])],
            (size,),
            2,
        )

    @staticmethod
    def equivalence_transform(eta: float, xi: float, size: int) -> np.ndarray:
        """Diagonal map V = exp(i xi sz/2) x E_{-(xi+eta)/2} as phases (N, 2).

        V carries the three-parameter walk U(eta, theta, xi) onto the
        one-parameter walk with coin angle -theta: U_g = V^-1 U(-theta) V.
        """
        x = np.arange(size) - size // 2
        site = np.exp(-0.5j * (xi + eta) * x)
        coin = np.array([np.exp(0.5j * xi), np.exp(-0.5j * xi)])
        return site[:, None] * coin[None, :]

    def origin_state(
        self, spec: WalkSpec, coin: Optional[Sequence[complex]] = None
    ) -> np.ndarray:
        """Walker at the origin with the given coin state (normalized).

        The default coin is (|up> + i|down>)/sqrt(2), or the 4D coin's own
        initial state.
        """
        if coin is None:
            if spec.variant == WalkVariant.COIN4D2D:
                coin = coin_4d_initial(spec.coin4d)
            else:
                coin = np.array([1.0, 1j]) / math.sqrt(2.0)
        coin = np.asarray(coin, dtype=complex)
        if coin.shape != (spec.coin_dim,) or np.linalg.norm(coin) == 0.0:
            raise ValidationException(f"Coin state must be a nonzero {spec.coin_dim}-vector")
        psi = np.zeros(spec.state_shape, dtype=complex)
        origin = tuple(n // 2 for n in spec.lattice_shape)
        psi[origin] = coin / np.linalg.norm(coin)
        return psi

    # ------------------------------------------------------------------
    # Evolution
    # ------------------------------------------------------------------

    def evolve(
        self,
        spec: WalkSpec,
        state0: np.ndarray,
        steps: int,
        record: bool = False,
        step: Optional[WalkStep] = None,
    ) -> WalkTrajectory:
        """Evolve a state in real space without renormalizing.

        Args:
            spec: Walk description
            state0: Amplitudes of shape spec.state_shape
            steps: Number of steps (>= 0)
            record: Keep the normalized distribution of every step
            step: Prebuilt operator (defaults to build_step(spec))

        Returns:
            WalkTrajectory with P(t) and the final normalized distribution

        Raises:
            ValidationException: If steps < 0 or the state shape is wrong
            ServiceException: If the amplitudes overflow
        """
        if steps < 0:
            raise ValidationException(f"Step count must be non-negative, got {steps}")
        step = step or self.build_step(spec)
        psi = np.asarray(state0, dtype=complex)
        if psi.shape != spec.state_shape:
            raise ValidationException(
                f"State shape {psi.shape} does not match lattice {spec.state_shape}"
            )

        norms = np.empty(steps + 1)
        history = np.empty((steps + 1,) + spec.lattice_shape) if record else None

        def _record(t: int, amps: np.ndarray) -> None:
            p = np.sum(np.abs(amps) ** 2, axis=-1)
            norms[t] = p.sum()
            if history is not None:
                history[t] = p / norms[t]

        _record(0, psi)
        for t in range(1, steps + 1):
            psi = step.apply(psi)
            _record(t, psi)
            if not np.isfinite(norms[t]):
                logger.error("Walk amplitudes overflowed", step=t)
                raise ServiceException(f"Walk amplitudes overflowed at step {t}")

        state = StateVector(amplitudes=psi)
        logger.debug("Walk evolved", variant=spec.variant.value, steps=steps)
        return WalkTrajectory(
            state=state,
            norms=norms,
            distribution=state.probabilities(),
            history=history,
        )

    @staticmethod
    def variance(distribution: np.ndarray, sites: Optional[np.ndarray] = None) -> float:
        """Site variance sum x^2 p - (sum x p)^2 of a 1D distribution.

        Raises:
            ValidationException: If the distribution is empty or has no weight
        """
        p = np.asarray(distribution, dtype=float).ravel()
        if p.size == 0 or p.sum() <= 0.0:
            raise ValidationException("Variance of an empty distribution")
        x = np.arange(p.size) - p.size // 2 if sites is None else np.asarray(sites, float)
        p = p / p.sum()
        mean = np.dot(x, p)
        return float(np.dot(x * x, p) - mean * mean)

    @staticmethod
    def binomial_variance(t: Union[int, np.ndarray]) -> np.ndarray:
        """Variance of the classical +-1 random walk after t steps."""
        t = np.asarray(t)
        return 4.0 * stats.binom(t, 0.5).var()

    @staticmethod
    def classify_norm(norms: np.ndarray, margin: float = 0.05) -> NormRegime:
        """Classify the long-time behaviour of P(t) on the last half.

        A relative linear trend below 0.1 is bounded; otherwise linear and
        exponential (log-linear) fits are compared by relative rms residual
        and the winner must beat the other by ``margin``.
        """
        p = np.asarray(norms, dtype=float)
        if p.size < 8:
            raise ValidationException("Norm classification needs at least 8 samples")
        t = np.arange(p.size, dtype=float)
        tail, pt = t[p.size // 2 :], p[p.size // 2 :]
        scale = float(np.mean(pt))
        if not np.all(np.isfinite(pt)) or scale <= 0.0:
            return NormRegime.INDETERMINATE

        slope, icept = np.polyfit(tail, pt, 1)
        trend = abs(slope) * (tail[-1] - tail[0]) / scale
        if trend < 0.1:
            return NormRegime.BOUNDED

        lin_res = np.sqrt(np.mean((pt - (slope * tail + icept)) ** 2)) / scale
        rate, lcept = np.polyfit(tail, np.log(pt), 1)
        exp_fit = np.exp(rate * tail + lcept)
        exp_res = np.sqrt(np.mean((pt - exp_fit) ** 2)) / scale
        logger.debug("Norm fits", trend=trend, linear=lin_res, exponential=exp_res)
        if lin_res < (1.0 - margin) * exp_res:
            return NormRegime.LINEAR
        if exp_res < (1.0 - margin) * lin_res:
            return NormRegime.EXPONENTIAL
        return NormRegime.INDETERMINATE

    # ------------------------------------------------------------------
    # Momentum space
    # ------------------------------------------------------------------

    def bloch_step(self, spec: WalkSpec, k: np.ndarray) -> np.ndarray:
        """Momentum-space step U(k) for a homogeneous walk.

        Raises:
            ValidationException: If the walk is not translation invariant
        """
        if not spec.homogeneous:
            raise ValidationException("Momentum form needs a homogeneous walk")
        return self.build_step(spec).bloch(k)

    def k_grid(self, spec: WalkSpec, kcount: int) -> np.ndarray:
        """Periodic k-grid: [-pi, pi) in 1D, [-pi/2, pi/2)^2 in 2D."""
        if kcount < 2:
            raise ValidationException("k-grid needs at least two points")
        if spec.is_2d:
            ks = -0.5 * np.pi + np.pi * np.arange(kcount) / kcount
            kx, ky = np.meshgrid(ks, ks, indexing="ij")
            return np.stack([kx, ky], axis=-1)
        return -np.pi + 2.0 * np.pi * np.arange(kcount) / kcount

    @staticmethod
    def _closed_form(
        spec: WalkSpec, k: np.ndarray
    ) -> Tuple[Optional[np.ndarray], Optional[np.ndarray]]:
        """Closed-form cos E and n(k) where known (n may be None)."""
        th1, th2 = spec.angle_scale * spec.theta1, spec.angle_scale * spec.theta2
        if spec.variant == WalkVariant.DTQW1D:
            c, s = math.cos(th1 / 2.0), math.sin(th1 / 2.0)
            cos_e = (c * np.cos(k)).astype(complex)
            n = np.stack([s * np.sin(k), s * np.cos(k), -c * np.sin(k)], axis=-1)
            return cos_e, _over_sin(n, cos_e)
        if spec.variant == WalkVariant.SSQW1D:
            c1, s1 = math.cos(th1 / 2.0), math.sin(th1 / 2.0)
            c2, s2 = math.cos(th2 / 2.0), math.sin(th2 / 2.0)
            if spec.stride == 2:
                k = 2.0 * k
            g = 2.0 * spec.gamma
            cos_e = (c1 * c2 * np.cos(k) - s1 * s2 * math.cosh(g)).astype(complex)
            if spec.frame != WalkFrame.NATURAL or spec.coin_phase != 0.0:
                return cos_e, None
            n = np.stack(
                [
                    c2 * s1 * np.sin(k) - 1j * s2 * c1 * math.sinh(g),
                    c2 * s1 * np.cos(k) + s2 * c1 * math.cosh(g),
                    -c1 * c2 * np.sin(k) - 1j * s1 * s2 * math.sinh(g),
                ],
                axis=-1,
            )
            return cos_e, _over_sin(n, cos_e)
        if spec.variant == WalkVariant.DTQW2D:
            cos_e = energy_2d(
                th1, th2, spec.gamma_x, spec.gamma_y, k[..., 0], k[..., 1]
            )
            return cos_e, None
        return None, None

    def band_grid(self, spec: WalkSpec, kcount: Optional[int] = None) -> BandGrid:
        """Quasi-energies, Bloch vectors and eigenpairs on a k-grid.

        Closed forms give E and, where available, n; the numerically
        composed U(k) supplies eigenpairs and the half-trace cross-check.

        Raises:
            ValidationException: For inhomogeneous or four-band walks
        """
        kcount = kcount or self.default_kcount(spec)
        if spec.coin_dim != 2 or spec.variant == WalkVariant.ELECTRIC1D:
            raise ValidationException("Band grids cover homogeneous two-band walks")
        k = self.k_grid(spec, kcount)
        u = self.bloch_step(spec, k)

        cos_num = 0.5 * (u[..., 0, 0] + u[..., 1, 1])
        cos_e, n = self._closed_form(spec, k)
        if cos_e is None:
            cos_e = cos_num
        energy = np.arccos(cos_e.astype(complex))
        closed_bloch = n is not None
        if n is None:
            n = self._numeric_bloch(u, energy)

        w, v = np.linalg.eig(u)
        # Re E ties (pure imaginary pairs, flat bands) fall back to Im E
        qe = 1j * np.log(w)
        order = np.lexsort((qe.imag, np.round(qe.real, 10)), axis=-1)
        w = np.take_along_axis(w, order, axis=-1)
        v = np.take_along_axis(v, order[..., None, :], axis=-1)
        v = v / np.linalg.norm(v, axis=-2, keepdims=True)

        logger.debug("Band grid built", variant=spec.variant.value, kcount=kcount)
        return BandGrid(
            k=k,
            energy=energy,
            bloch=n,
            cos_numeric=cos_num,
            eigenvalues=w,
            eigenvectors=v,
            closed_form_bloch=closed_bloch,
        )

    @staticmethod
    def _numeric_bloch(u: np.ndarray, energy: np.ndarray) -> np.ndarray:
        """n_j = i tr(U sigma_j) / (2 sin E); zero where the gap closes."""
        n = np.stack([0.5j * np.einsum("...ab,ba->...", u, s) for s in PAULI], axis=-1)
        return _over_sin(n, np.cos(energy))

    def gamma_critical(self, theta1: float, theta2: float) -> CriticalGamma:
        """gamma_c = arccosh[(c1 c2 - 1)/(s1 s2)] / 2 of the split-step walk.

        Raises:
            ValidationException: If sin(theta1/2) sin(theta2/2) vanishes
        """
        c1, s1 = math.cos(theta1 / 2.0), math.sin(theta1 / 2.0)
        c2, s2 = math.cos(theta2 / 2.0), math.sin(theta2 / 2.0)
        den = s1 * s2
        if abs(den) < 1e-15:
            raise ValidationException("sin(theta1/2) sin(theta2/2) vanishes")
        arg = (c1 * c2 - 1.0) / den
        if arg >= 1.0:
            return CriticalGamma(value=0.5 * math.acosh(arg), is_complex=False, argument=arg)
        value = 0.5 * np.arccosh(complex(arg))
        logger.warning("Critical gain/loss is complex", argument=arg)
        return CriticalGamma(
            value=float(value.real), imag=float(value.imag), is_complex=True, argument=arg
        )

    def _symmetric(self, spec: WalkSpec) -> WalkSpec:
        if spec.variant == WalkVariant.SSQW1D and spec.frame != WalkFrame.SYMMETRIC:
            logger.debug("Symmetry test moved to the symmetric frame")
            return spec.model_copy(update={"frame": WalkFrame.SYMMETRIC})
        return spec

    def pt_check(self, spec: WalkSpec, kcount: Optional[int] = None) -> SymmetryCheck:
        """Test sigma_z U*(k) sigma_z = U^-1(k) on the k-grid.

        Split-step walks are tested in the symmetric frame.

        Raises:
            ValidationException: If U(k) is singular
        """
        spec = self._symmetric(spec)
        k = self.k_grid(spec, kcount or self.default_kcount(spec))
        u = self.bloch_step(spec, k)
        det = np.linalg.det(u)
        if np.min(np.abs(det)) < 1e-14:
            raise ValidationException("Step operator is singular")
        lhs = SIGMA_Z @ u.conj() @ SIGMA_Z
        dev = np.linalg.norm(lhs - np.linalg.inv(u), ord=2, axis=(-2, -1))
        return self._symmetry_result(u, dev)

    def chiral_check(self, spec: WalkSpec, kcount: Optional[int] = None) -> SymmetryCheck:
        """Test sigma_x U(k) sigma_x = U(k)^dagger in the symmetric frame."""
        spec = self._symmetric(spec)
        k = self.k_grid(spec, kcount or self.default_kcount(spec))
        u = self.bloch_step(spec, k)
        lhs = SIGMA_X @ u @ SIGMA_X
        dev = np.linalg.norm(lhs - np.conj(np.swapaxes(u, -1, -2)), ord=2, axis=(-2, -1))
        return self._symmetry_result(u, dev)

    @staticmethod
    def _symmetry_result(u: np.ndarray, dev: np.ndarray) -> SymmetryCheck:
        per_k = dev < SYMMETRY_TOL
        energy = np.arccos((0.5 * np.trace(u, axis1=-2, axis2=-1)).astype(complex))
        return SymmetryCheck(
            per_k=per_k,
            holds=bool(np.all(per_k)),
            max_deviation=float(np.max(dev)),
            exact_phase=bool(np.max(np.abs(energy.imag)) < 1e-7),
        )

    def momentum_real_consistency(
        self, spec: WalkSpec, state0: np.ndarray, steps: int
    ) -> float:
        """Largest amplitude gap between real-space and Fourier-block evolution.

        Raises:
            ValidationException: If the walk is not translation invariant
        """
        if not spec.homogeneous:
            raise ValidationException("Fourier-block evolution needs a homogeneous walk")
        real = self.evolve(spec, state0, steps).state.amplitudes

        psi = np.asarray(state0, dtype=complex)
        coords = self.sites(spec)
        coords = coords if isinstance(coords, tuple) else (coords,)
        kaxes = [2.0 * np.pi * np.arange(n) / n for n in spec.lattice_shape]
        fourier = [np.exp(1j * np.outer(ka, x)) for ka, x in zip(kaxes, coords)]

        if len(fourier) == 1:
            psi_k = fourier[0] @ psi
            k = kaxes[0]
        else:
            psi_k = np.einsum("ax,by,xyc->abc", fourier[0], fourier[1], psi)
            k = np.stack(np.meshgrid(*kaxes, indexing="ij"), axis=-1)

        u = self.bloch_step(spec, k)
        psi_k = np.einsum("...ab,...b->...a", np.linalg.matrix_power(u, steps), psi_k)

        if len(fourier) == 1:
            back = fourier[0].conj().T @ psi_k / spec.size
        else:
            back = np.einsum(
                "ax,by,abc->xyc", fourier[0].conj(), fourier[1].conj(), psi_k
            ) / np.prod(spec.lattice_shape)
        return float(np.max(np.abs(back - real)))


def energy_2d(
    theta1: float,
    theta2: float,
    gamma_x: float,
    gamma_y: float,
    kx: np.ndarray,
    ky: np.ndarray,
) -> np.ndarray:
    """Closed-form cos E of the non-Hermitian two-dimensional walk."""
    a_minus = kx + ky - 1j * (gamma_x - gamma_y)
    a_plus = kx + ky + 1j * (gamma_x - gamma_y)
    b_minus = kx - ky - 1j * (gamma_x + gamma_y)
    c2, s2 = math.cos(theta2 / 2.0), math.sin(theta2 / 2.0)
    return (
        math.cos(theta1) * c2 * np.cos(a_minus) * np.cos(a_plus)
        - c2 * np.sin(a_minus) * np.sin(a_plus)
        - math.sin(theta1) * s2 * np.cos(b_minus) * np.cos(a_plus)
    )


def energy_2d_first_order(
    theta1: float, theta2: float, gamma_x: float, kx: np.ndarray, ky: np.ndarray
) -> np.ndarray:
    """cos E to first order in gamma_x at gamma_y = 0."""
    base = energy_2d(theta1, theta2, 0.0, 0.0, kx, ky)
    return base + 1j * gamma_x * math.sin(theta1) * math.sin(theta2 / 2.0) * np.sin(2.0 * ky)


# Singleton instance
_walk_service = None


def get_walk_service() -> WalkService:
    """Get walk service singleton instance."""
    global _walk_service
    if _walk_service is None:
        _walk_service = WalkService()
    return _walk_service
