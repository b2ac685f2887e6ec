"""
Topological invariants of quantum walks and of the SSH reference chain.

Winding numbers use band eigenvectors in a smooth gauge; Chern numbers use
normalized U(1) link variables on a periodic k-grid, so the total field
strength is an exact multiple of 2 pi. Edge spectra come from dense
diagonalization of lattices with two coin-angle domains.
"""

import math
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ...core.config import get_settings
from ...core.logging import get_logger
from ...shared.exceptions import ServiceException, ValidationException
from ...shared.services.sweep_service import SweepService
from ..numkit.services import PAULI, get_numkit_service
from ..walks.schemas import BandGrid, WalkFrame, WalkSpec, WalkVariant
from ..walks.services import GAP_TOL, get_walk_service
from .schemas import (
    ChernResult,
    DisplacementResult,
    EdgeSpectrum,
    ExceptionalPointReport,
    PhaseDiagram,
    PhasePoint,
    SshReport,
    WindingResult,
)

logger = get_logger(__name__)

SIGMA_X, SIGMA_Y, SIGMA_Z = PAULI

LINK_TOL = 1e-8
DEGENERACY_TOL = 1e-8
ZERO_MODE_TOL = 1e-6
WALL_REACH = 10
IPR_MIN = 0.1
WALL_WEIGHT_MIN = 0.9
BULK_MARGIN = 0.02

Angles = Tuple[float, float]


class TopoService:
    """Service for topological invariants and edge-state diagnostics."""

    def __init__(self):
        """Initialize topology service."""
        settings = get_settings()
        self.kcount = settings.WINDING_KCOUNT
        self.grid = settings.CHERN_GRID
        self.walks = get_walk_service()
        self.numkit = get_numkit_service()

    # ------------------------------------------------------------------
    # Winding numbers
    # ------------------------------------------------------------------

    @staticmethod
    def smooth_gauge(psi: np.ndarray) -> np.ndarray:
        """Fix the phases of a periodic chain of vectors (K, d).

        Neighbours are parallel transported (real positive overlap) and the
        closing phase is spread evenly over all K links.

        Raises:
            ServiceException: If neighbouring vectors are orthogonal
        """
        out = np.array(psi, dtype=complex)
        for j in range(1, len(out)):
            ov = np.vdot(out[j - 1], out[j])
            if abs(ov) < LINK_TOL:
                logger.error("Orthogonal neighbours in gauge smoothing", index=j)
                raise ServiceException(
                    "Neighbouring eigenvectors are orthogonal; refine the k-grid",
                    details={"index": j},
                )
            out[j] *= np.conj(ov) / abs(ov)
        closing = np.angle(np.vdot(out[-1], out[0]))
        out *= np.exp(1j * closing * np.arange(len(out)) / len(out))[:, None]
        return out

    @staticmethod
    def _derivative(psi: np.ndarray) -> np.ndarray:
        """Five-point centered difference times dk on a periodic grid."""
        d1 = np.roll(psi, -1, axis=0) - np.roll(psi, 1, axis=0)
        d2 = np.roll(psi, -2, axis=0) - np.roll(psi, 2, axis=0)
        return (8.0 * d1 - d2) / 12.0

    def winding_momentum(
        self,
        band: BandGrid,
        chiral: Optional[np.ndarray] = None,
        band_index: int = 0,
        biorthogonal: bool = False,
    ) -> WindingResult:
        """W = (1/pi) sum_k i <Gamma psi(k)| dpsi/dk> dk for one band.

        Args:
            band: One-dimensional band grid
            chiral: Chiral operator Gamma (defaults to sigma_x)
            band_index: Band whose right eigenvectors are used
            biorthogonal: Project the bra on the partner band's left eigenvector

        Returns:
            WindingResult (real part as value)

        Raises:
            ValidationException: If the grid is not one-dimensional
            ServiceException: If the bands touch on the grid
        """
        if band.k.ndim != 1:
            raise ValidationException("Winding numbers need a one-dimensional k-grid")
        gamma_op = SIGMA_X if chiral is None else np.asarray(chiral, dtype=complex)
        split = np.abs(band.eigenvalues[:, 0] - band.eigenvalues[:, 1])
        if np.min(split) < 2.0 * GAP_TOL:
            logger.error("Bands touch on the k-grid", points=int(np.sum(split < 2.0 * GAP_TOL)))
            raise ServiceException(
                "Band degeneracy on the k-grid (|sin E| below tolerance)",
                details={"min_split": float(np.min(split))},
            )

        psi = self.smooth_gauge(band.eigenvectors[:, :, band_index])
        dpsi = self._derivative(psi)
        bra = psi @ gamma_op.T
        if biorthogonal:
            left = np.linalg.inv(band.eigenvectors)[:, 1 - band_index, :]
            coeff = np.einsum("ka,ka->k", left, bra)
            terms = 1j * np.conj(coeff) * np.einsum("ka,ka->k", left, dpsi)
        else:
            terms = 1j * np.einsum("ka,ka->k", np.conj(bra), dpsi)
        total = np.sum(terms) / math.pi

        logger.debug("Winding evaluated", value=float(total.real), kcount=len(band.k))
        return WindingResult(
            value=float(total.real),
            imag=float(total.imag),
            kcount=len(band.k),
            band=band_index,
        )

    @staticmethod
    def winding_dvector(n_grid: np.ndarray, axis: int = 2) -> float:
        """Winding of a real two-band vector n(k) around ``axis``.

        The components (axis+1, axis+2) mod 3 span the plane of rotation.

        Raises:
            ValidationException: If n(k) is not real
            ServiceException: If n(k) passes through the rotation axis
        """
        n = np.asarray(n_grid)
        if np.max(np.abs(np.imag(n))) > 1e-9:
            raise ValidationException("d-vector winding needs a real n(k)")
        n = np.real(n)
        a, b = (axis + 1) % 3, (axis + 2) % 3
        if np.min(np.hypot(n[:, a], n[:, b])) < GAP_TOL:
            raise ServiceException("d-vector passes through the winding axis")
        phi = np.arctan2(n[:, b], n[:, a])
        steps = np.angle(np.exp(1j * (np.roll(phi, -1) - phi)))
        return float(np.sum(steps) / (2.0 * math.pi))

    def ssq_winding(
        self,
        theta1: float,
        theta2: float,
        gamma: float = 0.0,
        kcount: Optional[int] = None,
        biorthogonal: bool = False,
    ) -> WindingResult:
        """Lower-band winding of the split-step walk in its chiral frame.

        The d-vector form is attached as a cross-check for unitary walks.
        """
        spec = WalkSpec(
            variant=WalkVariant.SSQW1D,
            theta1=theta1,
            theta2=theta2,
            gamma=gamma,
            size=2,
            frame=WalkFrame.SYMMETRIC,
        )
        band = self.walks.band_grid(spec, kcount or self.kcount)
        result = self.winding_momentum(band, SIGMA_X, 0, biorthogonal)
        if gamma == 0.0:
            result.dvector = self.winding_dvector(band.bloch, axis=0)
        return result

    # ------------------------------------------------------------------
    # Chern numbers
    # ------------------------------------------------------------------

    @staticmethod
    def _links(psi: np.ndarray, axis: int) -> np.ndarray:
        ov = np.sum(np.conj(psi) * np.roll(psi, -1, axis=axis), axis=-1)
        mag = np.abs(ov)
        if np.min(mag) < LINK_TOL:
            logger.error("Link variable vanishes", axis=axis, smallest=float(np.min(mag)))
            raise ServiceException(
                "Link variable vanishes; refine the k-grid",
                details={"axis": axis, "smallest": float(np.min(mag))},
            )
        return ov / mag

    def chern_fhs(self, band: BandGrid, band_index: int = 0) -> ChernResult:
        """Chern number of one band from plaquette products of link variables.

        Band 0 is the band with the lower Re E at each k. A step that is
        proportional to the identity at every k has flat bands and C = 0.

        Raises:
            ValidationException: If the grid is not two-dimensional
            ServiceException: If the bands touch somewhere on the grid or a
                link vanishes
        """
        if band.k.ndim != 3:
            raise ValidationException("Chern numbers need a two-dimensional k-grid")
        grid = band.k.shape[:2]
        split = np.abs(band.eigenvalues[..., 0] - band.eigenvalues[..., 1])
        if np.all(split < DEGENERACY_TOL):
            logger.warning("Step is proportional to the identity; bands are flat")
            return ChernResult(
                value=0, band=band_index, grid=grid, field=np.zeros(grid), trivial=True
            )
        touching = int(np.sum(split < DEGENERACY_TOL))
        if touching:
            logger.error("Bands touch on the k-grid", points=touching)
            raise ServiceException(
                "Band degeneracy on the k-grid; the Chern number is undefined",
                details={"points": touching},
            )

        psi = band.eigenvectors[..., :, band_index]
        ux = self._links(psi, axis=0)
        uy = self._links(psi, axis=1)
        plaquette = (
            ux * np.roll(uy, -1, axis=0) * np.conj(np.roll(ux, -1, axis=1)) * np.conj(uy)
        )
        field = np.angle(plaquette)
        total = float(np.sum(field)) / (2.0 * math.pi)
        value = int(round(total))
        if abs(total - value) > 1e-6:
            raise ServiceException(
                "Plaquette flux is not a multiple of 2 pi", details={"flux": total}
            )
        logger.debug("Chern number evaluated", value=value, grid=grid)
        return ChernResult(value=value, band=band_index, grid=grid, field=field)

    def chern_walk(
        self,
        theta1: float,
        theta2: float,
        gamma_x: float = 0.0,
        gamma_y: float = 0.0,
        grid: Optional[int] = None,
        full_angle: bool = False,
    ) -> ChernResult:
        """Lower-band Chern number of the two-dimensional walk."""
        spec = WalkSpec(
            variant=WalkVariant.DTQW2D,
            theta1=theta1,
            theta2=theta2,
            gamma_x=gamma_x,
            gamma_y=gamma_y,
            size=2,
            full_angle=full_angle,
        )
        return self.chern_fhs(self.walks.band_grid(spec, grid or self.grid))

    # ------------------------------------------------------------------
    # Real-space winding
    # ------------------------------------------------------------------

    def winding_realspace(
        self,
        theta1: float,
        theta2: float,
        p_measure: float = 1.0,
        steps: int = 200,
        size: int = 51,
        chiral: Optional[np.ndarray] = None,
    ) -> DisplacementResult:
        """Mean displacement of a walker detected on sublattice B.

        The walk is the split-step walk in its symmetric frame. Sublattice A
        is the +1 eigenspace of Gamma and B the -1 eigenspace; the walker
        starts at the origin on A. Every step applies U, records the
        detection probability p_M |P_B psi|^2 per site and continues with
        M_1 = P_A + sqrt(1 - p_M) P_B.

        Raises:
            ValidationException: If p_measure is outside (0, 1] or steps < 1
        """
        if not 0.0 < p_measure <= 1.0:
            raise ValidationException(
                f"Measurement strength must lie in (0, 1], got {p_measure}"
            )
        if steps < 1:
            raise ValidationException("Real-space winding needs at least one step")
        gamma_op = SIGMA_X if chiral is None else np.asarray(chiral, dtype=complex)
        _, vecs = np.linalg.eigh(gamma_op)
        proj_a = np.outer(vecs[:, 1], vecs[:, 1].conj())
        proj_b = np.eye(2) - proj_a

        spec = WalkSpec(
            variant=WalkVariant.SSQW1D,
            theta1=theta1,
            theta2=theta2,
            size=size,
            frame=WalkFrame.SYMMETRIC,
        )
        step = self.walks.build_step(spec)
        x = self.walks.sites(spec)
        psi = np.zeros(spec.state_shape, dtype=complex)
        psi[size // 2] = vecs[:, 1]
        keep = math.sqrt(1.0 - p_measure)

        partial = np.empty(steps)
        total = detected = 0.0
        for j in range(steps):
            psi = step.apply(psi)
            b_part = psi @ proj_b.T
            prob = p_measure * np.sum(np.abs(b_part) ** 2, axis=-1)
            total += float(np.dot(x, prob))
            detected += float(prob.sum())
            partial[j] = total
            psi = psi @ proj_a.T + keep * b_part

        logger.debug("Real-space winding", value=total, detected=detected)
        return DisplacementResult(
            value=total, partial=partial, detected=detected, p_measure=p_measure, steps=steps
        )

    # ------------------------------------------------------------------
    # Edge spectra
    # ------------------------------------------------------------------

    @staticmethod
    def domain_map(size: int, inner: float, outer: float, half_width: int) -> np.ndarray:
        """Per-site angle: ``inner`` for |x| <= half_width, else ``outer``."""
        x = np.arange(size) - size // 2
        return np.where(np.abs(x) <= half_width, inner, outer).astype(float)

    @staticmethod
    def _localization(
        probs: np.ndarray, x: np.ndarray, half_width: int, reach: int
    ) -> Tuple[np.ndarray, np.ndarray]:
        """IPR and wall weight per state for site probabilities (sites, states)."""
        probs = probs / probs.sum(axis=0, keepdims=True)
        ipr = np.sum(probs**2, axis=0)
        near = (np.abs(x - half_width) <= reach) | (np.abs(x + half_width) <= reach)
        return ipr, probs[near].sum(axis=0)

    @staticmethod
    def _position_basis(
        lam: np.ndarray,
        vectors: np.ndarray,
        clusters: Sequence[np.ndarray],
        positions: np.ndarray,
    ) -> np.ndarray:
        """Rotate each degenerate cluster into eigenvectors of the projected position.

        eig returns arbitrary mixtures of degenerate wall modes; diagonalizing
        x on the cluster span separates them into one state per wall.
        """
        vectors = vectors.copy()
        for idx in clusters:
            if len(idx) < 2 or np.max(np.abs(lam[idx] - lam[idx[0]])) > DEGENERACY_TOL:
                continue
            q, _ = np.linalg.qr(vectors[:, idx])
            x_sub = q.conj().T @ (positions[:, None] * q)
            _, w = np.linalg.eigh(0.5 * (x_sub + x_sub.conj().T))
            vectors[:, idx] = q @ w
        return vectors

    def _walls(self, size: int, half_width: Optional[int], reach: int) -> int:
        lb = size // 4 if half_width is None else half_width
        if lb < 1 or lb + reach >= size // 2:
            raise ValidationException(
                f"Domain half width {lb} leaves no bulk on a lattice of {size} sites"
            )
        return lb

    def edge_spectrum_1d(
        self,
        inner: Angles,
        outer: Angles,
        gamma: float = 0.0,
        size: int = 201,
        half_width: Optional[int] = None,
        eps: Optional[float] = None,
        ipr_min: float = IPR_MIN,
        wall_min: float = WALL_WEIGHT_MIN,
        reach: int = WALL_REACH,
    ) -> EdgeSpectrum:
        """Full spectrum of a closed split-step chain with two angle domains.

        States with |arg lambda| < eps or |arg lambda - pi| < eps are mid-gap;
        eps defaults to 1e-6 for unitary chains and 1e-3 otherwise.

        Raises:
            ValidationException: If the domains leave no bulk
            ConvergenceException: If the eigensolver fails
        """
        lb = self._walls(size, half_width, reach)
        spec = WalkSpec(
            variant=WalkVariant.SSQW1D,
            theta1=self.domain_map(size, inner[0], outer[0], lb),
            theta2=self.domain_map(size, inner[1], outer[1], lb),
            gamma=gamma,
            size=size,
        )
        eig = self.numkit.eig_dense(self.walks.build_step(spec).dense())
        lam = eig.eigenvalues
        eps = eps if eps is not None else (1e-6 if gamma == 0.0 else 1e-3)
        near_zero = np.abs(np.angle(lam)) < eps
        near_pi = np.abs(np.angle(-lam)) < eps
        midgap = near_zero | near_pi

        x = self.walks.sites(spec)
        vectors = self._position_basis(
            lam,
            eig.eigenvectors,
            [np.flatnonzero(near_zero), np.flatnonzero(near_pi)],
            np.repeat(x.astype(float), 2),
        )
        probs = np.sum(np.abs(vectors.reshape(size, 2, -1)) ** 2, axis=1)
        ipr, wall = self._localization(probs, x, lb, reach)
        localized = (ipr > ipr_min) & (wall >= wall_min)
        isolated = bool(np.all(localized[midgap]))
        if not isolated:
            logger.warning(
                "Mid-gap states not isolated at the walls",
                midgap=int(midgap.sum()),
                localized=int((midgap & localized).sum()),
            )
        logger.info("Edge spectrum computed", size=size, gamma=gamma, midgap=int(midgap.sum()))
        return EdgeSpectrum(
            eigenvalues=lam,
            energies=1j * np.log(lam),
            ipr=ipr,
            wall_weight=wall,
            midgap=midgap,
            localized=localized,
            walls=(-lb, lb),
            isolated=isolated,
        )

    def _bulk_ranges(
        self,
        domains: Sequence[Angles],
        gamma_x: float,
        gamma_y: float,
        full_angle: bool,
        grid: int,
    ) -> List[Tuple[float, float]]:
        """|Re E| range of each homogeneous 2D domain."""
        ranges = []
        for t1, t2 in domains:
            spec = WalkSpec(
                variant=WalkVariant.DTQW2D,
                theta1=t1,
                theta2=t2,
                gamma_x=gamma_x,
                gamma_y=gamma_y,
                size=2,
                full_angle=full_angle,
            )
            e = np.abs(self.walks.band_grid(spec, grid).quasi_energies.real)
            ranges.append((float(e.min()), float(e.max())))
        return ranges

    def edge_bands_2d(
        self,
        inner: Angles,
        outer: Angles,
        gamma_x: float = 0.0,
        gamma_y: float = 0.0,
        size_y: int = 101,
        kx_count: int = 64,
        half_width: Optional[int] = None,
        full_angle: bool = False,
        bulk_grid: int = 48,
        ipr_min: float = IPR_MIN,
        wall_min: float = WALL_WEIGHT_MIN,
        reach: int = WALL_REACH,
        workers: Optional[int] = None,
    ) -> EdgeSpectrum:
        """Quasi-energy bands of a strip periodic in x with two domains along y.

        Each kx block is diagonalized independently. A state is mid-gap when
        its |Re E| lies outside the bulk |Re E| range of both domains.

        Raises:
            ValidationException: If the domains leave no bulk
            ConvergenceException: If the eigensolver fails
        """
        lb = self._walls(size_y, half_width, reach)
        spec = WalkSpec(
            variant=WalkVariant.DTQW2D,
            theta1=self.domain_map(size_y, inner[0], outer[0], lb),
            theta2=self.domain_map(size_y, inner[1], outer[1], lb),
            gamma_x=gamma_x,
            gamma_y=gamma_y,
            size=2,
            size_y=size_y,
            full_angle=full_angle,
        )
        kx = -0.5 * math.pi + math.pi * np.arange(kx_count) / kx_count

        def _block(i: int) -> Tuple[np.ndarray, np.ndarray]:
            eig = self.numkit.eig_dense(self.walks.build_step(spec, momentum_x=kx[i]).dense())
            probs = np.sum(np.abs(eig.eigenvectors.reshape(size_y, 2, -1)) ** 2, axis=1)
            return eig.eigenvalues, probs

        blocks = SweepService(workers).run(_block, list(range(kx_count)))
        lam = np.array([b[1][0] for b in blocks])
        probs = np.stack([b[1][1] for b in blocks])

        y = np.arange(size_y) - size_y // 2
        ipr, wall = zip(*(self._localization(p, y, lb, reach) for p in probs))
        ipr, wall = np.array(ipr), np.array(wall)
        localized = (ipr > ipr_min) & (wall >= wall_min)

        energies = 1j * np.log(lam)
        mag = np.abs(energies.real)
        midgap = np.ones(mag.shape, dtype=bool)
        bulk = self._bulk_ranges((inner, outer), gamma_x, gamma_y, full_angle, bulk_grid)
        for lo, hi in bulk:
            midgap &= (mag < lo - BULK_MARGIN) | (mag > hi + BULK_MARGIN)
        isolated = bool(np.all(localized[midgap]))
        if not isolated:
            logger.warning(
                "Mid-gap states not isolated at the walls",
                midgap=int(midgap.sum()),
                localized=int((midgap & localized).sum()),
            )
        return EdgeSpectrum(
            eigenvalues=lam,
            energies=energies,
            kx=kx,
            ipr=ipr,
            wall_weight=wall,
            midgap=midgap,
            localized=localized,
            walls=(-lb, lb),
            isolated=isolated,
        )

    # ------------------------------------------------------------------
    # Reference models
    # ------------------------------------------------------------------

    @staticmethod
    def ssh_dvector(v: float, w: float, k: np.ndarray) -> np.ndarray:
        """d(k) = (v + w cos k, w sin k, 0) for H(k) = d.sigma."""
        k = np.asarray(k, dtype=float)
        return np.stack([v + w * np.cos(k), w * np.sin(k), np.zeros_like(k)], axis=-1)

    def ssh_band(self, v: float, w: float, kcount: Optional[int] = None) -> BandGrid:
        """Band grid of the stroboscopic step exp(-i H(k) / (v + w)).

        The rescaled time keeps |E| <= 1, so the step has the same
        eigenvectors and band order as H(k).
        """
        kcount = kcount or self.kcount
        k = -math.pi + 2.0 * math.pi * np.arange(kcount) / kcount
        d = self.ssh_dvector(v, w, k) / max(v + w, 1e-300)
        h = np.einsum("kj,jab->kab", d.astype(complex), np.array(PAULI))
        e, vecs = np.linalg.eigh(h)
        mag = np.linalg.norm(d, axis=-1)
        safe = np.where(mag > GAP_TOL, mag, 1.0)[:, None]
        bloch = np.where(mag[:, None] > GAP_TOL, d / safe, 0.0)
        return BandGrid(
            k=k,
            energy=mag.astype(complex),
            bloch=bloch.astype(complex),
            cos_numeric=np.cos(mag).astype(complex),
            eigenvalues=np.exp(-1j * e),
            eigenvectors=vecs,
            closed_form_bloch=True,
        )

    @staticmethod
    def ssh_hamiltonian(v: float, w: float, cells: int, periodic: bool = False) -> np.ndarray:
        """Tight-binding matrix in the basis (A_1, B_1, A_2, B_2, ...)."""
        n = 2 * cells
        h = np.zeros((n, n))
        idx = np.arange(cells)
        h[2 * idx, 2 * idx + 1] = v
        h[2 * idx[:-1] + 1, 2 * idx[:-1] + 2] = w
        if periodic:
            h[n - 1, 0] = w
        return h + h.T

    def ssh_reference(
        self,
        v: float,
        w: float,
        cells: int = 100,
        open_chain: bool = True,
        kcount: Optional[int] = None,
    ) -> SshReport:
        """Bulk dispersion, d-vector, winding and open-chain zero modes.

        Zero modes (|E| < 1e-6) are rotated to eigenstates of the sublattice
        operator inside their degenerate subspace.

        Raises:
            ValidationException: If a hopping is negative or cells < 1
        """
        if v < 0.0 or w < 0.0:
            raise ValidationException("SSH hoppings must be non-negative")
        if cells < 1:
            raise ValidationException("SSH chain needs at least one cell")
        band = self.ssh_band(v, w, kcount)
        d = self.ssh_dvector(v, w, band.k)
        dispersion = np.sqrt(np.maximum(v * v + w * w + 2.0 * v * w * np.cos(band.k), 0.0))
        try:
            winding: Optional[float] = self.winding_momentum(band, SIGMA_Z).value
        except ServiceException:
            logger.warning("SSH chain is gapless; winding undefined", v=v, w=w)
            winding = None

        h = self.ssh_hamiltonian(v, w, cells, periodic=not open_chain)
        eig = self.numkit.eig_dense(h, hermitian=True)
        energies = eig.eigenvalues.real
        zero = np.abs(energies) < ZERO_MODE_TOL
        modes = eig.eigenvectors[:, zero]
        polarization = None
        if modes.shape[1] > 0:
            sublattice = np.tile([1.0, -1.0], cells)
            g = modes.conj().T @ (sublattice[:, None] * modes)
            _, rot = np.linalg.eigh(g)
            modes = modes @ rot
            polarization = np.sum(np.abs(modes[0::2]) ** 2, axis=0)
        logger.debug("SSH reference", v=v, w=w, zero_modes=int(zero.sum()))
        return SshReport(
            k=band.k,
            dispersion=dispersion,
            dvector=d,
            spectrum=energies,
            zero_modes=modes,
            polarization=polarization,
            winding=winding,
        )

    @staticmethod
    def ep_matrix(beta: float) -> np.ndarray:
        """3x3 matrix [[0, 1, 1], [1, 0, 1], [beta, 1, 0]]."""
        return np.array([[0.0, 1.0, 1.0], [1.0, 0.0, 1.0], [beta, 1.0, 0.0]], dtype=complex)

    def exceptional_point_demo(
        self, betas: Optional[Sequence[float]] = None
    ) -> ExceptionalPointReport:
        """Eigenvalue coalescence of ``ep_matrix`` as beta approaches -5/4.

        At beta = -5/4 two eigenvalues and their eigenvectors merge at 1/2,
        which shows as a vanishing spread and a diverging condition number.
        """
        betas = np.asarray(
            betas if betas is not None else np.linspace(-2.0, -0.5, 61), dtype=float
        )
        values, spread, cond = [], [], []
        for beta in betas:
            eig = self.numkit.eig_dense(self.ep_matrix(beta), tol=1e-6)
            w = eig.eigenvalues
            gaps = np.abs(w[:, None] - w[None, :]) + np.diag(np.full(3, np.inf))
            values.append(w)
            spread.append(float(gaps.min()))
            cond.append(float(np.linalg.cond(eig.eigenvectors)))
        return ExceptionalPointReport(
            beta=betas,
            eigenvalues=np.array(values),
            spread=np.array(spread),
            condition=np.array(cond),
        )

    # ------------------------------------------------------------------
    # Sweeps
    # ------------------------------------------------------------------

    def phase_diagram_1d(
        self,
        theta1s: Sequence[float],
        theta2s: Sequence[float],
        gammas: Sequence[float] = (0.0,),
        kcount: Optional[int] = None,
        workers: Optional[int] = None,
    ) -> PhaseDiagram:
        """Split-step winding over a (theta1, theta2, gamma) grid."""
        keys = [
            (float(a), float(b), float(g)) for a in theta1s for b in theta2s for g in gammas
        ]

        def _point(key: Tuple[float, float, float]) -> PhasePoint:
            t1, t2, g = key
            try:
                value, failed = self.ssq_winding(t1, t2, g, kcount).value, False
            except ServiceException:
                value, failed = math.nan, True
            return PhasePoint(theta1=t1, theta2=t2, gamma=g, invariant=value, failed=failed)

        return [p for _, p in SweepService(workers).run(_point, keys)]

    def chern_sweep(
        self,
        theta1s: Sequence[float],
        theta2s: Sequence[float],
        gamma_xs: Sequence[float] = (0.0,),
        gamma_y: float = 0.0,
        grid: Optional[int] = None,
        full_angle: bool = False,
        workers: Optional[int] = None,
    ) -> PhaseDiagram:
        """Lower-band Chern number over a (theta1, theta2, gamma_x) grid."""
        keys = [
            (float(a), float(b), float(g))
            for a in theta1s
            for b in theta2s
            for g in gamma_xs
        ]

        def _point(key: Tuple[float, float, float]) -> PhasePoint:
            t1, t2, gx = key
            try:
                value = float(self.chern_walk(t1, t2, gx, gamma_y, grid, full_angle).value)
                failed = False
            except ServiceException:
                value, failed = math.nan, True
            return PhasePoint(
                theta1=t1, theta2=t2, gamma=gx, gamma_y=gamma_y, invariant=value, failed=failed
            )

        return [p for _, p in SweepService(workers).run(_point, keys)]

    def realspace_sweep(
        self,
        theta1s: Sequence[float],
        theta2: float,
        p_measure: float = 1.0,
        steps: int = 200,
        size: int = 51,
        workers: Optional[int] = None,
    ) -> List[Tuple[float, DisplacementResult]]:
        """Mean displacement as a function of theta1 at fixed theta2."""
        return SweepService(workers).run(
            lambda t1: self.winding_realspace(t1, theta2, p_measure, steps, size),
            [float(t) for t in theta1s],
        )


# Singleton instance
_topo_service = None


def get_topo_service() -> TopoService:
    """Get topology service singleton instance."""
    global _topo_service
    if _topo_service is None:
        _topo_service = TopoService()
    return _topo_service
