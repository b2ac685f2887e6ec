"""
Topological invariant and edge-spectrum models.
"""

import math
from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from ...shared.utils.angle_utils import Angle, AngleList, FloatList


class WindingResult(BaseModel):
    """Winding number of one band over a 1D Brillouin zone."""

    value: float = Field(..., description="Real part of the winding sum")
    imag: float = Field(0.0, description="Imaginary part (non-Hermitian bands)")
    kcount: int = Field(..., ge=2, description="k-grid size")
    band: int = Field(0, description="Band index")
    method: str = Field("integral", description="integral | dvector")
    dvector: Optional[float] = Field(
        None, description="d-vector winding of the same band grid, when n is real"
    )

    @property
    def nearest(self) -> int:
        """Nearest integer."""
        return int(round(self.value))

    @property
    def integer_gap(self) -> float:
        """Distance to the nearest integer."""
        return abs(self.value - round(self.value))


class ChernResult(BaseModel):
    """Lattice Chern number of one band from U(1) link variables."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    value: int = Field(..., description="Chern number")
    band: int = Field(0, description="Band index")
    grid: Tuple[int, int] = Field(..., description="k-grid size (Kx, Ky)")
    field: np.ndarray = Field(
        ..., description="Plaquette field strength F(k), principal branch"
    )
    trivial: bool = Field(False, description="Step proportional to identity on every k")

    @property
    def flux(self) -> float:
        """Total field strength, 2 pi times the Chern number."""
        return float(np.sum(self.field))


class EdgeSpectrum(BaseModel):
    """Spectrum of a lattice with domain walls and the localization of each state.

    1D: ``eigenvalues`` of the full step operator with one entry per state.
    2D strip: ``kx`` and ``energies`` of shape (Kx, 2 N_y), flattened state
    measures follow the same (kx, state) order.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    eigenvalues: np.ndarray = Field(..., description="lambda per state (1D) or per (kx, state)")
    energies: np.ndarray = Field(..., description="Complex quasi-energies i log(lambda)")
    kx: Optional[np.ndarray] = Field(None, description="Strip momenta (2D)")
    ipr: np.ndarray = Field(..., description="Inverse participation ratio per state")
    wall_weight: np.ndarray = Field(..., description="Probability within reach of a wall")
    midgap: np.ndarray = Field(..., description="Energy inside a bulk gap")
    localized: np.ndarray = Field(..., description="Passes the IPR and wall-weight thresholds")
    walls: Tuple[int, int] = Field(..., description="Domain-wall positions -L_B, +L_B")
    isolated: bool = Field(..., description="Every mid-gap state is localized at a wall")

    @property
    def edge_states(self) -> np.ndarray:
        """Flat indices of localized mid-gap states."""
        return np.flatnonzero(np.ravel(self.midgap & self.localized))

    @property
    def midgap_count(self) -> int:
        return int(np.count_nonzero(self.midgap))


class SshReport(BaseModel):
    """Bulk and open-chain description of the SSH chain."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    k: np.ndarray = Field(..., description="Bulk momenta")
    dispersion: np.ndarray = Field(..., description="Upper band E+(k)")
    dvector: np.ndarray = Field(..., description="d(k), shape (K, 3)")
    spectrum: Optional[np.ndarray] = Field(None, description="Open-chain energies")
    zero_modes: Optional[np.ndarray] = Field(
        None, description="Zero-energy states as columns in the sublattice basis"
    )
    polarization: Optional[np.ndarray] = Field(
        None, description="Weight on sublattice A per zero mode"
    )
    winding: Optional[float] = Field(
        None, description="Bulk winding number (None when gapless)"
    )

    @property
    def gap(self) -> float:
        """Bulk gap 2 min |E+|."""
        return float(2.0 * np.min(self.dispersion))

    @property
    def zero_mode_count(self) -> int:
        return 0 if self.zero_modes is None else int(self.zero_modes.shape[1])


class DisplacementResult(BaseModel):
    """Mean chiral displacement measured by sublattice detection."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    value: float = Field(..., description="Accumulated mean displacement")
    partial: np.ndarray = Field(..., description="Running displacement after each step")
    detected: float = Field(..., description="Total detection probability")
    p_measure: float = Field(..., description="Measurement strength pM")
    steps: int = Field(..., ge=1, description="Number of steps")


class ExceptionalPointReport(BaseModel):
    """Spectral coalescence of a non-Hermitian matrix near an exceptional point."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    beta: np.ndarray = Field(..., description="Parameter values")
    eigenvalues: np.ndarray = Field(..., description="Eigenvalues per beta, shape (B, 3)")
    spread: np.ndarray = Field(..., description="Smallest eigenvalue separation per beta")
    condition: np.ndarray = Field(..., description="Condition number of the eigenvector matrix")


class PhasePoint(BaseModel):
    """Invariant at one parameter point of a phase diagram."""

    theta1: float
    theta2: float
    gamma: float = Field(0.0, description="gamma (1D) or gamma_x (2D)")
    gamma_y: float = 0.0
    invariant: float
    failed: bool = Field(False, description="Invariant undefined (gap closing)")


PhaseDiagram = List[PhasePoint]


# ---------------------------------------------------------------------------
# Run requests
# ---------------------------------------------------------------------------


class _Request(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class WindingRequest(_Request):
    """Split-step winding at one point or over a (theta1, theta2, gamma) grid."""

    theta1: Angle = Field(-3.0 * math.pi / 8.0, description="First coin angle")
    theta2: Angle = Field(math.pi / 8.0, description="Second coin angle")
    gamma: float = Field(0.0, description="Gain/loss")
    kcount: Optional[int] = Field(None, ge=8, description="k-grid size")
    biorthogonal: bool = Field(False, description="Left-eigenvector bra")
    theta1s: Optional[AngleList] = Field(None, description="Sweep values of theta1")
    theta2s: Optional[AngleList] = Field(None, description="Sweep values of theta2")
    gammas: Optional[FloatList] = Field(None, description="Sweep values of gamma")

    @property
    def is_sweep(self) -> bool:
        return any(v is not None for v in (self.theta1s, self.theta2s, self.gammas))


class ChernRequest(_Request):
    """Lower-band Chern number of the 2D walk at one point or over a grid."""

    theta1: Angle = Field(7.0 * math.pi / 6.0, description="First coin angle")
    theta2: Angle = Field(7.0 * math.pi / 6.0, description="Second coin angle")
    gamma_x: float = Field(0.0, description="Gain/loss along x")
    gamma_y: float = Field(0.0, description="Gain/loss along y")
    grid: Optional[int] = Field(None, ge=4, description="k-grid size per axis")
    full_angle: bool = Field(True, description="Coin exp(-i theta sigma_y)")
    theta1s: Optional[AngleList] = Field(None, description="Sweep values of theta1")
    theta2s: Optional[AngleList] = Field(None, description="Sweep values of theta2")
    gamma_xs: Optional[FloatList] = Field(None, description="Sweep values of gamma_x")

    @property
    def is_sweep(self) -> bool:
        return any(v is not None for v in (self.theta1s, self.theta2s, self.gamma_xs))


class RealspaceRequest(_Request):
    """Mean chiral displacement under sublattice detection."""

    theta1: Angle = Field(-3.0 * math.pi / 8.0, description="First coin angle")
    theta2: Angle = Field(math.pi / 8.0, description="Second coin angle")
    p_measure: float = Field(1.0, gt=0.0, le=1.0, description="Measurement strength")
    steps: int = Field(200, ge=1, description="Number of steps")
    size: int = Field(51, ge=3, description="Lattice size")
    theta1s: Optional[AngleList] = Field(None, description="Sweep values of theta1")


class Edge1dRequest(_Request):
    """Closed split-step chain with two angle domains."""

    inner_theta1: Angle = Field(-3.0 * math.pi / 8.0, description="Inner domain theta1")
    inner_theta2: Angle = Field(math.pi / 4.0, description="Inner domain theta2")
    outer_theta1: Angle = Field(-3.0 * math.pi / 8.0, description="Outer domain theta1")
    outer_theta2: Angle = Field(5.0 * math.pi / 8.0, description="Outer domain theta2")
    gamma: float = Field(0.0, description="Gain/loss")
    size: int = Field(201, ge=8, description="Lattice size")
    half_width: Optional[int] = Field(None, ge=1, description="Domain-wall position L_B")


class Edge2dRequest(_Request):
    """Strip periodic in x with two angle domains along y."""

    inner_theta1: Angle = Field(7.0 * math.pi / 6.0, description="Inner domain theta1")
    inner_theta2: Angle = Field(7.0 * math.pi / 6.0, description="Inner domain theta2")
    outer_theta1: Angle = Field(3.0 * math.pi / 2.0, description="Outer domain theta1")
    outer_theta2: Angle = Field(math.pi, description="Outer domain theta2")
    gamma_x: float = Field(0.0, description="Gain/loss along x")
    gamma_y: float = Field(0.0, description="Gain/loss along y")
    size_y: int = Field(101, ge=8, description="Strip width")
    kx_count: int = Field(64, ge=2, description="Number of strip momenta")
    half_width: Optional[int] = Field(None, ge=1, description="Domain-wall position L_B")
    full_angle: bool = Field(True, description="Coin exp(-i theta sigma_y)")


class SshRequest(_Request):
    """SSH chain bulk and open-boundary description."""

    v: float = Field(0.5, ge=0.0, description="Intracell hopping")
    w: float = Field(1.0, ge=0.0, description="Intercell hopping")
    cells: int = Field(100, ge=1, description="Unit cells of the open chain")
    open_chain: bool = Field(True, description="Diagonalize the open chain")
    kcount: Optional[int] = Field(None, ge=8, description="Bulk k-grid size")


class ExceptionalPointRequest(_Request):
    """Spectral coalescence scan of the 3x3 non-Hermitian matrix."""

    beta_min: float = Field(-2.0, description="First beta")
    beta_max: float = Field(-0.5, description="Last beta")
    points: int = Field(61, ge=2, description="Number of beta values")

