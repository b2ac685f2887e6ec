"""
Quantum-walk domain models.
"""

import math
from enum import Enum
from typing import Literal, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ...shared.utils.angle_utils import Angle, parse_angle


class WalkVariant(str, Enum):
    """Supported walk protocols."""

    DTQW1D = "dtqw1d"
    SSQW1D = "ssqw1d"
    ELECTRIC1D = "electric1d"
    DTQW2D = "dtqw2d"
    COIN4D2D = "coin4d2d"


class Coin4D(str, Enum):
    """Four-dimensional coins for the two-dimensional walk."""

    HADAMARD = "hadamard"
    GROVER = "grover"
    FOURIER = "fourier"


class WalkFrame(str, Enum):
    """Time frame of the split-step walk."""

    NATURAL = "natural"
    SYMMETRIC = "symmetric"


class NormRegime(str, Enum):
    """Long-time behaviour of the raw norm P(t)."""

    BOUNDED = "bounded"
    LINEAR = "linear"
    EXPONENTIAL = "exponential"
    INDETERMINATE = "indeterminate"


AngleMap = Union[float, np.ndarray]


class WalkSpec(BaseModel):
    """Full description of a walk protocol on a periodic lattice.

    Coin angles are either one number or a per-site array that broadcasts
    to the lattice shape (a length-N_y array sets domains along y).
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    variant: WalkVariant = Field(..., description="Walk protocol")
    theta1: AngleMap = Field(0.0, description="First coin angle (global or per site)")
    theta2: AngleMap = Field(0.0, description="Second coin angle (global or per site)")
    gamma: float = Field(0.0, description="Gain/loss exponent of the 1D split-step walk")
    gamma_x: float = Field(0.0, description="Gain/loss exponent along x (2D)")
    gamma_y: float = Field(0.0, description="Gain/loss exponent along y (2D)")
    phi: float = Field(0.0, description="Electric phase per site")
    coin_phase: float = Field(0.0, description="Phase operator angle of the split-step walk")
    coin4d: Coin4D = Field(Coin4D.HADAMARD, description="Coin of the 4D-coin walk")
    size: int = Field(101, ge=2, description="Lattice size N (N_x in 2D)")
    size_y: Optional[int] = Field(None, ge=2, description="Lattice size N_y (2D)")
    stride: int = Field(1, ge=1, le=2, description="Site displacement of each partial shift")
    frame: WalkFrame = Field(WalkFrame.NATURAL, description="Split-step time frame")
    full_angle: bool = Field(
        False, description="Coin exp(-i theta sigma_y) instead of exp(-i theta sigma_y / 2)"
    )

    @field_validator("theta1", "theta2", mode="before")
    @classmethod
    def _angle_map(cls, value):
        if isinstance(value, (list, tuple, np.ndarray)):
            arr = np.array([parse_angle(v) for v in np.ravel(value)], dtype=float)
            return arr.reshape(np.shape(value))
        return parse_angle(value)

    @field_validator("phi", mode="before")
    @classmethod
    def _angle(cls, value):
        return parse_angle(value)

    @model_validator(mode="after")
    def _check(self) -> "WalkSpec":
        for name in ("theta1", "theta2"):
            value = getattr(self, name)
            if isinstance(value, np.ndarray) and not np.all(np.isfinite(value)):
                raise ValueError(f"{name} map has non-finite entries")
        return self

    @property
    def angle_scale(self) -> float:
        """Factor applied to theta1, theta2 before they enter R(theta)."""
        return 2.0 if self.full_angle else 1.0

    @property
    def is_2d(self) -> bool:
        """Whether the lattice is two-dimensional."""
        return self.variant in (WalkVariant.DTQW2D, WalkVariant.COIN4D2D)

    @property
    def coin_dim(self) -> int:
        """Dimension of the coin space."""
        return 4 if self.variant == WalkVariant.COIN4D2D else 2

    @property
    def lattice_shape(self) -> Tuple[int, ...]:
        """Lattice shape, (N,) or (N_x, N_y)."""
        if self.is_2d:
            return (self.size, self.size_y or self.size)
        return (self.size,)

    @property
    def state_shape(self) -> Tuple[int, ...]:
        """Amplitude array shape, lattice followed by coin."""
        return self.lattice_shape + (self.coin_dim,)

    @property
    def homogeneous(self) -> bool:
        """True when no per-site angle map and no electric phase is present."""
        if self.variant == WalkVariant.ELECTRIC1D and self.phi != 0.0:
            return False
        return not any(isinstance(v, np.ndarray) for v in (self.theta1, self.theta2))

    @property
    def is_unitary(self) -> bool:
        """True when every gain/loss exponent vanishes."""
        return self.gamma == 0.0 and self.gamma_x == 0.0 and self.gamma_y == 0.0


class StateVector(BaseModel):
    """Raw walker amplitudes over sites and coin; never renormalized."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    amplitudes: np.ndarray = Field(..., description="Amplitudes, lattice shape + (coin,)")

    @model_validator(mode="after")
    def _check(self) -> "StateVector":
        amps = np.asarray(self.amplitudes, dtype=complex)
        if not np.all(np.isfinite(amps)):
            raise ValueError("amplitudes must be finite")
        object.__setattr__(self, "amplitudes", amps)
        return self

    @property
    def norm(self) -> float:
        """Raw norm P = sum |C|^2."""
        return float(np.sum(np.abs(self.amplitudes) ** 2))

    def probabilities(self) -> np.ndarray:
        """Site probabilities normalized to one (coin traced out)."""
        p = np.sum(np.abs(self.amplitudes) ** 2, axis=-1)
        return p / p.sum()


class WalkTrajectory(BaseModel):
    """Result of a real-space evolution."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    state: StateVector = Field(..., description="Final raw state")
    norms: np.ndarray = Field(..., description="P(t) for t = 0..steps")
    distribution: np.ndarray = Field(..., description="Final normalized site distribution")
    history: Optional[np.ndarray] = Field(
        None, description="Normalized distributions for t = 0..steps"
    )

    @property
    def steps(self) -> int:
        return len(self.norms) - 1


class BandGrid(BaseModel):
    """Two-band quasi-energies and Bloch vectors sampled on a k-grid.

    The operator convention is U(k) = cos E - i sin E n.sigma; eigenvalues
    are exp(-iE) and band 0 is the one with the lower Re E.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    k: np.ndarray = Field(..., description="k samples, shape (K,) or (Kx, Ky, 2)")
    energy: np.ndarray = Field(..., description="Complex E(k) from the closed form")
    bloch: np.ndarray = Field(..., description="Complex n(k), shape k-grid + (3,)")
    cos_numeric: np.ndarray = Field(..., description="Half trace of the composed U(k)")
    eigenvalues: np.ndarray = Field(..., description="Eigenvalues per k, shape k-grid + (2,)")
    eigenvectors: np.ndarray = Field(
        ..., description="Unit eigenvectors as columns, shape k-grid + (2, 2)"
    )
    closed_form_bloch: bool = Field(
        ..., description="Whether n(k) comes from a closed form (else numeric)"
    )

    @property
    def quasi_energies(self) -> np.ndarray:
        """Complex quasi-energies i log(lambda) per band."""
        return 1j * np.log(self.eigenvalues)

    def energy_deviation(self) -> float:
        """Largest |cos E_closed - half trace| over the grid."""
        return float(np.max(np.abs(np.cos(self.energy) - self.cos_numeric)))

    def bloch_norm_deviation(self, gap_tol: float = 1e-8) -> float:
        """Largest |n.n - 1| where |sin E| exceeds ``gap_tol``."""
        nn = np.sum(self.bloch * self.bloch, axis=-1)
        mask = np.abs(np.sin(self.energy)) > gap_tol
        if not np.any(mask):
            return 0.0
        return float(np.max(np.abs(nn[mask] - 1.0)))


class CriticalGamma(BaseModel):
    """Gain/loss value at which the split-step gap closes."""

    value: float = Field(..., description="Re gamma_c")
    imag: float = Field(0.0, description="Im gamma_c (nonzero when flagged complex)")
    is_complex: bool = Field(..., description="cosh argument below one")
    argument: float = Field(..., description="Argument of arccosh")


class SymmetryCheck(BaseModel):
    """Per-k outcome of an operator symmetry test."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    per_k: np.ndarray = Field(..., description="Test outcome at each k")
    holds: bool = Field(..., description="Outcome at every sampled k")
    max_deviation: float = Field(..., description="Largest operator-norm deviation")
    exact_phase: bool = Field(..., description="Every quasi-energy real (unbroken phase)")


# ---------------------------------------------------------------------------
# Run requests
# ---------------------------------------------------------------------------


class _Request(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class WalkRequest(_Request):
    """Real-space evolution from the origin."""

    variant: WalkVariant = Field(WalkVariant.DTQW1D, description="Walk protocol")
    theta1: Angle = Field(math.pi / 2.0, description="First coin angle")
    theta2: Angle = Field(0.0, description="Second coin angle")
    gamma: float = Field(0.0, description="Split-step gain/loss")
    gamma_x: float = Field(0.0, description="Gain/loss along x (2D)")
    gamma_y: float = Field(0.0, description="Gain/loss along y (2D)")
    phi: Angle = Field(0.0, description="Electric phase per site")
    coin4d: Coin4D = Field(Coin4D.HADAMARD, description="Coin of the 4D-coin walk")
    size: int = Field(401, ge=3, description="Lattice size")
    size_y: Optional[int] = Field(None, ge=3, description="Lattice size along y (2D)")
    steps: int = Field(100, ge=0, description="Number of steps")
    stride: int = Field(1, ge=1, le=2, description="Partial shift stride")
    frame: WalkFrame = Field(WalkFrame.NATURAL, description="Split-step frame")
    full_angle: bool = Field(False, description="Coin exp(-i theta sigma_y)")
    table: Literal["distribution", "spread"] = Field(
        "distribution", description="Final site distribution or P(t) and variance per step"
    )

    def spec(self) -> WalkSpec:
        return WalkSpec(**self.model_dump(exclude={"steps", "table"}))


class BandsRequest(_Request):
    """Quasi-energy bands of a homogeneous two-band walk."""

    variant: WalkVariant = Field(WalkVariant.SSQW1D, description="Walk protocol")
    theta1: Angle = Field(-3.0 * math.pi / 8.0, description="First coin angle")
    theta2: Angle = Field(math.pi / 4.0, description="Second coin angle")
    gamma: float = Field(0.0, description="Split-step gain/loss")
    gamma_x: float = Field(0.0, description="Gain/loss along x (2D)")
    gamma_y: float = Field(0.0, description="Gain/loss along y (2D)")
    coin_phase: Angle = Field(0.0, description="Split-step phase operator angle")
    stride: int = Field(1, ge=1, le=2, description="Partial shift stride")
    frame: WalkFrame = Field(WalkFrame.NATURAL, description="Split-step frame")
    full_angle: bool = Field(False, description="Coin exp(-i theta sigma_y)")
    kcount: Optional[int] = Field(None, ge=2, description="k-grid size per axis")

    def spec(self) -> WalkSpec:
        return WalkSpec(size=2, **self.model_dump(exclude={"kcount"}))


class GammaCRequest(_Request):
    """Critical gain/loss of the split-step walk."""

    theta1: Angle = Field(-3.0 * math.pi / 8.0, description="First coin angle")
    theta2: Angle = Field(math.pi / 4.0, description="Second coin angle")


class SymmetryRequest(_Request):
    """PT or chiral symmetry test of the split-step walk."""

    theta1: Angle = Field(-3.0 * math.pi / 8.0, description="First coin angle")
    theta2: Angle = Field(math.pi / 4.0, description="Second coin angle")
    gamma: float = Field(0.0, description="Gain/loss")
    symmetry: Literal["pt", "chiral"] = Field("pt", description="Symmetry under test")
    kcount: Optional[int] = Field(None, ge=2, description="k-grid size")
