"""
Star-representation domain models.
"""

import math
from typing import List, Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from ...shared.utils.angle_utils import Angle, FloatList

SPHERE_TOL = 1e-10


class StarSet(BaseModel):
    """Majorana stars of an n-level state as unit qubit states.

    Stars at infinity are stored as the exact state |1> and flagged.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    stars: np.ndarray = Field(..., description="Unit qubit states as rows, shape (n-1, 2)")
    at_infinity: np.ndarray = Field(..., description="Flag per star for the |1> star")

    @model_validator(mode="after")
    def _check(self) -> "StarSet":
        stars = np.asarray(self.stars, dtype=complex).reshape(-1, 2)
        flags = np.asarray(self.at_infinity, dtype=bool).ravel()
        if len(stars) == 0:
            raise ValueError("a star set needs at least one star")
        if len(flags) != len(stars):
            raise ValueError("one infinity flag per star is required")
        if np.max(np.abs(np.linalg.norm(stars, axis=1) - 1.0)) > SPHERE_TOL:
            raise ValueError("stars must be unit norm")
        object.__setattr__(self, "stars", stars)
        object.__setattr__(self, "at_infinity", flags)
        return self

    @property
    def dim(self) -> int:
        """Dimension of the state the stars describe."""
        return len(self.stars) + 1

    def __len__(self) -> int:
        return len(self.stars)


class BlochCurve(BaseModel):
    """Sampled curve of points on the unit sphere."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    params: np.ndarray = Field(..., description="Curve parameters s_i")
    points: np.ndarray = Field(..., description="Unit 3-vectors, shape (N, 3)")

    @model_validator(mode="after")
    def _check(self) -> "BlochCurve":
        params = np.asarray(self.params, dtype=float).ravel()
        points = np.asarray(self.points, dtype=float)
        if points.shape != (len(params), 3):
            raise ValueError("points must have shape (len(params), 3)")
        if np.max(np.abs(np.linalg.norm(points, axis=1) - 1.0)) > SPHERE_TOL:
            raise ValueError("points must lie on the unit sphere")
        object.__setattr__(self, "params", params)
        object.__setattr__(self, "points", points)
        return self

    def __len__(self) -> int:
        return len(self.params)


class CircleFit(BaseModel):
    """Plane circle through sampled sphere points."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    center: np.ndarray = Field(..., description="Circle center c = d m")
    normal: np.ndarray = Field(..., description="Unit plane normal m")
    radius: float = Field(..., ge=0.0, description="Mean distance to the center")
    plane_residual: float = Field(..., description="max |p.m - d|")
    radius_residual: float = Field(..., description="max | |p - c| - radius |")


class GeodesicDecomposition(BaseModel):
    """Star curves of a geodesic between degenerate-star endpoints."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    theta: float = Field(..., description="Fubini-Study distance of the endpoints")
    alpha: float = Field(..., description="Real amplitude alpha of the endpoint star")
    curves: List[BlochCurve] = Field(..., description="One curve per star, canonical frame")
    labels: np.ndarray = Field(..., description="Ray phase phi_k labelling curve k")
    pairing: List[Tuple[int, int]] = Field(..., description="Dual index pairs (i, j)")
    self_dual: Optional[int] = Field(None, description="Curve on the great circle (even n)")
    radii: np.ndarray = Field(..., description="Closed-form circle radii R_k")
    fits: List[CircleFit] = Field(..., description="Numerical circle fit per curve")
    frame: np.ndarray = Field(..., description="Rotation into the canonical frame")
    max_jump_ratio: float = Field(
        ..., description="Largest tracking jump over half the star separation"
    )

    @property
    def centers(self) -> np.ndarray:
        """Fitted circle centers, shape (n-1, 3)."""
        return np.array([f.center for f in self.fits])

    def reflection_residual(self) -> float:
        """Largest deviation of dual pairs from mirror images in y."""
        worst = 0.0
        for i, j in self.pairing:
            p, q = self.curves[i].points, self.curves[j].points
            mirrored = q * np.array([1.0, -1.0, 1.0])
            worst = max(worst, float(np.max(np.abs(p - mirrored))))
        return worst


class NpcCheck(BaseModel):
    """Outcome of the third-order Bargmann scan of a curve."""

    is_null_phase: bool = Field(..., description="Every sampled Delta_3 is real positive")
    min_real: float = Field(..., description="Smallest Re Delta_3")
    max_imag: float = Field(..., description="Largest |Im Delta_3|")
    triples: int = Field(..., ge=0, description="Number of triples examined")


# ---------------------------------------------------------------------------
# Run requests
# ---------------------------------------------------------------------------


class _Request(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class GeodesicRequest(_Request):
    """Star decomposition of the geodesic between degenerate-star endpoints."""

    dim: int = Field(3, ge=2, le=12, description="Hilbert-space dimension n")
    theta: Angle = Field(math.pi / 3.0, description="Fubini-Study distance, in [0, pi/2)")
    samples: int = Field(401, ge=3, description="Samples along the geodesic")
    jump_ratio: float = Field(0.5, gt=0.0, description="Tracking tolerance")


class StarsRequest(_Request):
    """Majorana stars of one state."""

    re: FloatList = Field(..., min_length=2, description="Real parts of the amplitudes")
    im: Optional[FloatList] = Field(None, description="Imaginary parts of the amplitudes")

    @model_validator(mode="after")
    def _check(self) -> "StarsRequest":
        if self.im is not None and len(self.im) != len(self.re):
            raise ValueError("re and im must have equal length")
        return self

    def state(self) -> np.ndarray:
        im = self.im or [0.0] * len(self.re)
        return np.asarray(self.re, dtype=float) + 1j * np.asarray(im, dtype=float)


class NpcRequest(_Request):
    """Explicit or dual-curve null phase curve of a qutrit."""

    family: Literal["one", "two", "dual"] = Field("one", description="Curve family")
    theta: Angle = Field(math.pi / 3.0, description="Endpoint distance, in (0, pi/2)")
    chi: Angle = Field(math.pi / 3.0, description="Phase of the third amplitude (family two)")
    samples: int = Field(201, ge=3, description="Samples along the curve")
    triples: int = Field(20, ge=3, description="Samples scanned by the Bargmann test")
