"""
Geometric-phase domain models.

Curves and trajectories are immutable inputs validated on construction.
"""

import math
from typing import List, Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from ...shared.utils.angle_utils import Angle, AngleList

NORM_TOL = 1e-12
OVERLAP_TOL = 1e-12


class PureCurve(BaseModel):
    """Sampled one-parameter family of unit-norm pure states."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    params: np.ndarray = Field(..., description="Ascending curve parameters s_i")
    states: np.ndarray = Field(..., description="States |Psi(s_i)> as rows, shape (N, n)")

    @model_validator(mode="after")
    def _check(self) -> "PureCurve":
        params = np.asarray(self.params, dtype=float)
        states = np.asarray(self.states, dtype=complex)
        if states.ndim != 2 or params.ndim != 1 or len(params) != len(states):
            raise ValueError("params must be 1D and states (len(params), n)")
        if len(params) < 2:
            raise ValueError("a curve needs at least two samples")
        if np.any(np.diff(params) < 0):
            raise ValueError("params must be ascending")
        norms = np.linalg.norm(states, axis=1)
        if np.max(np.abs(norms - 1.0)) > NORM_TOL * 100:
            raise ValueError("states must be unit norm")
        overlaps = np.abs(np.sum(states[:-1].conj() * states[1:], axis=1))
        if np.min(overlaps) <= OVERLAP_TOL:
            raise ValueError("consecutive states are orthogonal")
        object.__setattr__(self, "params", params)
        object.__setattr__(self, "states", states)
        return self

    @classmethod
    def from_states(cls, params, states) -> "PureCurve":
        """Build a curve, normalizing every state."""
        states = np.asarray(states, dtype=complex)
        states = states / np.linalg.norm(states, axis=1, keepdims=True)
        return cls(params=np.asarray(params, dtype=float), states=states)

    @property
    def dim(self) -> int:
        """Hilbert-space dimension."""
        return self.states.shape[1]

    def __len__(self) -> int:
        return len(self.params)


class DensityTrajectory(BaseModel):
    """Time-ordered 2x2 density matrices with branch-continuous eigenvectors."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    times: np.ndarray = Field(..., description="Ascending times tau_i")
    rho: np.ndarray = Field(..., description="Density matrices, shape (N, d, d)")
    eigenvalues: np.ndarray = Field(
        ..., description="p_k(tau_i), descending in k, shape (N, d)"
    )
    eigenvectors: np.ndarray = Field(
        ..., description="|phi_k(tau_i)> as [i, :, k], shape (N, d, d)"
    )


class SolidAngle(BaseModel):
    """Solid angle on the unit sphere in steradians."""

    value: float = Field(..., description="Solid angle")

    @classmethod
    def cone(cls, theta: float) -> "SolidAngle":
        """Solid angle of a cone with half-angle theta."""
        return cls(value=2.0 * math.pi * (1.0 - math.cos(theta)))


class UhlmannResult(BaseModel):
    """Uhlmann phase of a qubit with pole diagnostics."""

    value: float = Field(..., description="Phase in (-pi/2, pi/2]")
    pole_continued: bool = Field(
        False, description="A tangent pole was crossed and continued"
    )
    denominator: float = Field(..., description="Pole-free denominator of the arctan")


class PointerReadout(BaseModel):
    """Expectation readouts of a qubit pointer after post-selection."""

    readout_x: float = Field(..., description="<q.sigma> with q = n x m, gives 2 kappa Re z")
    readout_y: float = Field(..., description="<q.sigma> with q = n, gives 2 kappa Im z")
    weak_value: complex = Field(..., description="Reconstructed weak value z")
    kappa: float = Field(..., description="Coupling strength")


class MixedPhaseResult(BaseModel):
    """Mixed-state geometric phase with visibility."""

    phase: float = Field(..., description="Phase in (-pi, pi]")
    visibility: float = Field(..., description="Modulus of the weighted sum")
    degenerate: bool = Field(False, description="Initial spectrum degenerate")
    note: Optional[str] = Field(None, description="Diagnostic note")


# ---------------------------------------------------------------------------
# Run requests
# ---------------------------------------------------------------------------


class _Request(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class GpRequest(_Request):
    """Pure-state geometric phase of a reference curve."""

    curve: Literal["geodesic", "circle", "pauli"] = Field(
        "geodesic", description="Geodesic, closed Bloch circle or Pauli-eigenstate triangle"
    )
    dim: int = Field(2, ge=2, le=12, description="Dimension of the geodesic endpoints")
    theta: Angle = Field(math.pi / 3.0, description="Geodesic length or circle colatitude")
    samples: Optional[int] = Field(None, ge=3, description="Samples along the curve")
    method: Literal["overlap", "trapezoid"] = Field("overlap", description="Discretization")


class GpMixedRequest(_Request):
    """Mixed-state phase of the precessing or dephasing qubit."""

    kind: Literal["unitary", "dephasing"] = Field("unitary", description="Evolution type")
    r: float = Field(0.5, ge=0.0, le=1.0, description="Bloch radius (unitary)")
    theta: Angle = Field(math.pi / 3.0, description="Bloch-vector polar angle")
    eta: float = Field(1.0, gt=0.0, description="Precession frequency (dephasing)")
    lam: float = Field(0.01, ge=0.0, description="Dephasing rate")
    samples: Optional[int] = Field(None, ge=3, description="Samples over one period")


class UhlmannRequest(_Request):
    """Uhlmann phase of a qubit with n in the xz-plane."""

    r: float = Field(0.5, ge=0.0, le=1.0, description="Bloch radius")
    theta: Angle = Field(math.pi / 4.0, description="Polar angle of n")
    tau: Angle = Field(math.pi, description="Evolution parameter")
    taus: Optional[AngleList] = Field(None, description="Sweep values of tau")


class WeakValueRequest(_Request):
    """Weak value of a Pauli observable and its pointer readouts."""

    pre_theta: Angle = Field(math.pi / 2.0, description="Pre-selected Bloch polar angle")
    pre_phi: Angle = Field(0.0, description="Pre-selected Bloch azimuth")
    post_theta: Angle = Field(math.pi / 2.0, description="Post-selected Bloch polar angle")
    post_phi: Angle = Field(math.pi / 2.0, description="Post-selected Bloch azimuth")
    obs_theta: Angle = Field(0.0, description="Observable axis polar angle")
    obs_phi: Angle = Field(0.0, description="Observable axis azimuth")
    kappa: float = Field(1e-3, gt=0.0, description="Coupling strength")
    sigma: float = Field(1.0, gt=0.0, description="Gaussian pointer width")
