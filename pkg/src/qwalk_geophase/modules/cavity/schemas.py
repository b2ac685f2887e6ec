"""
Cavity-QED domain models.

Frequencies are angular (rad/s), lengths in metres and volumes in cubic
metres. The coupling eta = |d|^2 / (3 pi hbar eps0 V) is an input.
"""

import math
from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from scipy import constants

from ...shared.utils.angle_utils import FloatList, parse_angle

C_LIGHT = constants.c
ZETA_MAX = 0.1
DEFAULT_ETA = 1e-6


class Regime(str, Enum):
    """Rotation frequency relative to the dilated atomic gap."""

    HIGH = "high"
    LOW = "low"


class CavityParams(BaseModel):
    """Atom on a circular orbit inside a cavity with a Lorentzian mode density."""

    model_config = ConfigDict(frozen=True)

    Omega0: float = Field(..., gt=0.0, description="Atomic gap (rad/s)")
    omega: float = Field(..., ge=0.0, description="Rotation frequency (rad/s)")
    R: float = Field(..., ge=0.0, description="Orbit radius (m)")
    V: float = Field(..., gt=0.0, description="Cavity volume (m^3)")
    omega_c: float = Field(..., gt=0.0, description="Cavity normal frequency (rad/s)")
    Q: float = Field(1e7, gt=1.0, description="Quality factor")
    eta: float = Field(DEFAULT_ETA, ge=0.0, description="Coupling |d|^2/(3 pi hbar eps0 V)")
    theta: float = Field(math.pi / 2.0, description="Initial-state polar angle (rad)")
    n: float = Field(1.0, gt=0.0, description="Quasi-cycle count")

    @field_validator("theta", mode="before")
    @classmethod
    def _angle(cls, value):
        return parse_angle(value)

    @model_validator(mode="after")
    def _check(self) -> "CavityParams":
        if self.zeta >= ZETA_MAX:
            raise ValueError(
                f"omega^2 R^2 / c^2 = {self.zeta:.3g} is outside the first-order regime"
            )
        return self

    @property
    def zeta(self) -> float:
        """zeta(omega) = omega^2 R^2 / c^2."""
        return zeta(self.omega, self.R)

    @property
    def omega_bar(self) -> float:
        """Dilated gap Omega0 sqrt(1 - zeta)."""
        return self.Omega0 * math.sqrt(1.0 - self.zeta)

    @property
    def omega_plus(self) -> float:
        return self.omega + self.omega_bar

    @property
    def omega_minus(self) -> float:
        return self.omega - self.omega_bar

    @property
    def acceleration(self) -> float:
        """Centripetal acceleration omega^2 R (m/s^2)."""
        return self.omega**2 * self.R

    @property
    def period(self) -> float:
        """Duration T = 2 pi n / Omega0 of n quasi-cycles."""
        return 2.0 * math.pi * self.n / self.Omega0


def zeta(frequency: float, radius: float) -> float:
    """x^2 R^2 / c^2 for an angular frequency x."""
    return (frequency * radius / C_LIGHT) ** 2


def eta_from_dipole(dipole: float, volume: float) -> float:
    """Coupling |d|^2 / (3 pi hbar eps0 V) from a dipole moment in C m."""
    return dipole**2 / (3.0 * math.pi * constants.hbar * constants.epsilon_0 * volume)


class RatePair(BaseModel):
    """Transition rate split into its inertial and non-inertial parts (rad/s)."""

    inertial: float = Field(..., description="Part independent of the rotation")
    noninertial: float = Field(..., description="Part proportional to zeta")

    @property
    def total(self) -> float:
        return self.inertial + self.noninertial


class LindbladAB(BaseModel):
    """Emission and absorption rates and the Lindblad coefficients A, B."""

    regime: Regime = Field(..., description="Regime the rates were evaluated in")
    gamma_down: RatePair = Field(..., description="Spontaneous emission rate")
    gamma_up: RatePair = Field(..., description="Excitation rate")

    @property
    def A(self) -> float:
        """(Gamma_down + Gamma_up) / 4."""
        return 0.25 * (self.gamma_down.total + self.gamma_up.total)

    @property
    def B(self) -> float:
        """(Gamma_down - Gamma_up) / 4."""
        return 0.25 * (self.gamma_down.total - self.gamma_up.total)

    @property
    def inertial(self) -> "tuple[float, float]":
        """(A, B) from the inertial rates."""
        d, u = self.gamma_down.inertial, self.gamma_up.inertial
        return 0.25 * (d + u), 0.25 * (d - u)

    @property
    def noninertial(self) -> "tuple[float, float]":
        """(A, B) from the non-inertial rates."""
        d, u = self.gamma_down.noninertial, self.gamma_up.noninertial
        return 0.25 * (d + u), 0.25 * (d - u)


class GpSplit(BaseModel):
    """Geometric phase after n quasi-cycles split by origin (radians)."""

    regime: Regime
    unitary: float = Field(..., description="-pi n (1 - cos theta)")
    inertial: float = Field(..., description="Non-unitary part from inertial rates")
    noninertial: float = Field(..., description="Non-unitary part from non-inertial rates")
    n: float = Field(..., description="Quasi-cycle count")
    validity: float = Field(..., description="4 A T, must stay below 0.1")

    @property
    def nonunitary(self) -> float:
        return self.inertial + self.noninertial

    @property
    def total(self) -> float:
        return self.unitary + self.nonunitary

    @property
    def ratio(self) -> float:
        """|noninertial / inertial| (inf when the inertial part vanishes)."""
        if self.inertial == 0.0:
            return math.inf
        return abs(self.noninertial / self.inertial)


class RateRow(BaseModel):
    """One cavity detuning of a rate sweep."""

    omega_c: float
    gamma_down: float
    gamma_up: float
    A: float
    B: float
    phi_inertial: float
    phi_noninertial: float
    n: float


class CavityRequest(BaseModel):
    """Cavity run: one configuration, or a sweep over cavity frequencies."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    Omega0: float = Field(1e7, gt=0.0, description="Atomic gap (rad/s)")
    omega: float = Field(5e9, ge=0.0, description="Rotation frequency (rad/s)")
    R: float = Field(1e-6, ge=0.0, description="Orbit radius (m)")
    V: float = Field(1e-7, gt=0.0, description="Cavity volume (m^3)")
    omega_c: Optional[float] = Field(
        None, gt=0.0, description="Cavity frequency, defaults to omega + Omega0_bar"
    )
    Q: float = Field(1e7, gt=1.0, description="Quality factor")
    eta: Optional[float] = Field(None, ge=0.0, description="Coupling, overrides the dipole")
    dipole: Optional[float] = Field(None, gt=0.0, description="Dipole moment (C m)")
    theta: float = Field(math.pi / 2.0, description="Initial-state polar angle (rad)")
    n: float = Field(1.0, gt=0.0, description="Quasi-cycle count")
    omega_cs: Optional[FloatList] = Field(None, description="Cavity frequencies to sweep")
    ns: Optional[FloatList] = Field(None, description="Cycle counts for the n-scaling fit")
    exact: bool = Field(False, description="Also evaluate the quadrature and trajectory phases")

    @field_validator("theta", mode="before")
    @classmethod
    def _angle(cls, value):
        return parse_angle(value)

    def params(self) -> CavityParams:
        """Physical parameters with the cavity frequency and coupling resolved."""
        if self.eta is not None:
            eta = self.eta
        elif self.dipole is not None:
            eta = eta_from_dipole(self.dipole, self.V)
        else:
            eta = DEFAULT_ETA
        fields = self.model_dump(include={"Omega0", "omega", "R", "V", "Q", "theta", "n"})
        # placeholder until the dilated gap is known
        params = CavityParams(omega_c=self.omega_c or self.Omega0, eta=eta, **fields)
        if self.omega_c is None:
            params = params.model_copy(update={"omega_c": params.omega_plus})
        return params
