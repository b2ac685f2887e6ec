"""
Numerical result models shared by every module.
"""

from typing import List

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

# Complex matrix with finite entries; the logical order is row-major.
ComplexMatrix = np.ndarray
ComplexVector = np.ndarray
RealVector = np.ndarray
BoolVector = np.ndarray


class EigenResult(BaseModel):
    """Eigenpairs of a dense matrix, sorted by (Re, Im) ascending."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    eigenvalues: ComplexVector = Field(..., description="Eigenvalues")
    eigenvectors: ComplexMatrix = Field(
        ..., description="Unit-norm right eigenvectors as columns"
    )
    converged: BoolVector = Field(
        ..., description="Per-pair residual test against tol * ||m||"
    )
    residuals: RealVector = Field(..., description="||m v - lambda v|| per pair")

    @property
    def all_converged(self) -> bool:
        """Whether every eigenpair meets the residual bound."""
        return bool(np.all(self.converged))


class RootSet(BaseModel):
    """Polynomial roots with multiplicities and roots at infinity."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    roots: ComplexVector = Field(..., description="Distinct finite roots")
    multiplicities: List[int] = Field(..., description="Multiplicity of each root")
    infinite: int = Field(0, ge=0, description="Number of roots at infinity")
    degree: int = Field(..., ge=0, description="Nominal polynomial degree")

    def finite_multiset(self) -> ComplexVector:
        """All finite roots, repeated according to multiplicity."""
        if len(self.roots) == 0:
            return np.zeros(0, dtype=complex)
        return np.repeat(self.roots, self.multiplicities)
