"""
Dense linear algebra, polynomial roots and adaptive quadrature.

All functions are pure; nothing here keeps state between calls.
"""

import warnings
from typing import Callable, Optional, Sequence, Tuple, Union

import numpy as np
import scipy.linalg
from scipy import integrate

from ...core.config import get_settings
from ...core.logging import get_logger
from ...shared.exceptions import ConvergenceException, ValidationException
from .schemas import ComplexMatrix, EigenResult, RootSet

logger = get_logger(__name__)

PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)

Integrand = Callable[[float], Union[float, complex]]


def as_complex_matrix(m: Union[np.ndarray, Sequence], square: bool = True) -> ComplexMatrix:
    """Validate and convert input to a finite complex matrix.

    Raises:
        ValidationException: If the input is not 2D, not square or not finite
    """
    arr = np.asarray(m, dtype=complex)
    if arr.ndim != 2:
        raise ValidationException(f"Expected a matrix, got shape {arr.shape}")
    if square and arr.shape[0] != arr.shape[1]:
        raise ValidationException(f"Matrix must be square, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValidationException("Matrix has non-finite entries")
    return arr


class NumkitService:
    """Service for the shared numerical kernels."""

    def __init__(self):
        """Initialize numkit service."""
        settings = get_settings()
        self.residual_tol = settings.EIG_RESIDUAL_TOL
        self.cluster_tol = settings.ROOT_CLUSTER_TOL
        self.quad_tol = settings.QUAD_TOL
        self.quad_limit = settings.QUAD_LIMIT

    def eig_dense(
        self,
        m: Union[np.ndarray, Sequence],
        tol: Optional[float] = None,
        hermitian: bool = False,
        strict: bool = True,
    ) -> EigenResult:
        """Diagonalize a dense complex matrix.

        Args:
            m: Square matrix
            tol: Relative residual bound (defaults to EIG_RESIDUAL_TOL)
            hermitian: Use the Hermitian solver
            strict: Raise when an eigenpair exceeds the bound; otherwise
                only flag it in ``converged``

        Returns:
            EigenResult sorted by (Re, Im) ascending

        Raises:
            ValidationException: If the matrix is not square or not finite
            ConvergenceException: If the solver fails, produces non-finite values
                or, with ``strict``, leaves a residual above the bound
        """
        a = as_complex_matrix(m)
        tol = self.residual_tol if tol is None else tol
        try:
            if hermitian:
                w, v = scipy.linalg.eigh(a)
                w = w.astype(complex)
            else:
                w, v = scipy.linalg.eig(a)
        except (np.linalg.LinAlgError, ValueError) as e:
            logger.error(f"Eigensolver failed: {str(e)}")
            raise ConvergenceException(f"Eigensolver failed: {str(e)}")

        if not (np.all(np.isfinite(w)) and np.all(np.isfinite(v))):
            raise ConvergenceException("Eigensolver returned non-finite values")

        v = v / np.linalg.norm(v, axis=0, keepdims=True)
        order = np.lexsort((w.imag, w.real))
        w, v = w[order], v[:, order]

        scale = max(np.linalg.norm(a), np.finfo(float).tiny)
        residuals = np.linalg.norm(a @ v - v * w[np.newaxis, :], axis=0)
        converged = residuals <= tol * scale
        if not np.all(converged):
            worst = float(residuals.max() / scale)
            failed = int(np.sum(~converged))
            if strict:
                logger.error("Eigenpairs exceed residual bound", failed=failed, worst=worst)
                raise ConvergenceException(
                    f"{failed} eigenpairs exceed the residual bound {tol:.1e}",
                    details={"failed": failed, "worst_residual": worst, "tol": tol},
                )
            logger.warning("Eigenpairs exceed residual bound", failed=failed, worst=worst)
        return EigenResult(
            eigenvalues=w, eigenvectors=v, converged=converged, residuals=residuals
        )

    def poly_roots(
        self,
        coeffs: Sequence[complex],
        cluster_tol: Optional[float] = None,
        zero_tol: float = 1e-14,
    ) -> RootSet:
        """Roots of a polynomial given by descending coefficients.

        ``coeffs[0]`` multiplies x**d. Vanishing leading coefficients are
        reported as roots at infinity. Roots closer than ``cluster_tol``
        (relative) are merged into one root with multiplicity.

        Args:
            coeffs: Coefficients, highest degree first
            cluster_tol: Relative merge distance (defaults to ROOT_CLUSTER_TOL)
            zero_tol: Relative size below which a leading coefficient vanishes

        Returns:
            RootSet

        Raises:
            ValidationException: If every coefficient is zero
        """
        c = np.asarray(coeffs, dtype=complex).ravel()
        cluster_tol = self.cluster_tol if cluster_tol is None else cluster_tol
        scale = np.max(np.abs(c)) if c.size else 0.0
        if scale == 0.0:
            raise ValidationException("Polynomial has no nonzero coefficient")

        degree = c.size - 1
        lead = 0
        while lead < c.size and abs(c[lead]) <= zero_tol * scale:
            lead += 1
        trimmed = c[lead:]

        raw = np.roots(trimmed) if trimmed.size > 1 else np.zeros(0, dtype=complex)
        roots, mult = self._cluster(raw, cluster_tol)
        return RootSet(roots=roots, multiplicities=mult, infinite=lead, degree=degree)

    @staticmethod
    def _cluster(raw: np.ndarray, tol: float) -> Tuple[np.ndarray, list]:
        """Merge nearby roots; cluster centers are member means."""
        if raw.size == 0:
            return np.zeros(0, dtype=complex), []
        order = np.lexsort((raw.imag, raw.real))
        remaining = list(raw[order])
        centers, mult = [], []
        while remaining:
            seed = remaining.pop(0)
            members = [seed]
            keep = []
            for r in remaining:
                if abs(r - seed) <= tol * max(1.0, abs(seed)):
                    members.append(r)
                else:
                    keep.append(r)
            remaining = keep
            centers.append(np.mean(members))
            mult.append(len(members))
        centers = np.asarray(centers, dtype=complex)
        order = np.lexsort((centers.imag, centers.real))
        return centers[order], [mult[i] for i in order]

    def integrate_1d(
        self,
        f: Integrand,
        a: float,
        b: float,
        tol: Optional[float] = None,
        limit: Optional[int] = None,
    ) -> Union[float, complex]:
        """Adaptive quadrature of a real or complex integrand on [a, b].

        Complex integrands are integrated as two real quadratures.

        Raises:
            ConvergenceException: If the subdivision cap is reached or the
                result is not finite
        """
        tol = self.quad_tol if tol is None else tol
        limit = self.quad_limit if limit is None else limit
        if a == b:
            return 0.0

        midpoint = f(0.5 * (a + b))
        is_complex = np.iscomplexobj(midpoint) and not isinstance(midpoint, float)

        def _quad(g: Callable[[float], float]) -> float:
            with warnings.catch_warnings():
                warnings.simplefilter("error", integrate.IntegrationWarning)
                try:
                    value, _ = integrate.quad(
                        g, a, b, epsabs=tol, epsrel=tol, limit=limit
                    )
                except integrate.IntegrationWarning as e:
                    logger.error(f"Quadrature did not converge: {str(e)}")
                    raise ConvergenceException(
                        f"Quadrature did not converge on [{a}, {b}]: {str(e)}"
                    )
            if not np.isfinite(value):
                raise ConvergenceException("Quadrature produced a non-finite value")
            return float(value)

        if is_complex:
            re = _quad(lambda x: float(np.real(f(x))))
            im = _quad(lambda x: float(np.imag(f(x))))
            return complex(re, im)
        return _quad(lambda x: float(np.real(f(x))))

    @staticmethod
    def pauli_decompose(u: np.ndarray) -> Tuple[complex, np.ndarray]:
        """Write a 2x2 matrix as a0*1 + a.sigma.

        Returns:
            (a0, a) with a a complex 3-vector
        """
        u = np.asarray(u, dtype=complex)
        if u.shape != (2, 2):
            raise ValidationException(f"Expected a 2x2 matrix, got {u.shape}")
        a0 = 0.5 * np.trace(u)
        a = np.array([0.5 * np.trace(u @ s) for s in PAULI])
        return a0, a


# Singleton instance
_numkit_service = None


def get_numkit_service() -> NumkitService:
    """Get numkit service singleton instance."""
    global _numkit_service
    if _numkit_service is None:
        _numkit_service = NumkitService()
    return _numkit_service
