"""
Unit tests for the numerical kernels.
"""

import math

import numpy as np
import pytest

from qwalk_geophase.modules.numkit.services import (
    PAULI,
    as_complex_matrix,
    get_numkit_service,
)
from qwalk_geophase.shared.exceptions import ConvergenceException, ValidationException


@pytest.mark.unit
class TestEigDense:
    """Tests for NumkitService.eig_dense()."""

    def test_residuals_within_bound(self, rng):
        """Every eigenpair of a random complex matrix converges."""
        service = get_numkit_service()
        m = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))

        result = service.eig_dense(m)

        assert result.all_converged
        assert np.allclose(np.linalg.norm(result.eigenvectors, axis=0), 1.0)
        for lam, v in zip(result.eigenvalues, result.eigenvectors.T):
            assert np.linalg.norm(m @ v - lam * v) <= 1e-10 * np.linalg.norm(m)

    def test_sorted_by_real_then_imaginary(self):
        """Eigenvalues come out in (Re, Im) ascending order."""
        service = get_numkit_service()
        m = np.diag([2.0, 1.0 + 1.0j, 1.0 - 1.0j, -3.0])

        result = service.eig_dense(m)

        assert np.allclose(result.eigenvalues, [-3.0, 1.0 - 1.0j, 1.0 + 1.0j, 2.0])

    def test_hermitian_solver_gives_real_spectrum(self, rng):
        """The Hermitian path returns real eigenvalues."""
        service = get_numkit_service()
        a = rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5))
        h = a + a.conj().T

        result = service.eig_dense(h, hermitian=True)

        assert np.allclose(result.eigenvalues.imag, 0.0)
        assert np.allclose(np.sort(result.eigenvalues.real), np.linalg.eigvalsh(h))

    def test_jordan_block_flags_nothing_fatal(self):
        """A defective matrix still returns eigenvalue 1 twice."""
        service = get_numkit_service()

        result = service.eig_dense([[1.0, 1.0], [0.0, 1.0]])

        assert np.allclose(result.eigenvalues, [1.0, 1.0])

    def test_residual_above_bound_raises(self, rng):
        """An unreachable residual bound fails with the worst residual attached."""
        m = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))

        with pytest.raises(ConvergenceException) as exc_info:
            get_numkit_service().eig_dense(m, tol=1e-300)

        assert exc_info.value.details["worst_residual"] > 0.0
        assert exc_info.value.exit_code == 3

    def test_lenient_mode_flags_residuals(self, rng):
        """strict=False returns the eigenpairs and marks them unconverged."""
        m = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))

        result = get_numkit_service().eig_dense(m, tol=1e-300, strict=False)

        assert not result.all_converged
        assert len(result.eigenvalues) == 6

    def test_non_square_rejected(self):
        """A rectangular matrix raises ValidationException."""
        with pytest.raises(ValidationException):
            get_numkit_service().eig_dense(np.zeros((2, 3)))

    def test_non_finite_rejected(self):
        """NaN entries are rejected before diagonalization."""
        with pytest.raises(ValidationException):
            as_complex_matrix([[1.0, np.nan], [0.0, 1.0]])


@pytest.mark.unit
class TestPolyRoots:
    """Tests for NumkitService.poly_roots()."""

    def test_simple_roots(self):
        """x^2 - 3x + 2 has roots 1 and 2."""
        roots = get_numkit_service().poly_roots([1.0, -3.0, 2.0])

        assert np.allclose(roots.roots, [1.0, 2.0])
        assert roots.multiplicities == [1, 1]
        assert roots.infinite == 0

    def test_double_root_is_clustered(self):
        """(x - 1)^2 reports one root of multiplicity two."""
        roots = get_numkit_service().poly_roots([1.0, -2.0, 1.0])

        assert len(roots.roots) == 1
        assert roots.multiplicities == [2]
        assert roots.finite_multiset().size == 2

    def test_vanishing_leading_coefficient_counts_infinity(self):
        """A zero leading coefficient is a root at infinity."""
        roots = get_numkit_service().poly_roots([0.0, 1.0, -1.0])

        assert roots.infinite == 1
        assert roots.degree == 2
        assert np.allclose(roots.roots, [1.0])

    def test_all_zero_rejected(self):
        """The zero polynomial raises ValidationException."""
        with pytest.raises(ValidationException):
            get_numkit_service().poly_roots([0.0, 0.0])


@pytest.mark.unit
class TestIntegrate1d:
    """Tests for NumkitService.integrate_1d()."""

    def test_real_integrand(self):
        """The integral of sin over [0, pi] is 2."""
        value = get_numkit_service().integrate_1d(math.sin, 0.0, math.pi)

        assert value == pytest.approx(2.0, abs=1e-10)

    def test_complex_integrand(self):
        """exp(i x) over [0, pi/2] integrates to 1 + i."""
        value = get_numkit_service().integrate_1d(lambda x: np.exp(1j * x), 0.0, math.pi / 2)

        assert value == pytest.approx(1.0 + 1.0j, abs=1e-10)

    def test_empty_interval(self):
        """Equal endpoints give zero."""
        assert get_numkit_service().integrate_1d(math.cos, 1.0, 1.0) == 0.0

    def test_divergent_integrand_raises(self):
        """A non-integrable singularity raises ConvergenceException."""
        with pytest.raises(ConvergenceException):
            get_numkit_service().integrate_1d(lambda x: 1.0 / x, 0.0, 1.0, limit=20)


@pytest.mark.unit
def test_pauli_decompose_reconstructs_matrix(rng):
    """a0*1 + a.sigma rebuilds the input."""
    u = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))

    a0, a = get_numkit_service().pauli_decompose(u)

    rebuilt = a0 * np.eye(2) + sum(c * s for c, s in zip(a, PAULI))
    assert np.allclose(rebuilt, u)
