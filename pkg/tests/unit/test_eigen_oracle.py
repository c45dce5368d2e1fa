"""
Unit tests for closed-form and numeric eigendecomposition.
"""
import math

import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from eigencone.exceptions import BranchMismatchError, SingularPointError
from eigencone.geometry.symspace import SymPoint
from eigencone.spectral.eigen_oracle import (
    angle_mod_sign,
    eigen_closed_form,
    eigen_numeric,
    eigen_numeric_batch,
    eigen_residual,
)

coordinate = st.floats(min_value=-100.0, max_value=100.0)


class TestClosedForm:
    """Test suite for the half-angle formulas."""

    def test_diagonal_matrix(self):
        """Test the eigenpair of a diagonal matrix."""
        pair = eigen_closed_form(SymPoint(x=1.0, y=0.0, z=2.0), 0.0)
        assert (pair.lambda1, pair.lambda2) == (3.0, 1.0)
        assert pair.v1 == (1.0, 0.0)
        assert pair.v2 == (-0.0, 1.0)

    @given(st.floats(0.01, 100.0), st.floats(-math.pi, math.pi), coordinate)
    def test_eigenvectors(self, r, phi, z):
        """The half-angle vectors are eigenvectors of the matrix."""
        p = SymPoint.from_cylindrical(r, phi, z)
        pair = eigen_closed_form(p, p.phi)
        matrix = p.as_matrix()
        np.testing.assert_allclose(matrix @ pair.v1, pair.lambda1 * np.array(pair.v1),
                                   atol=1e-9 * (r + abs(z)))
        np.testing.assert_allclose(matrix @ pair.v2, pair.lambda2 * np.array(pair.v2),
                                   atol=1e-9 * (r + abs(z)))

    def test_branch_shift_negates(self):
        """Test that moving one sheet over negates both vectors."""
        p = SymPoint.from_cylindrical(1.0, 0.7)
        a = eigen_closed_form(p, 0.7)
        b = eigen_closed_form(p, 0.7 + 2 * math.pi)
        np.testing.assert_allclose(b.v1, -np.array(a.v1), atol=1e-12)
        np.testing.assert_allclose(b.v2, -np.array(a.v2), atol=1e-12)

    def test_wrong_branch(self):
        """Test a branch angle that does not match the point."""
        with pytest.raises(BranchMismatchError):
            eigen_closed_form(SymPoint.from_cylindrical(1.0, 0.7), 0.8)

    def test_singular(self):
        """Test that scalar matrices have no closed form."""
        with pytest.raises(SingularPointError):
            eigen_closed_form(SymPoint(x=0.0, y=0.0, z=1.0), 0.0)

    def test_order_enforced(self):
        """Eigenvalues must come in decreasing order."""
        from eigencone.spectral.eigen_oracle import EigenPair
        with pytest.raises(ValueError):
            EigenPair(lambda1=0.0, lambda2=1.0, v1=(1.0, 0.0), v2=(0.0, 1.0))


class TestNumeric:
    """Test suite for the entry-based oracle."""

    @given(coordinate, coordinate, coordinate)
    def test_agrees_with_closed_form_up_to_sign(self, x, y, z):
        """Test the numeric oracle against the half-angle formulas."""
        p = SymPoint(x=x, y=y, z=z)
        numeric = eigen_numeric(p)
        if p.phi is None:
            assert numeric.v1 == (1.0, 0.0)
            return
        assume(p.r > 1e-6 * (1.0 + abs(z)))
        closed = eigen_closed_form(p, p.phi)
        assert numeric.lambda1 == pytest.approx(closed.lambda1, abs=1e-9 * (p.r + abs(z) + 1))
        assert numeric.lambda2 == pytest.approx(closed.lambda2, abs=1e-9 * (p.r + abs(z) + 1))
        assert angle_mod_sign(np.array(numeric.v1), np.array(closed.v1))[0] < 1e-7

    @given(coordinate, coordinate, coordinate)
    def test_sign_normalisation(self, x, y, z):
        """Numeric eigenvectors are unit length with a fixed sign."""
        v1 = eigen_numeric(SymPoint(x=x, y=y, z=z)).v1
        assert v1[0] > 0.0 or (v1[0] == 0.0 and v1[1] >= 0.0)
        assert math.hypot(*v1) == pytest.approx(1.0)

    def test_batch_matches_numpy(self):
        """Test the batch oracle against numpy's eigh."""
        rng = np.random.default_rng(3)
        entries = rng.normal(size=(200, 3))
        lambdas, vectors = eigen_numeric_batch(entries)
        for row, lam, vec in zip(entries, lambdas, vectors):
            matrix = np.array([[row[0], row[1]], [row[1], row[2]]])
            values, basis = np.linalg.eigh(matrix)
            np.testing.assert_allclose(lam, values[::-1], atol=1e-12)
            assert angle_mod_sign(vec, basis[:, 1])[0] < 1e-9

    def test_scalar_matrix(self):
        """Test the standard basis returned for a scalar matrix."""
        pair = eigen_numeric(SymPoint(x=0.0, y=0.0, z=-2.0))
        assert pair.lambda1 == pair.lambda2 == -2.0
        assert pair.v1 == (1.0, 0.0)
        assert pair.v2 == (-0.0, 1.0)


class TestResidual:
    """Test suite for residuals and sign-blind angles."""

    def test_eigenvector_residual_vanishes(self):
        """Test the residual of an exact eigenvector."""
        p = SymPoint(x=0.3, y=-1.2, z=0.5)
        assert eigen_residual(p, eigen_numeric(p).v1) < 1e-14

    def test_non_eigenvector(self):
        """A diagonal vector of diag(1, -1) has residual one."""
        p = SymPoint(x=1.0, y=0.0)
        v = (math.sqrt(0.5), math.sqrt(0.5))
        assert eigen_residual(p, v) == pytest.approx(1.0)

    def test_rejects_bad_vectors(self):
        """Test non-unit and wrongly sized vectors."""
        p = SymPoint(x=1.0, y=0.0)
        with pytest.raises(ValueError):
            eigen_residual(p, (2.0, 0.0))
        with pytest.raises(ValueError):
            eigen_residual(p, (1.0, 0.0, 0.0))

    def test_angle_mod_sign(self):
        """Test angles between lines ignoring orientation."""
        u = np.array([[1.0, 0.0], [1.0, 0.0], [1.0, 0.0]])
        v = np.array([[-1.0, 0.0], [0.0, 1.0], [1.0, 1.0]])
        np.testing.assert_allclose(angle_mod_sign(u, v), [0.0, math.pi / 2, math.pi / 4])


class TestOracleAgreement:
    """Test suite comparing the oracle with the cone eigenvalues on many matrices."""

    def test_eigenvalues_are_z_plus_minus_r(self):
        """Ten thousand random matrices have eigenvalues z + r and z - r."""
        rng = np.random.default_rng(11)
        points = rng.uniform(-10.0, 10.0, size=(10_000, 3))
        entries = np.column_stack([
            points[:, 0] + points[:, 2], points[:, 1], -points[:, 0] + points[:, 2]
        ])
        lambdas, _ = eigen_numeric_batch(entries)
        r = np.hypot(points[:, 0], points[:, 1])
        expected = np.column_stack([points[:, 2] + r, points[:, 2] - r])
        scale = np.abs(points).max(axis=1, keepdims=True)
        assert (np.abs(lambdas - expected) / scale).max() < 1e-12
