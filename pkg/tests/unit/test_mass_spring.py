"""
Unit tests for mass-spring Hessians and pulled-back metrics.
"""
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from pydantic import ValidationError

from eigencone.exceptions import SingularImageError
from eigencone.mechanics.mass_spring import (
    Boundary,
    SpringSystem,
    energy,
    equilibrium,
    finite_difference_hessian,
    hessian,
    hessian_matrix,
    metric_kernel,
    normal_modes,
    param_map,
    pullback_metric,
    pullback_metric_closed_form,
)

kappa = st.floats(min_value=0.1, max_value=10.0)


def _system(boundary, *kappas, rest_length=1.0):
    return SpringSystem(boundary=boundary, kappas=kappas, rest_length=rest_length)


class TestSpringSystem:
    """Test suite for systems, energies and Hessians."""

    def test_kappa_count(self):
        """Test the spring count and rest length checks."""
        with pytest.raises(ValidationError):
            _system(Boundary.FIXED, 1.0, 2.0)
        with pytest.raises(ValidationError):
            _system(Boundary.OPEN, 1.0, 2.0)
        with pytest.raises(ValidationError):
            _system(Boundary.PERIODIC, 1.0, rest_length=0.0)

    @pytest.mark.parametrize("system", [
        _system(Boundary.FIXED, 1.0, 2.0, 3.0, rest_length=0.5),
        _system(Boundary.OPEN, 2.5),
        _system(Boundary.PERIODIC, 1.5, 0.7, rest_length=2.0),
    ])
    def test_equilibrium_is_a_minimum(self, system):
        """Test that the equilibrium has zero energy and moving away costs energy."""
        x1, x2 = equilibrium(system)
        assert energy(system, x1, x2) == pytest.approx(0.0, abs=1e-15)
        assert energy(system, x1 + 0.1, x2) > 0.0

    @pytest.mark.parametrize("system", [
        _system(Boundary.FIXED, 1.0, 2.0, 3.0),
        _system(Boundary.OPEN, 2.5),
        _system(Boundary.PERIODIC, 1.5, 0.7, rest_length=2.0),
    ])
    def test_hessian_matches_finite_differences(self, system):
        """Test the Hessian against finite differences for each boundary."""
        np.testing.assert_allclose(
            finite_difference_hessian(system), hessian_matrix(system), atol=1e-5
        )

    @settings(max_examples=100)
    @given(
        st.sampled_from(list(Boundary)),
        st.lists(kappa, min_size=3, max_size=3),
        st.floats(min_value=0.1, max_value=5.0),
    )
    def test_hessian_matches_finite_differences_for_random_springs(
        self, boundary, kappas, rest_length
    ):
        """Closed-form and finite-difference Hessians agree to 1e-6 max|kappa|."""
        count = {Boundary.FIXED: 3, Boundary.OPEN: 1, Boundary.PERIODIC: 2}[boundary]
        system = _system(boundary, *kappas[:count], rest_length=rest_length)
        tolerance = 1e-6 * max(abs(k) for k in system.kappas)
        np.testing.assert_allclose(
            finite_difference_hessian(system), hessian_matrix(system), rtol=0, atol=tolerance
        )

    def test_fixed_hessian(self):
        """Test the fixed-end Hessian and its point in Sym(2, R)."""
        np.testing.assert_array_equal(
            hessian_matrix(_system(Boundary.FIXED, 1.0, 2.0, 3.0)), [[3.0, -2.0], [-2.0, 5.0]]
        )
        p = hessian(_system(Boundary.FIXED, 1.0, 2.0, 3.0))
        assert (p.x, p.y, p.z) == (-1.0, -2.0, 4.0)

    @given(kappa, kappa, kappa)
    def test_param_map_is_the_hessian(self, k1, k2, k3):
        """The parameter map sends spring constants to the Hessian."""
        p = param_map(Boundary.FIXED).apply((k1, k2, k3))
        q = hessian(_system(Boundary.FIXED, k1, k2, k3))
        np.testing.assert_allclose(p.as_array(), q.as_array(), atol=1e-12)

    def test_param_map_dimensions(self):
        """Test the parameter dimension per boundary."""
        assert param_map(Boundary.FIXED).dim == 3
        assert param_map("open").dim == 1
        assert param_map(Boundary.PERIODIC).dim == 2
        with pytest.raises(ValueError):
            param_map(Boundary.OPEN).apply((1.0, 2.0))

    def test_normal_modes(self):
        """Test normal mode frequencies for open and fixed springs."""
        modes = normal_modes(_system(Boundary.OPEN, 1.0))
        assert modes.frequencies_squared == pytest.approx((0.0, 2.0))
        assert modes.frequencies[1] == pytest.approx(math.sqrt(2.0))
        assert abs(modes.modes[0][0]) == pytest.approx(abs(modes.modes[0][1]))
        fixed = normal_modes(_system(Boundary.FIXED, 1.0, 1.0, 1.0))
        assert fixed.frequencies_squared == pytest.approx((1.0, 3.0))


class TestPullback:
    """Test suite for metrics pulled back to spring constants."""

    def test_fixed_unit_springs(self):
        """Test the pulled-back metric at unit spring constants."""
        expected = np.array([[2.0, 2.0, 0.0], [2.0, 20.0, 2.0], [0.0, 2.0, 2.0]]) / 4.0
        np.testing.assert_allclose(pullback_metric(Boundary.FIXED, (1.0, 1.0, 1.0)), expected)
        np.testing.assert_allclose(
            pullback_metric_closed_form(Boundary.FIXED, (1.0, 1.0, 1.0)), expected
        )
        assert abs(np.linalg.det(expected)) > 0.1

    @settings(max_examples=50)
    @given(kappa, kappa, kappa)
    def test_fixed_closed_form(self, k1, k2, k3):
        """The numeric pullback agrees with the closed form and is symmetric."""
        numeric = pullback_metric(Boundary.FIXED, (k1, k2, k3))
        closed = pullback_metric_closed_form(Boundary.FIXED, (k1, k2, k3))
        np.testing.assert_allclose(numeric, closed, rtol=1e-10, atol=1e-10)
        np.testing.assert_allclose(numeric, numeric.T)

    def test_open_and_periodic_constants(self):
        """Open and periodic springs pull back to constant metrics."""
        np.testing.assert_allclose(pullback_metric(Boundary.OPEN, (3.0,)), [[5.0]])
        np.testing.assert_allclose(pullback_metric(Boundary.PERIODIC, (1.0, 2.0)),
                                   np.full((2, 2), 5.0))
        np.testing.assert_allclose(pullback_metric_closed_form(Boundary.PERIODIC, (1.0, 2.0)),
                                   np.full((2, 2), 5.0))

    def test_periodic_kernel(self):
        """The periodic pullback is degenerate along k1 - k2."""
        kernel = metric_kernel(pullback_metric(Boundary.PERIODIC, (1.0, 2.0)))
        assert kernel.shape == (2, 1)
        np.testing.assert_allclose(kernel[:, 0], [1 / math.sqrt(2), -1 / math.sqrt(2)])

    def test_fixed_kernel_empty(self):
        """Test that the fixed pullback has no kernel."""
        assert metric_kernel(pullback_metric(Boundary.FIXED, (1.0, 1.0, 1.0))).shape == (3, 0)

    def test_singular_image(self):
        """Test parameters mapping onto L."""
        with pytest.raises(SingularImageError):
            pullback_metric(Boundary.FIXED, (1.0, 0.0, 1.0))
        with pytest.raises(SingularImageError):
            pullback_metric_closed_form(Boundary.OPEN, (0.0,))
