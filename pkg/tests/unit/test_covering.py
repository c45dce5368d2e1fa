"""
Unit tests for the branched double covering.
"""
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from pydantic import ValidationError

from eigencone.covering.covering import (
    CoverPoint,
    closed_lift,
    cover_metric_at,
    cover_phase,
    cover_winding_number,
    deck_transform,
    lift_curve,
    lifted_jump,
    project,
)
from eigencone.exceptions import NotClosedError, SingularPointError, UnsupportedDepthError
from eigencone.geometry.curves import circle_curve
from eigencone.geometry.symspace import build_curve


class TestCoverPoint:
    """Test suite for cover points, projection and deck transformations."""

    @given(st.floats(0.0, 10.0), st.floats(-10.0, 10.0), st.integers(1, 4))
    def test_deck_transform_preserves_projection(self, rbar, phibar, depth):
        """The deck transformation moves a point within its fibre."""
        q = CoverPoint(rbar=rbar, phibar=phibar, depth=depth)
        p, moved = project(q), project(deck_transform(q))
        assert moved.x == pytest.approx(p.x, abs=1e-9)
        assert moved.y == pytest.approx(p.y, abs=1e-9)

    def test_deck_transform_is_an_involution_on_the_double_cover(self):
        """Applying the deck transformation twice adds a full turn upstairs."""
        q = CoverPoint(rbar=1.0, phibar=0.3, z=2.0)
        back = deck_transform(deck_transform(q))
        assert back.phibar == pytest.approx(0.3 + 2 * math.pi)
        assert deck_transform(q, power=-1).phibar == pytest.approx(0.3 - math.pi)

    def test_projection_doubles_angle(self):
        """Test projecting a cover point down to the cone."""
        p = project(CoverPoint(rbar=2.0, phibar=math.pi / 4, z=-1.0))
        assert p.x == pytest.approx(0.0, abs=1e-12)
        assert p.y == pytest.approx(2.0)
        assert p.z == -1.0

    def test_validation(self):
        """Negative radii and depths below one are rejected."""
        with pytest.raises(ValidationError):
            CoverPoint(rbar=-1.0, phibar=0.0)
        with pytest.raises(ValidationError):
            CoverPoint(rbar=1.0, phibar=0.0, depth=0)
        assert CoverPoint(rbar=1.0, phibar=math.pi / 2).to_cartesian()[1] == pytest.approx(1.0)


class TestLiftedJump:
    """Test suite for passages through the branch point."""

    def test_values(self):
        """Test the upstairs jump for straight, reversing and turning passages."""
        assert lifted_jump(0.0) == pytest.approx(math.pi)
        assert lifted_jump(math.pi) == pytest.approx(math.pi / 2)
        assert lifted_jump(math.pi / 2) == pytest.approx(-3 * math.pi / 4)
        assert lifted_jump(-math.pi / 2) == pytest.approx(3 * math.pi / 4)

    def test_depth_two(self):
        """At depth two the jump halves the angle jump once more."""
        assert lifted_jump(0.0, depth=2) == pytest.approx(lifted_jump(math.pi))


class TestLiftCurve:
    """Test suite for lifting curves."""

    def test_projection_recovers_curve(self, unit_circle):
        """Projecting a lift gives back the original samples at every depth."""
        for depth in (1, 2, 3):
            lifted = lift_curve(unit_circle, depth=depth)
            np.testing.assert_allclose(lifted.projected(), unit_circle.points, atol=1e-12)

    def test_circle_lift_is_open(self, unit_circle):
        """One turn around L lifts to a half turn upstairs."""
        lifted = lift_curve(unit_circle)
        assert not lifted.closed
        assert lifted.phibar[-1] - lifted.phibar[0] == pytest.approx(math.pi)
        assert np.abs(np.diff(lifted.phibar)).max() < 0.1

    def test_branches(self, unit_circle):
        """Test starting branches and invalid lift arguments."""
        plus = lift_curve(unit_circle, start_branch=1)
        minus = lift_curve(unit_circle, start_branch=-1)
        np.testing.assert_allclose(minus.phibar - plus.phibar, math.pi, atol=1e-12)
        with pytest.raises(ValueError):
            lift_curve(unit_circle, start_branch=2)
        with pytest.raises(ValueError):
            lift_curve(unit_circle, depth=0)

    def test_crossing_goes_straight_through(self, half_disk):
        """Test lifting the half-disk loop through the branch point."""
        lifted = lift_curve(half_disk)
        assert lifted.jumps == (pytest.approx(math.pi / 2),)
        assert not lifted.closed
        np.testing.assert_allclose(lifted.projected(), half_disk.points, atol=1e-12)

    def test_to_frame(self, unit_circle):
        """Test the lift table columns."""
        frame = lift_curve(unit_circle, depth=2).to_frame()
        assert list(frame.columns) == ["t", "rbar", "phibar", "z", "depth"]
        assert (frame["depth"] == 2).all()
        assert len(lift_curve(unit_circle).points) == len(unit_circle)


class TestCoverPhase:
    """Test suite for phases of closed lifts."""

    def test_circle_needs_two_turns(self, unit_circle):
        """Test that the unit circle closes upstairs after two traversals."""
        lifted = closed_lift(unit_circle)
        assert lifted.closed
        assert len(lifted) == 2 * len(unit_circle) - 1
        assert cover_phase(lifted) == pytest.approx(2 * math.pi)
        assert cover_winding_number(lifted) == pytest.approx(1.0)

    def test_loop_not_enclosing_branch_point(self, offset_circle):
        """A loop away from L closes at once with no phase."""
        lifted = closed_lift(offset_circle)
        assert len(lifted) == len(offset_circle)
        assert cover_phase(lifted) == pytest.approx(0.0, abs=1e-12)

    def test_spoke_lift_has_half_turn(self, spoke):
        """Test the spoke loop, which touches L once and closes in one pass."""
        lifted = closed_lift(spoke)
        assert len(lifted) == len(spoke)
        assert cover_phase(lifted) == pytest.approx(math.pi)
        assert cover_winding_number(lifted) == pytest.approx(0.5)

    def test_open_lift_has_no_phase(self, unit_circle):
        """Test that open lifts and open curves are refused."""
        with pytest.raises(NotClosedError):
            cover_phase(lift_curve(unit_circle))
        with pytest.raises(NotClosedError):
            closed_lift(circle_curve(1.0, 101, 0.0, math.pi))

    def test_depth_restrictions(self, unit_circle):
        """Phases and metrics are only defined on the double cover."""
        with pytest.raises(UnsupportedDepthError):
            cover_phase(lift_curve(unit_circle, depth=2))
        with pytest.raises(UnsupportedDepthError):
            cover_metric_at(CoverPoint(rbar=1.0, phibar=0.0, depth=2))


class TestCoverMetric:
    """Test suite for the pulled-back metric upstairs."""

    def test_values(self):
        """The cover metric is the flat one in (rbar, phibar)."""
        np.testing.assert_allclose(cover_metric_at(CoverPoint(rbar=0.5, phibar=1.0)),
                                   np.diag([4.0, 1.0]))

    def test_branch_point(self):
        """Test that the metric is undefined at the branch point."""
        with pytest.raises(SingularPointError):
            cover_metric_at(CoverPoint(rbar=0.0, phibar=0.0))


class TestOddWinding:
    """Odd-winding loops lift to paths joining the two preimages of the base point."""

    def test_endpoints_differ_by_deck_transform(self, unit_circle):
        """Test the endpoints of the lifted unit circle."""
        lifted = lift_curve(unit_circle)
        first, last = lifted.points[0], lifted.points[-1]
        moved = deck_transform(first)
        assert moved.phibar == pytest.approx(last.phibar)
        assert moved.rbar == last.rbar
        p, q = project(first), project(last)
        assert (p.x, p.y) == pytest.approx((q.x, q.y))


def _start_on_line(c):
    """The same loop, traversed from its sample closest to L."""
    k = int(np.argmin(c.radii))
    points = np.concatenate([c.points[k:], c.points[1:k + 1]])
    return build_curve(points, closed=True)


class TestStartingPoint:
    """A loop's lift and cover phase do not depend on where the loop starts."""

    def test_half_disk_started_on_line(self, half_disk):
        """The crossing becomes a seam; the lift still needs two turns to close."""
        rolled = _start_on_line(half_disk)
        assert [run.position for run in rolled.runs] == ["seam"]
        assert lift_curve(rolled).closed == lift_curve(half_disk).closed
        assert not lift_curve(rolled).closed
        assert cover_phase(closed_lift(rolled)) == pytest.approx(
            cover_phase(closed_lift(half_disk))
        )
        assert cover_phase(closed_lift(rolled)) == pytest.approx(2 * math.pi)

    def test_spoke_started_on_line(self, spoke):
        """Starting at the tip of the spoke leaves a single closed pass."""
        rolled = _start_on_line(spoke)
        lifted = closed_lift(rolled)
        assert lifted.closed
        assert len(lifted) == len(rolled)
        assert cover_phase(lifted) == pytest.approx(cover_phase(closed_lift(spoke)))
        assert cover_winding_number(lifted) == pytest.approx(0.5)
