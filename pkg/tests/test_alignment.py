"""Tests for rigid alignment of point clouds."""

import numpy as np
import pytest
from scipy.stats import special_ortho_group

from isoruled.alignment import (
    MIN_POINTS,
    alignment_residual,
    cloud_diameter,
    rigid_align,
)
from isoruled.errors import AlignmentError, ShapeError


@pytest.fixture
def cloud():
    return np.random.default_rng(5).normal(size=(30, 5))


class TestRigidAlign:
    """Recovering rotations and translations."""

    def test_recovers_motion(self, cloud):
        R = special_ortho_group.rvs(5, random_state=3)
        target = cloud @ R.T + np.arange(5.0)
        motion = rigid_align(cloud, target)
        np.testing.assert_allclose(motion.rotation, R, atol=1e-10)
        np.testing.assert_allclose(motion.apply(cloud), target, atol=1e-10)
        assert alignment_residual(cloud, target) <= 1e-12

    def test_reflection_is_not_a_motion(self, cloud):
        mirrored = cloud * np.array([-1.0, 1.0, 1.0, 1.0, 1.0])
        assert alignment_residual(cloud, mirrored) > 1e-2

    def test_too_few_points(self, cloud):
        with pytest.raises(AlignmentError):
            rigid_align(cloud[: MIN_POINTS - 1], cloud[: MIN_POINTS - 1])

    def test_flat_cloud(self):
        line = np.outer(np.linspace(0.0, 1.0, 20), [1.0, 2.0, 0.0])
        with pytest.raises(AlignmentError):
            rigid_align(line, line)

    def test_shape_mismatch(self, cloud):
        with pytest.raises(ShapeError):
            rigid_align(cloud, cloud[:-1])
        with pytest.raises(ShapeError):
            rigid_align(cloud[0], cloud[0])


class TestDiameter:
    def test_unit_square(self):
        square = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]])
        assert cloud_diameter(square) == pytest.approx(np.sqrt(2.0))
