"""Tests for ruled submanifolds over holomorphic curves."""

import math

import numpy as np
import pytest

from isoruled.errors import DomainError, ShapeError
from isoruled.holocurve import (
    HoloCurveSpec,
    curvature_radii,
    equivariance_residual,
    holo_chart,
    holo_connection_check,
    holo_shape_operators,
    nonkaehler_witness,
    osculating_norm_oracle,
    ratios_from_radii,
    realize,
    rotate_fibers,
    specialization_residual,
    tau_ratios,
)
from isoruled.ruled import RuledPoint, sample_ruled_points
from isoruled.surfgeo import curvature_ellipse
from isoruled.weierstrass import conformality_defect, isotropy_defect, series_from_coefficients


@pytest.fixture(scope="module")
def cloud(holo_c):
    return sample_ruled_points(holo_c, np.random.default_rng(11), 25, radius=0.4)


class TestHoloCurveSpec:
    def test_dimensions(self, holo_c_spec):
        assert holo_c_spec.m == 4
        assert holo_c_spec.N == 8
        assert holo_c_spec.base_point == 0

    def test_too_few_components(self):
        with pytest.raises(ShapeError):
            HoloCurveSpec.from_coefficients([[0, 1], [0, 0, 1], [0, 0, 0, 1]])

    def test_radius(self):
        with pytest.raises(DomainError):
            HoloCurveSpec.from_coefficients([[0, 1]] * 4, radius=-1.0)

    def test_realization_real_part(self):
        zeta = series_from_coefficients([[0, 1], [0, 0, 1]])
        G = realize(zeta)
        z = 0.3 + 0.2j
        np.testing.assert_allclose(G(z).real, [z.real, z.imag, (z * z).real, (z * z).imag])

    def test_chart_is_one_isotropic(self, holo_c_spec):
        chart = holo_chart(holo_c_spec)
        assert chart.provenance == "holo:holo-c"
        assert isotropy_defect(chart) <= 1e-12
        assert conformality_defect(chart) <= 1e-12


class TestCurvatures:
    """tau ratios from the real frame against the complex oracle."""

    def test_unit_ratios_at_base_point(self, holo_c):
        np.testing.assert_allclose(tau_ratios(holo_c, 0.0), [1.0, 1.0, 1.0], rtol=1e-12)

    @pytest.mark.parametrize("z", [0.0, 0.2 + 0.1j, -0.1 + 0.3j])
    def test_radii_match_oracle(self, holo_c_spec, holo_c, z):
        oracle = osculating_norm_oracle(holo_c_spec, z)
        np.testing.assert_allclose(curvature_radii(holo_c, z), oracle, rtol=1e-9)

    def test_spec_or_framing(self, holo_c_spec, holo_c):
        np.testing.assert_allclose(tau_ratios(holo_c_spec, 0.1), tau_ratios(holo_c, 0.1))

    def test_ratios_from_radii(self):
        np.testing.assert_allclose(ratios_from_radii([2.0, 6.0, 3.0]), [2.0, 3.0, 0.5])

    def test_order_range(self, holo_c):
        with pytest.raises(DomainError):
            curvature_radii(holo_c, 0.0, 4)

    @pytest.mark.parametrize("s", [1, 2, 3])
    def test_every_ellipse_is_a_circle(self, holo_c, s):
        assert curvature_ellipse(holo_c, 0.15 - 0.1j, s).circle_defect <= 1e-9


class TestConnectionForms:
    def test_identities_hold(self, holo_c):
        worst = holo_connection_check(holo_c, 0.1)
        assert worst["con1"] <= 1e-6
        assert worst["con2"] <= 1e-6

    def test_order_outside_range_is_vacuous(self, holo_c):
        assert holo_connection_check(holo_c, 0.1, s=5) == {"con1": 0.0, "con2": 0.0}

    def test_fails_off_holomorphic_curves(self, seed_b):
        assert holo_connection_check(seed_b, 0.1)["con1"] > 1e-2


class TestShapeOperators:
    """The tau form of the shape operators."""

    @pytest.mark.parametrize(
        "rp",
        [
            RuledPoint(0.1 + 0.1j, (0.2, -0.1, 0.3, 0.05)),
            RuledPoint(-0.2, (0.0, 0.4, -0.3, 0.2)),
        ],
    )
    def test_specializes_general_operators(self, holo_c, rp):
        assert specialization_residual(holo_c, rp) <= 1e-9

    def test_witness(self, holo_c):
        points = [RuledPoint(0.0, (0.0, 0.0, 0.3, 0.0))]
        ops = holo_shape_operators(holo_c, points[0])
        assert ops.h1 == pytest.approx(-0.3)
        assert nonkaehler_witness(holo_c, points) >= 0.3 - 1e-9


class TestEquivariance:
    """F_theta is congruent to F_g composed with a fiber rotation."""

    def test_rotate_fibers(self):
        rp = rotate_fibers(RuledPoint(0.1, (1.0, 0.0, 0.0, 2.0)), math.pi / 2)
        np.testing.assert_allclose(rp.t, [0.0, 1.0, -2.0, 0.0], atol=1e-15)
        assert rp.z == 0.1

    def test_holomorphic_curve(self, holo_c, cloud):
        assert equivariance_residual(holo_c, cloud, math.pi / 4) <= 1e-6

    def test_seed_surface_is_not_equivariant(self, seed_b):
        points = sample_ruled_points(seed_b, np.random.default_rng(12), 25, radius=0.4)
        assert equivariance_residual(seed_b, points, math.pi / 4) > 1e-2
