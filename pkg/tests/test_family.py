"""Tests for the associated family g_theta and F_theta."""

import math

import numpy as np
import pytest

from isoruled.errors import DomainError
from isoruled.family import (
    DeformedChart,
    TracelessForm,
    associated_surface,
    bundle_isometry,
    bundle_isometry_residuals,
    complex_structure,
    deformation_closed_residual,
    deformation_residual,
    deformed_immersion,
    isometry_residual,
    normal_rotation,
    reflection_L,
    theta_frame_identities,
    theta_shape_operators,
    traceless_form,
    twist,
)
from isoruled.ruled import RuledPoint, eval_F, shape_operators
from isoruled.weierstrass import evaluate_surface

RP = RuledPoint(0.1 + 0.05j, (0.3, -0.2))
THETAS = [math.pi / 6, math.pi / 2, 3 * math.pi / 4]


class TestDeformedChart:
    """g_theta and its prescribed frame."""

    def test_quarter_turn_first_partial(self, seed_a):
        deformed = DeformedChart(seed_a, math.pi / 2)
        d = evaluate_surface(deformed.chart, 0.0, 1)
        np.testing.assert_allclose(d[(1, 0)], [0, -0.5, 0, 0, 0, 0], atol=1e-15)

    @pytest.mark.parametrize("theta", [-0.1, math.pi, 4.0])
    def test_theta_range(self, seed_a, theta):
        with pytest.raises(DomainError):
            DeformedChart(seed_a, theta)

    def test_accessors(self, seed_a):
        deformed = associated_surface(seed_a, 0.5)
        assert deformed.base is seed_a
        assert deformed.theta == 0.5
        assert deformed.N == 6

    @pytest.mark.parametrize("theta", THETAS)
    def test_isometric_surface(self, seed_b, theta):
        deformed = DeformedChart(seed_b, theta)
        z = -0.1 + 0.2j
        assert deformed.metric_defect(z) <= 1e-12
        assert deformed.pushforward_defect(z) <= 1e-12
        assert deformed.second_form_defect(z) <= 1e-9

    def test_frame_keeps_tail(self, seed_b):
        deformed = DeformedChart(seed_b, 1.0)
        np.testing.assert_allclose(
            deformed.frame(0.1 + 0.2j).vectors[4:], seed_b.frame(0.1 + 0.2j).vectors[4:]
        )

    def test_zero_angle_is_the_surface(self, seed_a):
        np.testing.assert_allclose(
            eval_F(DeformedChart(seed_a, 0.0), RP), eval_F(seed_a, RP), atol=1e-15
        )

    def test_deformed_immersion(self, seed_a):
        point = deformed_immersion(DeformedChart(seed_a, 1.0), RP)
        assert point.position.shape == (6,)
        assert point.lift.shape == (2, 4)


class TestFamilyMatrices:
    def test_normal_rotation_composes(self):
        np.testing.assert_allclose(
            normal_rotation(0.3) @ normal_rotation(0.4), normal_rotation(0.7), atol=1e-15
        )

    def test_reflection(self):
        L = reflection_L(1.1, 4)
        np.testing.assert_allclose(L[:2, :2] @ L[:2, :2], np.eye(2), atol=1e-15)
        assert np.trace(L) == pytest.approx(0.0)
        np.testing.assert_array_equal(L[2:], np.zeros((2, 4)))

    def test_complex_structure_on_horizontal(self):
        J = complex_structure(4)
        np.testing.assert_allclose(J[:2, :2] @ J[:2, :2], -np.eye(2))
        np.testing.assert_allclose(J[2:, 2:], np.eye(2))

    def test_twist_at_zero_is_complex_structure(self):
        np.testing.assert_allclose(twist(0.0, 4), complex_structure(4), atol=1e-15)


class TestFamilyIdentities:
    """F_theta is isometric to F and its second fundamental form obeys the family relation."""

    @pytest.mark.parametrize("theta", THETAS)
    def test_isometry(self, seed_a, theta):
        assert isometry_residual(seed_a, RP, theta) <= 1e-9

    @pytest.mark.parametrize("theta", THETAS)
    def test_frame_identities(self, seed_a, theta):
        assert max(theta_frame_identities(seed_a, RP, theta).values()) <= 1e-9

    @pytest.mark.parametrize("theta", THETAS)
    def test_deformation(self, seed_a, theta):
        assert deformation_residual(seed_a, RP, theta) <= 2e-5

    def test_deformation_exact_at_zero(self, seed_a):
        assert deformation_residual(seed_a, RP, 0.0) <= 1e-12

    @pytest.mark.parametrize("theta", [0.0] + THETAS)
    def test_deformation_closed(self, seed_a, theta):
        assert deformation_closed_residual(seed_a, RP, theta) <= 1e-9

    @pytest.mark.parametrize("theta", THETAS)
    def test_deformation_closed_higher_dimension(self, seed_b, theta):
        rp = RuledPoint(0.1 + 0.2j, (0.1, 0.2, -0.1, 0.3))
        assert deformation_closed_residual(seed_b, rp, theta) <= 1e-9

    def test_deformation_rejects_flipped_beta(self, seed_a):
        theta = math.pi / 2
        beta = traceless_form(seed_a, RP)
        values = beta.values.copy()
        values[0, 1] = values[1, 0] = -values[0, 1]
        flipped = TracelessForm(values=values, Omega=beta.Omega)
        # the eta part is off by 4 kappa sin(theta/2) times a rotation entry
        assert deformation_closed_residual(seed_a, RP, theta, flipped) >= math.sin(theta / 2)
        assert deformation_closed_residual(seed_a, RP, 0.0, flipped) <= 1e-9

    @pytest.mark.parametrize("theta", THETAS)
    def test_bundle_isometry(self, seed_a, theta):
        residuals = bundle_isometry_residuals(seed_a, RP, theta)
        assert residuals["closed_form"] <= 1e-9
        assert residuals["norms"] <= 1e-9
        assert residuals["parallel"] <= 1e-5

    def test_bundle_isometry_matrix(self, seed_a):
        iso = bundle_isometry(seed_a, RP, 0.8)
        M = iso.matrix()
        np.testing.assert_allclose(M @ iso.xi, iso.xi_theta, atol=1e-12)
        np.testing.assert_allclose(M @ iso.eta, iso.eta_theta, atol=1e-12)

    def test_traceless_form(self, seed_b):
        rp = RuledPoint(0.1 + 0.2j, (0.1, 0.2, -0.1, 0.3))
        beta = traceless_form(seed_b, rp)
        trace = beta.values[0, 0] + beta.values[1, 1]
        np.testing.assert_array_equal(trace, np.zeros(8))
        np.testing.assert_array_equal(beta.values[2:], np.zeros((4, 6, 8)))

    def test_theta_shape_operators(self, seed_a):
        base = shape_operators(seed_a, RP)
        np.testing.assert_allclose(theta_shape_operators(seed_a, RP, 0.0).A_xi, base.A_xi)
        turned = theta_shape_operators(seed_a, RP, 1.1)
        assert turned.kappa == base.kappa
        assert turned.h1**2 + turned.h2**2 == pytest.approx(base.h1**2 + base.h2**2)
        np.testing.assert_allclose(np.linalg.norm(turned.r), np.linalg.norm(base.r))
