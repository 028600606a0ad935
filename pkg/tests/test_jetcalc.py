"""Tests for truncated series and bivariate jets."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from isoruled.errors import DegeneracyError, DomainError, ShapeError
from isoruled.jetcalc import HoloSeries, Jet2, jet_gram_schmidt, jet_orthonormalize, sym_inner

coefficients = st.lists(st.floats(-2.0, 2.0), min_size=1, max_size=5)
points = st.complex_numbers(max_magnitude=0.9, allow_nan=False, allow_infinity=False)


class TestHoloSeries:
    """Algebra of truncated power series."""

    def test_order_below_minimum_rejected(self):
        with pytest.raises(ShapeError):
            HoloSeries([[1.0]], order=4)

    def test_constant_null_vector(self):
        a = HoloSeries([[1.0], [1j]])
        assert sym_inner(a, a).max_abs() == 0.0

    def test_antiderivative_of_z(self):
        z = HoloSeries([[0.0, 1.0]])
        np.testing.assert_allclose(z.antiderivative(0.0).coeffs[0, :3], [0.0, 0.0, 0.5])

    def test_antiderivative_constant_is_value_at_base_point(self):
        z = HoloSeries([[0.0, 1.0]], base_point=0.5)
        assert z.antiderivative(3.0)(0.5)[0] == pytest.approx(3.0)

    def test_derivative_undoes_antiderivative(self):
        a = HoloSeries([[1.0, 2.0, 3.0], [0.0, 1j]])
        back = a.antiderivative(0.0).derivative()
        np.testing.assert_allclose(back.coeffs, a.coeffs)

    def test_rows_of_different_lengths_are_padded(self):
        a = HoloSeries([[1.0, 2.0, 3.0], [0.0, 1j]], order=8)
        assert a.coeffs.shape == (2, 9)
        np.testing.assert_array_equal(a.coeffs[1, :3], [0.0, 1j, 0.0])

    def test_recentered_is_the_same_function(self):
        cubic = HoloSeries([[1.0, -2.0, 0.5, 1.0 / 6.0]])
        moved = cubic.recentered(0.25 + 0.25j)
        assert moved.base_point == 0.25 + 0.25j
        for z in (0.0, 0.3 - 0.1j, -0.4j):
            np.testing.assert_allclose(moved(z), cubic(z), atol=1e-14)
        taylor = cubic.derivatives_at(0.25 + 0.25j, 3)[:, 0] / [1, 1, 2, 6]
        np.testing.assert_allclose(moved.coeffs[0, :4], taylor, atol=1e-14)

    def test_product(self):
        a = HoloSeries([[1.0, 1.0]])
        b = HoloSeries([[1.0, -1.0]])
        np.testing.assert_allclose((a * b).coeffs[0, :4], [1.0, 0.0, -1.0, 0.0])

    def test_reciprocal_of_one_minus_z(self):
        a = HoloSeries([[1.0, -1.0]], order=12)
        np.testing.assert_allclose(a.reciprocal().coeffs[0], np.ones(13))

    def test_reciprocal_requires_nonzero_constant_term(self):
        with pytest.raises(DomainError):
            HoloSeries([[0.0, 1.0]]).reciprocal()

    def test_base_point_mismatch_rejected(self):
        with pytest.raises(ShapeError):
            HoloSeries([[1.0]], base_point=0.0) + HoloSeries([[1.0]], base_point=0.5)

    def test_component_mismatch_rejected(self):
        with pytest.raises(ShapeError):
            HoloSeries([[1.0], [2.0]]) + HoloSeries([[1.0], [2.0], [3.0]])

    def test_evaluation_about_base_point(self):
        a = HoloSeries([[1.0, 2.0]], base_point=0.5)
        assert a(1.5)[0] == pytest.approx(3.0)

    def test_derivatives_at(self):
        a = HoloSeries([[0.0, 0.0, 0.0, 1.0]])  # z^3
        d = a.derivatives_at(2.0, 3)
        np.testing.assert_allclose(d[:, 0], [8.0, 12.0, 12.0, 6.0])

    def test_degree(self):
        assert HoloSeries([[0.0, 0.0, 5.0]]).degree() == 2
        assert HoloSeries([[0.0]]).degree() == -1

    def test_truncation_drops_high_powers(self):
        a = HoloSeries([[0.0] * 8 + [1.0]], order=8)
        assert (a * a).max_abs() == 0.0

    @settings(max_examples=50, deadline=None)
    @given(coefficients, coefficients, points)
    def test_product_evaluates_to_product_of_values(self, ca, cb, z):
        a = HoloSeries([ca], order=16)
        b = HoloSeries([cb], order=16)
        assert abs((a * b)(z)[0] - a(z)[0] * b(z)[0]) <= 1e-9

    @settings(max_examples=50, deadline=None)
    @given(st.floats(1.0, 2.0), st.lists(st.floats(-0.3, 0.3), min_size=1, max_size=4))
    def test_reciprocal_inverts(self, a0, rest):
        a = HoloSeries([[a0] + rest], order=16)
        r = a.reciprocal()
        prod = (a * r).coeffs[0]
        assert prod[0] == pytest.approx(1.0)
        assert np.max(np.abs(prod[1:])) <= 1e-11 * max(1.0, r.max_abs())


class TestJet2:
    """Jet arithmetic against hand-computed partial derivatives."""

    @staticmethod
    def jets():
        # f = u^2 + v, g = u v at (u, v) = (1, 2)
        f = Jet2(3.0, 2.0, 1.0, 2.0, 0.0, 0.0)
        g = Jet2(2.0, 2.0, 1.0, 0.0, 1.0, 0.0)
        return f, g

    def test_product_rule(self):
        f, g = self.jets()
        h = f * g  # u^3 v + u v^2
        assert float(h.value) == pytest.approx(6.0)
        assert float(h.du) == pytest.approx(10.0)
        assert float(h.dv) == pytest.approx(5.0)
        assert float(h.duu) == pytest.approx(12.0)
        assert float(h.duv) == pytest.approx(7.0)
        assert float(h.dvv) == pytest.approx(2.0)

    def test_sqrt_of_square(self):
        sq = Jet2(4.0, 4.0, 0.0, 2.0, 0.0, 0.0)  # u^2 at u = 2
        r = sq.sqrt()
        assert float(r.value) == pytest.approx(2.0)
        assert float(r.du) == pytest.approx(1.0)
        assert float(r.duu) == pytest.approx(0.0, abs=1e-15)

    def test_log_needs_positive_values(self):
        with pytest.raises(DomainError):
            Jet2(0.0, 1.0, 0.0).log()

    def test_partial_needs_second_order(self):
        with pytest.raises(ShapeError):
            Jet2(1.0, 0.0, 0.0).partial("u")

    def test_partial_of_second_order_jet(self):
        f, _ = self.jets()
        fu = f.partial("u")
        assert float(fu.value) == pytest.approx(2.0)
        assert float(fu.du) == pytest.approx(2.0)

    def test_mixed_order_arithmetic_drops_to_first_order(self):
        f, _ = self.jets()
        assert (f * Jet2(1.0, 0.0, 0.0)).order == 1


class TestGramSchmidt:
    """Orthonormalization of vector jets."""

    def test_rotating_vector_derivative(self):
        # v(u) = (cos u, sin u, 0) at u = 0
        v = Jet2([1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 0.0])
        frames, norms = jet_gram_schmidt([v])
        np.testing.assert_allclose(frames[0].du, [0.0, 1.0, 0.0])
        assert float(norms[0].value) == pytest.approx(1.0)

    def test_frames_are_orthonormal(self):
        rng = np.random.default_rng(3)
        vs = [Jet2(rng.normal(size=4), rng.normal(size=4), rng.normal(size=4)) for _ in range(3)]
        frames, _ = jet_gram_schmidt(vs)
        E = np.array([f.value for f in frames])
        np.testing.assert_allclose(E @ E.T, np.eye(3), atol=1e-12)

    def test_dependent_vector_named(self):
        zero = np.zeros(3)
        v0 = Jet2([1.0, 0.0, 0.0], zero, zero)
        v1 = Jet2([2.0, 0.0, 0.0], zero, zero)
        with pytest.raises(DegeneracyError) as info:
            jet_gram_schmidt([v0, v1])
        assert info.value.index == 1

    def test_orthonormalize_constant_plane(self):
        zero = np.zeros(2)
        frames = jet_orthonormalize([Jet2([2.0, 0.0], zero, zero), Jet2([1.0, 1.0], zero, zero)])
        np.testing.assert_allclose(frames[0].value, [1.0, 0.0])
        np.testing.assert_allclose(frames[1].value, [0.0, 1.0])
        np.testing.assert_array_equal(frames[1].du, zero)

    def test_orthonormalize_keeps_differentiated_relations(self):
        rng = np.random.default_rng(5)
        vs = [Jet2(rng.normal(size=4), rng.normal(size=4), rng.normal(size=4)) for _ in range(3)]
        frames = jet_orthonormalize(vs)
        for f in frames:
            for g in frames:
                # d<f, g> = <df, g> + <f, dg>
                assert abs(f.du @ g.value + f.value @ g.du) <= 1e-10
                assert abs(f.dv @ g.value + f.value @ g.dv) <= 1e-10
