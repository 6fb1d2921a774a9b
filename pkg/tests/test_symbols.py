import itertools
import logging
import math

import mpmath
import numpy
import pytest
from hypothesis import given, strategies as st

from wedgespectra import config
from wedgespectra.errors import DomainError, OnCurveError
from wedgespectra.symbols import (Classification, SpectralPoint, WedgeParams, classify, classify_interval,
                                  energy_norm_bound, in_spectrum_L2, l1_norm_quadrature, mellin_kernel,
                                  mellin_symbol_quadrature, norm_bound, real_axis_crossings, region_distance,
                                  sample_curve, segment_distance, sigma_point, spectral_radius, winding_number)

ANGLES = (math.pi / 3, math.pi / 2, 2 * math.pi / 3, 3 * math.pi / 2, 5 * math.pi / 3)
WEIGHTS = (-0.5, 0.0, 0.5, 1.0, 1.5, 2.5)
FREQUENCIES = (0.0, 0.5, -0.5, 1.0, -1.0, 2.0, -2.0, 5.0, -5.0)


def reference_symbol(alpha, a, xi):
    with mpmath.workdps(30):
        mu = mpmath.mpc((1 - a) / 2, xi)
        if a == 1.0 and xi == 0.0:
            return complex(-(mpmath.pi - alpha) / mpmath.pi)
        return complex(-mpmath.sin(mu * (mpmath.pi - alpha)) / mpmath.sin(mu * mpmath.pi))


class TestParams:

    @pytest.mark.parametrize('alpha', [0.0, -1.0, 2 * math.pi, 7.0, math.pi, 3.14159, math.nan, 1e-6])
    def test_invalid_angles(self, alpha):
        with pytest.raises(DomainError):
            WedgeParams(alpha)

    @pytest.mark.parametrize('a', [-1.0, 3.0, 5.0, math.nan])
    def test_invalid_weights(self, a):
        with pytest.raises(DomainError):
            WedgeParams(math.pi / 2, a)

    def test_derived(self):
        p = WedgeParams(math.pi / 3, 0.5)
        assert p.beta == pytest.approx(2 * math.pi / 3)
        assert p.c == 0.25
        assert p.convex and not p.degenerate
        assert WedgeParams(math.pi / 2, 1.0).degenerate
        assert p.weight_dual() == WedgeParams(math.pi / 3, 1.5)
        assert WedgeParams(math.pi / 3, -0.5).weight_dual() == WedgeParams(math.pi / 3, 2.5)
        assert p.weight_dual().weight_dual() == p


class TestSymbol:

    @pytest.mark.parametrize('alpha, a, xi', [(math.pi / 3, 0.0, 0.0), (math.pi / 2, 0.5, 1.3),
                                              (3 * math.pi / 2, -0.5, -2.0), (5 * math.pi / 3, 2.5, 0.25),
                                              (2 * math.pi / 3, 1.0, 0.7), (2 * math.pi / 3, 1.0, 0.0),
                                              (math.pi / 3, 1.5, 12.0)])
    def test_against_arbitrary_precision(self, alpha, a, xi):
        expected = reference_symbol(alpha, a, xi)
        assert abs(sigma_point(WedgeParams(alpha, a), xi) - expected) <= 1e-12 * max(1.0, abs(expected))

    def test_large_frequency_does_not_overflow(self):
        values = sigma_point(WedgeParams(math.pi / 3, 0.0), numpy.array([400.0, -400.0, 1e6]))
        assert numpy.all(numpy.isfinite(values))
        assert numpy.max(numpy.abs(values)) < 1e-100

    @pytest.mark.parametrize('xi', [1e-200, 1e-17, -1e-17, 1e-9, 5e-7, 2e-6])
    def test_degenerate_small_frequency(self, xi):
        p = WedgeParams(math.pi / 3, 1.0)
        value = sigma_point(p, xi)
        assert value == pytest.approx(reference_symbol(math.pi / 3, 1.0, xi), rel=1e-13)
        assert value == pytest.approx(-2.0 / 3.0, abs=1e-10)
        assert value.imag == 0.0

    @pytest.mark.parametrize('alpha', [math.pi / 3, 3 * math.pi / 2])
    def test_degenerate_series_switch_is_continuous(self, alpha):
        p = WedgeParams(alpha, 1.0)
        below, above = sigma_point(p, numpy.array([1e-6 * (1 - 1e-9), 1e-6 * (1 + 1e-9)]))
        assert abs(below - above) < 1e-14

    @pytest.mark.parametrize('alpha, a', itertools.product(ANGLES, WEIGHTS))
    def test_half_plane(self, alpha, a):
        values = sample_curve(WedgeParams(alpha, a)).values
        if alpha < math.pi:
            assert numpy.all(values.real < 0)
        else:
            assert numpy.all(values.real > 0)

    @given(st.floats(min_value=50.0, max_value=1e4), st.sampled_from(ANGLES + (math.pi / 6, 11 * math.pi / 6)),
           st.sampled_from(WEIGHTS))
    def test_tail_decay(self, xi, alpha, a):
        p = WedgeParams(alpha, a)
        assert abs(sigma_point(p, xi)) < 1e-6
        assert abs(sigma_point(p, -xi)) < 1e-6

    @given(st.floats(min_value=-50.0, max_value=50.0), st.sampled_from(ANGLES), st.sampled_from(WEIGHTS))
    def test_conjugation_symmetry(self, xi, alpha, a):
        p = WedgeParams(alpha, a)
        assert sigma_point(p, -xi) == numpy.conj(sigma_point(p, xi))

    @given(st.floats(min_value=-20.0, max_value=20.0), st.sampled_from(ANGLES), st.sampled_from(WEIGHTS[:4]))
    def test_weight_dual_conjugates(self, xi, alpha, a):
        p = WedgeParams(alpha, a)
        assert sigma_point(p.weight_dual(), xi) == pytest.approx(numpy.conj(sigma_point(p, xi)), abs=1e-13)

    @pytest.mark.parametrize('alpha, a', itertools.product(ANGLES[:3], WEIGHTS))
    def test_symbol_bounded_by_norm(self, alpha, a):
        p = WedgeParams(alpha, a)
        xi = numpy.linspace(-30.0, 30.0, 2001)
        assert numpy.max(numpy.abs(sigma_point(p, xi))) <= norm_bound(p) * (1.0 + 1e-12)

    def test_kernel_values(self):
        p = WedgeParams(math.pi / 2, 0.0)
        assert mellin_kernel(p, 1.0) == pytest.approx(-1.0 / (2.0 * math.pi))
        assert mellin_kernel(p, numpy.array([0.5, 2.0])).shape == (2,)


class TestNorms:

    @pytest.mark.parametrize('alpha, expected', [(math.pi / 3, 0.8660254037844386), (math.pi / 2, 0.7071067811865476),
                                                 (2 * math.pi / 3, 0.5)])
    def test_reference_values(self, alpha, expected):
        assert norm_bound(WedgeParams(alpha, 0.0)) == pytest.approx(expected, rel=1e-12)

    @pytest.mark.parametrize('alpha', ANGLES)
    def test_degenerate_weight(self, alpha):
        p = WedgeParams(alpha, 1.0)
        assert norm_bound(p) == pytest.approx(abs(1.0 - alpha / math.pi), rel=1e-14)
        assert spectral_radius(p) == norm_bound(p)
        assert energy_norm_bound(alpha) == pytest.approx(norm_bound(p), rel=1e-14)

    def test_real_axis_crossing(self):
        assert real_axis_crossings(WedgeParams(math.pi / 3, 0.0)) == (pytest.approx(-math.sin(math.pi / 3)), 0.0)

    def test_energy_bound_reference(self):
        assert energy_norm_bound(math.pi / 2) == 0.5
        with pytest.raises(DomainError):
            energy_norm_bound(math.pi)

    @pytest.mark.parametrize('alpha, a', [(math.pi / 3, 0.0), (3 * math.pi / 2, 0.5), (2 * math.pi / 3, 1.0),
                                          (5 * math.pi / 3, 2.5), (math.pi / 3, -0.5), (math.pi / 2, 1.5)])
    def test_l1_norm_quadrature(self, alpha, a):
        p = WedgeParams(alpha, a)
        result = l1_norm_quadrature(p)
        assert result.require() == pytest.approx(norm_bound(p), abs=1e-8)
        assert result.error <= 1e-8


class TestSymbolQuadrature:

    @pytest.mark.parametrize('alpha, a, xi', [(math.pi / 3, 0.0, 0.0), (math.pi / 2, 0.5, -1.0),
                                              (3 * math.pi / 2, 2.5, 2.0), (5 * math.pi / 3, -0.5, 5.0),
                                              (math.pi / 3, 2.5, 0.0), (math.pi / 3, -0.5, -5.0),
                                              (2 * math.pi / 3, 2.5, 0.5), (5 * math.pi / 3, 1.0, 0.0)])
    def test_sample(self, alpha, a, xi):
        p = WedgeParams(alpha, a)
        assert abs(mellin_symbol_quadrature(p, xi).require() - sigma_point(p, xi)) < 1e-8

    @pytest.mark.slow
    @pytest.mark.parametrize('alpha, a', itertools.product(ANGLES, WEIGHTS))
    def test_full_grid(self, alpha, a):
        p = WedgeParams(alpha, a)
        for xi in FREQUENCIES:
            assert abs(mellin_symbol_quadrature(p, xi).require() - sigma_point(p, xi)) < 1e-8
        assert abs(l1_norm_quadrature(p).require() - norm_bound(p)) < 1e-8


class TestCurve:

    def test_shape(self, sixty):
        curve = sample_curve(sixty)
        assert curve.points[0] == 0 and curve.points[-1] == 0
        assert len(curve.points) == len(curve) + 2
        assert 0.0 in curve.xi
        assert numpy.all(numpy.diff(curve.xi) > 0)
        assert numpy.max(numpy.abs(numpy.diff(curve.points))) <= curve.tol
        assert abs(curve.values[-1]) < 0.1 * curve.tol
        assert curve.xi_tail == -curve.xi[0]

    def test_extreme_real_part(self, sixty):
        curve = sample_curve(sixty)
        assert float(numpy.max(numpy.abs(curve.points.real))) == pytest.approx(math.sin(math.pi / 3), abs=1e-9)

    def test_conjugation_symmetry(self):
        curve = sample_curve(WedgeParams(2 * math.pi / 3, 0.5))
        numpy.testing.assert_array_equal(curve.values, numpy.conj(curve.values[::-1]))

    def test_degenerate_curve_is_real(self, right_energy):
        curve = sample_curve(right_energy)
        assert numpy.max(numpy.abs(curve.points.imag)) <= 1e-12
        assert numpy.min(curve.points.real) >= -0.5 - 1e-12
        assert numpy.max(curve.points.real) <= 0.0

    def test_reflection(self, sixty):
        curve = sample_curve(sixty)
        reflected = -curve
        assert reflected.sign == -1
        numpy.testing.assert_array_equal(reflected.points, -curve.points)

    def test_finer_tolerance(self, right):
        coarse, fine = sample_curve(right, 1e-2), sample_curve(right, 1e-4)
        assert len(fine) > len(coarse)
        assert numpy.max(numpy.abs(numpy.diff(fine.points))) <= 1e-4

    def test_invalid_tolerance(self, right):
        with pytest.raises(DomainError):
            sample_curve(right, 0.0)

    def test_sample_cap_is_logged(self, caplog):
        settings = config.Settings(max_curve_samples=80)
        with caplog.at_level(logging.WARNING, logger='wedgespectra.symbols.curve'):
            curve = sample_curve(WedgeParams(1.1, 0.3), 1e-5, settings)
        assert len(curve) <= 2 * 80
        assert 'sample cap' in caplog.text

    def test_winding_orientation(self, sixty):
        assert winding_number(sample_curve(sixty), -0.4) == 1
        assert winding_number(sample_curve(WedgeParams(math.pi / 3, 1.5)), -0.4) == -1
        assert winding_number(sample_curve(sixty), 0.4) == 0

    @pytest.mark.parametrize('alpha', [math.pi / 3, 2 * math.pi / 3, 3 * math.pi / 2])
    @pytest.mark.parametrize('a, a_larger', [(1.0, 1.5), (1.0, 2.5), (1.5, 2.5), (1.2, 1.4)])
    def test_curves_grow_with_weight(self, alpha, a, a_larger):
        outer = sample_curve(WedgeParams(alpha, a_larger))
        for xi in (0.0, 0.3, -0.3, 1.0, -1.0):
            assert winding_number(outer, sigma_point(WedgeParams(alpha, a), xi)) != 0

    def test_ray_crossings_are_odd(self, sixty):
        points = sample_curve(sixty).points
        lam = -0.4
        crossings = 0
        for p0, p1 in zip(points[:-1], points[1:]):
            if (p0.imag > 0) != (p1.imag > 0):
                x = p0.real - p0.imag * (p1.real - p0.real) / (p1.imag - p0.imag)
                crossings += x < lam
        assert crossings % 2 == 1

    def test_on_curve(self, sixty):
        curve = sample_curve(sixty)
        with pytest.raises(OnCurveError):
            winding_number(curve, curve.values[len(curve) // 3])

    def test_segment_distance(self):
        points = numpy.array([0.0, 1.0, 1.0 + 1.0j])
        numpy.testing.assert_allclose(segment_distance(points, numpy.array([0.5 - 0.5j, 2.0 + 0.5j])), [0.5, 1.0])

    def test_region_distance(self, sixty):
        curve = sample_curve(sixty)
        distances = region_distance(curve, numpy.array([-0.4, -0.4 + 0.05j, 0.6j, 0.0]))
        assert distances[0] == 0.0 and distances[1] == 0.0 and distances[3] == 0.0
        assert distances[2] > 0.3


class TestClassify:

    @pytest.mark.parametrize('lam, expected', [(-0.4, Classification.INTERIOR), (0.4, Classification.INTERIOR),
                                               (0.6j, Classification.RESOLVENT), (0.9, Classification.RESOLVENT),
                                               (-0.8660254037844386, Classification.BOUNDARY),
                                               (2.0 + 1.0j, Classification.RESOLVENT)])
    def test_sixty_degrees(self, sixty, lam, expected):
        assert in_spectrum_L2(sixty, lam) is expected

    def test_point_on_curve_is_boundary(self, sixty):
        curve = sample_curve(sixty)
        membership = classify(sixty, -curve.values[2 * len(curve) // 3])
        assert membership.classification is Classification.BOUNDARY
        assert 'from the curve' in membership.certificate

    def test_certificates(self, sixty):
        inside = classify(sixty, -0.4)
        assert inside.winding == (1, 0)
        outside = classify(sixty, 5.0)
        assert 'norm bound' in outside.certificate
        assert outside.winding == ()

    @pytest.mark.parametrize('lam, expected', [(0.2, Classification.INTERIOR), (-0.5, Classification.BOUNDARY),
                                               (0.2 + 0.01j, Classification.RESOLVENT),
                                               (0.6, Classification.RESOLVENT)])
    def test_degenerate_interval(self, right_energy, lam, expected):
        assert in_spectrum_L2(right_energy, lam) is expected

    def test_interval_classifier(self):
        assert classify_interval(0.5 + 1e-8j, 0.5, 1e-6).classification is Classification.BOUNDARY
        assert classify_interval(-0.1, 0.5, 1e-6).classification is Classification.INTERIOR

    @pytest.mark.parametrize('lam', [complex(math.inf, 0.0), complex(math.nan, 1.0)])
    def test_non_finite(self, sixty, lam):
        with pytest.raises(DomainError):
            classify(sixty, lam)
        with pytest.raises(DomainError):
            SpectralPoint(lam)

    @given(st.floats(min_value=-1.0, max_value=1.0), st.floats(min_value=-1.0, max_value=1.0))
    def test_reflection_symmetry(self, re, im):
        p = WedgeParams(2 * math.pi / 3, 0.0)
        lam = complex(re, im)
        assert in_spectrum_L2(p, lam) is in_spectrum_L2(p, -lam)
        assert in_spectrum_L2(p, lam) is in_spectrum_L2(p, lam.conjugate())
