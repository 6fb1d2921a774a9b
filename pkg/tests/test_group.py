import math

import numpy
import pytest
import scipy.integrate
from hypothesis import given, settings, strategies as st

from wedgespectra.errors import DensityError, DomainError
from wedgespectra.group import (IDENTITY, Base, CompactBumpG, ConvolutionG, Decay, GaussianG, GroupElement,
                                KernelG, Sign, convolve, convolve_log, haar_integral, haar_modulus, hs_norm,
                                hs_norm_squared, inverse, l1_norm, l2_norm, modulus_power, multiply,
                                plancherel_kernel, weighted, young_bound)
from wedgespectra.numerics import QuadratureRule
from wedgespectra.operators import k_alpha_on_group
from wedgespectra.symbols import WedgeParams, norm_bound

dilations = st.floats(min_value=1e-3, max_value=1e3)
translations = st.floats(min_value=-1e3, max_value=1e3)
elements = st.builds(GroupElement, dilations, translations)


class TestGroupLaw:

    @given(elements, elements, elements)
    def test_associative(self, g, h, k):
        assert ((g * h) * k).isclose(g * (h * k), rel_tol=1e-9, abs_tol=1e-6)

    @given(elements)
    def test_inverse(self, g):
        assert multiply(g, inverse(g)).isclose(IDENTITY, abs_tol=1e-9)
        assert multiply(inverse(g), g).isclose(IDENTITY, abs_tol=1e-9)

    @given(elements, elements)
    def test_right_quotient(self, g, h):
        assert (g / h).isclose(g * h.inverse(), rel_tol=1e-12, abs_tol=1e-9)

    @given(elements)
    def test_identity(self, g):
        assert g * IDENTITY == g
        assert IDENTITY * g == g

    def test_product_formula(self):
        assert GroupElement(2.0, 1.0) * GroupElement(3.0, -1.0) == GroupElement(6.0, -1.0)

    def test_modulus(self):
        g = GroupElement(4.0, 7.0)
        assert haar_modulus(g) == 0.25
        assert tuple(g) == (4.0, 7.0)

    @pytest.mark.parametrize('x, z', [(0.0, 0.0), (-1.0, 0.0), (math.inf, 0.0), (1.0, math.nan)])
    def test_invalid_elements(self, x, z):
        with pytest.raises(DomainError):
            GroupElement(x, z)


class TestFunctions:

    def test_gaussian_values(self):
        f = GaussianG(2.0, 0.5, 1.0, -1.0, 2.0)
        assert f.evaluate(math.exp(0.5), -1.0) == pytest.approx(2.0)
        assert f(GroupElement(math.e, 1.0)) == pytest.approx(2.0 * math.exp(-0.25 - 1.0))

    def test_evaluate_needs_positive_dilation(self):
        with pytest.raises(DomainError):
            GaussianG().evaluate(numpy.array([1.0, 0.0]), 0.0)

    def test_weights(self):
        f = GaussianG(1.0, 0.0, 0.8, 0.0, 1.0)
        x = numpy.array([0.5, 1.0, 2.0])
        numpy.testing.assert_allclose(weighted(f, 0.5).evaluate(x, 0.3), x ** 0.5 * f.evaluate(x, 0.3))
        numpy.testing.assert_allclose(modulus_power(f, 0.5).evaluate(x, 0.3), x ** -0.5 * f.evaluate(x, 0.3))
        assert f.gamma == 0.0

    def test_invalid_widths(self):
        with pytest.raises(DomainError):
            GaussianG(su=0.0)
        with pytest.raises(DomainError):
            CompactBumpG(rz=-1.0)

    def test_bump_support(self):
        f = CompactBumpG(1.0, 0.0, 0.5, 1.0, 0.25)
        assert f.decay is Decay.COMPACT
        assert f.evaluate(math.exp(0.6), 1.0) == 0.0
        assert f.evaluate(1.0, 1.3) == 0.0
        assert f.evaluate(1.0, 1.0) == pytest.approx(math.exp(-2.0))

    def test_odd_bump_has_zero_z_integral(self):
        f = CompactBumpG(1.0, 0.0, 1.0, 0.0, 1.0, odd_in_z=True)
        assert abs(haar_integral(f).require()) < 1e-13

    def test_dishonest_box_is_rejected(self):
        class NarrowBump(CompactBumpG):
            @property
            def box(self):
                return ((-0.5, 0.5), (-0.5, 0.5))

        with pytest.raises(DensityError):
            NarrowBump()

    def test_generic_fourier_matches_closed_form(self):
        f = GaussianG(1.0, 0.2, 0.8, 0.5, 1.3)

        def evaluator(x, z):
            return numpy.exp(-((numpy.log(x) - 0.2) / 0.8) ** 2 - ((z - 0.5) / 1.3) ** 2)

        generic = KernelG(evaluator, f.box, name='gaussian')
        x = numpy.array([0.5, 1.0, 2.0])[:, None]
        zeta = numpy.array([-1.5, -0.2, 0.0, 0.7, 2.0])[None, :]
        numpy.testing.assert_allclose(generic.partial_fourier(x, zeta), f.partial_fourier(x, zeta), atol=1e-10)

    def test_kernel_decay_class(self):
        k = KernelG(lambda x, z: 1.0 / (1.0 + x * x + z * z), ((-10.0, 10.0), (-10.0, 10.0)))
        assert k.decay is Decay.ALGEBRAIC
        assert isinstance(k, Base)


class TestNorms:

    def test_standard_gaussian(self):
        assert GaussianG().l2_norm_squared_exact() == pytest.approx(math.pi / 2)
        assert l2_norm(GaussianG()) ** 2 == pytest.approx(math.pi / 2, rel=1e-9)
        assert l1_norm(GaussianG()) == pytest.approx(math.pi, rel=1e-9)

    @pytest.mark.parametrize('f', [GaussianG(1.0, 0.3, 0.7, -0.4, 1.2), GaussianG(2.0, -0.5, 1.3, 0.2, 0.6),
                                   GaussianG(1.0, 0.2, 0.9, 1.0, 0.8, gamma=0.3)])
    def test_against_closed_forms(self, f):
        assert l2_norm(f) ** 2 == pytest.approx(f.l2_norm_squared_exact(), rel=1e-8)
        assert l1_norm(f) == pytest.approx(f.l1_norm_exact(), rel=1e-8)

    def test_haar_integral(self):
        assert haar_integral(GaussianG()).require() == pytest.approx(math.pi, rel=1e-10)

    def test_algebraic_plane_integral(self):
        k = KernelG(lambda x, z: numpy.exp(-numpy.log(x) ** 2) / (1.0 + z * z), ((-6.0, 6.0), (-50.0, 50.0)))
        result = haar_integral(k)
        assert result.converged
        assert result.value.real == pytest.approx(math.pi ** 1.5, abs=1e-8)
        assert 0.0 < result.error <= 1e-8 * math.pi ** 1.5
        assert l1_norm(k) == pytest.approx(math.pi ** 1.5, abs=1e-8)

    @settings(max_examples=10, deadline=None)
    @given(st.floats(min_value=0.2, max_value=5.0), st.floats(min_value=-3.0, max_value=3.0))
    def test_haar_right_invariance(self, x, z):
        f = GaussianG(1.0, 0.3, 0.7, -0.4, 1.2)
        shifted = haar_integral(f, shift=GroupElement(x, z)).require()
        assert shifted == pytest.approx(haar_integral(f).require(), abs=1e-8)

    @pytest.mark.parametrize('f', [GaussianG(1.0, 0.3, 0.7, -0.4, 1.2), CompactBumpG(1.0, 0.2, 0.5, -0.3, 0.8)])
    @pytest.mark.parametrize('shift', [GroupElement(0.5, 1.0), GroupElement(4.0, -2.5), GroupElement(0.1, 3.0)])
    def test_haar_right_invariance_fixed_shifts(self, f, shift):
        shifted = haar_integral(f, shift=shift)
        assert shifted.converged
        assert shifted.value == pytest.approx(haar_integral(f).require(), abs=1e-8)


class TestConvolution:

    def test_against_dense_grid(self):
        f = GaussianG(1.0, 0.3, 0.7, -0.4, 1.2)
        k = GaussianG(0.5, -0.2, 0.5, 0.6, 0.9)
        at = GroupElement(1.7, 0.4)
        # (f * k)(x, z) = int int f(u - S, z - e^(u - S) t) k(S, t) dS dt in log coordinates
        (s0, s1), (t0, t1) = k.box
        S, T = numpy.meshgrid(numpy.linspace(s0, s1, 1201), numpy.linspace(t0, t1, 1201), indexing='ij')
        u = math.log(at.x)
        values = f.evaluate_log(u - S, at.z - numpy.exp(u - S) * T) * k.evaluate_log(S, T)
        expected = scipy.integrate.trapezoid(scipy.integrate.trapezoid(values, dx=(t1 - t0) / 1200, axis=1),
                                            dx=(s1 - s0) / 1200)
        assert convolve(f, k, at).real == pytest.approx(expected, rel=1e-8)

    def test_vectorised_targets(self):
        f = GaussianG()
        k = CompactBumpG(1.0, 0.0, 0.5, 0.0, 0.5)
        u = numpy.array([-0.5, 0.0, 0.5])
        z = numpy.array([0.0, 0.3, -0.3])
        values = convolve_log(f, k, u, z)
        assert values.shape == (3,)
        for i in range(3):
            assert values[i] == pytest.approx(convolve(f, k, GroupElement(math.exp(u[i]), z[i])).real, rel=1e-9)

    def test_two_algebraic_factors(self):
        k = KernelG(lambda x, z: 1.0 / (1.0 + x * x + z * z), ((-10.0, 10.0), (-10.0, 10.0)))
        with pytest.raises(DensityError):
            convolve(k, k, IDENTITY)
        with pytest.raises(DensityError):
            ConvolutionG(k, GaussianG())

    def test_narrow_factor(self):
        f = GaussianG()
        k = CompactBumpG(1.0, 0.0, 0.01, 0.0, 0.01)
        at = GroupElement(1.3, 0.2)
        (s0, s1), (t0, t1) = k.box
        S, T = numpy.meshgrid(numpy.linspace(s0, s1, 801), numpy.linspace(t0, t1, 801), indexing='ij')
        u = math.log(at.x)
        values = f.evaluate_log(u - S, at.z - numpy.exp(u - S) * T) * k.evaluate_log(S, T)
        expected = scipy.integrate.trapezoid(scipy.integrate.trapezoid(values, dx=(t1 - t0) / 800, axis=1),
                                            dx=(s1 - s0) / 800)
        value = convolve(f, k, at).real
        assert value == pytest.approx(expected, rel=1e-8)
        # k concentrates at the identity
        assert value == pytest.approx(f.evaluate(at.x, at.z) * haar_integral(k).require(), rel=1e-3)
        assert convolve(k, f, at).real == pytest.approx(f.evaluate(at.x, at.z) * haar_integral(k).require(), rel=1e-3)

    @pytest.mark.slow
    @settings(max_examples=5, deadline=None)
    @given(st.floats(min_value=-0.5, max_value=0.5), st.floats(min_value=0.5, max_value=1.0),
           st.floats(min_value=-0.5, max_value=0.5), st.floats(min_value=0.6, max_value=1.2),
           st.sampled_from([math.pi / 3, math.pi / 2, 3 * math.pi / 2]))
    def test_young_bound(self, u0, su, z0, sz, alpha):
        p = WedgeParams(alpha, 0.0)
        bound = young_bound(GaussianG(1.0, u0, su, z0, sz), k_alpha_on_group(p), k_l1=norm_bound(p))
        assert bound.holds, bound

    @settings(max_examples=5, deadline=None)
    @given(st.floats(min_value=-0.5, max_value=0.5), st.floats(min_value=-0.5, max_value=0.5))
    def test_young_bound_gaussian_kernel(self, u0, z0):
        k = GaussianG(0.5, u0, 0.6, z0, 0.7)
        bound = young_bound(GaussianG(1.0, 0.0, 0.8, 0.0, 1.0), k, k_l1=k.l1_norm_exact())
        assert 0.0 < bound.lhs and bound.holds, bound


class TestPlancherel:

    def test_isometry_standard_gaussian(self):
        halves = [float(hs_norm_squared(plancherel_kernel(GaussianG(), s)).require()) for s in '+-']
        for half in halves:
            assert half == pytest.approx(math.pi / 4, rel=1e-4)

    @pytest.mark.parametrize('f', [GaussianG(1.0, 0.3, 0.7, -0.4, 1.2), GaussianG(2.0, -0.5, 1.3, 0.2, 0.6)])
    def test_isometry(self, f):
        total = hs_norm(plancherel_kernel(f, Sign.PLUS)) ** 2 + hs_norm(plancherel_kernel(f, Sign.MINUS)) ** 2
        assert total == pytest.approx(f.l2_norm_squared_exact(), rel=1e-4)

    def test_kernel_values(self):
        f = GaussianG(1.0, 0.0, 1.0, 0.5, 1.0)
        kappa = plancherel_kernel(f, '-')
        r, w = 0.7, 1.3
        value = complex(kappa(r, w))
        assert value == pytest.approx(math.sqrt(r) * complex(f.partial_fourier(w / r, -r)))
        assert complex(kappa.values(math.log(r), math.log(w / r))) == pytest.approx(value)

    @pytest.mark.slow
    def test_convolution_theorem_bound(self):
        p = WedgeParams(math.pi / 2, 0.0)
        rule = QuadratureRule(abs_tol=1e-6, rel_tol=1e-6)
        f = GaussianG(1.0, 0.0, 0.6, 0.0, 0.8)
        lhs = hs_norm(plancherel_kernel(ConvolutionG(f, k_alpha_on_group(p)), Sign.PLUS), rule)
        rhs = hs_norm(plancherel_kernel(f, Sign.PLUS), rule) * norm_bound(p)
        assert 0.0 < lhs <= rhs

    @pytest.mark.parametrize('value, sign', [('+', Sign.PLUS), ('minus', Sign.MINUS), (-1, Sign.MINUS)])
    def test_sign_parse(self, value, sign):
        assert Sign.parse(value) is sign

    def test_bad_sign(self):
        with pytest.raises(DomainError):
            Sign.parse('x')
