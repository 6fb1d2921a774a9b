import math

import numpy
import pytest
from hypothesis import assume, given, strategies as st

from wedgespectra.errors import DomainError
from wedgespectra.symbols import Classification, WedgeParams, sample_curve
from wedgespectra.transmission import (Problem, Query, TransmissionQuery, Verdict, bisect_threshold, check,
                                       epsilon_boundary, illposed_interval_E, mobius, mobius_inverse)

finite = st.floats(min_value=-1e3, max_value=1e3)


class TestMobius:

    @pytest.mark.parametrize('eps, lam', [(0.0, 1.0), (-1.0, 0.0), (-0.2, 2.0 / 3.0), (-2.0, -1.0 / 3.0),
                                          (1j, 1j), (3.0, -2.0)])
    def test_examples(self, eps, lam):
        assert mobius(eps) == pytest.approx(lam, abs=1e-15)

    @given(finite, finite)
    def test_round_trip(self, re, im):
        eps = complex(re, im)
        assume(abs(eps - 1.0) > 1e-6)
        assert mobius_inverse(mobius(eps)) == pytest.approx(eps, rel=1e-9, abs=1e-9)

    @pytest.mark.parametrize('eps', [1.0, complex(math.inf, 0.0), complex(math.nan, 0.0)])
    def test_invalid_epsilon(self, eps):
        with pytest.raises(DomainError):
            mobius(eps)

    def test_pole_of_inverse(self):
        with pytest.raises(DomainError):
            mobius_inverse(-1.0)


class TestIntervals:

    @pytest.mark.parametrize('alpha, interval', [(math.pi / 2, (-3.0, -1.0 / 3.0)), (math.pi / 3, (-5.0, -0.2)),
                                                 (3 * math.pi / 2, (-3.0, -1.0 / 3.0)), (5 * math.pi / 3, (-5.0, -0.2))])
    def test_closed_forms(self, alpha, interval):
        lo, hi = illposed_interval_E(alpha)
        assert lo == pytest.approx(interval[0], rel=1e-12)
        assert hi == pytest.approx(interval[1], rel=1e-12)

    def test_invalid_angle(self):
        with pytest.raises(DomainError):
            illposed_interval_E(math.pi)


class TestQuery:

    def test_fields(self):
        q = Query(-0.2, math.pi / 2, 'e')
        assert q.problem is Problem.E
        assert q.epsilon == complex(-0.2)
        assert q.params == WedgeParams(math.pi / 2, 0.0)
        assert q.lam == pytest.approx(2.0 / 3.0)

    @pytest.mark.parametrize('kwargs', [dict(epsilon=1.0, alpha=1.0), dict(epsilon=0.5, alpha=math.pi),
                                        dict(epsilon=0.5, alpha=1.0, problem='X'),
                                        dict(epsilon=0.5, alpha=1.0, problem='E', a=0.5),
                                        dict(epsilon=0.5, alpha=1.0, a=3.5)])
    def test_invalid(self, kwargs):
        with pytest.raises(DomainError):
            TransmissionQuery(**kwargs)


class TestCheck:

    def test_energy_problem_outside_interval(self):
        verdict = check(TransmissionQuery(-0.2, math.pi / 2, Problem.E))
        assert verdict.wellposed
        assert verdict.lam == pytest.approx(2.0 / 3.0)
        assert verdict.classification is Classification.RESOLVENT

    def test_energy_problem_inside_interval(self):
        verdict = check(TransmissionQuery(-2.0, math.pi / 2, Problem.E))
        assert not verdict.wellposed
        assert verdict.classification is Classification.INTERIOR

    def test_energy_problem_endpoint(self):
        verdict = check(TransmissionQuery(-1.0 / 3.0, math.pi / 2, Problem.E))
        assert verdict.classification is Classification.BOUNDARY
        assert not verdict.wellposed

    def test_weighted_problem_far_away(self):
        verdict = check(TransmissionQuery(3 + 4j, math.pi / 3))
        assert verdict.wellposed
        assert 'norm bound' in verdict.certificate

    def test_weighted_problem_inside(self):
        # lambda = -0.4 lies inside the curve for alpha = pi/3
        verdict = check(TransmissionQuery(mobius_inverse(-0.4), math.pi / 3))
        assert verdict.classification is Classification.INTERIOR

    @given(st.floats(min_value=-8.0, max_value=4.0), st.floats(min_value=-2.0, max_value=2.0))
    def test_conjugate_symmetry(self, re, im):
        eps = complex(re, im)
        assume(abs(eps - 1.0) > 1e-3)
        first = check(TransmissionQuery(eps, 2 * math.pi / 3))
        second = check(TransmissionQuery(eps.conjugate(), 2 * math.pi / 3))
        assert first.wellposed == second.wellposed

    @pytest.mark.parametrize('eps', [-0.1, -0.3, -0.5, -1.0, -2.9, -3.5, 0.4, 2.0, -1.0 + 0.2j, -0.5 + 1e-3j])
    def test_weighted_at_a1_matches_energy(self, eps):
        weighted = check(TransmissionQuery(eps, math.pi / 2, Problem.L, 1.0))
        energy = check(TransmissionQuery(eps, math.pi / 2, Problem.E))
        assert weighted.wellposed == energy.wellposed

    def test_report(self):
        record = check(TransmissionQuery(-2.0, math.pi / 2, Problem.E)).as_dict()
        assert record['wellposed'] is False
        assert record['lambda'] == [pytest.approx(-1.0 / 3.0), 0.0]
        assert record['classification'] == 'interior'
        assert isinstance(Verdict(0.5, Classification.RESOLVENT, 'x').as_dict()['certificate'], str)


class TestThreshold:

    def test_energy_interval_ends(self):
        upper = bisect_threshold(math.pi / 2, Problem.E, -0.5, 0.0, tol=1e-11, on_curve_tol=1e-13)
        lower = bisect_threshold(math.pi / 2, 'E', -2.0, -4.0, tol=1e-11, on_curve_tol=1e-13)
        assert abs(upper - (-1.0 / 3.0)) < 1e-9
        assert abs(lower - (-3.0)) < 1e-9

    def test_same_verdict_at_both_ends(self):
        with pytest.raises(DomainError):
            bisect_threshold(math.pi / 2, Problem.E, 0.0, 0.5)

    def test_weighted_threshold_on_curve(self, sixty):
        # along the real eps axis the verdict flips where lambda crosses the curve extreme -m
        eps = bisect_threshold(math.pi / 3, Problem.L, mobius_inverse(-0.5), mobius_inverse(-0.95), tol=1e-10)
        assert mobius(eps).real == pytest.approx(-math.sin(math.pi / 3), abs=3e-6)


class TestEpsilonBoundary:

    def test_pull_back(self, sixty):
        plus, minus = epsilon_boundary(sixty)
        curve = sample_curve(sixty)
        assert plus.shape == curve.points.shape
        assert numpy.all(numpy.isfinite(plus)) and numpy.all(numpy.isfinite(minus))
        for k in (1, len(plus) // 3, len(plus) // 2):
            assert mobius(plus[k]) == pytest.approx(curve.points[k], abs=1e-12)
            assert mobius(minus[k]) == pytest.approx(-curve.points[k], abs=1e-12)
        # lambda = 0 pulls back to eps = -1
        assert plus[0] == pytest.approx(-1.0)
        assert minus[0] == pytest.approx(-1.0)

