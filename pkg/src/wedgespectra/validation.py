"""Self-checks of the package, run by ``wedgespectra validate``

Every check measures one residual against a closed form or an independent
quadrature and compares it with its tolerance. Checks are grouped in suites
named after the subpackages.
"""
from __future__ import annotations

import cmath
import itertools
import logging
import math
import time
from typing import Callable, Dict, List, NamedTuple, Tuple

import numpy

from .group import (CompactBumpG, ConvolutionG, GaussianG, GroupElement, haar_integral, hs_norm, hs_norm_squared,
                    l2_norm, plancherel_kernel, young_bound)
from .numerics import (DEFAULT_RULE, DenseMatrix, QuadratureKind, QuadratureRule, bessel_k1, bessel_k1_integral,
                       eigenvalues, integrate)
from .operators import (BoundaryDensity, adjoint_kernel, containment, energy_product, image_norm, k_alpha,
                        k_alpha_on_group, k_layer, nystrom_T, perturbation_hs_norm, plemelj_residual, t_kernel,
                        t_kernel_quadrature, toeplitz_section)
from .symbols import WedgeParams, l1_norm_quadrature, mellin_symbol_quadrature, norm_bound, sample_curve, sigma_point
from .transmission import (Problem, TransmissionQuery, bisect_threshold, check, illposed_interval_E, mobius,
                           mobius_inverse)

__all__ = [ "CheckResult", "SUITES", "run_suite", "run" ]

logger = logging.getLogger(__name__)

ANGLES = (math.pi / 3, math.pi / 2, 2 * math.pi / 3, 3 * math.pi / 2, 5 * math.pi / 3)
WEIGHTS = (-0.5, 0.0, 0.5, 1.0, 1.5, 2.5)
FREQUENCIES = (0.0, 0.5, -0.5, 1.0, -1.0, 2.0, -2.0, 5.0, -5.0)


class CheckResult(NamedTuple):
    """Outcome of one named check"""
    suite: str
    name: str
    tolerance: float
    residual: float
    passed: bool
    seconds: float
    detail: str = ''

    def as_dict(self) -> dict:
        return {
            "suite": self.suite,
            "name": self.name,
            "tolerance": self.tolerance,
            "residual": self.residual,
            "passed": self.passed,
            "seconds": self.seconds,
            "detail": self.detail,
        }


_REGISTRY: Dict[str, List[Tuple[str, float, Callable[[], float]]]] = {}


def _check(suite: str, name: str, tolerance: float):
    def register(fn: Callable[[], float]):
        _REGISTRY.setdefault(suite, []).append((name, tolerance, fn))
        return fn
    return register


def _halving_cases():
    semi = DEFAULT_RULE.with_kind(QuadratureKind.SEMI_INFINITE)
    return ((lambda t: 1.0 / (1.0 + t * t) ** 1.5, (0.0, math.inf), semi),
            (lambda t: math.exp(-t) * math.cos(3.0 * t), (0.0, math.inf), semi),
            (lambda t: math.exp(-t * t) / (1.0 + t * t), (-math.inf, math.inf),
             DEFAULT_RULE.with_kind(QuadratureKind.DOUBLY_INFINITE)),
            (lambda t: t * math.sin(5.0 * t), (0.0, 3.0), DEFAULT_RULE))


@_check('numerics', 'quadrature-halving', 0.0)
def _halving() -> float:
    worst = 0.0
    for f, domain, rule in _halving_cases():
        coarse = integrate(f, domain, rule)
        fine = integrate(f, domain, rule.refined(0.5))
        change = abs(fine.require() - coarse.require())
        worst = max(worst, change - coarse.error - 4.0 * numpy.finfo(float).eps * abs(coarse.value))
    return max(worst, 0.0)


def _cubic_roots(b: float, c: float, d: float) -> List[complex]:
    """Roots of z^3 + b z^2 + c z + d by Cardano's formula"""
    p = c - b * b / 3.0
    q = 2.0 * b ** 3 / 27.0 - b * c / 3.0 + d
    disc = cmath.sqrt(q * q / 4.0 + p ** 3 / 27.0)
    cube = max(-q / 2.0 + disc, -q / 2.0 - disc, key=abs)
    if cube == 0:
        return [complex(-b / 3.0)] * 3
    u = cube ** (1.0 / 3.0)
    omega = cmath.exp(2j * math.pi / 3.0)
    return [u * omega ** k - p / (3.0 * u * omega ** k) - b / 3.0 for k in range(3)]


@_check('numerics', 'eigenvalue-oracles', 1e-8)
def _eigen_oracles() -> float:
    rng = numpy.random.default_rng(3)
    worst = 0.0
    for n in range(1, 7):
        M = DenseMatrix(rng.normal(size=(n, n)))
        eigs = eigenvalues(M)
        scale = max(1.0, M.norm())
        worst = max(worst, abs(eigs.sum() - M.trace()) / scale,
                    abs(numpy.prod(eigs) - numpy.linalg.det(M.entries)) / scale ** n)
    companion = numpy.sort(eigenvalues(DenseMatrix([[0.0, 1.0], [1.0, 0.0]])).real)
    worst = max(worst, float(numpy.max(numpy.abs(companion - numpy.array([-1.0, 1.0])))))
    m = rng.normal(size=(3, 3))
    minors = (m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0] + m[0, 0] * m[2, 2] - m[0, 2] * m[2, 0]
              + m[1, 1] * m[2, 2] - m[1, 2] * m[2, 1])
    det = (m[0, 0] * (m[1, 1] * m[2, 2] - m[1, 2] * m[2, 1]) - m[0, 1] * (m[1, 0] * m[2, 2] - m[1, 2] * m[2, 0])
           + m[0, 2] * (m[1, 0] * m[2, 1] - m[1, 1] * m[2, 0]))
    eigs = eigenvalues(DenseMatrix(m))
    for root in _cubic_roots(-(m[0, 0] + m[1, 1] + m[2, 2]), minors, -det):
        worst = max(worst, float(numpy.min(numpy.abs(eigs - root))))
    return worst


@_check('numerics', 'bessel-k1-asymptotic-windows', 0.0)
def _bessel_windows() -> float:
    small = abs(bessel_k1(0.01) - 100.0) / 100.0 - 0.01
    R = 50.0
    leading = math.sqrt(math.pi / 2.0) * math.exp(-R) / math.sqrt(R)
    large = abs(bessel_k1(R) - leading) / leading - 3.0 / R
    return max(small, large, 0.0)


@_check('symbols', 'mellin-symbol-vs-quadrature', 1e-8)
def _mellin_symbol() -> float:
    worst = 0.0
    for alpha, a, xi in itertools.product(ANGLES, WEIGHTS, FREQUENCIES):
        p = WedgeParams(alpha, a)
        worst = max(worst, abs(mellin_symbol_quadrature(p, xi).require() - sigma_point(p, xi)))
    return worst


@_check('symbols', 'norm-bound-vs-kernel-l1-norm', 1e-8)
def _norm_bound() -> float:
    worst = 0.0
    for alpha, a in itertools.product(ANGLES, WEIGHTS):
        p = WedgeParams(alpha, a)
        worst = max(worst, abs(l1_norm_quadrature(p).require() - norm_bound(p)))
    return worst


@_check('symbols', 'curve-extreme-real-part', 1e-9)
def _curve_extreme() -> float:
    curve = sample_curve(WedgeParams(math.pi / 3, 0.0))
    return abs(float(numpy.max(numpy.abs(curve.points.real))) - math.sin(math.pi / 3))


@_check('symbols', 'degenerate-curve-on-real-segment', 1e-12)
def _degenerate_curve() -> float:
    curve = sample_curve(WedgeParams(math.pi / 2, 1.0))
    re = curve.points.real
    outside = max(0.0, float(numpy.max(re)), float(-0.5 - numpy.min(re)))
    return max(float(numpy.max(numpy.abs(curve.points.imag))), outside)


@_check('symbols', 'curve-conjugation-symmetry', 0.0)
def _conjugation() -> float:
    curve = sample_curve(WedgeParams(2 * math.pi / 3, 0.5))
    return float(numpy.max(numpy.abs(curve.values - numpy.conj(curve.values[::-1]))))


def _gaussians():
    return (GaussianG(), GaussianG(1.0, 0.3, 0.7, -0.4, 1.2), GaussianG(2.0, -0.5, 1.3, 0.2, 0.6),
            GaussianG(0.5, 0.0, 0.5, 0.0, 2.0), GaussianG(1.0, 0.2, 0.9, 1.0, 0.8, gamma=0.3))


@_check('group', 'plancherel-isometry', 1e-4)
def _plancherel() -> float:
    worst = 0.0
    for f in _gaussians():
        total = sum(float(hs_norm_squared(plancherel_kernel(f, s)).require()) for s in '+-')
        exact = f.l2_norm_squared_exact()
        worst = max(worst, abs(total - exact) / exact)
    standard = GaussianG().l2_norm_squared_exact()
    return max(worst, abs(standard - math.pi / 2) / (math.pi / 2))


@_check('group', 'l2-norm-vs-closed-form', 1e-8)
def _l2_norm() -> float:
    return max(abs(l2_norm(f) ** 2 - f.l2_norm_squared_exact()) / f.l2_norm_squared_exact() for f in _gaussians())


@_check('group', 'haar-right-invariance', 1e-8)
def _haar() -> float:
    f = GaussianG(1.0, 0.3, 0.7, -0.4, 1.2)
    base = haar_integral(f).require()
    return max(abs(haar_integral(f, shift=h).require() - base)
               for h in (GroupElement(2.0, 0.5), GroupElement(0.3, -1.0)))


@_check('group', 'young-inequality', 0.0)
def _young() -> float:
    p = WedgeParams(math.pi / 2, 0.0)
    bound = young_bound(GaussianG(1.0, 0.0, 0.6, 0.0, 0.8), k_alpha_on_group(p), k_l1=norm_bound(p))
    return max(0.0, bound.lhs - bound.rhs * (1.0 + 1e-9))


@_check('group', 'convolution-theorem', 1e-9)
def _convolution_theorem() -> float:
    # ||P+(f * k)||_HS <= ||P+ f||_HS ||k||_1 with k the double layer kernel on G
    p = WedgeParams(math.pi / 2, 0.0)
    rule = QuadratureRule(abs_tol=1e-6, rel_tol=1e-6)
    f = GaussianG(1.0, 0.0, 0.6, 0.0, 0.8)
    lhs = hs_norm(plancherel_kernel(ConvolutionG(f, k_alpha_on_group(p)), '+'), rule)
    rhs = hs_norm(plancherel_kernel(f, '+'), rule) * norm_bound(p)
    return max(lhs / rhs - 1.0, 0.0)


@_check('operators', 't-kernel-bessel-consistency', 1e-8)
def _t_kernel() -> float:
    worst = 0.0
    grid = numpy.linspace(0.2, 1.8, 5)
    for alpha in (math.pi / 3, math.pi / 2, 2 * math.pi / 3, 3 * math.pi / 2):
        p = WedgeParams(alpha, 0.0)
        for r, x in itertools.product(grid, grid):
            worst = max(worst, abs(t_kernel(p, r, x) - t_kernel_quadrature(p, r, x).require()))
    return worst


@_check('operators', 'kernel-evenness', 0.0)
def _evenness() -> float:
    p = WedgeParams(2 * math.pi / 3, 0.0)
    s, t = numpy.meshgrid(numpy.linspace(0.1, 3.0, 17), numpy.linspace(0.0, 4.0, 17))
    return float(numpy.max(numpy.abs(k_alpha(p, s, t) - k_alpha(p, s, -t))))


@_check('operators', 'adjoint-weight-identity', 1e-14)
def _adjoint() -> float:
    p = WedgeParams(math.pi / 3, 0.0)
    rng = numpy.random.default_rng(7)
    x, u = rng.uniform(0.1, 3.0, (2, 64))
    z, v = rng.uniform(-2.0, 2.0, (2, 64))
    lhs = x * k_layer(p, x, z, u, v)
    rhs = u * k_layer(p, u, v, x, z)
    adjoint = u * adjoint_kernel(p, x, z, u, v)
    scale = float(numpy.max(numpy.abs(lhs)))
    return max(float(numpy.max(numpy.abs(lhs - rhs))), float(numpy.max(numpy.abs(adjoint - lhs)))) / scale


@_check('operators', 'bessel-k1-integral-representation', 1e-9)
def _bessel() -> float:
    return max(abs(bessel_k1(R) - bessel_k1_integral(R).require()) / bessel_k1(R) for R in (0.5, 1.0, 2.0, 5.0))


@_check('operators', 'toeplitz-section-containment', 0.0)
def _toeplitz() -> float:
    p = WedgeParams(math.pi / 3, 0.0)
    stats = containment(eigenvalues(toeplitz_section(p, 600, 0.05)), sample_curve(p), 0.05)
    return 1.0 - stats.fraction_inside


@_check('operators', 'nystrom-section-containment', 0.0)
def _nystrom() -> float:
    p = WedgeParams(math.pi / 3, 0.0)
    eigs = eigenvalues(nystrom_T(p, 500, 8.0))
    stats = containment(eigs, sample_curve(p), 0.05)
    radius_excess = max(0.0, float(numpy.max(numpy.abs(eigs))) - norm_bound(p) - 0.02)
    return (1.0 - stats.fraction_inside) + radius_excess


@_check('operators', 'compact-perturbation-hs-norm', 1e-3)
def _perturbation() -> float:
    p = WedgeParams(math.pi / 2, 0.0)
    return abs(perturbation_hs_norm(p, L=24.0) - perturbation_hs_norm(p, L=32.0))


def _bump(u0: float, z0: float, radius: float) -> CompactBumpG:
    return CompactBumpG(1.0, u0, radius, z0, radius)


_PLEMELJ_PAIRS = (((0.0, 0.0, 0.5), (0.3, 0.4, 0.4)), ((-0.4, 0.2, 0.5), (0.2, -0.3, 0.5)),
                  ((0.5, -0.5, 0.4), (-0.2, 0.1, 0.6)))


@_check('operators', 'plemelj-residual', 1e-3)
def _plemelj() -> float:
    p = WedgeParams(math.pi / 2, 0.0)
    return max(plemelj_residual(p, BoundaryDensity.antisymmetric(_bump(*first)),
                                BoundaryDensity.antisymmetric(_bump(*second)))
               for first, second in _PLEMELJ_PAIRS)


@_check('operators', 'single-layer-positivity', 0.0)
def _positivity() -> float:
    densities = (BoundaryDensity(_bump(-0.1, -0.2, 0.5), _bump(0.3, 0.1, 0.5)),
                 BoundaryDensity.antisymmetric(_bump(0.1, 0.2, 0.5)))
    energies = [energy_product(WedgeParams(alpha), f, f).real
                for alpha in (math.pi / 3, 3 * math.pi / 2) for f in densities]
    return float(sum(value <= 0.0 for value in energies))


@_check('operators', 'double-layer-image-norm-bound', 1e-3)
def _image_norm() -> float:
    worst = 0.0
    for alpha, a in ((math.pi / 2, 0.0), (math.pi / 3, 0.5), (3 * math.pi / 2, 0.0)):
        p = WedgeParams(alpha, a)
        f = BoundaryDensity(_bump(0.0, 0.0, 0.5), _bump(0.3, -0.2, 0.4), a)
        worst = max(worst, image_norm(p, f) / (norm_bound(p) * f.norm()) - 1.0)
    return worst


_SECTION_PARAMS = ((math.pi / 3, 0.0), (math.pi / 2, 0.0), (math.pi / 2, 1.0), (3 * math.pi / 2, 0.0))
_SECTION_ORDERS = (200, 400, 600)


def _refinement(p: WedgeParams, build: Callable[[int], object]) -> float:
    """Outside fraction, radius excess and any growth of the worst distance as n is refined, summed"""
    curve = sample_curve(p)
    residual = 0.0
    previous = math.inf
    for n in _SECTION_ORDERS:
        eigs = eigenvalues(build(n))
        stats = containment(eigs, curve, 0.05)
        residual += 1.0 - stats.fraction_inside
        residual += max(0.0, float(numpy.max(numpy.abs(eigs))) - norm_bound(p) - 0.02)
        residual += max(0.0, stats.max_distance - previous - 1e-12)
        logger.debug('section of order %d at %s: max distance %.3e', n, p, stats.max_distance)
        previous = stats.max_distance
    return residual


@_check('operators', 'toeplitz-section-refinement', 0.0)
def _toeplitz_refinement() -> float:
    total = 0.0
    for alpha, a in _SECTION_PARAMS:
        p = WedgeParams(alpha, a)
        total += _refinement(p, lambda n: toeplitz_section(p, n, 0.05))
    return total


@_check('operators', 'nystrom-section-refinement', 0.0)
def _nystrom_refinement() -> float:
    # the weight only conjugates the Bessel section, so it is compared with the curve at a = 0
    total = 0.0
    for alpha in sorted({alpha for alpha, _ in _SECTION_PARAMS}):
        p = WedgeParams(alpha, 0.0)
        total += _refinement(p, lambda n: nystrom_T(p, n, 8.0))
    return total


@_check('transmission', 'mobius-round-trip', 1e-12)
def _mobius() -> float:
    rng = numpy.random.default_rng(11)
    eps = rng.normal(size=50) + 1j * rng.normal(size=50)
    return max(abs(mobius_inverse(mobius(e)) - e) / max(1.0, abs(e)) for e in eps)


@_check('transmission', 'problem-e-interval', 1e-9)
def _interval() -> float:
    lo, hi = illposed_interval_E(math.pi / 2)
    upper = bisect_threshold(math.pi / 2, Problem.E, -0.5, 0.0, tol=1e-11, on_curve_tol=1e-13)
    lower = bisect_threshold(math.pi / 2, Problem.E, -2.0, -4.0, tol=1e-11, on_curve_tol=1e-13)
    return max(abs(lo + 3.0), abs(hi + 1.0 / 3.0), abs(upper + 1.0 / 3.0), abs(lower + 3.0))


@_check('transmission', 'problem-l-at-a1-matches-problem-e', 0.0)
def _l_vs_e() -> float:
    rng = numpy.random.default_rng(5)
    mismatches = 0
    for eps in rng.uniform(-6.0, 2.0, 100) + 1j * rng.choice([0.0, 1e-3, 0.5], 100):
        if abs(eps - 1.0) < 1e-3:
            continue
        l_verdict = check(TransmissionQuery(eps, math.pi / 2, Problem.L, 1.0))
        e_verdict = check(TransmissionQuery(eps, math.pi / 2, Problem.E))
        mismatches += l_verdict.wellposed != e_verdict.wellposed
    return float(mismatches)


SUITES = ('numerics', 'symbols', 'group', 'operators', 'transmission')


def run_suite(suite: str) -> List[CheckResult]:
    """Run every check of one suite, or of all suites for 'all'

    A check raising any exception is recorded as failed with the exception as detail,
    and the remaining checks still run.
    """
    names = SUITES if suite == 'all' else (suite,)
    results = []
    for name in names:
        if name not in _REGISTRY:
            raise KeyError(name)
        for check_name, tolerance, fn in _REGISTRY[name]:
            start = time.perf_counter()
            try:
                residual = float(fn())
                detail = ''
            except Exception as exc:
                logger.warning('%s/%s raised %s: %s', name, check_name, type(exc).__name__, exc)
                residual, detail = math.inf, f'{type(exc).__name__}: {exc}'
            seconds = time.perf_counter() - start
            passed = residual <= tolerance
            logger.info('%s/%s: residual %.3e (tolerance %g) in %.1fs', name, check_name, residual, tolerance, seconds)
            results.append(CheckResult(name, check_name, tolerance, residual, passed, seconds, detail))
    return results


def run(suite: str = 'all') -> bool:
    """Whether every check of the suite passes"""
    return all(result.passed for result in run_suite(suite))
