"""Direct application of the double and single layer potentials on the wedge

Both operators are applied by quadrature over the support box of each sheet
of the density, in logarithmic coordinates w = log u where the surface
measure du dv becomes e^w dw dv. On its own sheet the single layer kernel
(1/4 pi) |r - r'|^-1 is singular; it is split with a smooth cutoff chi of
radius rho0 = x/2 around the target, equal to 1 to all orders at rho = 0:

    S0 f = (1/4 pi) int_0^rho0 int_0^2pi chi(rho) f dtheta drho
         + (1/4 pi) int int (1 - chi(rho)) rho^-1 f du dv,

the polar factor rho cancelling the singularity of the first term and the
second term being smooth. Inner products over a whole sheet use the
algebraic maps x = L t/(1 - t), z = zc + L tau/(1 - tau^2) on a fixed
Gauss-Legendre grid.
"""
from __future__ import annotations

import logging
import math
from typing import Callable, Tuple

import numpy

from ..errors import DensityError, DomainError
from ..group import Base
from ..numerics import QuadratureResult, QuadratureRule, box_rule, gauss_legendre, integrate_box
from ..symbols import WedgeParams
from .density import BoundaryDensity, is_zero_sheet
from .kernels import k_layer, s_layer

__all__ = [ "LAYER_RULE", "apply_K", "apply_S", "energy_product", "energy_norm",
            "inner_product", "image_norm", "plemelj_residual" ]

logger = logging.getLogger(__name__)

LAYER_RULE = QuadratureRule(abs_tol=1e-8, rel_tol=1e-8)

# complex entries per vectorised quadrature call
_BLOCK = 4_000_000
_PATCH_RATIO = 0.5
_PATCH_NODES = (32, 64)
_PATCH_MAX = 512
_SHEET_NODES = 64


def _targets(at):
    x, z = at
    x, z = numpy.broadcast_arrays(numpy.asarray(x, dtype=float), numpy.asarray(z, dtype=float))
    if not numpy.all(x > 0):
        raise DomainError('layer potentials are evaluated at x > 0 only')
    return x.shape, x.ravel(), z.ravel()


def _collapse(shape, values):
    values = values.reshape(shape)
    return complex(values) if values.ndim == 0 else values


def _sweep(kernel: Callable, f: Base, x, z, rule: QuadratureRule, nodes: int | None, max_nodes: int = 512):
    """int int kernel(x, z, u, v) f(u, v) du dv over the box of f, for every target"""
    if is_zero_sheet(f):
        return numpy.zeros(x.shape, dtype=complex)
    n_cap = nodes if nodes is not None else max_nodes
    block = max(1, _BLOCK // (n_cap * n_cap))
    parts = []
    for start in range(0, x.size, block):
        xt = x[start:start + block, None, None]
        zt = z[start:start + block, None, None]

        def g(W, V):
            U = numpy.exp(W)
            return kernel(xt, zt, U, V) * f.evaluate_log(W, V) * U

        if nodes is not None:
            parts.append(box_rule(g, f.box, nodes))
        else:
            parts.append(integrate_box(g, f.box, rule, max_nodes=max_nodes).require())
    return numpy.concatenate(parts).astype(complex) if parts else numpy.empty(0, dtype=complex)


def _smooth_step(t):
    """C-infinity step: 0 for t <= 0, 1 for t >= 1"""
    t = numpy.clip(t, 0.0, 1.0)
    with numpy.errstate(divide='ignore'):
        left = numpy.where(t > 0, numpy.exp(-1.0 / numpy.where(t > 0, t, 1.0)), 0.0)
        right = numpy.where(t < 1, numpy.exp(-1.0 / numpy.where(t < 1, 1.0 - t, 1.0)), 0.0)
    return left / (left + right)


def _cutoff(rho, rho0):
    """chi: 1 at rho = 0, 0 on rho >= rho0, flat at both ends"""
    return _smooth_step((rho0 - rho) / rho0)


def _far_kernel(x, z, u, v):
    rho = numpy.sqrt((x - u) ** 2 + (z - v) ** 2)
    rho0 = _PATCH_RATIO * x
    weight = 1.0 - _cutoff(rho, rho0)
    with numpy.errstate(divide='ignore', invalid='ignore'):
        return numpy.where(weight > 0, weight / (4.0 * math.pi * numpy.where(rho > 0, rho, 1.0)), 0.0)


def _patch_level(f: Base, x, z, n_rho: int, n_theta: int):
    block = max(1, _BLOCK // (n_rho * n_theta))
    if x.size > block:
        return numpy.concatenate([_patch_level(f, x[s:s + block], z[s:s + block], n_rho, n_theta)
                                  for s in range(0, x.size, block)])
    rho0 = _PATCH_RATIO * x
    t, w = gauss_legendre(n_rho)
    theta = 2.0 * math.pi * numpy.arange(n_theta) / n_theta
    # (targets, rho, theta)
    rho = (0.5 * (t + 1.0))[None, :, None] * rho0[:, None, None]
    u = x[:, None, None] + rho * numpy.cos(theta)[None, None, :]
    v = z[:, None, None] + rho * numpy.sin(theta)[None, None, :]
    values = f.evaluate_log(numpy.log(u), v) * _cutoff(rho, rho0[:, None, None])
    ring = values.sum(axis=2) * (2.0 * math.pi / n_theta)
    return (ring @ w) * (0.5 * rho0) / (4.0 * math.pi)


def _patch(f: Base, x, z, rule: QuadratureRule, nodes: int | None):
    """Near-target part of S0 f over the disc of radius x/2"""
    if is_zero_sheet(f):
        return numpy.zeros(x.shape, dtype=complex)
    if nodes is not None:
        n_rho = max(16, nodes // 3)
        return _patch_level(f, x, z, n_rho, 2 * n_rho).astype(complex)
    n_rho, n_theta = _PATCH_NODES
    fine = _patch_level(f, x, z, n_rho, n_theta)
    evaluations = x.size * n_rho * n_theta
    while True:
        coarse = fine
        n_rho, n_theta = 2 * n_rho, 2 * n_theta
        fine = _patch_level(f, x, z, n_rho, n_theta)
        evaluations += x.size * n_rho * n_theta
        error = float(numpy.max(numpy.abs(fine - coarse))) if fine.size else 0.0
        converged = error <= rule.tolerance(fine) if fine.size else True
        if converged or n_rho >= _PATCH_MAX:
            break
    result = QuadratureResult(fine, error, converged, evaluations, 'near-target patch did not settle')
    if not result.converged:
        logger.warning('single layer patch flagged: error %.3e', error)
    return result.require().astype(complex)


def apply_K(p: WedgeParams, f: BoundaryDensity, at, rule: QuadratureRule = LAYER_RULE,
            nodes: int | None = None):
    """Double layer potential K_alpha f at target points of both sheets

    K_alpha exchanges the sheets: the sheet-1 value is K_alpha f2 and the
    sheet-2 value is K_alpha f1.

    Args:
        p (WedgeParams): wedge parameters
        f (BoundaryDensity): the density
        at (tuple): target (x, z), arrays broadcast against each other
        rule (QuadratureRule, optional): tolerances of the adaptive rule. Defaults to LAYER_RULE.
        nodes (int, optional): fixed Gauss-Legendre order per axis instead of the adaptive rule. Defaults to None.

    Raises:
        DomainError: some target has x <= 0
        QuadratureError: the adaptive rule did not converge

    Returns:
        tuple: (sheet-1 value, sheet-2 value), complex scalars or arrays
    """
    shape, x, z = _targets(at)
    f1, f2 = f.sheets

    def kernel(xt, zt, u, v):
        return k_layer(p, xt, zt, u, v)

    return (_collapse(shape, _sweep(kernel, f2, x, z, rule, nodes)),
            _collapse(shape, _sweep(kernel, f1, x, z, rule, nodes)))


def _single_layer_ready(f: BoundaryDensity):
    if f.zero or f.compact or f.mean_zero:
        return
    raise DensityError('the single layer needs a compactly supported or mean-zero density')


def apply_S(p: WedgeParams, f: BoundaryDensity, at, rule: QuadratureRule = LAYER_RULE,
            nodes: int | None = None):
    """Single layer potential S_alpha f at target points of both sheets

    The block structure is (S0 S_alpha; S_alpha S0): S0 acts within a sheet and
    carries the integrable singularity, S_alpha couples the sheets.

    Args:
        p (WedgeParams): wedge parameters
        f (BoundaryDensity): compactly supported or mean-zero density
        at (tuple): target (x, z), arrays broadcast against each other
        rule (QuadratureRule, optional): tolerances of the adaptive rule. Defaults to LAYER_RULE.
        nodes (int, optional): fixed order per axis instead of the adaptive rule. Defaults to None.

    Raises:
        DensityError: f is neither compactly supported nor declared mean-zero
        DomainError: some target has x <= 0
        QuadratureError: the adaptive rule did not converge

    Returns:
        tuple: (sheet-1 value, sheet-2 value), complex scalars or arrays
    """
    _single_layer_ready(f)
    shape, x, z = _targets(at)
    f1, f2 = f.sheets

    def cross(xt, zt, u, v):
        return s_layer(p.alpha, xt, zt, u, v)

    def own(g: Base):
        return _patch(g, x, z, rule, nodes) + _sweep(_far_kernel, g, x, z, rule, nodes)

    sheet1 = own(f1) + _sweep(cross, f2, x, z, rule, nodes)
    sheet2 = _sweep(cross, f1, x, z, rule, nodes) + own(f2)
    return _collapse(shape, sheet1), _collapse(shape, sheet2)


def _sheet_grid(center: Tuple[float, float], n: int):
    """Nodes and weights of the mapped rule for int_0^inf int_R dx dz"""
    L, zc = center
    t, w = gauss_legendre(n)
    s = 0.5 * (t + 1.0)
    x = L * s / (1.0 - s)
    wx = 0.5 * w * L / (1.0 - s) ** 2
    z = zc + L * t / (1.0 - t * t)
    wz = w * L * (1.0 + t * t) / (1.0 - t * t) ** 2
    X, Z = numpy.meshgrid(x, z, indexing='ij')
    return X, Z, numpy.outer(wx, wz)


def _center(f: BoundaryDensity) -> Tuple[float, float]:
    boxes = [g.box for g in f.sheets if not is_zero_sheet(g)]
    if not boxes:
        return 1.0, 0.0
    u = numpy.mean([0.5 * (b[0][0] + b[0][1]) for b in boxes])
    z = numpy.mean([0.5 * (b[1][0] + b[1][1]) for b in boxes])
    return float(math.exp(u)), float(z)


def inner_product(first, second, X, Z, W, a: float = 0.0) -> complex:
    """sum over sheets of int int first_i conj(second_i) x^a dx dz on a prepared grid"""
    weight = W * X ** a if a != 0.0 else W
    return complex(sum(numpy.sum(f * numpy.conj(g) * weight) for f, g in zip(first, second)))


def energy_product(p: WedgeParams, f: BoundaryDensity, g: BoundaryDensity,
                   nodes: int = _SHEET_NODES, inner_nodes: int = 96) -> complex:
    """<S_alpha f, g> in L2 of the boundary, integrated over the box of each sheet of g

    Args:
        p (WedgeParams): wedge parameters
        f (BoundaryDensity): compactly supported or mean-zero density
        g (BoundaryDensity): density with compact or Gaussian sheets
        nodes (int, optional): outer order per axis. Defaults to 64.
        inner_nodes (int, optional): order of the inner layer quadrature. Defaults to 96.

    Raises:
        DensityError: f is neither compactly supported nor declared mean-zero

    Returns:
        complex: the energy product
    """
    _single_layer_ready(f)
    total = 0.0 + 0.0j
    t, w = gauss_legendre(nodes)
    for index, sheet in enumerate(g.sheets):
        if is_zero_sheet(sheet):
            continue
        (w0, w1), (z0, z1) = sheet.box
        hw, hz = 0.5 * (w1 - w0), 0.5 * (z1 - z0)
        W, Z = numpy.meshgrid(w0 + hw * (t + 1.0), z0 + hz * (t + 1.0), indexing='ij')
        X = numpy.exp(W)
        values = apply_S(p, f, (X, Z), nodes=inner_nodes)[index]
        weights = numpy.outer(w, w) * (hw * hz) * X
        total += complex(numpy.sum(values * numpy.conj(sheet.evaluate_log(W, Z)) * weights))
    return total


def energy_norm(p: WedgeParams, f: BoundaryDensity, **kwargs) -> float:
    """<S_alpha f, f>^(1/2)

    Raises:
        DensityError: the energy product is not positive
    """
    value = energy_product(p, f, f, **kwargs)
    if not value.real > 0:
        raise DensityError(f'energy product {value} is not positive')
    return math.sqrt(value.real)


def image_norm(p: WedgeParams, f: BoundaryDensity, a: float | None = None,
               nodes: int = _SHEET_NODES, inner_nodes: int = 96) -> float:
    """||K_alpha f|| in L^{2,a} over both whole sheets

    Args:
        p (WedgeParams): wedge parameters
        f (BoundaryDensity): the density
        a (float, optional): weight exponent. Defaults to the weight of f.
        nodes (int, optional): order per axis of the mapped outer rule. Defaults to 64.
        inner_nodes (int, optional): order of the inner layer quadrature. Defaults to 96.

    Returns:
        float: the norm
    """
    a = f.a if a is None else a
    X, Z, W = _sheet_grid(_center(f), nodes)
    image = apply_K(p, f, (X, Z), nodes=inner_nodes)
    return math.sqrt(max(inner_product(image, image, X, Z, W, a).real, 0.0))


def plemelj_residual(p: WedgeParams, f: BoundaryDensity, g: BoundaryDensity,
                     nodes: int = _SHEET_NODES, inner_nodes: int = 96) -> float:
    """|<K f, S g> - <S f, K g>| / (||f|| ||g||), inner products in L2 of the boundary

    Both products run over the whole sheets on the same mapped grid; when
    g is f the two sides are the same sum and the residual is exactly 0.

    Args:
        p (WedgeParams): wedge parameters
        f (BoundaryDensity): compactly supported mean-zero density
        g (BoundaryDensity): compactly supported mean-zero density
        nodes (int, optional): order per axis of the outer rule. Defaults to 64.
        inner_nodes (int, optional): order of the inner layer quadrature. Defaults to 96.

    Raises:
        DensityError: f or g is not compactly supported, or not declared mean-zero

    Returns:
        float: normalised residual
    """
    for density in (f, g):
        if not (density.compact or density.zero):
            raise DensityError('the Plemelj residual is defined for compactly supported densities')
        if not (density.mean_zero or density.zero):
            raise DensityError('the Plemelj residual is defined for mean-zero densities')
    norms = f.norm(0.0) * g.norm(0.0)
    if norms == 0.0:
        return 0.0
    cf, cg = _center(f), _center(g)
    X, Z, W = _sheet_grid((math.sqrt(cf[0] * cg[0]), 0.5 * (cf[1] + cg[1])), nodes)
    Kf = apply_K(p, f, (X, Z), nodes=inner_nodes)
    Sf = apply_S(p, f, (X, Z), nodes=inner_nodes)
    if g is f:
        Kg, Sg = Kf, Sf
    else:
        Kg = apply_K(p, g, (X, Z), nodes=inner_nodes)
        Sg = apply_S(p, g, (X, Z), nodes=inner_nodes)
    lhs = inner_product(Kf, Sg, X, Z, W)
    rhs = inner_product(Sf, Kg, X, Z, W)
    residual = abs(lhs - rhs) / norms
    logger.debug('Plemelj products %s and %s, residual %.3e', lhs, rhs, residual)
    return residual
