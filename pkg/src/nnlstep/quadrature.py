"""Singular-integral primitives for the Riemann-Hilbert machinery.

Three building blocks are provided:

* semi-infinite Cauchy-type integrals  int_{-inf}^{upper} g(z)/(z-pole) dz
  with decaying integrands (plus a principal-value variant for poles on
  the contour interior),
* integrals against the Chebyshev weight (A^2 - z^2)^(-1/2) on (-A, A),
* continuously-unwound argument increments (winding) along a real ray.

Endpoint singularities (log or algebraic-integrable) are handled by
tanh-sinh quadrature on the singular cell; smooth cells use the same rule,
which converges at machine precision for analytic integrands.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import InconclusiveWinding, PoleOnContour, ToleranceNotMet

DEFAULT_TOL = 1e-8
_POLE_GUARD = 1e-8


@dataclass(frozen=True)
class IntegrandSpec:
    """An integrand together with the metadata quadrature needs.

    ``eval`` must accept a real numpy array and return a complex array.
    ``decay_estimate`` is the scale beyond which the tail is negligible
    (exponential or algebraic). ``singular_points`` lists declared
    integrable singularities as (location, kind) pairs, kind in
    {"log", "inverse_sqrt"}.
    """

    eval: Callable[[np.ndarray], np.ndarray]
    decay_estimate: float = 1.0
    singular_points: Sequence[tuple[float, str]] = field(default_factory=tuple)


def tanh_sinh(fn, a: float, b: float, tol: float = DEFAULT_TOL, max_level: int = 14):
    """Tanh-sinh quadrature of a vectorized fn over [a, b].

    Returns (value, error_estimate). Integrable endpoint singularities are
    fine: nodes approach the endpoints double-exponentially and non-finite
    samples (which can only occur within rounding distance of an endpoint)
    are dropped.
    """
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    t_max = 3.8

    def _sample(ts):
        u = 0.5 * np.pi * np.sinh(ts)
        # Distance to the nearer endpoint, computed cancellation-free:
        # 1 - tanh|u| = 2 e^{-2|u|} / (1 + e^{-2|u|}) keeps full relative
        # precision where mid + half*tanh(u) would lose all digits.
        e2u = np.exp(-2.0 * np.abs(u))
        delta = half * 2.0 * e2u / (1.0 + e2u)
        x = np.where(ts >= 0, b - delta, a + delta)
        sech = 2.0 * np.exp(-np.abs(u)) / (1.0 + e2u)
        wgt = half * 0.5 * np.pi * np.cosh(ts) * sech**2
        keep = (x > a) & (x < b) & (wgt > 0)
        vals = np.asarray(fn(x[keep]), dtype=complex)
        vals = np.where(np.isfinite(vals), vals, 0.0)
        return np.sum(vals * wgt[keep])

    h = 1.0
    base = np.arange(1.0, t_max, 1.0)
    total = _sample(np.concatenate([[0.0], base, -base])) * h
    prev = total
    err = np.inf
    for level in range(1, max_level + 1):
        h *= 0.5
        ts = np.arange(h, t_max, 2 * h)  # odd multiples of the new h
        ts = np.concatenate([ts, -ts])
        total = 0.5 * prev + _sample(ts) * h
        err = abs(total - prev)
        if level >= 3 and err < tol:
            return total, err
        prev = total
    if err < 10 * tol:
        return total, err
    raise ToleranceNotMet(
        f"tanh-sinh failed to reach tol={tol} on [{a}, {b}] (err~{err:.3g})",
        best=total,
        error=err,
    )


def _ray_cells(upper: float, first_width: float = 1.0, max_cells: int = 64):
    """Geometric cell decomposition of (-inf, upper], widest cells last."""
    right = upper
    width = first_width
    for _ in range(max_cells):
        yield right - width, right
        right -= width
        width *= 2.0


def _pole_distance_to_ray(pole: complex, upper: float) -> float:
    pole = complex(pole)
    if pole.real <= upper:
        return abs(pole.imag)
    return abs(pole - upper)


def cauchy_semiinfinite(
    g: IntegrandSpec, upper: float, pole: complex, tol: float = DEFAULT_TOL
) -> complex:
    """int_{-inf}^{upper} g(z)/(z - pole) dz for a pole off the contour.

    The tail is truncated once cell contributions fall below tol/10 and
    the cells extend past the declared decay scale.
    """
    pole = complex(pole)
    if _pole_distance_to_ray(pole, upper) < _POLE_GUARD:
        raise PoleOnContour(f"pole {pole} within guard distance of (-inf, {upper}]")

    def integrand(z):
        return np.asarray(g.eval(z), dtype=complex) / (z - pole)

    total = 0.0 + 0.0j
    err = 0.0
    decay = max(g.decay_estimate, 1e-12)
    for left, right in _ray_cells(upper):
        pieces = [(left, right)]
        # Split at the pole's real part so tanh-sinh clusters nodes where
        # the kernel nearly blows up.
        if left < pole.real < right and abs(pole.imag) < (right - left):
            pieces = [(left, pole.real), (pole.real, right)]
        cell = 0.0 + 0.0j
        for lo, hi in pieces:
            v, e = tanh_sinh(integrand, lo, hi, tol=tol / 10.0)
            cell += v
            err += e
        total += cell
        deep_enough = (upper - left) > 10.0 * decay
        if deep_enough and abs(cell) < tol / 10.0:
            return total
    raise ToleranceNotMet(
        f"semi-infinite Cauchy integral did not converge (tol={tol})",
        best=total,
        error=err,
    )


def semiinfinite_integral(g: IntegrandSpec, upper: float, tol: float = DEFAULT_TOL) -> complex:
    """Plain int_{-inf}^{upper} g(z) dz for a decaying integrand; integrable
    singularities at the upper endpoint are allowed (tanh-sinh cells)."""
    total = 0.0 + 0.0j
    err = 0.0
    decay = max(g.decay_estimate, 1e-12)
    for left, right in _ray_cells(upper):
        v, e = tanh_sinh(g.eval, left, right, tol=tol / 10.0)
        total += v
        err += e
        if (upper - left) > 10.0 * decay and abs(v) < tol / 10.0:
            return total
    raise ToleranceNotMet(
        f"semi-infinite integral did not converge (tol={tol})", best=total, error=err
    )


def cauchy_semiinfinite_pv(
    g: IntegrandSpec, upper: float, x0: float, tol: float = DEFAULT_TOL
) -> complex:
    """Principal value of int_{-inf}^{upper} g(z)/(z - x0) dz, x0 interior.

    The symmetric cell [x0-c, x0+c] is regularized by subtracting g(x0)
    (whose PV contribution over a symmetric cell vanishes); the remaining
    pieces are pole-free.
    """
    x0 = float(x0)
    if not x0 < upper - _POLE_GUARD:
        raise PoleOnContour(f"PV point x0={x0} must lie strictly inside (-inf, {upper})")
    c = min(1.0, 0.5 * (upper - x0))
    g0 = complex(np.asarray(g.eval(np.array([x0])), dtype=complex)[0])

    def regularized(z):
        return (np.asarray(g.eval(z), dtype=complex) - g0) / (z - x0)

    v1, _ = tanh_sinh(regularized, x0 - c, x0, tol=tol / 4.0)
    v2, _ = tanh_sinh(regularized, x0, x0 + c, tol=tol / 4.0)

    def plain(z):
        return np.asarray(g.eval(z), dtype=complex) / (z - x0)

    v3, _ = tanh_sinh(plain, x0 + c, upper, tol=tol / 4.0)

    tail_spec = IntegrandSpec(g.eval, g.decay_estimate, g.singular_points)
    v4 = cauchy_semiinfinite(tail_spec, x0 - c, x0, tol=tol / 4.0)
    return v1 + v2 + v3 + v4


def chebyshev_cut_integral(phi: IntegrandSpec, A: float, tol: float = DEFAULT_TOL) -> complex:
    """int_{-A}^{A} phi(z) / sqrt(A^2 - z^2) dz.

    After z = A cos(t) this is int_0^pi phi(A cos t) dt. Smooth integrands
    use Gauss-Chebyshev nodes (midpoint rule in t) with doubling; declared
    endpoint singularities switch to tanh-sinh on the two half cells.
    """
    A = float(A)

    def in_t(t):
        return np.asarray(phi.eval(A * np.cos(t)), dtype=complex)

    if phi.singular_points:
        v1, e1 = tanh_sinh(in_t, 0.0, 0.5 * np.pi, tol=tol / 2.0)
        v2, e2 = tanh_sinh(in_t, 0.5 * np.pi, np.pi, tol=tol / 2.0)
        return v1 + v2

    n = 8
    prev = None
    while n <= 1 << 22:
        t = (np.arange(n) + 0.5) * (np.pi / n)
        val = np.sum(in_t(t)) * (np.pi / n)
        if prev is not None and abs(val - prev) < tol:
            return val
        prev = val
        n *= 2
    raise ToleranceNotMet(
        f"Gauss-Chebyshev doubling stalled (tol={tol})", best=prev, error=None
    )


def _arg_increment(path, lo, hi, v_lo, v_hi, depth=0, max_depth=40):
    """Unwound argument increment of path() from lo to hi, refining where
    adjacent samples jump by pi/2 or more."""
    d = np.angle(v_hi / v_lo)
    if abs(d) < 0.5 * np.pi:
        return d
    if depth >= max_depth or (hi - lo) < 1e-13 * max(1.0, abs(hi), abs(lo)):
        raise InconclusiveWinding(
            f"argument jump {d:.3f} >= pi/2 between {lo} and {hi} at max refinement"
        )
    mid = 0.5 * (lo + hi)
    v_mid = complex(np.asarray(path(np.array([mid])), dtype=complex)[0])
    return _arg_increment(path, lo, mid, v_lo, v_mid, depth + 1, max_depth) + _arg_increment(
        path, mid, hi, v_mid, v_hi, depth + 1, max_depth
    )


def running_winding(gamma: IntegrandSpec, k_end: float, samples: int = 400):
    """Cumulative unwound arg of the path gamma over (-inf, k_end].

    Returns (grid, cumulative) where cumulative[i] is the total argument
    increment from -inf to grid[i]; the path is assumed to approach a
    positive real limit at -inf (it is normalized so that arg -> 0 there).
    """
    T = max(10.0 * gamma.decay_estimate, 10.0)
    # Confirm the tail is argument-quiet; extend if not.
    for _ in range(20):
        probe = np.asarray(gamma.eval(np.array([k_end - 4 * T, k_end - T])), dtype=complex)
        if abs(np.angle(probe[1] / probe[0])) < 1e-9 and abs(np.angle(probe[0])) < 0.1:
            break
        T *= 4.0
    else:
        raise InconclusiveWinding("path argument does not settle toward -inf")

    v = np.linspace(1.0, 0.0, samples)
    grid = k_end - T * v**2  # dense near k_end
    vals = np.asarray(gamma.eval(grid), dtype=complex)
    cum = np.empty(samples)
    cum[0] = np.angle(vals[0])  # small by the tail check above
    for i in range(samples - 1):
        cum[i + 1] = cum[i] + _arg_increment(
            gamma.eval, grid[i], grid[i + 1], vals[i], vals[i + 1]
        )
    return grid, cum


def winding(gamma: IntegrandSpec, k_end: float, samples: int = 400) -> float:
    """Total unwound argument increment of gamma over (-inf, k_end]."""
    _, cum = running_winding(gamma, k_end, samples)
    return float(cum[-1])
