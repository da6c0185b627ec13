"""Long-time asymptotic evaluators built from Riemann-Hilbert quantities.

From the scattering data this module computes the phase-correcting
function delta(k, k1) with its exponent nu and winding Delta(k1), the
cut-straightening function F(k, k1) with its limit F_inf(k1), the
transition constant d(A), and finally the leading-order profiles:

* modulated sectors |xi| > A/2: plane-wave amplitude/phase shifted by
  F_inf(k1(|xi|)), algebraic error with exponent 1/2 - |Im nu|,
* central sectors 0 < |xi| < A/2: the same formula frozen at k1 = -A,
  with exponentially small error,
* transition rays at fixed x != 0: a tanh-like interpolation between the
  two central values governed by d(A),
* the exact one-soliton profile for reflectionless data.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .branches import CutSide, f
from .errors import (
    MissingNormingConstant,
    RegionMismatch,
    SingularStation,
    SolitonPole,
    WindingOutOfRange,
)
from .phase import Direction, RegionTag, classify, critical_points
from .quadrature import (
    DEFAULT_TOL,
    IntegrandSpec,
    cauchy_semiinfinite,
    cauchy_semiinfinite_pv,
    running_winding,
    semiinfinite_integral,
)
from .spectral import SpectralData, Source, _step_a1a2_vec

_ENDPOINT_ZERO_RTOL = 1e-6
_STATION_GUARD = 1e-8


def _one_plus_r1r2_vec(sd: SpectralData) -> Callable[[np.ndarray], np.ndarray]:
    """Vectorized 1 + r1(s) r2(s) on real s off the cut.

    Uses the determinant relation a1 a2 + b(s) conj(b(-s)) = 1, which turns
    the product into 1 / (a1 a2) and avoids evaluating b.
    """
    if sd.source is Source.REFLECTIONLESS_SOLITON:
        return lambda s: np.ones(np.shape(s), dtype=complex)
    if sd.source is Source.CLOSED_FORM_STEP and sd.step_R is not None:
        A, R = sd.A, sd.step_R
        return lambda s: 1.0 / _step_a1a2_vec(np.asarray(s, dtype=float), A, R)

    def generic(s):
        s = np.atleast_1d(np.asarray(s, dtype=float))
        return np.array(
            [1.0 / (sd.a1(x, CutSide.OFF) * sd.a2(x, CutSide.OFF)) for x in s],
            dtype=complex,
        )

    return generic


# ---------------------------------------------------------------------------
# delta(k, k1)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DeltaData:
    """delta(k, k1) together with its endpoint exponent data.

    ``nu`` is nan+nan*i when 1 + r1 r2 vanishes at k1 = -A (there the
    endpoint behavior is algebraic with exponent driven by the regularized
    winding instead of nu).
    """

    A: float
    k1: float
    nu: complex
    Delta_k1: float
    delta_at: Callable[[complex], complex]
    log_delta_at: Callable[[complex], complex]
    delta_boundary: Callable[[float, CutSide], complex]
    log_g_at: Callable[[np.ndarray], np.ndarray]
    zero_at_minus_A: bool


def _unwound_log(gvec, k1: float, decay: float, samples: int = 600):
    """Continuous branch of ln g on (-inf, k1], unwound from g(-inf) ~ 1.

    Returns (log_fn vectorized, Delta_fn cumulative-argument interpolant,
    Delta(k1)).  The path stops a hair short of k1, where the value may
    vanish (endpoint zero); the argument extends by continuity.
    """
    spec = IntegrandSpec(eval=gvec, decay_estimate=decay)
    k_end = k1 - 1e-9 * max(1.0, abs(k1))
    grid, cum = running_winding(spec, k_end, samples=samples)

    def arg_at(s):
        return np.interp(s, grid, cum, left=0.0, right=cum[-1])

    def log_fn(s):
        s = np.asarray(s, dtype=float)
        vals = gvec(s)
        principal = np.angle(vals)
        target = arg_at(s)
        branch = np.round((target - principal) / (2 * np.pi))
        return np.log(np.abs(vals)) + 1j * (principal + 2 * np.pi * branch)

    return log_fn, arg_at, float(cum[-1])


def delta_data(sd: SpectralData, k1: float, tol: float = DEFAULT_TOL) -> DeltaData:
    """Construct delta(. , k1) = exp{(2 pi i)^{-1} int_{-inf}^{k1} ln(1+r1r2)/(z-k)}.

    The logarithm branch is unwound continuously from the normalized end
    at -inf.  For a modulated endpoint (k1 < -A) the winding must stay in
    (-pi, pi) or WindingOutOfRange is raised; at k1 = -A no winding bound
    is required, and a simple zero of 1 + r1 r2 at -A switches the winding
    to the regularized factor ((z + A)/z)(1 + r1 r2).
    """
    A = sd.A
    k1 = float(k1)
    if k1 > -A:
        raise ValueError(f"k1 must satisfy k1 <= -A, got k1={k1}, A={A}")
    gvec = _one_plus_r1r2_vec(sd)
    decay = max(1.0, 2.0 * A)

    at_minus_A = abs(k1 + A) <= 1e-12 * A
    probe = complex(gvec(np.array([-A * (1.0 + 1e-8)]))[0])
    ref = complex(gvec(np.array([-2.0 * A]))[0])
    zero_at_minus_A = at_minus_A and abs(probe) < _ENDPOINT_ZERO_RTOL * max(
        abs(ref), 1e-300
    )

    log_fn, arg_at, Delta_raw = _unwound_log(gvec, k1, decay)

    if zero_at_minus_A:
        # Regularized winding: (z + A)/z tends to 1 at -inf and cancels the
        # simple zero at -A, so its total argument increment is finite.
        def reg_vec(s):
            s = np.asarray(s, dtype=float)
            return ((s + A) / s) * gvec(s)

        _, _, Delta_k1 = _unwound_log(reg_vec, k1, decay)
        nu = complex(float("nan"), float("nan"))
    else:
        Delta_k1 = Delta_raw
        g_k1 = complex(gvec(np.array([k1]))[0])
        nu = -math.log(abs(g_k1)) / (2 * np.pi) - 1j * Delta_k1 / (2 * np.pi)

    if k1 < -A and abs(Delta_k1) >= np.pi:
        raise WindingOutOfRange(
            f"winding Delta(k1)={Delta_k1:.4f} outside (-pi, pi) at k1={k1}"
        )

    spec = IntegrandSpec(
        eval=log_fn,
        decay_estimate=decay,
        singular_points=((k1, "log"),) if zero_at_minus_A else (),
    )

    def log_delta_at(k: complex) -> complex:
        return cauchy_semiinfinite(spec, k1, complex(k), tol=tol) / (2j * np.pi)

    def delta_at(k: complex) -> complex:
        return cmath.exp(log_delta_at(k))

    def delta_boundary(x0: float, side: CutSide) -> complex:
        # Plemelj: the boundary values on (-inf, k1) are the principal
        # value plus/minus half the local logarithm.
        pv = cauchy_semiinfinite_pv(spec, k1, float(x0), tol=tol) / (2j * np.pi)
        half = 0.5 * complex(log_fn(np.array([float(x0)]))[0])
        if side is CutSide.ABOVE:
            return cmath.exp(pv + half)
        if side is CutSide.BELOW:
            return cmath.exp(pv - half)
        raise ValueError("delta_boundary requires side ABOVE or BELOW")

    return DeltaData(
        A=A,
        k1=k1,
        nu=nu,
        Delta_k1=Delta_k1,
        delta_at=delta_at,
        log_delta_at=log_delta_at,
        delta_boundary=delta_boundary,
        log_g_at=log_fn,
        zero_at_minus_A=zero_at_minus_A,
    )


# ---------------------------------------------------------------------------
# F(k, k1), F_inf(k1) and d(A)
# ---------------------------------------------------------------------------


def F_infinity(sd: SpectralData, k1: float, tol: float = DEFAULT_TOL) -> complex:
    """F_inf(k1), the logarithm of the large-k limit of F(k, k1).

    The defining double integral (Chebyshev weight in the outer variable,
    Cauchy kernel in the inner) is evaluated with the integration order
    swapped: the outer integral has the closed form
    int_{-A}^{A} dz / (sqrt(A^2 - z^2)(s - z)) = -pi / sqrt(s^2 - A^2) for
    s < -A, which collapses F_inf to single semi-infinite integrals

        Re F_inf = (1/2pi) int_{-inf}^{k1} ln|1+r1r2(s)| / sqrt(s^2-A^2) ds,
        Im F_inf = (1/2pi) int_{-inf}^{k1} Delta(s) / sqrt(s^2-A^2) ds.
    """
    A = sd.A
    k1 = float(k1)
    if k1 > -A:
        raise ValueError(f"k1 must satisfy k1 <= -A, got k1={k1}")
    if sd.source is Source.REFLECTIONLESS_SOLITON:
        return 0.0 + 0.0j
    gvec = _one_plus_r1r2_vec(sd)
    log_fn, arg_at, _ = _unwound_log(gvec, k1, max(1.0, 2.0 * A))

    def re_integrand(s):
        s = np.asarray(s, dtype=float)
        return np.real(log_fn(s)) / np.sqrt(s * s - A * A)

    def im_integrand(s):
        s = np.asarray(s, dtype=float)
        return arg_at(s) / np.sqrt(s * s - A * A)

    sing = ((k1, "inverse_sqrt"),) if abs(k1 + A) <= 1e-12 * A else ()
    re_val = semiinfinite_integral(
        IntegrandSpec(re_integrand, max(1.0, 2.0 * A), sing), k1, tol=tol
    )
    im_val = semiinfinite_integral(
        IntegrandSpec(im_integrand, max(1.0, 2.0 * A), sing), k1, tol=tol
    )
    return complex(re_val.real / (2 * np.pi), im_val.real / (2 * np.pi))


def F_at(
    sd: SpectralData,
    dd: DeltaData,
    k: complex,
    side: CutSide = CutSide.OFF,
    tol: float = DEFAULT_TOL,
) -> complex:
    """F(k, k1), valid off the cut and (with a side) on (-A, A).

    The defining cut integral of ln delta is collapsed by a partial-
    fraction swap of the integration order into a single semi-infinite
    integral,

        ln F(k) = (1/2 pi i) int_{-inf}^{k1}
                  ln(1+r1r2)(s) (f(s) - f(k)) / (f(s)(s - k)) ds,

    where f(s) = -sqrt(s^2 - A^2) on the ray.  The evaluation point
    enters only through f(k) and the Cauchy kernel, so the boundary
    values on (-A, A) come from substituting the side value of f: the
    product identity F_+ F_- = delta^2 is then automatic.
    """
    if sd.source is Source.REFLECTIONLESS_SOLITON:
        return 1.0 + 0.0j
    A, k1 = dd.A, dd.k1
    fk = f(k, A, side)

    def integrand(s):
        s = np.asarray(s, dtype=float)
        fs = -np.sqrt(s * s - A * A)
        return dd.log_g_at(s) * (fs - fk) / fs

    spec = IntegrandSpec(integrand, max(1.0, 2.0 * A), ((k1, "inverse_sqrt"),))
    val = cauchy_semiinfinite(spec, k1, complex(k), tol=tol) / (2j * np.pi)
    return cmath.exp(val)


def F_plus_at_zero(sd: SpectralData, dd: DeltaData, tol: float = DEFAULT_TOL) -> complex:
    """Above-side boundary value F_+(0, k1)."""
    return F_at(sd, dd, 0.0, CutSide.ABOVE, tol=tol)


def transition_dA(sd: SpectralData, tol: float = DEFAULT_TOL) -> complex:
    """Transition constant d(A) = gamma_+ F_+^2(0,-A) / (a10 delta^2(0,-A))."""
    gamma = sd.gamma_plus
    if gamma is None or (isinstance(gamma, complex) and cmath.isnan(gamma)):
        raise MissingNormingConstant("spectral data has no norming constant gamma_+")
    if sd.a10 is None or sd.a10 == 0 or cmath.isnan(complex(sd.a10)):
        raise MissingNormingConstant("spectral data has no valid a10 coefficient")
    if sd.source is Source.REFLECTIONLESS_SOLITON:
        return complex(gamma / sd.a10)  # F = delta = 1
    dd = delta_data(sd, -sd.A, tol=tol)
    Fp0 = F_plus_at_zero(sd, dd, tol=tol)
    d0 = dd.delta_at(0.0)
    return complex(gamma) * Fp0**2 / (complex(sd.a10) * d0**2)


# ---------------------------------------------------------------------------
# asymptotic profiles
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AsymptoticParams:
    """Frozen ingredients of a leading-order profile evaluation."""

    region: RegionTag
    A: float
    k1: float
    F_inf: complex
    error_exponent: float  # 1/2 - |Im nu| in modulated sectors, inf otherwise
    dA: complex | None = None


@lru_cache(maxsize=64)
def _cached_F_inf(sd: SpectralData, k1: float, tol: float) -> complex:
    return F_infinity(sd, k1, tol=tol)


@lru_cache(maxsize=16)
def _cached_dA(sd: SpectralData, tol: float) -> complex:
    return transition_dA(sd, tol=tol)


def modulated_params(sd: SpectralData, xi: float, tol: float = DEFAULT_TOL) -> AsymptoticParams:
    region = classify(Direction(xi, sd.A))
    if region not in (RegionTag.MODULATED_PLUS, RegionTag.MODULATED_MINUS):
        raise RegionMismatch(f"xi={xi} is not in a modulated sector for A={sd.A}")
    k1, _ = critical_points(Direction(abs(xi), sd.A))
    dd = delta_data(sd, k1, tol=tol)  # enforces the winding bound
    F_inf = _cached_F_inf(sd, k1, tol)
    exponent = 0.5 - abs(dd.nu.imag)
    return AsymptoticParams(region, sd.A, k1, F_inf, exponent)


def central_params(sd: SpectralData, xi: float, tol: float = DEFAULT_TOL) -> AsymptoticParams:
    region = classify(Direction(xi, sd.A))
    if region not in (RegionTag.CENTRAL_PLUS, RegionTag.CENTRAL_MINUS):
        raise RegionMismatch(f"xi={xi} is not in a central sector for A={sd.A}")
    F_inf = _cached_F_inf(sd, -sd.A, tol)
    return AsymptoticParams(region, sd.A, -sd.A, F_inf, math.inf)


def transition_params(sd: SpectralData, tol: float = DEFAULT_TOL) -> AsymptoticParams:
    F_inf = _cached_F_inf(sd, -sd.A, tol)
    dA = _cached_dA(sd, tol)
    return AsymptoticParams(RegionTag.TRANSITION_AXIS, sd.A, -sd.A, F_inf, math.inf, dA)


def _plane_wave(A: float, F_inf: complex, t: float, positive_side: bool) -> complex:
    phase = cmath.exp(-2j * (A * A * t - F_inf.real))
    if positive_side:
        return A * math.exp(-2.0 * F_inf.imag) * phase
    return -A * math.exp(2.0 * F_inf.imag) * phase


def q_modulated(
    sd: SpectralData, xi: float, t: float, tol: float = DEFAULT_TOL,
    params: AsymptoticParams | None = None,
) -> complex:
    """Leading term along the ray x = 4 xi t in a modulated sector."""
    p = params if params is not None else modulated_params(sd, xi, tol)
    if p.region not in (RegionTag.MODULATED_PLUS, RegionTag.MODULATED_MINUS):
        raise RegionMismatch(f"params region {p.region} is not modulated")
    return _plane_wave(p.A, p.F_inf, t, p.region is RegionTag.MODULATED_PLUS)


def q_central(
    sd: SpectralData, xi: float, t: float, tol: float = DEFAULT_TOL,
    params: AsymptoticParams | None = None,
) -> complex:
    """Leading term in a central sector; xi-independent within each side."""
    p = params if params is not None else central_params(sd, xi, tol)
    if p.region not in (RegionTag.CENTRAL_PLUS, RegionTag.CENTRAL_MINUS):
        raise RegionMismatch(f"params region {p.region} is not central")
    return _plane_wave(p.A, p.F_inf, t, p.region is RegionTag.CENTRAL_PLUS)


def q_transition(
    sd: SpectralData, x: float, t: float, tol: float = DEFAULT_TOL,
    params: AsymptoticParams | None = None,
) -> complex:
    """Leading term along fixed x != 0 as t grows (transition strip)."""
    if x == 0.0:
        raise RegionMismatch("the transition profile is not defined at x = 0")
    p = params if params is not None else transition_params(sd, tol)
    A, dA, F_inf = p.A, p.dA, p.F_inf
    if x > 0:
        e = cmath.exp(-2.0 * A * x)
        den = 2.0 * A + 1j * dA * e
        if abs(den) < _STATION_GUARD:
            raise SingularStation(f"singular station: |2A + i d(A) e^(-2Ax)| < {_STATION_GUARD} at x={x}")
        ratio = (2.0 * A - 1j * dA * e) / den
        return _plane_wave(A, F_inf, t, True) * ratio
    e = cmath.exp(-2.0 * A * x)
    den = 2.0 * A * e - 1j * np.conj(dA)
    if abs(den) < _STATION_GUARD:
        raise SingularStation(f"singular station: x<0 denominator < {_STATION_GUARD} at x={x}")
    ratio = (2.0 * A * e + 1j * np.conj(dA)) / den
    return _plane_wave(A, F_inf, t, False) * ratio


def transition_continuous_at_zero(sd: SpectralData, tol: float = DEFAULT_TOL) -> bool:
    """Whether the transition main term is continuous at x = 0: either
    Im F_inf = 0 with |d(A)| = 2A and d(A) != 2iA, or d(A) = -2iA."""
    A = sd.A
    dA = _cached_dA(sd, tol)
    F_inf = _cached_F_inf(sd, -A, tol)
    eps = 1e-6 * A
    if abs(dA + 2j * A) < eps:
        return True
    return (
        abs(F_inf.imag) < 1e-6
        and abs(abs(dA) - 2.0 * A) < eps
        and abs(dA - 2j * A) >= eps
    )


def q_soliton(A: float, phi0: float, x: float, t: float) -> complex:
    """Exact one-soliton profile A e^{-2iA^2 t} tanh(Ax - i phi0/2 - i pi/4)."""
    if not A > 0:
        raise ValueError(f"amplitude must be positive, got {A}")
    z = A * x - 0.5j * phi0 - 0.25j * np.pi
    if abs(z.real) < 30.0 and abs(cmath.cosh(z)) < 1e-12:
        raise SolitonPole(f"soliton pole at x={x}, phi0={phi0}")
    return A * cmath.exp(-2j * A * A * t) * cmath.tanh(z)
