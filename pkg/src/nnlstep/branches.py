"""Branch-cut special functions of the spectral parameter k.

All multivalued functions are realized through principal roots of
cross-ratio factors, with the branch fixed by the large-k normalization:

    f(k) = (k^2 - A^2)^(1/2) = k + O(1/k),      cut on [-A, A]
    w(k) = ((k-A)/(k+A))^(1/4) = 1 + O(1/k),    cut on [-A, A]
    h(k) = (k^2 + A^2)^(1/2) = k + O(1/k),      cut on [-iA, iA]

Boundary values on the cut are computed from closed formulas (never from
epsilon-limits): approaching (-A, A) from above,

    f_+(x) = i sqrt(A^2 - x^2),     w_+(x) = ((A-x)/(A+x))^(1/4) e^{i pi/4},

and the below-side values are the respective conjugate-type partners.
Evaluation exactly at a branch point is a hard error; downstream formulas
blow up like (k -+ A)^(-1/4) there and callers must perturb.
"""

from __future__ import annotations

import enum

import numpy as np

from .errors import BranchDomainError, BranchPointError

# Relative distance below which k counts as "exactly at" a branch point.
_BRANCH_POINT_RTOL = 1e-13


class CutSide(enum.Enum):
    """Which nontangential limit onto a cut is requested."""

    ABOVE = "above"
    BELOW = "below"
    OFF = "off"


def _check_amplitude(A: float) -> float:
    A = float(A)
    if not A > 0.0:
        raise ValueError(f"amplitude must be positive, got {A}")
    return A


def _validate_horizontal(k: complex, A: float, side: CutSide, name: str) -> complex:
    """Common domain checks for functions cut along [-A, A]."""
    k = complex(k)
    if abs(k - A) <= _BRANCH_POINT_RTOL * A or abs(k + A) <= _BRANCH_POINT_RTOL * A:
        raise BranchPointError(f"{name}(k) requested at branch point, k={k}, A={A}")
    on_cut = k.imag == 0.0 and -A < k.real < A
    if side is CutSide.OFF:
        if on_cut:
            raise BranchDomainError(
                f"{name}(k) on the cut (-A, A) requires side=ABOVE or BELOW, k={k}"
            )
    else:
        if not on_cut:
            raise BranchDomainError(
                f"side={side.value} only valid for real k in (-A, A), got k={k}"
            )
    return k


def f(k: complex, A: float, side: CutSide = CutSide.OFF) -> complex:
    """Square root (k^2 - A^2)^(1/2) with f(k) ~ k at infinity."""
    A = _check_amplitude(A)
    k = _validate_horizontal(k, A, side, "f")
    if side is CutSide.OFF:
        # Principal sqrt(k-A)*sqrt(k+A): the two principal cuts cancel on
        # (-inf, -A), leaving a single cut on [-A, A] and f ~ k at infinity.
        return complex(np.sqrt(k - A) * np.sqrt(k + A))
    root = np.sqrt(A * A - k.real * k.real)
    return 1j * root if side is CutSide.ABOVE else -1j * root


def w(k: complex, A: float, side: CutSide = CutSide.OFF) -> complex:
    """Fourth root ((k-A)/(k+A))^(1/4) with w(k) ~ 1 at infinity."""
    A = _check_amplitude(A)
    k = _validate_horizontal(k, A, side, "w")
    if side is CutSide.OFF:
        # The cross-ratio avoids the negative real axis for k off [-A, A],
        # so the principal fourth root already carries the right branch.
        return complex(((k - A) / (k + A)) ** 0.25)
    mag = ((A - k.real) / (A + k.real)) ** 0.25
    phase = np.exp(1j * np.pi / 4) if side is CutSide.ABOVE else np.exp(-1j * np.pi / 4)
    return mag * phase


def h(k: complex, A: float) -> complex:
    """Square root (k^2 + A^2)^(1/2) with h(k) ~ k at infinity.

    Cut on the vertical segment [-iA, iA]; evaluation there (including
    k = 0) is a hard error -- no side convention is defined for h.
    """
    A = _check_amplitude(A)
    k = complex(k)
    if abs(k - 1j * A) <= _BRANCH_POINT_RTOL * A or abs(k + 1j * A) <= _BRANCH_POINT_RTOL * A:
        raise BranchPointError(f"h(k) requested at branch point, k={k}, A={A}")
    if k.real == 0.0 and abs(k.imag) < A:
        raise BranchDomainError(f"h(k) undefined on the cut [-iA, iA], k={k}")
    if k.imag == 0.0:
        # Real-axis values by continuity from h ~ k on each half-line.
        return complex(np.sign(k.real) * np.sqrt(k.real * k.real + A * A))
    # k*sqrt(1 + A^2/k^2): the principal-sqrt cut maps exactly onto [-iA, iA].
    return complex(k * np.sqrt(1.0 + (A * A) / (k * k)))


def lam(j: int, k: complex, A: float) -> complex:
    """Exponent rates lambda_j = i(f + (-1)^(j+1) h), j = 1, 2."""
    if j not in (1, 2):
        raise ValueError(f"j must be 1 or 2, got {j}")
    sign = 1.0 if j == 1 else -1.0
    return 1j * (f(k, A) + sign * h(k, A))


def background_matrix(j: int, k: complex, A: float, side: CutSide = CutSide.OFF) -> np.ndarray:
    """Background eigenvector matrix E_j(k) built from w(k); det E_j = 1."""
    if j not in (1, 2):
        raise ValueError(f"j must be 1 or 2, got {j}")
    wk = w(k, A, side)
    e1 = 0.5 * (wk + 1.0 / wk)
    e2 = 0.5j * (wk - 1.0 / wk)
    if j == 1:
        return np.array([[e1, -e2], [e2, e1]], dtype=complex)
    return np.array([[e1, e2], [-e2, e1]], dtype=complex)
