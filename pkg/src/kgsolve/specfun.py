"""Special-function substrate: Jacobi polynomials, log-gamma, adaptive quadrature.

Everything here is a pure function; no caches, no global state.
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NoConvergence

__all__ = [
    "JacobiIndex",
    "jacobi_eval",
    "jacobi_deriv",
    "jacobi_norm_integral",
    "log_gamma",
    "integrate",
]


@dataclass(frozen=True)
class JacobiIndex:
    """Index pair (a, b) of a Jacobi polynomial; both must exceed -1."""

    a: float
    b: float

    def __post_init__(self):
        if not (self.a > -1.0 and self.b > -1.0):
            raise DomainError(f"Jacobi indices must exceed -1, got ({self.a}, {self.b})")


def _jacobi_raw(n, a, b, x):
    """P_n^(a,b)(x) by the ascending three-term recurrence.

    `x` may be a scalar or ndarray. Stable on [-1, 1] for the moderate degrees
    used here (n up to a few tens); no asymptotic regimes are needed.
    """
    x = np.asarray(x, dtype=float)
    p_prev = np.ones_like(x)
    if n == 0:
        return p_prev
    p_cur = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * x
    for k in range(2, n + 1):
        c1 = 2.0 * k * (k + a + b) * (2.0 * k + a + b - 2.0)
        c2 = (2.0 * k + a + b - 1.0) * (a * a - b * b)
        c3 = (2.0 * k + a + b - 1.0) * (2.0 * k + a + b) * (2.0 * k + a + b - 2.0)
        c4 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * (2.0 * k + a + b)
        p_prev, p_cur = p_cur, ((c2 + c3 * x) * p_cur - c4 * p_prev) / c1
    return p_cur


def jacobi_eval(n: int, idx: JacobiIndex, x):
    """Value of the Jacobi polynomial P_n^(a,b) at x in [-1, 1].

    Exact for n <= 1 by the explicit low-degree formulas; higher degrees use
    the three-term recurrence. Raises DomainError if |x| > 1 + 1e-12.
    """
    if n < 0 or n != int(n):
        raise DomainError(f"polynomial degree must be a non-negative integer, got {n}")
    xs = np.asarray(x, dtype=float)
    if xs.size and float(np.max(np.abs(xs))) > 1.0 + 1e-12:
        raise DomainError(f"argument outside [-1, 1]: max |x| = {np.max(np.abs(xs))}")
    out = _jacobi_raw(int(n), idx.a, idx.b, xs)
    return float(out) if np.isscalar(x) or np.ndim(x) == 0 else out


def jacobi_deriv(n: int, idx: JacobiIndex, x, order: int = 1):
    """Derivative d^k/dx^k P_n^(a,b)(x) via the index-shift identity.

    d/dx P_n^(a,b) = (n + a + b + 1)/2 * P_{n-1}^(a+1,b+1), applied `order` times.
    """
    if order < 0:
        raise DomainError("derivative order must be >= 0")
    a, b, m = idx.a, idx.b, n
    scale = 1.0
    for _ in range(order):
        if m == 0:
            return np.zeros_like(np.asarray(x, dtype=float)) if np.ndim(x) else 0.0
        scale *= 0.5 * (m + a + b + 1.0)
        m, a, b = m - 1, a + 1.0, b + 1.0
    out = scale * _jacobi_raw(m, a, b, np.asarray(x, dtype=float))
    return float(out) if np.ndim(x) == 0 else out


def log_gamma(x: float) -> float:
    """Natural log of the gamma function for x > 0."""
    if x <= 0.0:
        raise DomainError(f"log_gamma requires x > 0, got {x}")
    return math.lgamma(x)


def jacobi_norm_integral(n: int, z: float, zp: float) -> float:
    """Closed form of int_{-1}^{1} (1-x)^(z-1) (1+x)^zp [P_n^(z,zp)(x)]^2 dx.

    Equals 2^(z+zp) Gamma(z+n+1) Gamma(zp+n+1) / (n! z Gamma(z+zp+n+1)),
    assembled in log space so large combined indices do not overflow.
    """
    if z <= 0.0:
        raise DomainError(f"norm integral requires z > 0, got {z}")
    if zp <= -1.0:
        raise DomainError(f"norm integral requires zp > -1, got {zp}")
    lg = math.lgamma
    return math.exp(
        (z + zp) * math.log(2.0)
        + lg(z + n + 1.0)
        + lg(zp + n + 1.0)
        - lg(n + 1.0)
        - math.log(z)
        - lg(z + zp + n + 1.0)
    )


# 15-point Kronrod nodes with the embedded 7-point Gauss weights.
_XK = np.array([
    -0.991455371120813, -0.949107912342759, -0.864864423359769,
    -0.741531185599394, -0.586087235467691, -0.405845151377397,
    -0.207784955007898, 0.0, 0.207784955007898, 0.405845151377397,
    0.586087235467691, 0.741531185599394, 0.864864423359769,
    0.949107912342759, 0.991455371120813,
])
_WK = np.array([
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728, 0.204432940075298,
    0.190350578064785, 0.169004726639267, 0.140653259715525,
    0.104790010322250, 0.063092092629979, 0.022935322010529,
])
_WG = np.array([
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469, 0.381830050505119, 0.279705391489277,
    0.129484966168870,
])


def _gk15(f, a, b):
    """One Gauss-Kronrod 7/15 panel on [a, b]: (estimate, error bound)."""
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    nodes = mid + half * _XK
    try:
        fx = np.asarray(f(nodes), dtype=float)
        if fx.shape != nodes.shape:
            raise TypeError
    except (TypeError, ValueError):  # scalar-only callable
        fx = np.array([float(f(t)) for t in nodes])
    k15 = half * float(np.dot(_WK, fx))
    g7 = half * float(np.dot(_WG, fx[1::2]))
    err = abs(k15 - g7)
    return k15, (err if math.isfinite(err) else math.inf)


def integrate(f, lo: float, hi: float, tol: float) -> float:
    """Globally adaptive quadrature of f over (lo, hi) to absolute tolerance tol.

    The worst panel (by error bound) is bisected until the summed error bound
    drops below tol. Panels never place nodes on the endpoints, so integrable
    algebraic endpoint singularities are handled by the subdivision marching
    geometrically into the endpoint. An infinite upper limit is mapped onto
    s in (0, 1) by r = ln(1/s) before integrating.

    Raises NoConvergence when the error bound stalls above tol (panels shrunk
    to machine width, or the split budget is exhausted).
    """
    if tol <= 0.0:
        raise DomainError("tolerance must be positive")
    if math.isinf(hi):
        g = lambda s: f(np.log(1.0 / s)) / s
        return integrate(g, 0.0, math.exp(-lo), tol)
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise DomainError("lower limit must be finite")
    if hi <= lo:
        raise DomainError("need hi > lo")

    val, err = _gk15(f, lo, hi)
    heap = [(-err, lo, hi, val)]
    total_val = val
    active_err = err
    stuck_err = 0.0
    for _ in range(20000):
        if active_err + stuck_err <= tol:
            return total_val
        if not heap:
            break
        neg_err, a, b, v = heapq.heappop(heap)
        e = -neg_err
        width_floor = 5e-16 * max(abs(a), abs(b), 1e-300)
        if (b - a) <= width_floor:
            # cannot split further; park its error and keep refining the rest
            active_err -= e
            stuck_err += e
            if stuck_err > tol:
                raise NoConvergence(
                    f"error estimate stalled at {stuck_err:.3e} > tol={tol:.3e}"
                )
            continue
        m = 0.5 * (a + b)
        v1, e1 = _gk15(f, a, m)
        v2, e2 = _gk15(f, m, b)
        total_val += v1 + v2 - v
        active_err += e1 + e2 - e
        heapq.heappush(heap, (-e1, a, m, v1))
        heapq.heappush(heap, (-e2, m, b, v2))
    if active_err + stuck_err <= tol:
        return total_val
    raise NoConvergence(
        f"split budget exhausted with error {active_err + stuck_err:.3e} > tol={tol:.3e}"
    )
