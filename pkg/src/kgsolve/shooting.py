"""Independent numerical verification of the closed-form results.

The radial equation phi'' + W(r; E) phi = 0 is integrated outward on a
logarithmic grid (x = ln r, chi = phi / sqrt(r), so the centrifugal-like
1/r^2 singularity becomes a constant coefficient) with the Numerov scheme.
Eigenvalues are located by bisection on the node count / tail sign of the
integrated solution; the energy enters W both through E^2 and linearly
through the vector coupling, so this is a nonlinear eigenvalue problem and
each root gets its own bracket.

`ode_residual` checks the closed-form wavefunction pointwise against the
same W by differentiating the closed form analytically (chain rule through
s = e^(-r/r0) plus the Jacobi derivative identity); it is the decisive test
of the wavefunction exponent conventions.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np
from numba import njit

from .errors import DomainError, NoSignChange, StiffnessFailure
from .hulthen import (
    BoundState,
    ModelParams,
    QuantumNumbers,
    _screened,
    _wavefunction_raw,
    delta_prime,
)
from . import specfun

__all__ = [
    "ShootingConfig",
    "radial_rhs",
    "shoot",
    "ode_residual",
    "residual_grid",
]

_N_CAP = 4_000_000


@dataclass(frozen=True)
class ShootingConfig:
    """Numerical controls of the shooting solver.

    r_min/r_max default to 1e-6 r0 and 50 r0 / max(alpha, 0.1); the outer
    cutoff is additionally extended until the potential tail is flat to
    1e-14. step_tol is the integrator's local tolerance (the log-grid step
    is chosen from it); e_tol is the bisection width at which the eigenvalue
    search stops. centrifugal_mode selects the solvable approximation or the
    exact l(l+1)/r^2 term.
    """

    r_min: Optional[float] = None
    r_max: Optional[float] = None
    step_tol: float = 1e-10
    e_tol: float = 1e-9
    centrifugal_mode: str = "approximate"
    step_scale: float = 1.0

    def __post_init__(self):
        if self.step_tol <= 0.0 or self.e_tol <= 0.0 or self.step_scale <= 0.0:
            raise DomainError("tolerances must be positive")
        if self.r_min is not None and self.r_max is not None and not (self.r_min < self.r_max):
            raise DomainError("need r_min < r_max")
        if self.centrifugal_mode not in ("approximate", "exact"):
            raise DomainError(f"unknown centrifugal mode {self.centrifugal_mode!r}")


def radial_rhs(r, E: float, p: ModelParams, l: int, mode: str = "approximate"):
    """W(r; E) such that phi'' + W phi = 0 is the radial equation.

    W = E^2 - m0^2 + [2 m0 (S0 - m1) + 2 E V0] u + [2 m1 S0 - m1^2 + V0^2 - S0^2] u^2
        - centrifugal,   u = 1/(e^(r/r0) - 1),

    with the centrifugal term either l(l+1) e^(r/r0)/(r0 (e^(r/r0)-1))^2
    (`approximate`, the form the closed-form solution solves exactly) or
    l(l+1)/r^2 (`exact`).
    """
    rr = np.asarray(r, dtype=float)
    if rr.size and float(np.min(rr)) <= 0.0:
        raise DomainError("r must be positive")
    u = _screened(rr, p.r0)
    c1 = 2.0 * p.m0 * (p.S0 - p.m1) + 2.0 * E * p.V0
    c2 = 2.0 * p.m1 * p.S0 - p.m1 * p.m1 + p.V0 * p.V0 - p.S0 * p.S0
    ll1 = l * (l + 1)
    if mode == "approximate":
        cf = ll1 * u * (u + 1.0) / (p.r0 * p.r0)
    elif mode == "exact":
        cf = ll1 / (rr * rr)
    else:
        raise DomainError(f"unknown centrifugal mode {mode!r}")
    out = E * E - p.m0 * p.m0 + c1 * u + c2 * u * u - cf
    return float(out) if np.ndim(r) == 0 else out


@njit(cache=True, nogil=True)
def _numerov_scan(q, h, seed_ratio, i_turn):
    """Numerov sweep of chi'' + q chi = 0; returns (nodes, nodes<=i_turn, tail sign).

    Renormalization by positive factors keeps the magnitude in range without
    touching signs, so node counting and the tail sign stay exact.
    """
    m = q.size
    h2 = h * h / 12.0
    f_prev = 1.0 + h2 * q[0]
    f_cur = 1.0 + h2 * q[1]
    y_prev = 1.0
    y_cur = seed_ratio
    nodes_total = 0
    nodes_allowed = 0
    for i in range(1, m - 1):
        f_next = 1.0 + h2 * q[i + 1]
        y_next = ((12.0 - 10.0 * f_cur) * y_cur - f_prev * y_prev) / f_next
        if y_next * y_cur < 0.0 or (y_next == 0.0 and y_cur != 0.0):
            nodes_total += 1
            if i + 1 <= i_turn:
                nodes_allowed += 1
        ay = abs(y_next)
        if ay > 1e250:
            y_next /= ay
            y_cur /= ay
        y_prev = y_cur
        y_cur = y_next
        f_prev = f_cur
        f_cur = f_next
    sign_end = 0
    if y_cur > 0.0:
        sign_end = 1
    elif y_cur < 0.0:
        sign_end = -1
    return nodes_total, nodes_allowed, sign_end


class _Shooter:
    """Precomputed log-grid machinery for repeated scans at different E."""

    def __init__(self, p: ModelParams, qn: QuantumNumbers, cfg: ShootingConfig,
                 e_center: float):
        self.p, self.qn = p, qn
        dp = delta_prime(p, qn.l)
        self.seed_exponent = dp - 0.5
        alpha = p.r0 * math.sqrt(max(p.m0 * p.m0 - e_center * e_center, 1e-8))
        r_min = cfg.r_min if cfg.r_min is not None else 1e-6 * p.r0
        if cfg.r_max is not None:
            r_max = cfg.r_max
        else:
            r_max = 50.0 * p.r0 / max(alpha / p.r0, 0.1)
            # extend until the screened terms are flat to 1e-14
            c1 = abs(2.0 * p.m0 * (p.S0 - p.m1)) + 2.0 * abs(p.V0) * p.m0
            c2 = abs(2.0 * p.m1 * p.S0 - p.m1 * p.m1 + p.V0 * p.V0 - p.S0 * p.S0)
            big = max(c1, c2, qn.l * (qn.l + 1) / (p.r0 * p.r0), 1.0)
            r_max = max(r_max, p.r0 * math.log(big * 1e14 + 10.0))
        x0, x1 = math.log(r_min), math.log(r_max)
        # Numerov local error ~ h^6 |q|^3 / 240; bound it by step_tol using the
        # largest coefficient scale on the grid.
        q_scale = max(
            (r_max / p.r0) ** 2 * abs(p.m0 * p.m0),
            (dp - 0.5) ** 2 + 0.25,
            4.0,
        )
        h = (240.0 * cfg.step_tol) ** (1.0 / 6.0) / math.sqrt(q_scale)
        h = min(h, 2.5e-4 * (cfg.step_tol / 1e-10) ** 0.25) * cfg.step_scale
        n_pts = int(math.ceil((x1 - x0) / h)) + 1
        if n_pts > _N_CAP:
            raise StiffnessFailure(
                f"step_tol={cfg.step_tol} needs {n_pts} grid points (cap {_N_CAP})"
            )
        x = np.linspace(x0, x1, n_pts)
        self.h = x[1] - x[0]
        r = np.exp(x)
        u = _screened(r, p.r0)
        r2 = r * r
        ll1 = qn.l * (qn.l + 1)
        if cfg.centrifugal_mode == "approximate":
            cf = ll1 * u * (u + 1.0) / (p.r0 * p.r0)
        else:
            cf = ll1 / r2
        c1b = 2.0 * p.m0 * (p.S0 - p.m1)
        c2 = 2.0 * p.m1 * p.S0 - p.m1 * p.m1 + p.V0 * p.V0 - p.S0 * p.S0
        self._base = (c1b * u + c2 * u * u - cf) * r2 - 0.25
        self._lin = 2.0 * p.V0 * u * r2
        self._r2 = r2
        self.n_pts = n_pts

    def scan(self, E: float) -> Tuple[int, int, int]:
        q = self._base + E * self._lin + (E * E - self.p.m0 * self.p.m0) * self._r2
        allowed = np.nonzero(q + 0.25 >= 0.0)[0]
        i_turn = int(allowed[-1]) if allowed.size else 0
        return _numerov_scan(q, self.h, math.exp(self.seed_exponent * self.h), i_turn)


def shoot(p: ModelParams, qn: QuantumNumbers, cfg: ShootingConfig,
          e_bracket: Tuple[float, float]) -> float:
    """Locate the eigenvalue inside e_bracket by node-count/tail-sign bisection.

    The solution is seeded near the origin with the indicial behavior
    phi ~ r^d' and integrated outward; crossing an eigenvalue flips the sign
    of the exponentially growing tail (equivalently, adds one far node).
    Raises NoSignChange when neither the node count nor the tail sign differs
    across the bracket, or when the converged state has the wrong node count.
    """
    lo, hi = float(e_bracket[0]), float(e_bracket[1])
    if not lo < hi:
        raise DomainError("bracket must satisfy lo < hi")
    if max(abs(lo), abs(hi)) >= p.m0:
        raise DomainError("bracket must lie strictly inside (-m0, m0)")
    shooter = _Shooter(p, qn, cfg, 0.5 * (lo + hi))
    s_lo, s_hi = shooter.scan(lo), shooter.scan(hi)
    if s_lo[0] != s_hi[0]:
        key = 0
    elif s_lo[2] != s_hi[2]:
        key = 2
    else:
        raise NoSignChange(
            f"no node-count or tail-sign change across bracket ({lo}, {hi})"
        )
    ref = s_lo[key]
    while hi - lo > cfg.e_tol:
        mid = 0.5 * (lo + hi)
        if shooter.scan(mid)[key] == ref:
            lo = mid
        else:
            hi = mid
    e_star = 0.5 * (lo + hi)
    nodes = shooter.scan(e_star)[1]
    if nodes != qn.n:
        raise NoSignChange(
            f"bracket converged to a state with {nodes} interior nodes, expected {qn.n}"
        )
    return e_star


def _closed_form_second_derivative(p, qn, E, r, convention):
    """(phi, phi'') of the closed-form state, unnormalized, differentiated exactly.

    With f(s) = s^a (1-s)^b J(s), J(s) = P_n^(ja,jb)(1-2s), and s = e^(-r/r0):
    phi'' = (f'' s^2 + f' s)/r0^2. Every term keeps non-negative powers of s,
    so nothing blows up in the far tail.
    """
    from .hulthen import coefficients  # local import avoids a cycle at module load

    c = coefficients(E, p, qn)
    alpha, dp = c.alpha, c.delta_prime
    if convention == "derived":
        a, b = alpha, dp
        ja, jb = 2.0 * alpha, 2.0 * dp - 1.0
    elif convention == "shifted":
        a, b = alpha, 1.0 + dp
        ja, jb = 2.0 * alpha, 1.0 + 2.0 * dp
    else:
        raise DomainError(f"unknown convention {convention!r}")
    n = qn.n
    r0 = p.r0
    rr = np.asarray(r, dtype=float)
    s = np.exp(-rr / r0)
    oms = -np.expm1(-rr / r0)
    x = 1.0 - 2.0 * s
    J = specfun._jacobi_raw(n, ja, jb, x)
    if n >= 1:
        J1 = -2.0 * (0.5 * (n + ja + jb + 1.0)) * specfun._jacobi_raw(n - 1, ja + 1.0, jb + 1.0, x)
    else:
        J1 = np.zeros_like(x)
    if n >= 2:
        J2 = (4.0 * (0.5 * (n + ja + jb + 1.0)) * (0.5 * (n + ja + jb + 2.0))
              * specfun._jacobi_raw(n - 2, ja + 2.0, jb + 2.0, x))
    else:
        J2 = np.zeros_like(x)
    sa = np.exp(-a * rr / r0)
    phi = sa * oms**b * J
    f2s2 = (
        a * (a - 1.0) * sa * oms**b * J
        - 2.0 * a * b * sa * s * oms ** (b - 1.0) * J
        + b * (b - 1.0) * sa * s * s * oms ** (b - 2.0) * J
        + 2.0 * a * sa * s * oms**b * J1
        - 2.0 * b * sa * s * s * oms ** (b - 1.0) * J1
        + sa * s * s * oms**b * J2
    )
    f1s = a * sa * oms**b * J - b * sa * s * oms ** (b - 1.0) * J + sa * s * oms**b * J1
    phi_dd = (f2s2 + f1s) / (r0 * r0)
    return phi, phi_dd


def residual_grid(b: BoundState, points: int = 500) -> np.ndarray:
    """Default evaluation grid for ode_residual: log-spaced through the support."""
    r0 = b.params.r0
    alpha_rate = max(b.coeffs.alpha / r0, 0.2)
    return np.geomspace(1e-3 * r0, 25.0 / alpha_rate, points)


def ode_residual(b: BoundState, grid: Sequence[float], convention: str = "derived") -> float:
    """Max normalized defect |phi'' + W phi| / max(1, |W phi|) over the grid.

    phi is the closed-form state of `b` (the `shifted` convention swaps in the
    alternative exponent set (1+d', 1+2d') for adjudication); W is the
    approximate-centrifugal radial coefficient, which the closed form is
    supposed to solve exactly at its eigenvalue.
    """
    rr = np.asarray(grid, dtype=float)
    if rr.size == 0 or float(np.min(rr)) <= 0.0:
        raise DomainError("grid must be non-empty and strictly positive")
    phi, phi_dd = _closed_form_second_derivative(b.params, b.qn, b.energy, rr, convention)
    w = radial_rhs(rr, b.energy, b.params, b.qn.l, "approximate")
    defect = np.abs(phi_dd + w * phi) / np.maximum(1.0, np.abs(w * phi))
    return float(defect.max())
