"""Relativistic Hulthen model with a position-dependent mass.

Natural units (hbar = c = 1). The mass profile and the vector/scalar
couplings all share the screened shape 1/(e^(r/r0) - 1):

    m(r)   = m0 + m1 e^(-r/r0) / (1 - e^(-r/r0)),
    V_s(r) = -S0 / (e^(r/r0) - 1),
    V_v(r) = -V0 / (e^(r/r0) - 1).

After the substitution s = e^(-r/r0) the radial problem becomes a
hypergeometric-type equation handled by the parametric engine in `nu`;
the quantization condition collapses to

    r0 sqrt(m0^2 - E^2) = [beta2^2 - l(l+1) - n^2 - (2n+1) d'] / (2(n + d')),

which squares into a quadratic in E. Both roots are reported: the smaller
(particle column of the reference tables) and the larger (antiparticle
column), each with a sign-consistency flag telling whether the unsquared
right-hand side is non-negative at that root.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from . import specfun
from .errors import (
    ComplexDeltaPrime,
    DomainError,
    NotNormalizable,
    UnboundEnergy,
)
from .nu import NuProblem

__all__ = [
    "ModelParams",
    "QuantumNumbers",
    "CoefficientSet",
    "EnergyPair",
    "BoundState",
    "mass_at",
    "potentials_at",
    "centrifugal_pair",
    "delta_prime",
    "coefficients",
    "build_nu_problem",
    "energy_levels",
    "constant_mass_levels",
    "bound_state",
    "bound_state_at_energy",
    "wavefunction",
    "normalization_closed",
    "normalization_quadrature",
]

# PE + Q down to this value still counts as sign-consistent (threshold roots).
_VALID_TOL = -1e-9
# Decay constants at or below this are continuum-threshold states: not normalizable.
_ALPHA_FLOOR = 1e-12


@dataclass(frozen=True)
class ModelParams:
    """Physical inputs: masses, couplings and the screening radius.

    m0 is the asymptotic mass, m1 >= 0 the mass-deformation strength
    (m1 = 0 recovers a constant mass), V0/S0 the vector/scalar coupling
    strengths, r0 > 0 the shared screening radius.
    """

    m0: float
    m1: float
    V0: float
    S0: float
    r0: float = 1.0

    def __post_init__(self):
        if not self.m0 > 0.0:
            raise DomainError(f"m0 must be positive, got {self.m0}")
        if not self.r0 > 0.0:
            raise DomainError(f"r0 must be positive, got {self.r0}")
        if self.m1 < 0.0:
            raise DomainError(f"m1 must be non-negative, got {self.m1}")


@dataclass(frozen=True)
class QuantumNumbers:
    """Radial index n >= 0 and angular momentum l >= 0."""

    n: int
    l: int

    def __post_init__(self):
        if self.n < 0 or self.n != int(self.n):
            raise DomainError(f"n must be a non-negative integer, got {self.n}")
        if self.l < 0 or self.l != int(self.l):
            raise DomainError(f"l must be a non-negative integer, got {self.l}")


@dataclass(frozen=True)
class CoefficientSet:
    """Energy-dependent derived quantities of the s-space equation.

    alpha    = r0 sqrt(m0^2 - E^2)            (decay constant, >= 0)
    alpha_m1 = r0 sqrt((m1-m0)^2 - E^2) when the radicand is non-negative;
               otherwise the signed squared value r0^2 ((m1-m0)^2 - E^2) < 0
               is stored (only the square ever enters the identities).
    beta1_sq = r0^2 (2 E V0 - 2 S0 (m1 - m0))
    beta2_sq = r0^2 (2 E V0 - 2 m0 (m1 - S0))
    nu_sq    = r0^2 (S0^2 - V0^2)
    nu_sq_m1 = r0^2 ((S0 - m1)^2 - V0^2)
    delta_prime = 1/2 + 1/2 sqrt((2l+1)^2 + 4 nu_sq_m1)
    """

    alpha: float
    alpha_m1: float
    beta1_sq: float
    beta2_sq: float
    nu_sq: float
    nu_sq_m1: float
    delta_prime: float

    @property
    def alpha_m1_sq(self) -> float:
        """Signed square of alpha_m1 regardless of the storage convention."""
        return self.alpha_m1 * self.alpha_m1 if self.alpha_m1 >= 0.0 else self.alpha_m1


@dataclass(frozen=True)
class EnergyPair:
    """Both real roots of the squared quantization condition, sorted ascending.

    valid_a/valid_p report per-root sign consistency (the unsquared
    right-hand side is non-negative there); bound_a/bound_p report |E| <= m0.
    Classification as particle/antiparticle column never depends on the flags.
    """

    e_a: float
    e_p: float
    discriminant: float
    valid_a: bool
    valid_p: bool
    bound_a: bool
    bound_p: bool

    def root(self, which: str) -> float:
        if which == "a":
            return self.e_a
        if which == "p":
            return self.e_p
        raise ValueError(f"root selector must be 'a' or 'p', got {which!r}")

    def valid(self, which: str) -> bool:
        return self.valid_a if which == "a" else self.valid_p


@dataclass(frozen=True)
class BoundState:
    """A fully specified bound state with both normalization constants.

    norm_quad is the quadrature-determined constant (authoritative);
    norm_closed is the closed-form gamma-ratio expression evaluated with the
    Jacobi index pair the wavefunction actually uses, kept for comparison.
    """

    params: ModelParams
    qn: QuantumNumbers
    energy: float
    coeffs: CoefficientSet
    norm_closed: float
    norm_quad: float


def _check_r(r) -> np.ndarray:
    rr = np.asarray(r, dtype=float)
    if rr.size and float(np.min(rr)) <= 0.0:
        raise DomainError("r must be positive")
    return rr


def _screened(r, r0):
    """The shape 1/(e^(r/r0) - 1), overflow-free for large r."""
    e = np.exp(-r / r0)
    return e / (-np.expm1(-r / r0))


def mass_at(r, p: ModelParams):
    """Position-dependent mass m(r); decreases monotonically to m0."""
    rr = _check_r(r)
    out = p.m0 + p.m1 * _screened(rr, p.r0)
    return float(out) if np.ndim(r) == 0 else out


def potentials_at(r, p: ModelParams):
    """(V_s, V_v) at radius r, both of screened Hulthen shape."""
    rr = _check_r(r)
    u = _screened(rr, p.r0)
    vs, vv = -p.S0 * u, -p.V0 * u
    if np.ndim(r) == 0:
        return float(vs), float(vv)
    return vs, vv


def centrifugal_pair(r, l: int, r0: float):
    """(exact, approximate) centrifugal terms at radius r.

    exact = l(l+1)/r^2; approximate = l(l+1) e^(r/r0) / (r0 (e^(r/r0)-1))^2,
    the replacement that makes the l > 0 problem solvable in closed form.
    The two agree to O((r/r0)^2) as r -> 0.
    """
    rr = _check_r(r)
    ll1 = l * (l + 1)
    exact = ll1 / (rr * rr)
    u = _screened(rr, r0)
    approx = ll1 * u * (u + 1.0) / (r0 * r0)
    if np.ndim(r) == 0:
        return float(exact), float(approx)
    return exact, approx


def delta_prime(p: ModelParams, l: int) -> float:
    """Effective angular parameter 1/2 + 1/2 sqrt((2l+1)^2 + 4 nu_sq_m1).

    Equals l + 1 when S0 = V0 and m1 = 0. Raises ComplexDeltaPrime when the
    coupling is over-critical (negative radicand).
    """
    nu_sq_m1 = p.r0 * p.r0 * ((p.S0 - p.m1) ** 2 - p.V0 * p.V0)
    radicand = (2 * l + 1) ** 2 + 4.0 * nu_sq_m1
    if radicand < 0.0:
        raise ComplexDeltaPrime(
            f"(2l+1)^2 + 4 nu^2(m1) = {radicand} < 0 (over-critical coupling)"
        )
    return 0.5 + 0.5 * math.sqrt(radicand)


def coefficients(E: float, p: ModelParams, qn: QuantumNumbers) -> CoefficientSet:
    """All energy-dependent derived quantities at energy E.

    The two algebraically equivalent routes to nu_sq_m1 (the direct
    (S0-m1)^2 - V0^2 form and the combination of squared decay constants)
    are both evaluated and must agree; a disagreement would mean a broken
    parameter mapping, not a numerical issue.
    """
    r0sq = p.r0 * p.r0
    t = p.m0 * p.m0 - E * E
    if t < -1e-12:
        raise UnboundEnergy(f"|E| = {abs(E)} exceeds m0 = {p.m0}")
    alpha = p.r0 * math.sqrt(max(t, 0.0))
    am1_sq = r0sq * ((p.m1 - p.m0) ** 2 - E * E)
    alpha_m1 = math.sqrt(am1_sq) if am1_sq >= 0.0 else am1_sq
    beta1_sq = r0sq * (2.0 * E * p.V0 - 2.0 * p.S0 * (p.m1 - p.m0))
    beta2_sq = r0sq * (2.0 * E * p.V0 - 2.0 * p.m0 * (p.m1 - p.S0))
    nu_sq = r0sq * (p.S0 * p.S0 - p.V0 * p.V0)
    nu_sq_m1 = r0sq * ((p.S0 - p.m1) ** 2 - p.V0 * p.V0)
    alt = -alpha * alpha + am1_sq + beta1_sq - beta2_sq + nu_sq
    scale = max(1.0, abs(nu_sq_m1), alpha * alpha, abs(beta2_sq))
    if abs(alt - nu_sq_m1) > 1e-10 * scale:
        raise AssertionError(
            f"nu_sq_m1 routes disagree: {nu_sq_m1} vs {alt} (broken mapping)"
        )
    dp = delta_prime(p, qn.l)
    return CoefficientSet(alpha, alpha_m1, beta1_sq, beta2_sq, nu_sq, nu_sq_m1, dp)


def build_nu_problem(E: float, p: ModelParams, qn: QuantumNumbers) -> NuProblem:
    """Map the model at energy E onto the six parametric-engine inputs.

    xi1 = alpha^2 + beta2^2 + nu^2(m1); xi2 = 2 alpha^2 + beta2^2 - l(l+1);
    xi3 = alpha^2. With these, a9 = nu^2(m1) + l(l+1) + 1/4 identically.
    """
    c = coefficients(E, p, qn)
    a2 = c.alpha * c.alpha
    ll1 = qn.l * (qn.l + 1)
    return NuProblem(
        a1=1.0,
        a2=1.0,
        a3=1.0,
        xi1=a2 + c.beta2_sq + c.nu_sq_m1,
        xi2=2.0 * a2 + c.beta2_sq - ll1,
        xi3=a2,
    )


def _quadratic_coeffs(p: ModelParams, qn: QuantumNumbers, dp: float):
    """(P, Q, D) with r0 sqrt(m0^2-E^2) = (P E + Q)/D as the eigencondition."""
    r0sq = p.r0 * p.r0
    P = 2.0 * p.V0 * r0sq
    Q = (
        2.0 * p.m0 * (p.S0 - p.m1) * r0sq
        - qn.l * (qn.l + 1)
        - qn.n * qn.n
        - (2 * qn.n + 1) * dp
    )
    D = 2.0 * (qn.n + dp)
    return P, Q, D


def energy_levels(p: ModelParams, qn: QuantumNumbers) -> Optional[EnergyPair]:
    """Solve the quantization condition for both energy roots.

    Squaring r0 sqrt(m0^2 - E^2) = (P E + Q)/D gives

        (P^2 + D^2 r0^2) E^2 + 2 P Q E + (Q^2 - D^2 r0^2 m0^2) = 0,

    solved with the cancellation-safe quadratic formula. Returns None when
    the discriminant is negative (the dash entries of the reference tables);
    a discriminant within -1e-9 of zero (relative) is treated as a double
    root. Sign-validity of each root means P E + Q >= -1e-9.
    """
    dp = delta_prime(p, qn.l)
    P, Q, D = _quadratic_coeffs(p, qn, dp)
    r0sq = p.r0 * p.r0
    a = P * P + D * D * r0sq
    b = 2.0 * P * Q
    c = Q * Q - D * D * r0sq * p.m0 * p.m0
    disc = b * b - 4.0 * a * c
    scale = max(1.0, b * b, abs(4.0 * a * c))
    if disc < -1e-9 * scale:
        return None
    sqrt_disc = math.sqrt(max(disc, 0.0))
    if b >= 0.0:
        q = -0.5 * (b + sqrt_disc)
    else:
        q = -0.5 * (b - sqrt_disc)
    if q != 0.0:
        r1, r2 = q / a, c / q
    else:  # b = 0 and disc = 0: double root at the origin
        r1 = r2 = 0.0
    e_a, e_p = (r1, r2) if r1 <= r2 else (r2, r1)
    bound_tol = 1e-12 * max(1.0, p.m0)
    return EnergyPair(
        e_a=e_a,
        e_p=e_p,
        discriminant=disc,
        valid_a=P * e_a + Q >= _VALID_TOL,
        valid_p=P * e_p + Q >= _VALID_TOL,
        bound_a=abs(e_a) <= p.m0 + bound_tol,
        bound_p=abs(e_p) <= p.m0 + bound_tol,
    )


def constant_mass_levels(p: ModelParams, qn: QuantumNumbers) -> Optional[EnergyPair]:
    """energy_levels with the mass deformation switched off (m1 = 0)."""
    return energy_levels(replace(p, m1=0.0), qn)


def _wavefunction_raw(r, r0, a_exp, b_exp, ja, jb, n, norm):
    """norm * s^a_exp (1-s)^b_exp P_n^(ja,jb)(1-2s) with s = e^(-r/r0)."""
    rr = np.asarray(r, dtype=float)
    s = np.exp(-rr / r0)
    oms = -np.expm1(-rr / r0)
    x = 1.0 - 2.0 * s
    poly = specfun._jacobi_raw(n, ja, jb, x)
    return norm * np.exp(-a_exp * rr / r0) * oms**b_exp * poly


def wavefunction(b: BoundState, r):
    """Radial wavefunction phi(r), quadrature-normalized.

    phi(r) = A e^(-alpha r/r0) (1 - e^(-r/r0))^d' P_n^(2 alpha, 2 d'-1)(1 - 2 e^(-r/r0)).

    Vanishes like r^d' at the origin and like e^(-alpha r/r0) at infinity.
    """
    _check_r(r)
    c = b.coeffs
    out = _wavefunction_raw(
        r, b.params.r0, c.alpha, c.delta_prime,
        2.0 * c.alpha, 2.0 * c.delta_prime - 1.0, b.qn.n, b.norm_quad,
    )
    return float(out) if np.ndim(r) == 0 else out


def _closed_form_norm(n: int, alpha: float, beta: float, r0: float) -> float:
    """The gamma-ratio normalization expression, assembled in log space.

    beta is the second Jacobi index actually used by the wavefunction
    (2 delta' - 1). Kept verbatim for comparison against the quadrature
    constant; the two are known to disagree by an n-dependent ratio.
    """
    if alpha <= 0.0:
        raise DomainError("closed-form normalization requires alpha > 0")
    g = 2.0 * alpha + beta
    num = (g + 2.0 * n + 2.0) * (g + 2.0 * n)
    den = 4.0 * n * (n + 1.0 + g) + 2.0 * (1.0 + beta) * g
    for arg in (g + n + 1.0, 2.0 * alpha + n + 1.0, beta + n + 1.0):
        if arg <= 0.0:
            raise DomainError(f"gamma argument {arg} <= 0 in closed-form normalization")
    if num <= 0.0 or den <= 0.0:
        raise DomainError("non-positive factor in closed-form normalization")
    lg = math.lgamma
    half_log = 0.5 * (
        lg(n + 1.0)
        + math.log(alpha)
        + math.log(num)
        - math.log(den)
        + lg(g + n + 1.0)
        - lg(2.0 * alpha + n + 1.0)
        - lg(beta + n + 1.0)
    )
    return 2.0 / math.sqrt(r0) * math.exp(half_log)


def normalization_closed(b: BoundState) -> float:
    """Closed-form normalization constant (gamma-ratio expression)."""
    c = b.coeffs
    return _closed_form_norm(b.qn.n, c.alpha, 2.0 * c.delta_prime - 1.0, b.params.r0)


def _quad_norm(n: int, alpha: float, dp: float, r0: float) -> float:
    """Normalization constant from adaptive quadrature of the density.

    In the variable s the norm integral is
        int_0^inf phi^2 dr = r0 int_0^1 s^(2a-1) (1-s)^(2d') P_n(1-2s)^2 ds,
    an algebraic-endpoint integrand handled by panel subdivision.
    """
    if alpha <= _ALPHA_FLOOR:
        raise NotNormalizable(
            f"alpha = {alpha} <= {_ALPHA_FLOOR}: state sits at the continuum threshold"
        )
    ja, jb = 2.0 * alpha, 2.0 * dp - 1.0
    two_am1 = 2.0 * alpha - 1.0

    def density(s):
        s = np.asarray(s, dtype=float)
        poly = specfun._jacobi_raw(n, ja, jb, 1.0 - 2.0 * s)
        return np.exp(two_am1 * np.log(s)) * (1.0 - s) ** (2.0 * dp) * poly * poly

    rough = specfun.integrate(density, 0.0, 1.0, tol=1e-6)
    tol = max(1e-13, 1e-11 * abs(rough))
    val = specfun.integrate(density, 0.0, 1.0, tol=tol)
    return 1.0 / math.sqrt(r0 * val)


def normalization_quadrature(b: BoundState) -> float:
    """Normalization constant determined by quadrature (the authoritative one)."""
    c = b.coeffs
    return _quad_norm(b.qn.n, c.alpha, c.delta_prime, b.params.r0)


def bound_state_at_energy(p: ModelParams, qn: QuantumNumbers, E: float) -> BoundState:
    """Assemble a closed-form state at the given energy without a root check.

    Used by the verification oracle to probe off-eigenvalue energies; for
    states produced by energy_levels prefer `bound_state`.
    """
    c = coefficients(E, p, qn)
    norm_quad = _quad_norm(qn.n, c.alpha, c.delta_prime, p.r0)
    try:
        norm_closed = _closed_form_norm(qn.n, c.alpha, 2.0 * c.delta_prime - 1.0, p.r0)
    except DomainError:
        norm_closed = math.nan
    return BoundState(p, qn, E, c, norm_closed, norm_quad)


def bound_state(p: ModelParams, qn: QuantumNumbers, root: str = "p") -> BoundState:
    """Solve for the requested root and build the normalized state.

    Raises NotNormalizable for continuum-threshold roots (alpha = 0) and
    DomainError when the configuration has no real roots at all.
    """
    pair = energy_levels(p, qn)
    if pair is None:
        raise DomainError(
            f"no real energy roots for n={qn.n}, l={qn.l} at this configuration"
        )
    return bound_state_at_energy(p, qn, pair.root(root))
