"""Parametric Nikiforov-Uvarov engine.

A hypergeometric-type radial equation in the variable s,

    [s(1 - a3 s)]^2 Psi'' + s(1 - a3 s)(a1 - a2 s) Psi'
        + (-xi1 s^2 + xi2 s - xi3) Psi = 0,

is characterized by six constants. From them this module derives the
constants a4..a13, the quantization residual that vanishes on eigenvalues,
the slope of the tau polynomial (whose negativity is the solvability
condition), and the structural shape of the solution

    Psi(s) = s^a12 (1 - a3 s)^(-a12 - a13/a3) P_n^(a10-1, a11/a3-a10-1)(1 - 2 a3 s).

The engine is purely numeric: the xi's are numbers, not expressions.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NegativeRadicand

__all__ = [
    "NuProblem",
    "NuDerived",
    "SolutionForm",
    "derive_parameters",
    "quantization_residual",
    "tau_slope",
    "solution_form",
]

# Radicands this far below zero are treated as exact zeros; they arise from
# floating-point cancellation at double roots. Anything lower is an error.
_RADICAND_CLAMP = -1e-12


@dataclass(frozen=True)
class NuProblem:
    """The six input constants (a1, a2, a3, xi1, xi2, xi3), all dimensionless.

    a3 = 0 (Coulomb-like degenerations) is out of scope and rejected here.
    xi3 is expected to be >= 0 (it plays the role of a squared decay constant);
    a negative value is accepted at construction so that derive_parameters can
    report it as the offending radicand.
    """

    a1: float
    a2: float
    a3: float
    xi1: float
    xi2: float
    xi3: float

    def __post_init__(self):
        if self.a3 == 0.0:
            raise ValueError("a3 = 0 is out of scope for this solver family")


@dataclass(frozen=True)
class NuDerived:
    """Constants a4..a13 derived from a NuProblem, plus the adopted k branch.

    a3 is carried through from the problem so the solution shape can be
    reconstructed from this value alone.
    """

    a4: float
    a5: float
    a6: float
    a7: float
    a8: float
    a9: float
    a10: float
    a11: float
    a12: float
    a13: float
    k: float
    a3: float


@dataclass(frozen=True)
class SolutionForm:
    """Exponents and Jacobi indices of Psi(s) = s^p (1 - a3 s)^q P_n^(a,b)(1 - 2 a3 s)."""

    s_exponent: float
    one_minus_s_exponent: float
    jacobi_a: float
    jacobi_b: float


def _checked_sqrt(value: float, name: str) -> float:
    if value < 0.0:
        if value >= _RADICAND_CLAMP:
            return 0.0
        raise NegativeRadicand(name, value)
    return math.sqrt(value)


def derive_parameters(p: NuProblem, branch: str = "minus") -> NuDerived:
    """Derive a4..a13 and the k branch from the six input constants.

    Only the minus branch of k = -(a7 + 2 a3 a8) -+ 2 sqrt(a8 a9) is
    implemented: the plus branch makes tau' positive for this problem family,
    violating the solvability condition, and is rejected outright.
    """
    if branch != "minus":
        raise ValueError(
            "only the 'minus' k-branch is supported; the 'plus' branch violates "
            "the tau' < 0 solvability condition for this problem family"
        )
    a4 = 0.5 * (1.0 - p.a1)
    a5 = 0.5 * (p.a2 - 2.0 * p.a3)
    a6 = a5 * a5 + p.xi1
    a7 = 2.0 * a4 * a5 - p.xi2
    a8 = a4 * a4 + p.xi3
    a9 = p.a3 * a7 + p.a3 * p.a3 * a8 + a6
    sqrt_a8 = _checked_sqrt(a8, "a8")
    sqrt_a9 = _checked_sqrt(a9, "a9")
    a8 = sqrt_a8 * sqrt_a8
    a9 = sqrt_a9 * sqrt_a9
    k = -(a7 + 2.0 * p.a3 * a8) - 2.0 * sqrt_a8 * sqrt_a9
    a10 = p.a1 + 2.0 * a4 + 2.0 * sqrt_a8
    a11 = p.a2 - 2.0 * a5 + 2.0 * (sqrt_a9 + p.a3 * sqrt_a8)
    a12 = a4 + sqrt_a8
    a13 = a5 - (sqrt_a9 + p.a3 * sqrt_a8)
    return NuDerived(a4, a5, a6, a7, a8, a9, a10, a11, a12, a13, k, p.a3)


def quantization_residual(p: NuProblem, n: int) -> float:
    """Residual of the quantization condition at radial index n.

    The condition reads C + S = 0 with

        C = a2 n - (2n+1) a5 + (2n+1) sqrt(a9) + n(n-1) a3 + a7 + 2 a3 a8,
        S = (2n+1) a3 sqrt(a8) + 2 sqrt(a8 a9),

    where the principal square root of a8 corresponds to one sign of the
    decay-constant branch. Both branches carry physical roots (the second
    hosts the charge-conjugate family the reference tables tabulate), so the
    returned residual is the branch product C^2 - S^2: it vanishes exactly on
    the eigenvalues of either branch and is smooth in the xi's.
    """
    if n < 0 or n != int(n):
        raise ValueError(f"radial index must be a non-negative integer, got {n}")
    d = derive_parameters(p)
    sqrt_a8 = math.sqrt(d.a8)
    sqrt_a9 = math.sqrt(d.a9)
    c = (
        p.a2 * n
        - (2.0 * n + 1.0) * d.a5
        + (2.0 * n + 1.0) * sqrt_a9
        + n * (n - 1.0) * p.a3
        + d.a7
        + 2.0 * p.a3 * d.a8
    )
    s = (2.0 * n + 1.0) * p.a3 * sqrt_a8 + 2.0 * sqrt_a8 * sqrt_a9
    return c * c - s * s


def tau_slope(p: NuProblem) -> float:
    """Slope tau' = -2 a3 - 2 (sqrt(a9) + a3 sqrt(a8)).

    The parametric reduction is solvable only when this is negative; callers
    assert that on physical configurations.
    """
    d = derive_parameters(p)
    return -2.0 * p.a3 - 2.0 * (math.sqrt(d.a9) + p.a3 * math.sqrt(d.a8))


def solution_form(d: NuDerived) -> SolutionForm:
    """Exponents and Jacobi indices of the bound-state solution shape."""
    return SolutionForm(
        s_exponent=d.a12,
        one_minus_s_exponent=-d.a12 - d.a13 / d.a3,
        jacobi_a=d.a10 - 1.0,
        jacobi_b=d.a11 / d.a3 - d.a10 - 1.0,
    )
