"""Dimensionless Lennard-Jones pair potential and the symmetric cell potential.

Everything is expressed in the natural units of the pair potential: the well
depth, the equilibrium distance and the particle mass are all 1, so the pair
potential is

    U(q) = q**(-alpha) - (alpha/beta) * q**(-beta),        alpha > beta > 0,

with its minimum U(1) = 1 - alpha/beta at q = 1 (equal to -1 for the standard
12-6 exponents).  A particle confined between a fixed wall and a wall at
distance 2 sees the cell potential

    W(q) = U(1 + q) + U(1 - q),       -1 < q < 1,

which is even in q and has its minimum W0 = 2*U(1) at the cell centre.  Two
closed-form approximations of W are provided: the quartic expansion around the
centre (low energy) and the single-wall hard-core form (high energy).

All evaluation functions accept scalars or numpy arrays.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import AmplitudeWarning, DomainError


@dataclass(frozen=True)
class PotentialSpec:
    """Pair-potential exponents plus the wall drive parameters.

    Attributes
    ----------
    alpha, beta : float
        Repulsive and attractive exponents, ``alpha > beta > 0``.
    amp : float
        Relative oscillation amplitude of the moving wall.  Must satisfy
        ``|amp| < 1``; values above 0.2 strain the first-order treatment and
        trigger an :class:`AmplitudeWarning`.
    omega1 : float
        Angular frequency of the wall oscillation (> 0).
    """

    alpha: float = 12.0
    beta: float = 6.0
    amp: float = 0.0
    omega1: float = 1.0

    def __post_init__(self):
        if not self.alpha > self.beta > 0.0:
            raise ValueError(f"need alpha > beta > 0, got alpha={self.alpha}, beta={self.beta}")
        if abs(self.amp) >= 1.0:
            raise ValueError(f"wall amplitude |amp| must be < 1, got {self.amp}")
        if self.omega1 <= 0.0:
            raise ValueError(f"drive frequency omega1 must be positive, got {self.omega1}")
        if abs(self.amp) > 0.2:
            warnings.warn(
                f"wall amplitude {self.amp} exceeds 0.2; first-order resonance "
                "formulas become unreliable",
                AmplitudeWarning,
                stacklevel=2,
            )


@dataclass(frozen=True)
class QuarticCoefficients:
    """Coefficients of the centre expansion W(q) ~ w0 + b*q**2 + c*q**4."""

    w0: float
    b: float
    c: float


def _rising(x: float, k: int) -> float:
    out = 1.0
    for i in range(k):
        out *= x + i
    return out


def lj(spec: PotentialSpec, q):
    """Pair potential U(q) for q > 0."""
    if np.any(np.asarray(q) <= 0.0):
        raise DomainError(f"pair potential needs q > 0, got {q}")
    return q ** (-spec.alpha) - (spec.alpha / spec.beta) * q ** (-spec.beta)


def lj_deriv(spec: PotentialSpec, q, order: int):
    """Analytic derivative U^(order)(q), order 1..4.

    Power laws differentiate in closed form; the coefficients are rising
    factorials of the exponents, so non-integer exponents are fine.
    """
    if order not in (1, 2, 3, 4):
        raise ValueError(f"derivative order must be 1..4, got {order}")
    if np.any(np.asarray(q) <= 0.0):
        raise DomainError(f"pair potential needs q > 0, got {q}")
    a, b = spec.alpha, spec.beta
    sign = -1.0 if order % 2 else 1.0
    return sign * (
        _rising(a, order) * q ** (-a - order)
        - (a / b) * _rising(b, order) * q ** (-b - order)
    )


def lj_diff(spec: PotentialSpec, s, d):
    """U(s + d) - U(s), evaluated without cancellation.

    Useful when ``d`` is many orders of magnitude below ``s``: the naive
    difference of two near-equal potential values loses all digits, while

        (s+d)**-a - s**-a = s**-a * expm1(-a * log1p(d/s))

    is exact to machine precision.  Requires s > 0 and s + d > 0.
    """
    s = np.asarray(s, dtype=float) if not np.isscalar(s) else s
    if np.any(np.asarray(s) <= 0.0) or np.any(np.asarray(s) + np.asarray(d) <= 0.0):
        raise DomainError("potential difference needs s > 0 and s + d > 0")
    ell = np.log1p(np.divide(d, s))
    a, b = spec.alpha, spec.beta
    return s ** (-a) * np.expm1(-a * ell) - (a / b) * s ** (-b) * np.expm1(-b * ell)


def wall_potential(spec: PotentialSpec, q):
    """Cell potential W(q) = U(1+q) + U(1-q) on -1 < q < 1."""
    if np.any(np.abs(np.asarray(q)) >= 1.0):
        raise DomainError(f"cell coordinate must satisfy |q| < 1, got {q}")
    return lj(spec, 1.0 + q) + lj(spec, 1.0 - q)


def wall_rise(spec: PotentialSpec, q):
    """W(q) - W(0), computed stably even for |q| far below 1.

    The direct subtraction of two wall_potential values is dominated by
    rounding once W(q) - W0 falls below ~1e-12; this form keeps full
    precision down to the well bottom.
    """
    if np.any(np.abs(np.asarray(q)) >= 1.0):
        raise DomainError(f"cell coordinate must satisfy |q| < 1, got {q}")
    return lj_diff(spec, 1.0, q) + lj_diff(spec, 1.0, -q)


def wall_deriv(spec: PotentialSpec, q, order: int):
    """Analytic derivative of the cell potential, order 1..4."""
    sign = -1.0 if order % 2 else 1.0
    if np.any(np.abs(np.asarray(q)) >= 1.0):
        raise DomainError(f"cell coordinate must satisfy |q| < 1, got {q}")
    return lj_deriv(spec, 1.0 + q, order) + sign * lj_deriv(spec, 1.0 - q, order)


def quartic_coefficients(spec: PotentialSpec) -> QuarticCoefficients:
    """Centre expansion of W: w0 = 2 U(1), b = U''(1), c = U''''(1)/12."""
    return QuarticCoefficients(
        w0=2.0 * lj(spec, 1.0),
        b=lj_deriv(spec, 1.0, 2),
        c=lj_deriv(spec, 1.0, 4) / 12.0,
    )


def hard_wall_potential(spec: PotentialSpec, q):
    """High-energy single-wall approximation (1 - q)**(-alpha) on 0 <= q < 1."""
    arr = np.asarray(q)
    if np.any(arr < 0.0) or np.any(arr >= 1.0):
        raise DomainError(f"hard-wall form needs 0 <= q < 1, got {q}")
    return (1.0 - q) ** (-spec.alpha)
