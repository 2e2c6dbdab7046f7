"""Fourier coefficients of the wall perturbation over the orbit angle.

The oscillating wall couples through U'(1 - q); expanded over the angle of
the unperturbed orbit,

    H_n = (1/pi) * integral_0^{2pi} U'(1 - q(phi)) cos(n phi) dphi.

With the package angle convention (phi = 0 at q = q0) the orbit q(phi) is
even in phi, so the sine coefficients vanish identically and the full range
folds onto the descending half.  The phi integral is traded for a coordinate
integral (dphi = omega dq / p), whose turning-point singularity is handled by
the regularising substitution in ``integrate_sqrt_singular``; the angle
phi(q) inside the integrand comes from a per-orbit Chebyshev table.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .action_angle import angle_table, momentum
from .potentials import PotentialSpec, lj_deriv
from .specfun import integrate_sqrt_singular

MAX_HARMONIC = 16


@dataclass(frozen=True)
class FourierCoefficient:
    """One coefficient H_n, tagged with the amplitude it was computed at."""

    n: int
    value: float
    q0: float


def fourier_coeff(
    spec: PotentialSpec, q0: float, n: int, *, rel_tol: float = 1e-10
) -> FourierCoefficient:
    """Coefficient H_n of U'(1 - q) over the orbit of amplitude q0.

    Refuses n > 16: the integrand then oscillates too fast for the default
    budget to guarantee relative accuracy, and nothing downstream needs it.
    """
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise ValueError(f"harmonic index must be a positive integer, got {n}")
    if n > MAX_HARMONIC:
        raise ValueError(
            f"harmonic n={n} exceeds {MAX_HARMONIC}: oscillatory quadrature would "
            "lose relative accuracy"
        )
    table = angle_table(spec, q0)
    om = table.omega

    def integrand(q):
        return lj_deriv(spec, 1.0 - q, 1) * np.cos(n * table.phi(q)) / momentum(spec, q0, q)

    # absolute floor keyed to the integrand magnitude: keeps the adaptive pass
    # from chasing pure roundoff when the coefficient is strongly cancelled
    probe = np.max(np.abs([integrand(x) for x in np.linspace(-0.75 * q0, 0.75 * q0, 7)]))
    floor = 1e-13 * probe * 2.0 * q0

    res = integrate_sqrt_singular(
        integrand,
        -q0,
        q0,
        singular_left=True,
        singular_right=True,
        rel_tol=rel_tol,
        abs_tol=floor,
    )
    return FourierCoefficient(n=int(n), value=(2.0 * om / np.pi) * res.value, q0=q0)
