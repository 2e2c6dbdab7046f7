"""Numerical action-angle machinery for the unperturbed cell Hamiltonian.

For H0 = p**2/2 + W(q) every bounded orbit is labelled by its right turning
point q0 (the amplitude), since W is even and increasing in |q|.  This module
computes, to quadrature accuracy,

    I(q0)     = (2/pi) * integral_0^q0 p(q0, q) dq          (action)
    omega(q0) = pi / (2 * integral_0^q0 dq / p(q0, q))      (frequency)
    phi(q, q0)                                              (angle)

with p(q0, q) = sqrt(2 (W(q0) - W(q))), plus the frequency derivative
d(omega)/dI needed by the resonance widths.  The angle convention is fixed
package-wide: phi = 0 at the right turning point q = q0 and increases with
time, so the descending half-orbit maps onto phi in [0, pi].
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.polynomial.chebyshev import Chebyshev
from scipy.optimize import brentq

from .errors import AccuracyWarning, DomainError
from .potentials import PotentialSpec, lj_diff, wall_deriv, wall_potential, wall_rise
from .specfun import integrate_sqrt_singular

_BRENTQ_RTOL = 8.881784197001252e-16  # 4 * eps, the tightest brentq accepts


@dataclass(frozen=True)
class OrbitRecord:
    """One unperturbed orbit.

    Attributes
    ----------
    q0 : float
        Amplitude (right turning point), 0 < q0 < 1.
    e : float
        Total energy, e = W(q0).
    h : float
        Energy above the well bottom, h = e - W(0), evaluated in a
        cancellation-free way (h stays accurate for tiny amplitudes).
    action, omega, domega_di : float
        Action I, frequency omega and the derivative d(omega)/dI.
    """

    q0: float
    e: float
    h: float
    action: float
    omega: float
    domega_di: float


def momentum_squared(spec: PotentialSpec, q0: float, gap):
    """p**2 at distance ``gap`` = q0 - |q| inside the orbit (gap >= 0).

    Formulated through stable potential differences so that the value stays
    fully accurate arbitrarily close to the turning point.
    """
    aq = q0 - gap
    return 2.0 * (lj_diff(spec, 1.0 + aq, gap) - lj_diff(spec, 1.0 - q0, gap))


def momentum(spec: PotentialSpec, q0: float, q):
    """|p| on the orbit of amplitude q0 at coordinate q, |q| <= q0."""
    aq = np.abs(q)
    if np.any(aq > q0 * (1.0 + 4.0 * 1e-16)):
        raise DomainError(f"coordinate {q} outside the orbit of amplitude {q0}")
    gap = np.maximum(q0 - aq, 0.0)
    return np.sqrt(np.maximum(momentum_squared(spec, q0, gap), 0.0))


def turning_points(spec: PotentialSpec, e: float) -> tuple[float, float]:
    """Turning points (-qr, qr) of the orbit with total energy e.

    Solves W(q) = e on (0, 1) by bracketed root finding on the stable
    residual W(q) - W0 - h, so the harmonic regime h -> 0 keeps full relative
    precision.
    """
    w0 = wall_potential(spec, 0.0)
    h = e - w0
    if h <= 0.0:
        raise DomainError(f"energy {e} is at or below the well bottom {w0}; no motion")
    hi = 0.5
    while wall_rise(spec, hi) < h:
        hi = 1.0 - (1.0 - hi) / 4.0
        if 1.0 - hi < 1e-14:
            break
    qr = brentq(lambda q: wall_rise(spec, q) - h, 0.0, hi, xtol=1e-15, rtol=_BRENTQ_RTOL)
    return -qr, qr


def _check_amplitude(q0: float):
    if not 0.0 < q0 < 1.0:
        raise DomainError(f"amplitude must satisfy 0 < q0 < 1, got {q0}")


def action(spec: PotentialSpec, q0: float, *, rel_tol: float = 1e-10) -> float:
    """Action I(q0) = (2/pi) * integral of p over [0, q0]."""
    _check_amplitude(q0)
    res = integrate_sqrt_singular(
        lambda q: momentum(spec, q0, q), 0.0, q0, singular_right=True, rel_tol=rel_tol
    )
    return (2.0 / np.pi) * res.value


def half_period_integral(spec: PotentialSpec, q0: float, *, rel_tol: float = 1e-10) -> float:
    """Quarter-period time integral tau = integral_0^q0 dq / p."""
    _check_amplitude(q0)
    res = integrate_sqrt_singular(
        lambda q: 1.0 / momentum(spec, q0, q), 0.0, q0, singular_right=True, rel_tol=rel_tol
    )
    return res.value


def frequency(spec: PotentialSpec, q0: float, *, rel_tol: float = 1e-10) -> float:
    """Orbit frequency omega(q0) = pi / (2 tau)."""
    return np.pi / (2.0 * half_period_integral(spec, q0, rel_tol=rel_tol))


def angle(spec: PotentialSpec, q0: float, q: float, *, rel_tol: float = 1e-10) -> float:
    """Angle of coordinate q on the descending half-orbit, in [0, pi].

    phi = omega * time since the right turning point; phi(q0) = 0 and
    phi(-q0) = pi.  The ascending half is the mirror 2*pi - phi.
    """
    _check_amplitude(q0)
    if abs(q) > q0 * (1.0 + 4.0 * 1e-16):
        raise DomainError(f"coordinate {q} outside the orbit of amplitude {q0}")
    if q >= q0:
        return 0.0
    if q <= -q0:
        return np.pi
    om = frequency(spec, q0, rel_tol=rel_tol)
    res = integrate_sqrt_singular(
        lambda x: 1.0 / momentum(spec, q0, x),
        q,
        q0,
        singular_left=True,
        singular_right=True,
        rel_tol=rel_tol,
    )
    return float(min(np.pi, max(0.0, om * res.value)))


def domega_de(spec: PotentialSpec, q0: float, *, rel_tol: float = 1e-10) -> float:
    """d(omega)/dE by centred differences in energy with one Richardson level.

    The step is h_E = max(1e-5 * H, 1e-7) clamped to stay inside the well;
    smaller steps would sit on the quadrature noise floor.  A poor Richardson
    error estimate triggers an :class:`AccuracyWarning`.
    """
    _check_amplitude(q0)
    e = wall_potential(spec, q0)
    bigh = wall_rise(spec, q0)

    step = max(1e-5 * bigh, 1e-7)
    clamped = step > 0.25 * bigh
    if clamped:
        step = 0.25 * bigh

    def om_at(energy):
        return frequency(spec, turning_points(spec, energy)[1], rel_tol=rel_tol)

    d1 = (om_at(e + step) - om_at(e - step)) / (2.0 * step)
    d2 = (om_at(e + 0.5 * step) - om_at(e - 0.5 * step)) / step
    richardson = (4.0 * d2 - d1) / 3.0
    err = abs(d2 - d1) / 3.0
    if clamped or (richardson != 0.0 and err > 1e-3 * abs(richardson)):
        warnings.warn(
            f"d(omega)/dE at q0={q0}: estimated relative accuracy "
            f"{err / max(abs(richardson), 1e-300):.2e}",
            AccuracyWarning,
            stacklevel=2,
        )
    return richardson


def domega_di(spec: PotentialSpec, q0: float, *, rel_tol: float = 1e-10) -> float:
    """d(omega)/dI = omega * d(omega)/dE, using dI/dE = 1/omega."""
    return frequency(spec, q0, rel_tol=rel_tol) * domega_de(spec, q0, rel_tol=rel_tol)


def orbit_record(spec: PotentialSpec, q0: float, *, rel_tol: float = 1e-10) -> OrbitRecord:
    """Bundle energy, action, frequency and d(omega)/dI for one amplitude."""
    _check_amplitude(q0)
    om = frequency(spec, q0, rel_tol=rel_tol)
    return OrbitRecord(
        q0=q0,
        e=wall_potential(spec, q0),
        h=wall_rise(spec, q0),
        action=action(spec, q0, rel_tol=rel_tol),
        omega=om,
        domega_di=om * domega_de(spec, q0, rel_tol=rel_tol),
    )


class AngleTable:
    """Smooth parameterisation of one orbit: q = q0 cos(theta), theta in [0, pi].

    The time density g(theta) = q0 sin(theta) / p(q0 cos(theta)) is analytic
    on [0, pi] (the turning-point square roots cancel against sin), so a
    Chebyshev fit converges geometrically.  Its antiderivative gives the
    angle phi(theta) = omega * integral_0^theta g, with phi(pi) = pi exactly
    by construction.  Used wherever phi(q) is needed many times per orbit.
    """

    def __init__(self, spec: PotentialSpec, q0: float, max_degree: int = 4096):
        _check_amplitude(q0)
        self.q0 = q0

        def g(theta):
            theta = np.asarray(theta, dtype=float)
            gap = np.where(
                theta <= np.pi / 2.0,
                2.0 * q0 * np.sin(0.5 * theta) ** 2,
                q0 * (1.0 + np.cos(theta)),
            )
            gap = np.clip(gap, 0.0, q0)
            p2 = momentum_squared(spec, q0, gap)
            # analytic limit of q0*sin/p at the endpoints
            wprime = wall_deriv(spec, q0, 1)
            lim = np.sqrt(q0 / wprime)
            with np.errstate(divide="ignore", invalid="ignore"):
                out = q0 * np.sin(theta) / np.sqrt(np.maximum(p2, 0.0))
            return np.where(p2 > 0.0, out, lim)

        deg = 64
        cheb = None
        while deg <= max_degree:
            cheb = Chebyshev.interpolate(g, deg, domain=[0.0, np.pi])
            scale = np.max(np.abs(cheb.coef))
            if np.max(np.abs(cheb.coef[-3:])) <= 1e-13 * scale:
                break
            deg *= 2
        self._g = cheb
        prim = cheb.integ()
        self._phi_raw = prim
        self._phi0 = prim(0.0)
        two_tau = prim(np.pi) - self._phi0
        self.omega = np.pi / two_tau

    def phi(self, q):
        """Angle phi(q) on the descending branch, vectorised."""
        x = np.clip(np.asarray(q, dtype=float) / self.q0, -1.0, 1.0)
        theta = np.arccos(x)
        return self.omega * (self._phi_raw(theta) - self._phi0)


@lru_cache(maxsize=32)
def angle_table(spec: PotentialSpec, q0: float) -> AngleTable:
    return AngleTable(spec, q0)
