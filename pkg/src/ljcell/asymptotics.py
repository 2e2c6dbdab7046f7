"""Closed-form small-energy and high-energy approximations.

Small energy: the quartic model W0 + b q**2 + c q**4 has turning points

    T1^2 = (-b + sqrt(b^2 + 4 c H)) / (2c),   A^2 = (b + sqrt(b^2 + 4 c H)) / (2c),

and its exact period is an elliptic integral,

    T/2 = sqrt(2/c) * K(k) / sqrt(T1^2 + A^2),   k^2 = T1^2 / (T1^2 + A^2),

from which omega = sqrt(2b) (1 + 3cH/(4b^2) + ...) and
d(omega)/dE -> 3c / (2 sqrt(2) b^(3/2)).  The closed overlap forms

    |K_21| ~ (1/omega1) sqrt( amp/2 * sqrt(H U''(1)) * U''''(1) / (8 U''(1)) )
    |K_32| ~ (3/omega1) sqrt( amp/2 * H * U'''(1) U''''(1) / (32 U''(1)^2) )

take H at the lower-harmonic resonance and, at leading order,
omega1 = n sqrt(2b).

High energy: the single-wall form (1-q)**(-alpha) gives the turning point
Q1 = 1 - E**(-1/alpha), an action J over [0, Q1], and defect scalings

    I - J      ~ E**-(1/2 + (1-beta)/alpha)
    omega - Omega ~ E**-(3/2 + (1-beta)/alpha)        (one power of E steeper
    d/dE defect  ~ E**-(5/2 + (1-beta)/alpha)          per derivative)
    phase defect ~ E**-(1 + (1-beta)/alpha)

valid when alpha > 2(beta - 1).  The corresponding Fourier-coefficient and
overlap plateau formulas are

    H_n ~ -E (-1)**n / 2 * (1 + 2**-alpha),
    K_{n,n-1} = sqrt(amp/2 * (1 + 2**-alpha)) * (n - 1/2).

Note: the exact pipeline disagrees with the last two closed forms by a factor
that does not vanish at high energy (about 4 in |H_n|, hence about 2 in K);
see the acceptance suite.  They are kept exactly as stated so the discrepancy
is measurable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .action_angle import action as exact_action
from .action_angle import angle, domega_de, frequency, turning_points
from .errors import OutOfRegimeError
from .potentials import PotentialSpec, lj_deriv, quartic_coefficients
from .specfun import complete_elliptic_k, integrate_sqrt_singular


@dataclass(frozen=True)
class SmallEnergyAsymptote:
    """Quartic-model orbit data at energy h above the well bottom."""

    h: float
    t1: float
    a2: float
    k: float
    period: float
    omega: float
    domega_de: float


@dataclass(frozen=True)
class HighEnergyAsymptote:
    """Single-wall orbit data at total energy e."""

    e: float
    q1_big: float
    j_big: float
    omega_big: float
    hn_limit: float  # |H_n| / E limit; the sign alternates as (-1)**(n+1)


def small_e_asymptote(spec: PotentialSpec, h: float) -> SmallEnergyAsymptote:
    """Quartic-model period, frequency and leading d(omega)/dE at energy h."""
    if h <= 0.0:
        raise ValueError(f"need h > 0, got {h}")
    qc = quartic_coefficients(spec)
    b, c = qc.b, qc.c
    disc = math.sqrt(b * b + 4.0 * c * h)
    t1_sq = (-b + disc) / (2.0 * c)
    a_sq = (b + disc) / (2.0 * c)
    k = math.sqrt(t1_sq / (t1_sq + a_sq))
    period = 2.0 * math.sqrt(2.0 / c) * complete_elliptic_k(k) / math.sqrt(t1_sq + a_sq)
    return SmallEnergyAsymptote(
        h=h,
        t1=math.sqrt(t1_sq),
        a2=a_sq,
        k=k,
        period=period,
        omega=2.0 * math.pi / period,
        domega_de=3.0 * c / (2.0 * math.sqrt(2.0) * b**1.5),
    )


def printed_domega_de_variant(spec: PotentialSpec) -> float:
    """The alternative d(omega)/dE coefficient 3c/sqrt(2b).

    Twice-differentiating the closed period instead gives
    3c/(2 sqrt(2) b^(3/2)), which the numerical frequency derivative
    confirms; this variant is exposed only so outputs can label both.
    """
    qc = quartic_coefficients(spec)
    return 3.0 * qc.c / math.sqrt(2.0 * qc.b)


def _leading_omega1(spec: PotentialSpec, n: int) -> float:
    return n * math.sqrt(2.0 * lj_deriv(spec, 1.0, 2))


def k21_small(spec: PotentialSpec, h: float, omega1: float | None = None) -> float:
    """Small-energy overlap estimate |K_21|.

    ``h`` is the energy above the well bottom of the lower-harmonic (n=1)
    resonance.  ``omega1`` defaults to the leading-order drive 2*sqrt(2b).
    """
    if h <= 0.0:
        raise ValueError(f"need h > 0, got {h}")
    u2 = lj_deriv(spec, 1.0, 2)
    u4 = lj_deriv(spec, 1.0, 4)
    om1 = _leading_omega1(spec, 2) if omega1 is None else omega1
    return (1.0 / om1) * math.sqrt(abs(0.5 * spec.amp * math.sqrt(h * u2) * u4 / (8.0 * u2)))


def k32_small(spec: PotentialSpec, h: float, omega1: float | None = None) -> float:
    """Small-energy overlap estimate |K_32|; h at the n=2 resonance."""
    if h <= 0.0:
        raise ValueError(f"need h > 0, got {h}")
    u2 = lj_deriv(spec, 1.0, 2)
    u3 = lj_deriv(spec, 1.0, 3)
    u4 = lj_deriv(spec, 1.0, 4)
    om1 = _leading_omega1(spec, 3) if omega1 is None else omega1
    return (3.0 / om1) * math.sqrt(abs(0.5 * spec.amp * h * (u3 / (32.0 * u2)) * (u4 / u2)))


_HIGH_E_GATE = 1e2


def _hard_wall_momentum(spec: PotentialSpec, e: float, q1: float, q):
    # e - (1-q)**-alpha without cancellation near the turning point:
    # the ratio form keeps full precision for q -> q1.
    gap = np.maximum(q1 - q, 0.0)
    val = -e * np.expm1(-spec.alpha * np.log1p(gap / (1.0 - q1)))
    return np.sqrt(np.maximum(2.0 * val, 0.0))


def _j_big(spec: PotentialSpec, e: float, *, rel_tol: float = 1e-10) -> tuple[float, float]:
    q1 = 1.0 - e ** (-1.0 / spec.alpha)
    res = integrate_sqrt_singular(
        lambda q: _hard_wall_momentum(spec, e, q1, q),
        0.0,
        q1,
        singular_right=True,
        rel_tol=rel_tol,
    )
    return (2.0 / math.pi) * res.value, q1


def high_e_action(spec: PotentialSpec, e: float, *, rel_tol: float = 1e-10) -> HighEnergyAsymptote:
    """Single-wall action J(e), turning point Q1 and frequency dE/dJ.

    The allowed region of the single-wall potential is [0, Q1] with
    Q1 = 1 - e**(-1/alpha); J is the usual (2/pi) momentum integral over it
    and Omega comes from a centred difference of J in energy.
    """
    if e <= _HIGH_E_GATE:
        raise OutOfRegimeError(
            f"high-energy form needs e > {_HIGH_E_GATE:g}, got {e}; below this the "
            "single-wall potential misrepresents the cell"
        )
    j, q1 = _j_big(spec, e, rel_tol=rel_tol)
    de = 1e-5 * e
    jp, _ = _j_big(spec, e + de, rel_tol=rel_tol)
    jm, _ = _j_big(spec, e - de, rel_tol=rel_tol)
    omega_big = 2.0 * de / (jp - jm)
    return HighEnergyAsymptote(
        e=e,
        q1_big=q1,
        j_big=j,
        omega_big=omega_big,
        hn_limit=0.5 * (1.0 + 2.0 ** (-spec.alpha)),
    )


def hn_high(spec: PotentialSpec, e: float, n: int) -> float:
    """Closed-form high-energy Fourier coefficient -e (-1)**n (1 + 2**-alpha)/2."""
    if e <= _HIGH_E_GATE:
        raise OutOfRegimeError(f"high-energy form needs e > {_HIGH_E_GATE:g}, got {e}")
    return -e * (-1.0) ** n * 0.5 * (1.0 + 2.0 ** (-spec.alpha))


def k_high(spec: PotentialSpec, n: int) -> float:
    """High-energy overlap plateau sqrt(amp/2 (1 + 2**-alpha)) * (n - 1/2)."""
    if n < 2:
        raise ValueError(f"overlap needs n >= 2, got {n}")
    return math.sqrt(abs(spec.amp) / 2.0 * (1.0 + 2.0 ** (-spec.alpha))) * (n - 0.5)


@dataclass(frozen=True)
class ScalingRow:
    """Measured high-energy defects at one energy, raw and rescaled."""

    e: float
    action_defect: float
    freq_defect: float
    dfreq_defect: float
    phase_defect: float
    scaled_action: float
    scaled_freq: float
    scaled_dfreq: float
    scaled_phase: float


@dataclass(frozen=True)
class ScalingReport:
    """Defect table over an energy grid plus boundedness flags.

    ``powers`` records the exponent applied to each defect column; a column
    is flagged bounded when max/min of its rescaled values stays below 3.
    """

    rows: tuple[ScalingRow, ...]
    powers: dict
    bounded: dict


def high_e_scaling_report(spec: PotentialSpec, e_grid, *, rel_tol: float = 1e-10) -> ScalingReport:
    """Measure exact-vs-single-wall defects over an energy grid.

    Requires alpha > 2*(beta - 1); otherwise the action defect does not decay
    and the rescaled columns are meaningless.
    """
    if not spec.alpha > 2.0 * (spec.beta - 1.0):
        raise ValueError(
            f"scaling report needs alpha > 2(beta - 1); got alpha={spec.alpha}, "
            f"beta={spec.beta}"
        )
    shift = (1.0 - spec.beta) / spec.alpha
    powers = {
        "action": 0.5 + shift,
        "freq": 1.5 + shift,
        "dfreq": 2.5 + shift,
        "phase": 1.0 + shift,
    }
    rows = []
    for e in sorted(float(x) for x in e_grid):
        if e <= _HIGH_E_GATE:
            raise OutOfRegimeError(f"scaling grid must stay above e = {_HIGH_E_GATE:g}")
        q1 = turning_points(spec, e)[1]
        om = frequency(spec, q1, rel_tol=rel_tol)
        dom_de = domega_de(spec, q1, rel_tol=rel_tol)
        i_exact = exact_action(spec, q1, rel_tol=rel_tol)

        big = high_e_action(spec, e, rel_tol=rel_tol)
        de = 1e-3 * e
        om_p = high_e_action(spec, e + de, rel_tol=rel_tol).omega_big
        om_m = high_e_action(spec, e - de, rel_tol=rel_tol).omega_big
        dom_big_de = (om_p - om_m) / (2.0 * de)

        # max angle mismatch over the shared part of the orbit
        q_hi = 0.98 * min(q1, big.q1_big)
        phase_defect = 0.0
        for q in np.linspace(0.0, q_hi, 9):
            t_big = integrate_sqrt_singular(
                lambda x: 1.0 / _hard_wall_momentum(spec, e, big.q1_big, x),
                q,
                big.q1_big,
                singular_left=True,
                singular_right=True,
                rel_tol=rel_tol,
            ).value
            diff = abs(angle(spec, q1, q, rel_tol=rel_tol) - big.omega_big * t_big)
            phase_defect = max(phase_defect, diff)

        rows.append(
            ScalingRow(
                e=e,
                action_defect=i_exact - big.j_big,
                freq_defect=om - big.omega_big,
                dfreq_defect=dom_de - dom_big_de,
                phase_defect=phase_defect,
                scaled_action=(i_exact - big.j_big) * e ** powers["action"],
                scaled_freq=(om - big.omega_big) * e ** powers["freq"],
                scaled_dfreq=(dom_de - dom_big_de) * e ** powers["dfreq"],
                scaled_phase=phase_defect * e ** powers["phase"],
            )
        )

    def flag(vals):
        lo, hi = min(abs(v) for v in vals), max(abs(v) for v in vals)
        return bool(hi <= 3.0 * lo) if lo > 0.0 else False

    bounded = {
        "action": flag([r.scaled_action for r in rows]),
        "freq": flag([r.scaled_freq for r in rows]),
        "dfreq": flag([r.scaled_dfreq for r in rows]),
        "phase": flag([r.scaled_phase for r in rows]),
    }
    return ScalingReport(rows=tuple(rows), powers=powers, bounded=bounded)
