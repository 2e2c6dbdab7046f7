"""Resonance location, widths, and the Chirikov overlap function.

An orbit is resonant with the wall drive when n * omega(I_n) = omega1.  Near
such an orbit the motion reduces to a pendulum whose separatrix spans the
frequency width

    delta_omega = sqrt( |amp * H_n * domega/dI| / 2 ),

and neighbouring resonances n, n-1 overlap when

    K_{n,n-1} = (delta_omega(I_n) + delta_omega(I_{n-1})) / |omega(I_n) - omega(I_{n-1})|

reaches order one.  The product under the square root can be negative (H_2 is
negative here); widths are reported as |.|**0.5 >= 0.  The overlap threshold
K >= 1 is only ever reported as a flag, never used as a branch.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

from scipy.optimize import brentq

from .action_angle import OrbitRecord, frequency, orbit_record
from .errors import ConvergenceError, DomainError, NoResonanceError
from .fourier import fourier_coeff
from .potentials import PotentialSpec, lj_deriv

_BRENTQ_RTOL = 8.881784197001252e-16


@dataclass(frozen=True)
class ResonanceInfo:
    """A resonant orbit for harmonic n: n * omega(q0n) = omega1."""

    n: int
    q0n: float
    orbit: OrbitRecord
    hn: float
    delta_omega: float


@dataclass(frozen=True)
class OverlapResult:
    """Overlap of the (n, n-1) resonance pair."""

    n: int
    k_value: float
    width_sum: float
    spacing: float
    res_n: ResonanceInfo
    res_nm1: ResonanceInfo


def well_bottom_frequency(spec: PotentialSpec) -> float:
    """Small-oscillation frequency sqrt(2 U''(1)) at the cell centre."""
    return math.sqrt(2.0 * lj_deriv(spec, 1.0, 2))


def find_resonance(spec: PotentialSpec, n: int, *, rel_tol: float = 1e-10) -> ResonanceInfo:
    """Locate the orbit with n * omega(q0) = omega1 by bracketed root finding.

    The attainable frequencies are (sqrt(2 U''(1)), inf), so omega1/n at or
    below the well-bottom frequency has no resonant orbit.
    """
    if n < 1:
        raise ValueError(f"harmonic index must be >= 1, got {n}")
    target = spec.omega1 / n
    floor = well_bottom_frequency(spec)
    if target <= floor * (1.0 + 1e-12):
        raise NoResonanceError(n, target, floor)

    lo = 1e-9
    if frequency(spec, lo, rel_tol=rel_tol) >= target:
        raise NoResonanceError(n, target, floor)
    hi = 0.5
    while frequency(spec, hi, rel_tol=rel_tol) < target:
        hi = 1.0 - (1.0 - hi) / 4.0
        if 1.0 - hi < 1e-12:
            break
    q0n = brentq(
        lambda q0: frequency(spec, q0, rel_tol=rel_tol) - target,
        lo,
        hi,
        xtol=1e-15,
        rtol=_BRENTQ_RTOL,
    )
    orbit = orbit_record(spec, q0n, rel_tol=rel_tol)
    hn = fourier_coeff(spec, q0n, n, rel_tol=rel_tol).value
    width = math.sqrt(0.5 * abs(spec.amp * hn * orbit.domega_di))
    return ResonanceInfo(n=n, q0n=q0n, orbit=orbit, hn=hn, delta_omega=width)


def resonance_width(spec: PotentialSpec, info: ResonanceInfo) -> float:
    """Pendulum separatrix width sqrt(|amp * H_n * domega/dI| / 2)."""
    return math.sqrt(0.5 * abs(spec.amp * info.hn * info.orbit.domega_di))


def overlap_k(spec: PotentialSpec, n: int, *, rel_tol: float = 1e-10) -> OverlapResult:
    """Overlap function K_{n,n-1} for the resonance pair (n, n-1)."""
    if n < 2:
        raise ValueError(f"overlap needs n >= 2, got {n}")
    res_n = find_resonance(spec, n, rel_tol=rel_tol)
    res_nm1 = find_resonance(spec, n - 1, rel_tol=rel_tol)
    width_sum = res_n.delta_omega + res_nm1.delta_omega
    spacing = abs(res_n.orbit.omega - res_nm1.orbit.omega)
    return OverlapResult(
        n=n,
        k_value=width_sum / spacing,
        width_sum=width_sum,
        spacing=spacing,
        res_n=res_n,
        res_nm1=res_nm1,
    )


@dataclass(frozen=True)
class SweepPoint:
    """One grid point of an overlap sweep; ``error`` is set if it failed."""

    q0: float
    k_value: float
    omega1: float
    overlap: OverlapResult | None
    error: str | None


def _sweep_one(args) -> SweepPoint:
    spec, n, q0, rel_tol = args
    try:
        om1 = n * frequency(spec, q0, rel_tol=rel_tol)
        point_spec = replace(spec, omega1=om1)
        result = overlap_k(point_spec, n, rel_tol=rel_tol)
        return SweepPoint(q0=q0, k_value=result.k_value, omega1=om1, overlap=result, error=None)
    except (NoResonanceError, ConvergenceError, DomainError, ValueError) as exc:
        return SweepPoint(
            q0=q0, k_value=float("nan"), omega1=float("nan"), overlap=None, error=str(exc)
        )


def sweep_k(
    spec: PotentialSpec,
    n: int,
    q0_grid,
    *,
    rel_tol: float = 1e-10,
    workers: int = 1,
) -> list[SweepPoint]:
    """Overlap curve K_{n,n-1} over a grid of amplitudes.

    Each grid amplitude pins the n-th resonance: omega1 := n * omega(q0), so
    the point's drive frequency is implied by its abscissa.  Per-point errors
    are collected in the returned records and the sweep continues.  Points are
    independent; ``workers`` > 1 evaluates them in separate processes with
    the output order fixed by the grid.
    """
    grid = [float(q0) for q0 in q0_grid]
    if any(not 0.0 < q0 < 1.0 for q0 in grid):
        raise ValueError("sweep grid must lie strictly inside (0, 1)")
    jobs = [(spec, n, q0, rel_tol) for q0 in grid]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_sweep_one, jobs))
    return [_sweep_one(job) for job in jobs]
