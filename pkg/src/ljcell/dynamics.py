"""Direct integration of the driven cell and stroboscopic sections.

The full Hamiltonian is H = p**2/2 + U(q+1) + U(1 + eps(t) - q) with the
right wall oscillating as eps(t) = amp * cos(omega1 t + phase).  One step is
a Strang splitting (kick-drift-kick) with the wall position frozen at the
half-step time: second-order accurate for the driven system and symplectic
when the drive is off.  A step that runs into a wall is rejected and retried
at half the size, up to a fixed budget; the LJ core is steep but smooth, so
this is enough at the energies of interest.

Sections sample (q, p) once per drive period.  The step is an exact divisor
of the period and the clock is reconstructed as j * dt, so stroboscopic times
carry no accumulated phase error.  The chaos diagnostic is the spread of the
unperturbed action over the section, directly comparable to resonance widths.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .action_angle import action as orbit_action
from .action_angle import turning_points
from .errors import ConvergenceError, DomainError
from .potentials import PotentialSpec, wall_potential

_MAX_HALVINGS = 40


@dataclass(frozen=True)
class PhaseState:
    """Phase-space point of the driven system."""

    q: float
    p: float
    t: float


@dataclass(frozen=True)
class SectionPoint:
    """Stroboscopic sample number k, taken at t_k = k * (drive period)."""

    k: int
    t: float
    q: float
    p: float


@dataclass(frozen=True)
class Section:
    """A stroboscopic section; ``error`` is set if stepping failed early."""

    points: tuple[SectionPoint, ...]
    error: str | None = None


def wall_displacement(spec: PotentialSpec, t: float, *, phase: float = 0.0) -> float:
    """Instantaneous displacement eps(t) of the right wall."""
    return spec.amp * math.cos(spec.omega1 * t + phase)


def force(spec: PotentialSpec, q: float, t: float, *, phase: float = 0.0) -> float:
    """Force -dV/dq at coordinate q and time t."""
    eps = wall_displacement(spec, t, phase=phase)
    s_left = q + 1.0
    s_right = 1.0 + eps - q
    if s_left <= 0.0 or s_right <= 0.0:
        raise DomainError(f"coordinate {q} is at or beyond a wall at t={t}")
    a, b = spec.alpha, spec.beta
    # force = U'(s_right) - U'(s_left), inlined for the integrator hot loop
    return (
        a * (s_right ** (-b - 1.0) - s_right ** (-a - 1.0))
        - a * (s_left ** (-b - 1.0) - s_left ** (-a - 1.0))
    )


def _advance(spec: PotentialSpec, q: float, p: float, t: float, dt: float, phase: float):
    """One kick-drift-kick substep; raises DomainError on wall contact."""
    th = t + 0.5 * dt
    f1 = force(spec, q, th, phase=phase)
    p_half = p + 0.5 * dt * f1
    q_new = q + dt * p_half
    f2 = force(spec, q_new, th, phase=phase)  # also rejects a wall crossing
    return q_new, p_half + 0.5 * dt * f2


def step(spec: PotentialSpec, state: PhaseState, dt: float, *, phase: float = 0.0) -> PhaseState:
    """Advance one time step of size dt (dt < 0 integrates backwards).

    On wall contact the step is retried at half size (budget of 40 halvings)
    and the remainder completed in substeps.
    """
    if dt == 0.0:
        raise ValueError("dt must be nonzero")
    q, p, t = state.q, state.p, state.t
    remaining = dt
    sub = dt
    halvings = 0
    while remaining != 0.0:
        if abs(sub) > abs(remaining):
            sub = remaining
        try:
            q_new, p_new = _advance(spec, q, p, t, sub, phase)
        except DomainError as exc:
            halvings += 1
            if halvings > _MAX_HALVINGS:
                raise ConvergenceError(
                    f"step rejected {_MAX_HALVINGS} times near a wall at t={t}: {exc}"
                ) from exc
            sub *= 0.5
            continue
        q, p = q_new, p_new
        t += sub
        remaining = (state.t + dt) - t
    return PhaseState(q=q, p=p, t=state.t + dt)


def poincare_section(
    spec: PotentialSpec,
    initial: PhaseState,
    n_periods: int,
    *,
    steps_per_period: int = 1000,
    phase: float = 0.0,
) -> Section:
    """Sample (q, p) once per drive period for n_periods periods.

    ``steps_per_period`` must be at least 1000 so the splitting error stays
    well below the structures the section is meant to resolve.  Step failures
    truncate the section and annotate it instead of raising.
    """
    if n_periods < 1:
        raise ValueError(f"need n_periods >= 1, got {n_periods}")
    if steps_per_period < 1000:
        raise ValueError(f"steps_per_period must be >= 1000, got {steps_per_period}")
    m = int(steps_per_period)
    dt = (2.0 * math.pi / spec.omega1) / m
    q, p = initial.q, initial.p
    points = [SectionPoint(k=0, t=initial.t, q=q, p=p)]
    j = 0
    try:
        for k in range(1, n_periods + 1):
            for _ in range(m):
                # clock reconstructed from the step count: t_k is hit exactly
                q, p = _advance_with_retries(spec, q, p, initial.t + j * dt, dt, phase)
                j += 1
            points.append(SectionPoint(k=k, t=initial.t + j * dt, q=q, p=p))
    except (ConvergenceError, DomainError) as exc:
        return Section(points=tuple(points), error=str(exc))
    return Section(points=tuple(points), error=None)


def _advance_with_retries(spec, q, p, t, dt, phase):
    target = t + dt
    sub = dt
    halvings = 0
    while t != target:
        if abs(sub) > abs(target - t):
            sub = target - t
        try:
            q, p = _advance(spec, q, p, t, sub, phase)
        except DomainError as exc:
            halvings += 1
            if halvings > _MAX_HALVINGS:
                raise ConvergenceError(
                    f"step rejected {_MAX_HALVINGS} times near a wall at t={t}: {exc}"
                ) from exc
            sub *= 0.5
            continue
        t += sub
    return q, p


def action_spread(spec: PotentialSpec, section) -> float:
    """Max - min of the unperturbed action I over the section points.

    Each sample is mapped through E = p**2/2 + W(q) and the static-cell
    action; samples outside the static cell (possible when the wall is
    displaced outward) cannot be mapped and raise a DomainError.
    """
    points = section.points if isinstance(section, Section) else tuple(section)
    if not points:
        raise ValueError("empty section")
    w0 = wall_potential(spec, 0.0)
    values = []
    for pt in points:
        if abs(pt.q) >= 1.0:
            raise DomainError(
                f"section point q={pt.q} lies outside the static cell; the action "
                "diagnostic is undefined there (sample at a drive phase where the "
                "wall is not displaced outward)"
            )
        e = 0.5 * pt.p * pt.p + wall_potential(spec, pt.q)
        if e <= w0:
            values.append(0.0)
            continue
        q0 = turning_points(spec, e)[1]
        values.append(orbit_action(spec, q0))
    return max(values) - min(values)
