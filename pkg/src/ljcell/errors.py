"""Exception and warning types shared across the package."""


class DomainError(ValueError):
    """Argument outside the physically meaningful domain (wall contact, forbidden region)."""


class NoResonanceError(RuntimeError):
    """The requested harmonic has no resonant orbit for the given drive frequency."""

    def __init__(self, n, target, floor):
        self.n = n
        self.target = target
        self.floor = floor
        super().__init__(
            f"harmonic n={n}: required orbit frequency {target:.6g} does not exceed "
            f"the well-bottom frequency {floor:.6g}"
        )


class ConvergenceError(RuntimeError):
    """A numerical procedure exhausted its budget.  ``best`` holds the last estimate."""

    def __init__(self, message, best=None):
        self.best = best
        super().__init__(message)


class OutOfRegimeError(ValueError):
    """An asymptotic formula was requested outside its validity regime."""


class AccuracyWarning(UserWarning):
    """Result returned, but its accuracy estimate is worse than the usual target."""


class AmplitudeWarning(UserWarning):
    """Perturbation amplitude is large enough to strain the first-order expansion."""
