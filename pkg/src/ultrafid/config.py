"""Central tolerance configuration.

Every numeric threshold used by the evaluation, quadrature and inversion
machinery lives here so certificates are reproducible across runs.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    # absolute target for the adaptive quadrature oracle
    quad_target: float = 1e-12
    # residual |G(z) - w| accepted by the Newton corrector of the inverse
    inversion_residual: float = 1e-12
    # max Im phi allowed for a passing free-infinite-divisibility certificate
    certificate: float = 1e-9
    # |G'| below this aborts a continuation step (near-critical point)
    derivative_floor: float = 1e-8
    # Newton iterations per continuation step before the step is halved
    newton_budget: int = 5
    # initial continuation step as a fraction of the segment length
    initial_step_fraction: float = 1.0 / 64.0


DEFAULT = Tolerances()


class DomainError(ValueError):
    """Input outside the domain of an analytic operation (e.g. on a branch cut)."""


class ConvergenceError(RuntimeError):
    """An iterative scheme failed to reach its residual target."""


class PrecisionWarning(UserWarning):
    """A quadrature failed to reach its absolute error target."""
