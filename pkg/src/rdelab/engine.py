"""Forward iteration of the recurrence with exact singularity detection."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import Singularity
from .model import (
    CoefficientSpec,
    InitialConditions,
    SingularityReason,
    SingularityRecord,
    Trajectory,
    coeff_at,
)


def bracket(window: Sequence[Fraction], a_n: Fraction, b_n: Fraction) -> Fraction:
    """a_n + b_n x_{n-1} x_{n-2} x_{n-3} x_{n-4} for window = (x_{n-4}, ..., x_n)."""
    return a_n + b_n * window[0] * window[1] * window[2] * window[3]


def step(window: Sequence[Fraction], a_n: Fraction, b_n: Fraction) -> Fraction:
    """One application of the recurrence.

    ``window`` is (x_{n-4}, x_{n-3}, x_{n-2}, x_{n-1}, x_n); the result is x_{n+1}.
    Raises :class:`Singularity` when x_n or the bracket vanishes.
    """
    if len(window) != 5:
        raise ValueError("step needs exactly five consecutive values")
    x_n = window[4]
    if x_n == 0:
        raise Singularity(SingularityReason.ZERO_XN)
    br = bracket(window, a_n, b_n)
    if br == 0:
        raise Singularity(SingularityReason.ZERO_BRACKET)
    return window[1] * window[0] / (x_n * br)


def iterate(ic: InitialConditions, a: CoefficientSpec, b: CoefficientSpec, steps: int) -> Trajectory:
    """Compute x_{-4}, ..., x_steps, stopping early at the first singular step.

    A failing step n records the singularity at index n + 1, the value it
    could not produce.  Reading an explicit coefficient list past its end
    propagates :class:`IndexBeyondExplicitData`.
    """
    if steps < 1:
        raise ValueError(f"steps must be positive, got {steps}")
    values = list(ic.x)
    for n in range(steps):
        a_n = coeff_at(a, n)
        b_n = coeff_at(b, n)
        try:
            values.append(step(values[-5:], a_n, b_n))
        except Singularity as exc:
            return Trajectory(tuple(values), SingularityRecord(n + 1, exc.reason))
    return Trajectory(tuple(values))


def resubstitution_residual(traj: Trajectory, a: CoefficientSpec, b: CoefficientSpec, n: int) -> Fraction:
    """x_{n+1} x_n (a_n + b_n x_{n-1}...x_{n-4}) - x_{n-3} x_{n-4}; zero on genuine data."""
    w = [traj.x(k) for k in range(n - 4, n + 2)]
    return w[5] * w[4] * bracket(w[:5], coeff_at(a, n), coeff_at(b, n)) - w[1] * w[0]
