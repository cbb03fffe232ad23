"""Scaling symmetries of the recurrence, checked as exact finite group actions.

The characteristics are Q(n, u_n) = beta_n u_n with
beta_n + beta_{n+1} + beta_{n+2} + beta_{n+3} = 0.  Integer period-4 exponent
patterns with zero sum are the real lattice of that solution space; the
corresponding finite transformation is u_m -> t**p[m mod 4] * u_m.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

from .engine import iterate
from .errors import DegenerateScale, IncomparableBeyond, NotASymmetry
from .model import CoefficientSpec, ExponentPattern, InitialConditions

# (-1)^n, Re(i^n), Im(i^n) restricted to one period
BASIS = (
    ExponentPattern((1, -1, 1, -1)),
    ExponentPattern((1, 0, -1, 0)),
    ExponentPattern((0, 1, 0, -1)),
)


def constraint_check(pattern: ExponentPattern) -> bool:
    return pattern.total == 0


def rotate(pattern: ExponentPattern, k: int = 1) -> ExponentPattern:
    p = pattern.p
    k %= 4
    return ExponentPattern(p[k:] + p[:k])


def basis_coordinates(pattern: ExponentPattern) -> Optional[tuple[Fraction, Fraction, Fraction]]:
    """Coordinates (c1, c2, c3) with pattern = sum c_i * BASIS[i].

    Returns None for a nonzero-sum pattern.  The coordinates are half-integers
    in general: the basis spans the zero-sum lattice only over (1/2)Z, e.g.
    (1, -1, 0, 0) = (BASIS[0] + BASIS[1] - BASIS[2]) / 2.
    """
    if not constraint_check(pattern):
        return None
    p0, p1, p2, p3 = pattern.p
    return Fraction(p0 + p2, 2), Fraction(p0 - p2, 2), Fraction(p1 - p3, 2)


def scale_ics(ic: InitialConditions, pattern: ExponentPattern, t) -> InitialConditions:
    """u_m -> t**p[m mod 4] * u_m for the five seeds (u_4 uses p_0)."""
    t = Fraction(t)
    if t == 0:
        raise DegenerateScale("group parameter t must be nonzero")
    return InitialConditions(tuple(t ** pattern.exponent(m) * u for m, u in enumerate(ic.u)))


@dataclass(frozen=True)
class InvarianceReport:
    pattern: ExponentPattern
    t: Fraction
    accepted: bool
    residuals: tuple[Fraction, ...]
    first_failure: Optional[int]

    @property
    def ok(self) -> bool:
        return self.first_failure is None

    @property
    def classification(self) -> str:
        return "accepted" if self.accepted else "NotASymmetry"


def verify_group_invariance(
    ic: InitialConditions,
    a: CoefficientSpec,
    b: CoefficientSpec,
    pattern: ExponentPattern,
    t,
    steps: int,
    *,
    fail_fast: bool = False,
) -> InvarianceReport:
    """Compare the iterate of scaled seeds with the scaled iterate.

    ``residuals[m]`` is hat(u)_m - t**p[m mod 4] u_m for every u-index m
    computed (m = 0..steps+4).  A pattern with nonzero sum is still run and
    then raises :class:`NotASymmetry` carrying the report.  With
    ``fail_fast`` the residual list stops at the first nonzero entry.
    """
    t = Fraction(t)
    scaled_ic = scale_ics(ic, pattern, t)
    accepted = constraint_check(pattern)
    original = iterate(ic, a, b, steps)
    scaled = iterate(scaled_ic, a, b, steps)

    u, uh = original.u_values, scaled.u_values
    common = min(len(u), len(uh))
    residuals = []
    first_failure = None
    for m in range(common):
        r = uh[m] - t ** pattern.exponent(m) * u[m]
        residuals.append(r)
        if r != 0 and first_failure is None:
            first_failure = m
            if fail_fast:
                break
    report = InvarianceReport(pattern, t, accepted, tuple(residuals), first_failure)

    if first_failure is None and (original.singularity or scaled.singularity):
        raise IncomparableBeyond(common)
    if not accepted:
        raise NotASymmetry(report)
    return report


def patterns_in_box(bound: int) -> Iterator[ExponentPattern]:
    """All integer patterns with |p_i| <= bound."""
    rng = range(-bound, bound + 1)
    for p in itertools.product(rng, repeat=4):
        yield ExponentPattern(p)
