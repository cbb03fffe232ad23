"""Seeded random instances and the closed-form vs iteration campaign.

Generator algorithm (fixed, so reports replay across machines): a
``random.Random(seed)`` Mersenne Twister drives every draw, in this order
per instance:

1. five seeds, each ``Fraction(num, den)`` with ``num = choice([-9..-1, 1..9])``
   and ``den = randint(1, 9)``;
2. coefficient ``a``: ``period = randint(1, max_period)`` then ``period``
   values ``Fraction(randint(-9, 9), randint(1, 9))``; period 1 gives a
   constant spec, otherwise periodic;
3. coefficient ``b``: drawn the same way.

Inadmissible draws (forbidden conditions or a singular orbit within the
horizon) are discarded and the generator simply continues.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .closedform import GeneralSolution
from .errors import FormulaDenominatorZero
from .engine import iterate
from .model import CoefficientSpec, InitialConditions, Trajectory

NONZERO_NUMERATORS = [k for k in range(-9, 10) if k != 0]


@dataclass(frozen=True)
class Instance:
    ic: InitialConditions
    a: CoefficientSpec
    b: CoefficientSpec

    def to_json(self) -> dict:
        return {"initial": self.ic.to_json(), "a": self.a.to_json(), "b": self.b.to_json()}


def random_rational(rng: random.Random, nonzero: bool = False) -> Fraction:
    num = rng.choice(NONZERO_NUMERATORS) if nonzero else rng.randint(-9, 9)
    return Fraction(num, rng.randint(1, 9))


def random_spec(rng: random.Random, max_period: int = 4) -> CoefficientSpec:
    period = rng.randint(1, max_period)
    values = [random_rational(rng) for _ in range(period)]
    if period == 1:
        return CoefficientSpec.constant(values[0])
    return CoefficientSpec.periodic(values)


def random_ic(rng: random.Random) -> InitialConditions:
    return InitialConditions(tuple(random_rational(rng, nonzero=True) for _ in range(5)))


def random_instance(rng: random.Random, max_period: int = 4) -> Instance:
    ic = random_ic(rng)
    return Instance(ic, random_spec(rng, max_period), random_spec(rng, max_period))


def horizon_steps(max_n: int) -> int:
    """Iteration steps needed to reach x_{4 max_n + 3}."""
    return 4 * max_n + 3


def admissible(inst: Instance, max_n: int, solution: Optional[GeneralSolution] = None) -> Optional[Trajectory]:
    """The trajectory up to x_{4 max_n + 3} if the instance is admissible, else None.

    The closed forms are evaluated for n <= max_n + 1 so that every index up
    to 4 max_n + 3 is covered; forbidden conditions are checked to match.
    """
    if solution is None:
        solution = GeneralSolution(inst.ic, inst.a, inst.b)
    if solution.forbidden(max_n + 1):
        return None
    traj = iterate(inst.ic, inst.a, inst.b, horizon_steps(max_n))
    if traj.singularity is not None:
        return None
    return traj


def draw_admissible(rng: random.Random, max_n: int, max_period: int = 4, max_tries: int = 10_000):
    """Next admissible instance from ``rng``: (instance, trajectory, solution)."""
    for _ in range(max_tries):
        inst = random_instance(rng, max_period)
        solution = GeneralSolution(inst.ic, inst.a, inst.b)
        traj = admissible(inst, max_n, solution)
        if traj is not None:
            return inst, traj, solution
    raise RuntimeError(f"no admissible instance in {max_tries} draws")


def inject_fault(spec: CoefficientSpec) -> CoefficientSpec:
    """Self-test hook: perturb the first coefficient value by +1."""
    values = list(spec.values)
    values[0] += 1
    return CoefficientSpec(spec.kind, tuple(values))


@dataclass
class TrialOutcome:
    trial: int
    instance: Instance
    mismatches: list[tuple[int, Fraction, Fraction]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def compare_instance(inst: Instance, traj: Trajectory, max_n: int, *, fault: bool = False,
                     solution: Optional[GeneralSolution] = None):
    """Indices k in -3..4 max_n+3 where closed form and iteration differ.

    Entries are (k, iterated, closed_form); closed_form is None when the
    formula hit a vanishing denominator at that index.
    """
    if fault or solution is None:
        solution = GeneralSolution(inst.ic, inst.a, inject_fault(inst.b) if fault else inst.b)
    indices = range(-3, horizon_steps(max_n) + 1)
    try:
        table = solution.table(max_n + 1)
        values = {k: table[k] for k in indices}
    except FormulaDenominatorZero:
        values = {}
        for k in indices:
            try:
                values[k] = solution.at_index(k)
            except FormulaDenominatorZero:
                values[k] = None
    return [(k, traj.x(k), values[k]) for k in indices if values[k] != traj.x(k)]


def run_verify(trials: int, max_n: int, seed: int, *, fault: bool = False) -> list[TrialOutcome]:
    """One seeded campaign; outcomes are returned in trial order."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if max_n < 0:
        raise ValueError("max_n must be >= 0")
    rng = random.Random(seed)
    outcomes = []
    for trial in range(trials):
        inst, traj, solution = draw_admissible(rng, max_n)
        mismatches = compare_instance(inst, traj, max_n, fault=fault, solution=solution)
        outcomes.append(TrialOutcome(trial, inst, mismatches))
    return outcomes
