"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class RdeError(Exception):
    """Base class for all errors raised by rdelab."""


class RationalSyntaxError(RdeError, ValueError):
    """Text does not match the ``p`` / ``p/q`` rational grammar."""


class IndexBeyondExplicitData(RdeError, IndexError):
    """An explicit coefficient list was read past its end."""

    def __init__(self, n: int, length: int):
        super().__init__(f"coefficient index {n} beyond explicit data of length {length}")
        self.n = n
        self.length = length


class ValueUnavailable(RdeError, LookupError):
    """A requested value lies past a singularity or past the computed range."""

    def __init__(self, index: int, detail: str = ""):
        msg = f"value at index {index} is unavailable"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)
        self.index = index


class Singularity(RdeError, ArithmeticError):
    """Raised by a single recurrence step whose denominator vanishes."""

    def __init__(self, reason):
        super().__init__(f"singular step: {reason.value}")
        self.reason = reason


class ZeroProduct(RdeError, ZeroDivisionError):
    def __init__(self, n: int):
        super().__init__(f"u_n u_(n+1) u_(n+2) u_(n+3) vanishes at n={n}")
        self.n = n


class SeedZero(RdeError, ValueError):
    def __init__(self, index: int):
        super().__init__(f"initial value x_{index} is zero")
        self.index = index


class FormulaDenominatorZero(RdeError, ZeroDivisionError):
    """A product factor of a closed-form solution vanished.

    ``parity`` is ``"even"`` for factors built from x_{-4}x_{-3}x_{-2}x_{-1}
    and ``"odd"`` for those built from x_{-3}x_{-2}x_{-1}x_0; ``s`` and
    ``side`` locate the factor as ``2s + 1 + side`` summands.
    """

    def __init__(self, s: int, j: int, parity: str, side: int):
        super().__init__(
            f"closed-form factor vanished: parity={parity} s={s} side={side} (residue class j={j})"
        )
        self.s = s
        self.j = j
        self.parity = parity
        self.side = side


class ConditionViolated(RdeError, ValueError):
    def __init__(self, description: str):
        super().__init__(description)
        self.description = description


class DegenerateScale(RdeError, ValueError):
    pass


class IncomparableBeyond(RdeError):
    def __init__(self, index: int):
        super().__init__(f"trajectories cannot be compared beyond u-index {index}")
        self.index = index


class NotASymmetry(RdeError):
    """The pattern fails the zero window-sum constraint; carries the run report."""

    def __init__(self, report):
        super().__init__(
            f"pattern {report.pattern} is not a symmetry"
            + (f"; first nonzero residual at u-index {report.first_failure}"
               if report.first_failure is not None else "")
        )
        self.report = report
