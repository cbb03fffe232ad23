"""Domain types and the index conventions of the recurrence.

The recurrence is

    x_{n+1} = x_{n-3} x_{n-4} / (x_n (a_n + b_n x_{n-1} x_{n-2} x_{n-3} x_{n-4})),   n = 0, 1, ...

and its forward (u-indexed) form is obtained with u_m = x_{m-4}, so that
A_n = a_n and B_n = b_n.  All scalars are :class:`fractions.Fraction`.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Union

from .errors import IndexBeyondExplicitData, RationalSyntaxError, ValueUnavailable

Rational = Fraction
RationalLike = Union[Fraction, int, str]

_RATIONAL_RE = re.compile(r"^(-?)(\d+)(?:/(\d+))?$")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p"`` or ``"p/q"`` (optional leading minus, q > 0)."""
    if not isinstance(text, str):
        raise RationalSyntaxError(f"expected rational text, got {type(text).__name__}")
    m = _RATIONAL_RE.match(text.strip())
    if m is None:
        raise RationalSyntaxError(f"not a rational: {text!r}")
    sign, num, den = m.groups()
    q = int(den) if den is not None else 1
    if q == 0:
        raise RationalSyntaxError(f"zero denominator: {text!r}")
    value = Fraction(int(num), q)
    return -value if sign else value


def format_rational(value: Fraction) -> str:
    """Canonical text form, e.g. ``-3/8`` or ``5``."""
    return str(Fraction(value))


def to_rational(value: RationalLike) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


class CoeffKind(str, enum.Enum):
    CONSTANT = "constant"
    PERIODIC = "periodic"
    EXPLICIT = "explicit"


@dataclass(frozen=True)
class CoefficientSpec:
    """A coefficient sequence a_n or b_n.

    ``constant`` holds one value, ``periodic`` one value per residue class of
    the period, ``explicit`` a finite prefix that may not be read past its end.
    """

    kind: CoeffKind
    values: tuple[Fraction, ...]

    def __post_init__(self):
        kind = CoeffKind(self.kind)
        values = tuple(to_rational(v) for v in self.values)
        if not values:
            raise ValueError("coefficient spec needs at least one value")
        if kind is CoeffKind.CONSTANT and len(values) != 1:
            raise ValueError("constant coefficient spec takes exactly one value")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "values", values)

    @classmethod
    def constant(cls, value: RationalLike) -> "CoefficientSpec":
        return cls(CoeffKind.CONSTANT, (value,))

    @classmethod
    def periodic(cls, values: Iterable[RationalLike]) -> "CoefficientSpec":
        return cls(CoeffKind.PERIODIC, tuple(values))

    @classmethod
    def explicit(cls, values: Iterable[RationalLike]) -> "CoefficientSpec":
        return cls(CoeffKind.EXPLICIT, tuple(values))

    @property
    def period(self) -> Optional[int]:
        """Smallest declared period, or None for explicit data."""
        if self.kind is CoeffKind.CONSTANT:
            return 1
        if self.kind is CoeffKind.PERIODIC:
            return len(self.values)
        return None

    def __getitem__(self, n: int) -> Fraction:
        return coeff_at(self, n)

    def as_periodic_values(self, period: int) -> Optional[tuple[Fraction, ...]]:
        """Values over one cycle of length ``period`` if this spec is periodic with it."""
        own = self.period
        if own is None or period % own:
            return None
        return tuple(self.values[i % own] for i in range(period))

    def to_json(self) -> dict:
        return {"kind": self.kind.value, "values": [format_rational(v) for v in self.values]}

    @classmethod
    def from_json(cls, data) -> "CoefficientSpec":
        if isinstance(data, str):
            return cls.constant(parse_rational(data))
        if not isinstance(data, dict):
            raise ValueError("coefficient spec must be an object or a rational string")
        try:
            kind = CoeffKind(data["kind"])
        except KeyError:
            raise ValueError("coefficient spec is missing 'kind'") from None
        values = data.get("values")
        if not isinstance(values, list) or not all(isinstance(v, str) for v in values):
            raise ValueError("coefficient 'values' must be a list of rational strings")
        return cls(kind, tuple(parse_rational(v) for v in values))


def coeff_at(spec: CoefficientSpec, n: int) -> Fraction:
    if n < 0:
        raise ValueError(f"coefficient index must be nonnegative, got {n}")
    if spec.kind is CoeffKind.CONSTANT:
        return spec.values[0]
    if spec.kind is CoeffKind.PERIODIC:
        return spec.values[n % len(spec.values)]
    if n >= len(spec.values):
        raise IndexBeyondExplicitData(n, len(spec.values))
    return spec.values[n]


@dataclass(frozen=True)
class InitialConditions:
    """The seeds x_{-4}, ..., x_0 (equivalently u_0, ..., u_4)."""

    x: tuple[Fraction, Fraction, Fraction, Fraction, Fraction]

    def __post_init__(self):
        values = tuple(to_rational(v) for v in self.x)
        if len(values) != 5:
            raise ValueError(f"exactly five initial values are required, got {len(values)}")
        object.__setattr__(self, "x", values)

    @classmethod
    def of(cls, *values: RationalLike) -> "InitialConditions":
        if len(values) == 1 and not isinstance(values[0], (str, int, Fraction)):
            values = tuple(values[0])
        return cls(tuple(values))

    @property
    def u(self) -> tuple[Fraction, ...]:
        return self.x

    def x_at(self, m: int) -> Fraction:
        """Seed x_m for m in -4..0."""
        if not -4 <= m <= 0:
            raise IndexError(f"seed index must be in -4..0, got {m}")
        return self.x[m + 4]

    @property
    def lower_product(self) -> Fraction:
        """x_{-4} x_{-3} x_{-2} x_{-1}."""
        x = self.x
        return x[0] * x[1] * x[2] * x[3]

    @property
    def upper_product(self) -> Fraction:
        """x_{-3} x_{-2} x_{-1} x_0."""
        x = self.x
        return x[1] * x[2] * x[3] * x[4]

    def to_json(self) -> list[str]:
        return [format_rational(v) for v in self.x]


class SingularityReason(str, enum.Enum):
    ZERO_XN = "zero_xn"
    ZERO_BRACKET = "zero_bracket"


@dataclass(frozen=True)
class SingularityRecord:
    index: int
    reason: SingularityReason


@dataclass(frozen=True)
class Trajectory:
    """Values x_{-4}, ..., x_N with an optional singularity terminator.

    When ``singularity`` is set at index k the stored values end at x_{k-1}.
    """

    values: tuple[Fraction, ...]
    singularity: Optional[SingularityRecord] = None

    @property
    def last_index(self) -> int:
        return len(self.values) - 5

    def x(self, k: int) -> Fraction:
        pos = k + 4
        if pos < 0:
            raise IndexError(f"trajectory starts at x_-4, got index {k}")
        if pos >= len(self.values):
            detail = ""
            if self.singularity is not None and k >= self.singularity.index:
                detail = f"singularity {self.singularity.reason.value} at index {self.singularity.index}"
            raise ValueUnavailable(k, detail)
        return self.values[pos]

    def u(self, m: int) -> Fraction:
        return self.x(m - 4)

    @property
    def u_values(self) -> tuple[Fraction, ...]:
        return self.values

    @property
    def initial(self) -> InitialConditions:
        return InitialConditions(self.values[:5])


def u_view(ic: InitialConditions, traj: Trajectory, m: int) -> Fraction:
    """u_m = x_{m-4}; seeds come from ``ic``, later values from ``traj``."""
    if m < 0:
        raise ValueError(f"u-index must be nonnegative, got {m}")
    if m <= 4:
        return ic.u[m]
    return traj.u(m)


@dataclass(frozen=True)
class InvariantSeq:
    """V_0, V_1, ... together with a note of where they came from."""

    entries: tuple[Fraction, ...]
    origin: str = "trajectory"

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, n: int) -> Fraction:
        if n < 0 or n >= len(self.entries):
            raise ValueUnavailable(n, "invariant not computed")
        return self.entries[n]


@dataclass(frozen=True)
class ExponentPattern:
    """Period-4 integer scaling exponents (p_0, p_1, p_2, p_3).

    A pattern with nonzero sum is constructible so it can serve as a negative
    control; :func:`rdelab.symmetry.constraint_check` reports admissibility.
    """

    p: tuple[int, int, int, int]

    def __post_init__(self):
        p = tuple(self.p)
        if len(p) != 4 or not all(isinstance(v, int) and not isinstance(v, bool) for v in p):
            raise ValueError(f"pattern needs four integers, got {self.p!r}")
        object.__setattr__(self, "p", p)

    @classmethod
    def of(cls, *p: int) -> "ExponentPattern":
        return cls(tuple(p))

    @classmethod
    def parse(cls, text: str) -> "ExponentPattern":
        parts = [s.strip() for s in text.split(",")]
        if len(parts) != 4 or not all(re.fullmatch(r"[+-]?\d+", s) for s in parts):
            raise ValueError(f"pattern must be four comma-separated integers, got {text!r}")
        return cls(tuple(int(s) for s in parts))

    def exponent(self, m: int) -> int:
        return self.p[m % 4]

    @property
    def total(self) -> int:
        return sum(self.p)

    def __str__(self) -> str:
        return ",".join(str(v) for v in self.p)


# mapping between the (n, j) interface of the closed forms and trajectory indices
def residue_index(n: int, j: int) -> int:
    """Trajectory index returned by the closed forms for ``(n, j)``.

    j=0 -> x_{4n}, j=1 -> x_{4n-3}, j=2 -> x_{4n-2}, j=3 -> x_{4n-1}.
    """
    if j not in (0, 1, 2, 3):
        raise ValueError(f"residue class j must be 0..3, got {j}")
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    return 4 * n if j == 0 else 4 * n + j - 4


def index_residue(k: int) -> tuple[int, int]:
    """Inverse of :func:`residue_index` for k >= -3."""
    if k < -3:
        raise ValueError(f"x_{k} is not produced by any residue formula")
    j = k % 4
    return (k // 4, 0) if j == 0 else ((k + 4 - j) // 4, j)
