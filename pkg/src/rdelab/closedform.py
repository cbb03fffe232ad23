"""Closed-form solutions and their non-vanishing conditions.

Every formula here returns a single trajectory value selected by ``(n, j)``:

    j = 0  ->  x_{4n}
    j = 1  ->  x_{4n-3}
    j = 2  ->  x_{4n-2}
    j = 3  ->  x_{4n-1}

(see :func:`rdelab.model.residue_index`).  With P = x_{-4}x_{-3}x_{-2}x_{-1}
and Q = x_{-3}x_{-2}x_{-1}x_0 the general solution is a seed prefactor times a
product over s < n of ratios of *factors*

    even(m) = prod_{k<m} a_{2k}   + P * sum_{l<m} b_{2l}   prod_{l<k<m} a_{2k}
    odd(m)  = prod_{k<m} a_{2k+1} + Q * sum_{l<m} b_{2l+1} prod_{l<k<m} a_{2k+1}

and the special cases only change how a factor is evaluated.  A factor with
m >= 1 is tagged ``(s, side)`` with m = 2s + 1 + side, which is how the
printed conditions enumerate them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .errors import ConditionViolated, FormulaDenominatorZero, IndexBeyondExplicitData, SeedZero
from .model import CoefficientSpec, InitialConditions, coeff_at, index_residue, residue_index

EVEN = "even"
ODD = "odd"

FactorFn = Callable[[str, int], Fraction]

# (numerator parity, numerator m(s)), (denominator parity, denominator m(s)) per residue class
_LAYOUT = {
    0: ((EVEN, lambda s: 2 * s + 2), (ODD, lambda s: 2 * s + 2)),
    1: ((ODD, lambda s: 2 * s), (EVEN, lambda s: 2 * s + 1)),
    2: ((EVEN, lambda s: 2 * s + 1), (ODD, lambda s: 2 * s + 1)),
    3: ((ODD, lambda s: 2 * s + 1), (EVEN, lambda s: 2 * s + 2)),
}


def factor_tag(m: int) -> tuple[int, int]:
    """(s, side) with m = 2s + 1 + side."""
    return (m - 1) // 2, (m - 1) % 2


def _tags(parity: str, m: int) -> dict:
    s, side = factor_tag(m)
    return {"parity": parity, "s": s, "side": side}


def _check_j(j: int) -> None:
    if j not in (0, 1, 2, 3):
        raise ValueError(f"residue class j must be 0..3, got {j}")


def _prefactor(ic: InitialConditions, n: int, j: int) -> Fraction:
    x4, x3, x2, x1, x0 = ic.x
    if j == 0:
        return x0 ** (n + 1) / x4**n
    if j == 1:
        return x4**n * x3 / x0**n
    if j == 2:
        return x0**n * x2 / x4**n
    return x4**n * x1 / x0**n


def _assemble(ic: InitialConditions, n: int, j: int, factor: FactorFn) -> Fraction:
    (num_par, num_m), (den_par, den_m) = _LAYOUT[j]
    value = _prefactor(ic, n, j)
    for s in range(n):
        m = den_m(s)
        den = factor(den_par, m)
        if den == 0:
            fs, side = factor_tag(m)
            raise FormulaDenominatorZero(fs, j, den_par, side)
        value *= factor(num_par, num_m(s)) / den
    return value


def _require_seeds(ic: InitialConditions) -> None:
    for pos, v in enumerate(ic.x):
        if v == 0:
            raise SeedZero(pos - 4)


# -- general variable-coefficient solution -------------------------------------------------


def general_factor(ic: InitialConditions, a: CoefficientSpec, b: CoefficientSpec, parity: str, m: int) -> Fraction:
    """even(m) or odd(m), each summand's coefficient product formed explicitly."""
    offset = 0 if parity == EVEN else 1
    seed_product = ic.lower_product if parity == EVEN else ic.upper_product
    head = Fraction(1)
    for k in range(m):
        head *= coeff_at(a, 2 * k + offset)
    total = Fraction(0)
    tail = Fraction(1)
    for l in range(m - 1, -1, -1):
        total += coeff_at(b, 2 * l + offset) * tail
        tail *= coeff_at(a, 2 * l + offset)
    return head + seed_product * total


class _FactorCache:
    def __init__(self, ic, a, b):
        self.ic, self.a, self.b = ic, a, b
        self._memo: dict[tuple[str, int], Fraction] = {}

    def __call__(self, parity: str, m: int) -> Fraction:
        key = (parity, m)
        if key not in self._memo:
            self._memo[key] = general_factor(self.ic, self.a, self.b, parity, m)
        return self._memo[key]


def x_general(ic: InitialConditions, a: CoefficientSpec, b: CoefficientSpec, n: int, j: int) -> Fraction:
    """x_{4n} (j=0) or x_{4n-4+j} (j=1,2,3) for arbitrary coefficient sequences."""
    _check_j(j)
    residue_index(n, j)
    _require_seeds(ic)
    return _assemble(ic, n, j, _FactorCache(ic, a, b))


class GeneralSolution:
    """Evaluator for one instance that shares factors across ``(n, j)`` queries."""

    def __init__(self, ic: InitialConditions, a: CoefficientSpec, b: CoefficientSpec):
        self.ic, self.a, self.b = ic, a, b
        self._factors = _FactorCache(ic, a, b)

    def value(self, n: int, j: int) -> Fraction:
        _check_j(j)
        residue_index(n, j)
        _require_seeds(self.ic)
        return _assemble(self.ic, n, j, self._factors)

    def at_index(self, k: int) -> Fraction:
        """x_k for k >= -3 through the matching residue formula."""
        return self.value(*index_residue(k))

    def table(self, n_max: int) -> dict[int, Fraction]:
        """x_general(n, j) for all n <= n_max and j, keyed by trajectory index.

        The product over s is accumulated once per residue class instead of
        being rebuilt for every n.
        """
        _require_seeds(self.ic)
        out = {}
        for j in range(4):
            (num_par, num_m), (den_par, den_m) = _LAYOUT[j]
            running = Fraction(1)
            for n in range(n_max + 1):
                out[residue_index(n, j)] = _prefactor(self.ic, n, j) * running
                if n == n_max:
                    break
                m = den_m(n)
                den = self._factors(den_par, m)
                if den == 0:
                    fs, side = factor_tag(m)
                    raise FormulaDenominatorZero(fs, j, den_par, side)
                running *= self._factors(num_par, num_m(n)) / den
        return out

    def forbidden(self, n: int) -> list["Violation"]:
        return _forbidden(self.ic, self.a, self.b, n, self._factors)


def closed_form_table(
    ic: InitialConditions, a: CoefficientSpec, b: CoefficientSpec, n_max: int
) -> dict[int, Fraction]:
    """All values x_general(n, j) for n <= n_max, keyed by trajectory index."""
    return GeneralSolution(ic, a, b).table(n_max)


# -- 1-periodic coefficients ------------------------------------------------------------------


def _geometric(a: Fraction, k: int) -> Fraction:
    """sum_{l<k} a**l for a != 1 via (1 - a**k)/(1 - a)."""
    return (1 - a**k) / (1 - a)


def _const_conditions(ic: InitialConditions, a: Fraction, b: Fraction, n: int) -> list[tuple[str, str, dict]]:
    """Printed conditions for constant coefficients as (kind, description, tags)."""
    P, Q = ic.lower_product, ic.upper_product
    out = []
    if ic.x[0] == 0:
        out.append(("seed_zero", "x_{-4} = 0", {}))
    if ic.x[4] == 0:
        out.append(("seed_zero", "x_0 = 0", {}))
    if a == 1:
        for jj in range(1, n + 1):
            checks = (
                (2 * jj * b * P, "2jb*x_{-4}x_{-3}x_{-2}x_{-1} = -1", EVEN, 2 * jj),
                ((2 * jj - 1) * b * P, "(2j-1)b*x_{-4}x_{-3}x_{-2}x_{-1} = -1", EVEN, 2 * jj - 1),
                (2 * jj * b * Q, "2jb*x_{-3}x_{-2}x_{-1}x_0 = -1", ODD, 2 * jj),
                ((2 * jj - 1) * b * Q, "(2j-1)b*x_{-3}x_{-2}x_{-1}x_0 = -1", ODD, 2 * jj - 1),
            )
            for value, text, parity, m in checks:
                if value == -1:
                    s, side = factor_tag(m)
                    out.append(("a_one_family", f"{text} at j={jj}",
                                {"j": jj, "parity": parity, "s": s, "side": side}))
    elif a == -1:
        if b * P == 1:
            out.append(("a_minus_one", "b*x_{-4}x_{-3}x_{-2}x_{-1} = 1", {"parity": EVEN, "s": 0, "side": 0}))
        if b * Q == 1:
            out.append(("a_minus_one", "b*x_{-3}x_{-2}x_{-1}x_0 = 1", {"parity": ODD, "s": 0, "side": 0}))
    else:
        for s in range(n):
            for i in (0, 1):
                k = 2 * s + i
                if (1 - a) * a**k + (1 - a**k) * b * Q == 0:
                    out.append(("a_not_one",
                                f"(1-a)a^(2s+i) + (1-a^(2s+i))b*x_{{-3}}x_{{-2}}x_{{-1}}x_0 = 0 at (i,s)=({i},{s})",
                                _tags(ODD, k)))
                k1 = 2 * s + 1 + i
                if (1 - a) * a**k1 + (1 - a**k1) * b * P == 0:
                    out.append(("a_not_one",
                                f"(1-a)a^(2s+1+i) + (1-a^(2s+1+i))b*x_{{-4}}x_{{-3}}x_{{-2}}x_{{-1}} = 0 at (i,s)=({i},{s})",
                                _tags(EVEN, k1)))
    return out


def x_const_coeff(ic: InitialConditions, a, b, n: int, j: int) -> Fraction:
    """Closed form for a_n = a, b_n = b.

    Three branches, chosen by exact comparison: a = 1 (arithmetic sums),
    a = -1 (products collapse to powers), otherwise geometric sums.
    """
    _check_j(j)
    residue_index(n, j)
    a, b = Fraction(a), Fraction(b)
    violated = _const_conditions(ic, a, b, n)
    if violated:
        raise ConditionViolated(violated[0][1])
    P, Q = ic.lower_product, ic.upper_product
    x4, x3, x2, x1, x0 = ic.x

    if a == -1:
        if j == 0:
            return x0 ** (n + 1) / x4**n
        if j == 1:
            return x4**n * x3 / x0**n / (-1 + b * P) ** n
        if j == 2:
            return x0**n * x2 / x4**n * ((-1 + b * P) / (-1 + b * Q)) ** n
        return x4**n * x1 / x0**n * (-1 + b * Q) ** n

    if a == 1:
        def factor(parity: str, m: int) -> Fraction:
            return 1 + m * b * (P if parity == EVEN else Q)
    else:
        def factor(parity: str, m: int) -> Fraction:
            return a**m + b * (P if parity == EVEN else Q) * _geometric(a, m)

    return _assemble(ic, n, j, factor)


# -- 2-periodic coefficients ------------------------------------------------------------------


def _two_periodic_conditions(
    ic: InitialConditions, a0: Fraction, a1: Fraction, b0: Fraction, b1: Fraction, n: int
) -> list[tuple[str, str, dict]]:
    P, Q = ic.lower_product, ic.upper_product
    out = []
    if ic.x[0] == 0:
        out.append(("seed_zero", "x_{-4} = 0", {}))
    if ic.x[4] == 0:
        out.append(("seed_zero", "x_0 = 0", {}))
    if (a0, a1) == (1, -1):
        if b1 * Q == 1:
            out.append(("two_periodic_fast", "b_1*x_{-3}x_{-2}x_{-1}x_0 = 1", {"parity": ODD, "s": 0, "side": 0}))
        for jj in range(1, 2 * n + 1):
            if jj * b0 * P == -1:
                s, side = factor_tag(jj)
                out.append(("two_periodic_fast", f"j*b_0*x_{{-4}}x_{{-3}}x_{{-2}}x_{{-1}} = -1 at j={jj}",
                            {"j": jj, "parity": EVEN, "s": s, "side": side}))
    elif (a0, a1) == (-1, 1):
        if b0 * P == 1:
            out.append(("two_periodic_fast", "b_0*x_{-4}x_{-3}x_{-2}x_{-1} = 1", {"parity": EVEN, "s": 0, "side": 0}))
        for jj in range(1, 2 * n + 1):
            if jj * b1 * Q == -1:
                s, side = factor_tag(jj)
                out.append(("two_periodic_fast", f"j*b_1*x_{{-3}}x_{{-2}}x_{{-1}}x_0 = -1 at j={jj}",
                            {"j": jj, "parity": ODD, "s": s, "side": side}))
    else:
        for s in range(n):
            for i in (0, 1):
                k = 2 * s + 1 + i
                if a0**k + b0 * P * sum(a0**l for l in range(k)) == 0:
                    out.append(("two_periodic",
                                f"a_0^(2s+1+i) + b_0*x_{{-4}}x_{{-3}}x_{{-2}}x_{{-1}}*sum a_0^l = 0 at (i,s)=({i},{s})",
                                {"parity": EVEN, "s": s, "side": i}))
                if a1**k + b1 * Q * sum(a1**l for l in range(k)) == 0:
                    out.append(("two_periodic",
                                f"a_1^(2s+1+i) + b_1*x_{{-3}}x_{{-2}}x_{{-1}}x_0*sum a_1^l = 0 at (i,s)=({i},{s})",
                                {"parity": ODD, "s": s, "side": i}))
    return out


def x_two_periodic(ic: InitialConditions, a0, a1, b0, b1, n: int, j: int) -> Fraction:
    """Closed form for a_n = a0, a1, a0, ... and b_n = b0, b1, b0, ...

    (a0, a1) = (1, -1) and (-1, 1) use their collapsed product forms; all
    other pairs use explicit power sums.
    """
    _check_j(j)
    residue_index(n, j)
    a0, a1, b0, b1 = (Fraction(v) for v in (a0, a1, b0, b1))
    violated = _two_periodic_conditions(ic, a0, a1, b0, b1, n)
    if violated:
        raise ConditionViolated(violated[0][1])
    P, Q = ic.lower_product, ic.upper_product
    x4, x3, x2, x1, x0 = ic.x

    def prod(fn: Callable[[int], Fraction]) -> Fraction:
        out = Fraction(1)
        for s in range(n):
            out *= fn(s)
        return out

    if (a0, a1) == (1, -1):
        if j == 0:
            return x0 ** (n + 1) / x4**n * prod(lambda s: 1 + (2 * s + 2) * b0 * P)
        if j == 1:
            return x4**n * x3 / x0**n / prod(lambda s: 1 + (2 * s + 1) * b0 * P)
        if j == 2:
            return x2 * (x0 / (x4 * (-1 + b1 * Q))) ** n * prod(lambda s: 1 + (2 * s + 1) * b0 * P)
        return x1 * (x4 * (-1 + b1 * Q) / x0) ** n / prod(lambda s: 1 + (2 * s + 2) * b0 * P)

    if (a0, a1) == (-1, 1):
        if j == 0:
            return x0 ** (n + 1) / x4**n / prod(lambda s: 1 + (2 * s + 2) * b1 * Q)
        if j == 1:
            return x3 * (x4 / (x0 * (-1 + b0 * P))) ** n * prod(lambda s: 1 + 2 * s * b1 * Q)
        if j == 2:
            return x2 * (x0 * (-1 + b0 * P) / x4) ** n / prod(lambda s: 1 + (2 * s + 1) * b1 * Q)
        return x4**n * x1 / x0**n * prod(lambda s: 1 + (2 * s + 1) * b1 * Q)

    def factor(parity: str, m: int) -> Fraction:
        if parity == EVEN:
            return a0**m + b0 * P * sum(a0**l for l in range(m))
        return a1**m + b1 * Q * sum(a1**l for l in range(m))

    return _assemble(ic, n, j, factor)


# -- forbidden-set reporting ------------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    """One violated non-vanishing condition.

    ``parity``/``s``/``side`` identify the closed-form factor involved when
    there is one; ``j`` is the family index of the quantified conditions.
    """

    kind: str
    description: str
    parity: Optional[str] = None
    s: Optional[int] = None
    side: Optional[int] = None
    j: Optional[int] = None
    index: Optional[int] = None


def _two_periodic_values(spec: CoefficientSpec) -> Optional[tuple[Fraction, Fraction]]:
    vals = spec.as_periodic_values(2)
    return None if vals is None else (vals[0], vals[1])


def forbidden_check(ic: InitialConditions, a: CoefficientSpec, b: CoefficientSpec, n: int) -> list[Violation]:
    """Every violated non-vanishing condition relevant up to horizon ``n``.

    The general conditions (nonzero seeds, nonzero factors for s < n) are
    always checked; the printed condition lists of the constant and
    2-periodic specializations are added when the coefficient specs have
    that shape.  An empty result means :func:`x_general` is defined for every
    ``(n', j)`` with n' <= n.
    """
    return _forbidden(ic, a, b, n, _FactorCache(ic, a, b))


def _forbidden(ic, a, b, n, factors) -> list[Violation]:
    out: list[Violation] = []
    for pos, v in enumerate(ic.x):
        if v == 0:
            out.append(Violation("seed_zero", f"x_{pos - 4} = 0", index=pos - 4))

    try:
        for m in range(1, 2 * n + 1):
            for parity in (EVEN, ODD):
                if factors(parity, m) == 0:
                    s, side = factor_tag(m)
                    seeds = "x_{-4}x_{-3}x_{-2}x_{-1}" if parity == EVEN else "x_{-3}x_{-2}x_{-1}x_0"
                    out.append(Violation("factor_zero", f"{parity} factor with {seeds} vanishes at (s,side)=({s},{side})",
                                         parity=parity, s=s, side=side))
    except IndexBeyondExplicitData as exc:
        out.append(Violation("coefficient_exhausted", str(exc), index=exc.n))

    a2, b2 = _two_periodic_values(a), _two_periodic_values(b)
    if a.period == 1 and b.period == 1:
        for kind, text, tags in _const_conditions(ic, a.values[0], b.values[0], n):
            if kind != "seed_zero":
                out.append(Violation(kind, text, **tags))
    elif a2 is not None and b2 is not None:
        for kind, text, tags in _two_periodic_conditions(ic, a2[0], a2[1], b2[0], b2[1], n):
            if kind != "seed_zero":
                out.append(Violation(kind, text, **tags))
    return out
