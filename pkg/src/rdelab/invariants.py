"""The group invariant V_n = 1/(u_n u_{n+1} u_{n+2} u_{n+3}) and its reduction.

Along any solution V_{n+2} = a_n V_n + b_n, which splits into two first-order
linear recurrences (even and odd indices) with an explicit solution.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Optional

from .errors import ValueUnavailable, ZeroProduct
from .model import CoefficientSpec, InvariantSeq, Trajectory, coeff_at

_WEIGHTS = (1, -1, 0, 0)


def v_sequence(traj: Trajectory, count: Optional[int] = None) -> InvariantSeq:
    """V_0, V_1, ... from a trajectory.

    With ``count=None`` every V_n whose four u-values are stored is returned.
    Asking for more raises :class:`ValueUnavailable`.
    """
    u = traj.u_values
    available = len(u) - 3
    if count is None:
        count = available
    elif count > available:
        raise ValueUnavailable(count - 1 + 3, "u-values past the end of the trajectory")
    out = []
    for n in range(count):
        prod = u[n] * u[n + 1] * u[n + 2] * u[n + 3]
        if prod == 0:
            raise ZeroProduct(n)
        out.append(1 / prod)
    return InvariantSeq(tuple(out), origin="trajectory")


def v_recurrence_residual(V: InvariantSeq, a: CoefficientSpec, b: CoefficientSpec, n: int) -> Fraction:
    """V_{n+2} - a_n V_n - b_n."""
    return V[n + 2] - coeff_at(a, n) * V[n] - coeff_at(b, n)


def v_closed_form(
    V0: Fraction, V1: Fraction, a: CoefficientSpec, b: CoefficientSpec, n: int, j: int
) -> Fraction:
    """V_{2n+j} from V_j as an explicit product-plus-sum.

    V_j * prod_{k<n} a_{2k+j} + sum_{l<n} b_{2l+j} prod_{l<k<n} a_{2k+j}

    The sum is accumulated term by term from the right so each summand's tail
    product is formed explicitly.
    """
    if j not in (0, 1):
        raise ValueError(f"j must be 0 or 1, got {j}")
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    start = V0 if j == 0 else V1
    full = Fraction(1)
    for k in range(n):
        full *= coeff_at(a, 2 * k + j)
    total = Fraction(0)
    tail = Fraction(1)
    for l in range(n - 1, -1, -1):
        total += coeff_at(b, 2 * l + j) * tail
        tail *= coeff_at(a, 2 * l + j)
    return start * full + total


def v_iterated(V0: Fraction, V1: Fraction, a: CoefficientSpec, b: CoefficientSpec, n: int, j: int) -> Fraction:
    """n-fold application of V -> a V + b along the parity-j subsequence."""
    v = V0 if j == 0 else V1
    for k in range(n):
        idx = 2 * k + j
        v = coeff_at(a, idx) * v + coeff_at(b, idx)
    return v


def closed_form_sequence(
    V0: Fraction, V1: Fraction, a: CoefficientSpec, b: CoefficientSpec, count: int
) -> InvariantSeq:
    entries = tuple(v_closed_form(V0, V1, a, b, m // 2, m % 2) for m in range(count))
    return InvariantSeq(entries, origin="closed_form")


def weight(m: int) -> int:
    """Integer exponent of V_k in the reconstruction of u_n, with m = k - n.

    Exact values of (sqrt(2) cos(pi (2m+1)/4) + (-1)^m) / 2, period 4.
    """
    return _WEIGHTS[m % 4]


def weight_float(m: int) -> float:
    """Floating evaluation of the trigonometric weight, for cross-checking :func:`weight`."""
    return 0.5 * (math.sqrt(2.0) * math.cos(math.pi * (2 * m + 1) / 4) + (-1) ** (m % 2))


def _weighted_product(V: InvariantSeq, n: int) -> Fraction:
    value = Fraction(1)
    for k in range(n):
        w = weight(k - n)
        if w:
            value *= V[k] ** w
    return value


def reconstruct_u(seeds: tuple[Fraction, ...], V: InvariantSeq, n: int) -> Fraction:
    """u_n = C_{n mod 4} * prod_{k<n} V_k ** weight(k - n).

    The constant of each residue class is fixed by the first member of the
    class, C_j = u_j / prod_{k<j} V_k ** weight(k - j).  This is u_j for
    j = 0, 1, 2, but u_3 * V_0 for j = 3, because weight(-3) = -1 reaches back
    to V_0.
    """
    j = n % 4
    base = seeds[j] / _weighted_product(V, j)
    return base * _weighted_product(V, n)
