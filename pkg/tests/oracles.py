"""Reference computations written without touching the package under test."""

from fractions import Fraction


def brute_iterate(seeds, a_at, b_at, steps):
    """x_{-4}.. by the literal recurrence; returns (values, failing_index or None)."""
    x = [Fraction(v) for v in seeds]
    for n in range(steps):
        x_n = x[-1]
        bracket = a_at(n) + b_at(n) * x[-2] * x[-3] * x[-4] * x[-5]
        if x_n == 0 or bracket == 0:
            return x, n + 1
        x.append(x[-4] * x[-5] / (x_n * bracket))
    return x, None


def brute_v_iterate(v, a_at, b_at, n, j):
    for k in range(n):
        v = a_at(2 * k + j) * v + b_at(2 * k + j)
    return v
