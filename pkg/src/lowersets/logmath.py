"""Log-domain helpers shared by the bound evaluators."""

from __future__ import annotations

import math

LOG_ZERO = float("-inf")

# Exact integer binomials are used below this many factors; past it lgamma.
_EXACT_COMB_LIMIT = 4096


def log_int(x: int) -> float:
    """Natural log of a nonnegative (possibly huge) integer; log 0 = -inf."""
    if x < 0:
        raise ValueError("log of a negative integer")
    if x == 0:
        return LOG_ZERO
    return math.log(x)


def log_binom(a: int, b: int) -> float:
    """log C(a, b) for integers, exact where cheap so equal values compare equal."""
    if b < 0 or b > a:
        return LOG_ZERO
    k = min(b, a - b)
    if k <= _EXACT_COMB_LIMIT:
        return log_int(math.comb(a, b))
    return math.lgamma(a + 1) - math.lgamma(b + 1) - math.lgamma(a - b + 1)


def log_factorial(n: int) -> float:
    if n <= _EXACT_COMB_LIMIT:
        return log_int(math.factorial(n))
    return math.lgamma(n + 1)


def logsumexp(xs) -> float:
    """Stable log of sum(exp(x)), summed in the order given."""
    xs = list(xs)
    if not xs:
        return LOG_ZERO
    top = max(xs)
    if math.isinf(top):
        return top
    total = math.fsum(math.exp(x - top) for x in xs)
    return top + math.log(total)


def zeta(s: float, terms: int = 50) -> float:
    """Riemann zeta for real s > 1 by direct summation plus an Euler-Maclaurin tail.

    With the default 50 terms the result is good to well beyond 12 digits
    for every s >= 2.
    """
    if s <= 1:
        raise ValueError("zeta(s) requires s > 1")
    head = math.fsum(k ** -s for k in range(1, terms + 1))
    n = float(terms)
    tail = (
        n ** (1 - s) / (s - 1)
        - n**-s / 2
        + s * n ** (-s - 1) / 12
        - s * (s + 1) * (s + 2) * n ** (-s - 3) / 720
    )
    return head + tail
