"""Closed-form bounds and asymptotics for p_d(n), evaluated in log domain.

Every value here is a natural logarithm.  Preconditions are compared in
log domain too (``log n >= 2 d^2 log(30 d)`` rather than building the
power), since most of them are astronomically large.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .counting import BudgetExceeded, count_exact, max_available_size
from .lattice import LowerSet
from .logmath import LOG_ZERO, log_binom, log_factorial, log_int, logsumexp, zeta

log = logging.getLogger(__name__)

ZETA3 = zeta(3)
# Printed value of zeta'(-1), pinned rather than recomputed.
ZETA_PRIME_MINUS_1 = -0.165421
LOG_2PI = math.log(2 * math.pi)

MAX_COMPOSITION_N = 30
BRACKET_RTOL = 1e-12


class PreconditionError(ValueError):
    pass


class BoundViolation(RuntimeError):
    """A proven bound failed to bracket an exact count: an implementation bug."""


@dataclass(frozen=True)
class BoundValue:
    name: str
    kind: str  # "lower" | "upper" | "asymptotic"
    log_value: float
    precondition_met: bool
    precondition: str

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "kind": self.kind,
            "log_value": self.log_value,
            "precondition_met": self.precondition_met,
            "precondition": self.precondition,
        }


@dataclass
class BoundReport:
    d: int
    n: int
    exact: int | None
    log_exact: float | None
    bounds: list[BoundValue] = field(default_factory=list)

    def violations(self) -> list[BoundValue]:
        if self.log_exact is None:
            return []
        bad = []
        for b in self.bounds:
            if not b.precondition_met or b.kind == "asymptotic":
                continue
            slack = BRACKET_RTOL * max(1.0, abs(self.log_exact))
            if b.kind == "lower" and b.log_value > self.log_exact + slack:
                bad.append(b)
            if b.kind == "upper" and b.log_value < self.log_exact - slack:
                bad.append(b)
        return bad

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "n": self.n,
            "exact": None if self.exact is None else str(self.exact),
            "log_exact": self.log_exact,
            "bounds": [b.to_json() for b in self.bounds],
        }

    def csv_rows(self) -> list[list[str]]:
        rows = [["d", "n", "exact", "log_exact", "name", "kind", "log_value", "precondition_met", "precondition"]]
        exact = "" if self.exact is None else str(self.exact)
        log_exact = "" if self.log_exact is None else repr(self.log_exact)
        for b in self.bounds:
            rows.append(
                [str(self.d), str(self.n), exact, log_exact, b.name, b.kind, repr(b.log_value),
                 str(b.precondition_met).lower(), b.precondition]
            )
        return rows


# --- asymptotics for d = 2, 3 ---------------------------------------------


def hr_asymptotic_p2(n: int) -> float:
    """log of exp(pi sqrt(2n/3)) / (4 sqrt(3) n)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return math.pi * math.sqrt(2 * n / 3) - math.log(4 * math.sqrt(3) * n)


def wright_asymptotic_p3(n: int, standard: bool = False) -> float:
    """log of Wright's leading term for plane partitions of n.

    The default prefactor (2 zeta(3))^(7/36) e^(zeta'(-1)) / sqrt(2 pi) is
    sqrt(3) larger than the usual zeta(3)^(7/36) 2^(25/36) e^(zeta'(-1)) /
    sqrt(12 pi), so its ratio to p_3(n) tends to 1/sqrt(3).
    ``standard=True`` selects the usual prefactor, whose ratio tends to 1.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    shift = -0.5 * math.log(3) if standard else 0.0
    return shift + (
        (7 / 36) * math.log(2 * ZETA3)
        + ZETA_PRIME_MINUS_1
        - 0.5 * LOG_2PI
        - (25 / 36) * math.log(n)
        + 3 * ZETA3 ** (1 / 3) * 2 ** (-2 / 3) * n ** (2 / 3)
    )


# --- fixed-dimension windows ----------------------------------------------


def bpa_constants(d: int) -> tuple[float, float]:
    """(C1, C2) with C1 n^(1-1/d) <= log p_d(n) <= C2 n^(1-1/d).

    C2 overflows a float once (log d)^2 passes ~709, i.e. d > ~3.5e11.
    """
    if d < 2:
        raise ValueError("d must be >= 2")
    c1 = _c1(d)
    c2 = math.pi * math.sqrt(2 / 3) * math.exp(math.log(d) ** 2)
    return c1, c2


def _c1(d: int) -> float:
    return 0.9 * math.exp(math.log(d) - log_factorial(d) / d) * math.log(2)


def _scale(d: int, n: int) -> float:
    return n ** (1 - 1 / d)


def window_thm1(d: int, n: int) -> tuple[BoundValue, BoundValue]:
    """The dimension-free window 1 < log p_d(n) / n^(1-1/d) < 7200."""
    if d < 2:
        raise ValueError("d must be >= 2")
    met = n >= 1 and math.log(n) >= 2 * d * d * math.log(30 * d)
    text = "n >= (30d)^(2d^2)"
    s = _scale(d, n)
    return (
        BoundValue("window_lower", "lower", s, met, text),
        BoundValue("window_upper", "upper", 7200 * s, met, text),
    )


def window_prop_weaker(d: int, n: int) -> tuple[BoundValue, BoundValue]:
    """The coarser window 1 < log p_d(n) / n^(1-1/d) < d^2."""
    if d < 2:
        raise ValueError("d must be >= 2")
    met = n >= 1 and math.log(n) >= 12 * d * math.log(d) ** 2
    text = "n >= d^(12 d log d)"
    s = _scale(d, n)
    return (
        BoundValue("weak_window_lower", "lower", s, met, text),
        BoundValue("weak_window_upper", "upper", d * d * s, met, text),
    )


def classic_bounds(d: int, n: int) -> list[BoundValue]:
    """Binomial lower bound, d^(n-1), 2^(dn), d^(n-1)(n-1)!, and the zeta log-bound."""
    if d < 2 or n < 1:
        raise ValueError("need d >= 2 and n >= 1")
    always = "all d >= 2, n >= 1"
    logd = math.log(d)
    return [
        BoundValue("binomial_lower", "lower", log_binom(d + n - 2, n - 1), True, always),
        BoundValue("power_upper", "upper", (n - 1) * logd, True, always),
        BoundValue("exponential_upper", "upper", d * n * math.log(2), True, always),
        BoundValue("factorial_upper", "upper", (n - 1) * logd + log_factorial(n - 1), True, always),
        # Read as a bound on log p_d(n); as a bound on p_d(n) it would be false.
        BoundValue(
            "zeta_log_upper", "upper",
            d * zeta(d) ** (1 / d) * _scale(d, n) + (d - 1) * math.log(n), True, always,
        ),
    ]


def bpa_bounds(d: int, n: int) -> list[BoundValue]:
    s = _scale(d, n)
    try:
        c1, c2 = bpa_constants(d)
    except OverflowError:
        c1, c2 = _c1(d), math.inf
    return [
        BoundValue("c1_lower", "lower", c1 * s, math.log(n) > d * math.log(55), "n > 55^d"),
        BoundValue("c2_upper", "upper", c2 * s, True, "all n >= 1"),
    ]


# --- high-dimensional regime ----------------------------------------------


@dataclass(frozen=True)
class Sandwich:
    d: int
    n: int
    lower_ratio: Fraction
    upper_ratio: Fraction
    exact_ratio: Fraction | None

    @property
    def holds(self) -> bool:
        r = self.exact_ratio
        return r is not None and self.lower_ratio <= r < self.upper_ratio


def sandwich_thm2a(d: int, n: int, exact: int | None = None, budget=None) -> Sandwich:
    """1 <= p_d(n) / C(d+n-2, d-1) < 1 / (1 - n^3/(2d)), valid when 2d > n^3.

    The exact count comes from the essential-dimension decomposition,
    which stays cheap at any d.
    """
    if n < 1 or 2 * d <= n**3:
        raise PreconditionError(f"needs d > n^3/2 (d={d}, n={n})")
    if exact is None:
        exact = count_exact(d, n, "decomp", budget).value
    base = math.comb(d + n - 2, d - 1)
    upper = Fraction(2 * d, 2 * d - n**3)
    return Sandwich(d, n, Fraction(1), upper, Fraction(exact, base))


def _compositions(m: int, t: int):
    # (s_0, ..., s_t) summing to m with s_i >= 2 for i < t and s_t >= 1.
    def rec(rem: int, left: int, acc: list[int]):
        if left == 0:
            if rem >= 1:
                yield acc + [rem]
            return
        for s in range(2, rem - 2 * (left - 1)):
            yield from rec(rem - s, left - 1, acc + [s])

    return rec(m, t, [])


def lemma_main_terms(d: int, n: int):
    """Log-terms of the composition-sum upper bound, in a fixed order."""
    log2d = math.log(2 * d)
    base = math.log(math.e / 2)
    for m in range(2, n + 1):
        for t in range(1, m):
            for s in _compositions(m, t):
                v = m * base - (t + 1) / 2 * LOG_2PI + s[0] * log2d
                v -= 0.5 * math.fsum(math.log(x) for x in s)
                v += math.fsum((2 * s[i + 1] - s[i]) * math.log(s[i]) for i in range(t))
                v -= s[t] * math.log(s[t])
                yield v


def lemma_main_upper(d: int, n: int) -> float:
    """Upper bound on log p_d(n) from the layer-by-layer construction count.

    For n = 2 no composition qualifies and the result is -inf: the formula
    gives no bound there.
    """
    if d < 1 or n < 2:
        raise ValueError("need d >= 1 and n >= 2")
    if n > MAX_COMPOSITION_N:
        raise ValueError(f"composition sum infeasible beyond n = {MAX_COMPOSITION_N}")
    return logsumexp(lemma_main_terms(d, n))


def prop_up_bound(d: int, n: int) -> float:
    """log of 4 e^(cn) n^(n + 2 sqrt d) max(2^-n, (2n)^-sqrt d), c = 3/(2e) + 1."""
    if n < 1 or 4 * d > n * n:
        raise PreconditionError(f"needs d <= n^2/4 (d={d}, n={n})")
    return _prop_up_value(d, n)


def _prop_up_value(d: int, n: int) -> float:
    c = 3 / (2 * math.e) + 1
    r = math.sqrt(d)
    return math.log(4) + c * n + (n + 2 * r) * math.log(n) + max(-n * math.log(2), -r * math.log(2 * n))


@dataclass(frozen=True)
class PairCubeCount:
    """B_i = C(d, i) C(i(i-1)/2, n-i): sets of n+1 cubes with coordinates in {0,1},
    at most two of them nonzero, using exactly i axes."""

    d: int
    n: int
    psi: float
    terms: tuple[int, ...]  # terms[i-1] = B_i

    @property
    def chosen_i(self) -> int:
        return max(1, math.floor(self.n / self.psi))

    @property
    def log_value(self) -> float:
        i = self.chosen_i
        return log_int(self.terms[i - 1]) if i <= len(self.terms) else LOG_ZERO

    @property
    def best_i(self) -> int:
        return max(range(1, len(self.terms) + 1), key=lambda i: (self.terms[i - 1], -i))

    @property
    def total(self) -> int:
        return sum(self.terms)


def prop_low_bound(d: int, n: int, psi: float = 1.0) -> PairCubeCount:
    """Lower bounds for p_d(n+1) from lower sets made of 0/1 pair cubes."""
    if d < 1 or n < 1 or psi < 1:
        raise ValueError("need d >= 1, n >= 1, psi >= 1")
    terms = tuple(math.comb(d, i) * math.comb(i * (i - 1) // 2, n - i) for i in range(1, min(d, n) + 1))
    return PairCubeCount(d, n, psi, terms)


def prop4_bound(d: int, n: int, xi: float) -> float:
    """log of 3 a^(2n) e^(125n/xi) n^2 e^n d^n / n^n, a = max(2 e^3.5 / xi, 1)."""
    if n < 1 or xi < 2 / n or d < xi * n * n:
        raise PreconditionError(f"needs d >= xi n^2 and xi >= 2/n (d={d}, n={n}, xi={xi})")
    return _prop4_value(d, n, xi)


def _prop4_value(d: int, n: int, xi: float) -> float:
    a = max(2 * math.exp(3.5) / xi, 1.0)
    return (
        math.log(3) + 2 * n * math.log(a) + 125 * n / xi + 2 * math.log(n) + n
        + n * math.log(d) - n * math.log(n)
    )


# --- lower-subset counts ----------------------------------------------------


def lemma_subset_bounds(S: LowerSet, k: int, t_value: int | None = None, budget=None) -> list[BoundValue]:
    """Upper bounds on C(Q, k, d), plus the two large-n refinements.

    ``t_value`` is T(|S|) in dimension S.dim; computed exactly when omitted.
    """
    n = len(S)
    d = S.dim
    if not 1 <= k <= n:
        raise ValueError(f"k must lie in 1..{n}")
    if t_value is None:
        t_value = max_available_size(n, d, budget)
    s = _scale(d, n) if d >= 1 else 1.0
    big = d >= 2 and math.log(n) >= 6 * d * math.log(d) ** 2
    text = "n >= d^(6 d log d)"
    return [
        BoundValue("subset_peeling_upper", "upper", k * math.log(max(8.0, 4 * math.e * t_value / k)), True, "1 <= k <= n"),
        BoundValue("subset_scaled_upper", "upper", k * (4 + math.log(max(1.0, s / k))), big, text),
        BoundValue("subset_power_upper", "upper", (2 * k + 4 * s) * math.log(2), big, text),
    ]


# --- reports ----------------------------------------------------------------


def _finite(bounds: list[BoundValue]) -> list[BoundValue]:
    out = []
    for b in bounds:
        if math.isfinite(b.log_value):
            out.append(b)
        else:
            log.debug("dropping %s: value not finite", b.name)
    return out


def report_bounds(d: int, n: int) -> list[BoundValue]:
    """Every bound and asymptotic that can be evaluated at (d, n), n >= 1."""
    out: list[BoundValue] = []
    out += classic_bounds(d, n)
    out += bpa_bounds(d, n)
    out += window_thm1(d, n)
    out += window_prop_weaker(d, n)

    if 2 * d > n**3:
        lo = log_binom(d + n - 2, d - 1)
        up = lo + math.log(2 * d) - math.log(2 * d - n**3)
        text = "d > n^3/2"
        out.append(BoundValue("large_dim_lower", "lower", lo, True, text))
        out.append(BoundValue("large_dim_upper", "upper", up, True, text))

    if 3 <= n <= MAX_COMPOSITION_N:
        out.append(BoundValue("composition_upper", "upper", lemma_main_upper(d, n), True, "n >= 3"))

    out.append(BoundValue("moderate_dim_upper", "upper", _prop_up_value(d, n), 4 * d <= n * n, "d <= n^2/4"))

    if n >= 2:
        total = prop_low_bound(d, n - 1).total
        if total > 0:
            out.append(BoundValue("pair_cube_lower", "lower", log_int(total), True, "sum of pair-cube counts for n-1"))

    xi = d / (n * n)
    out.append(
        BoundValue("sparse_upper", "upper", _prop4_value(d, n, xi), xi >= 2 / n, "d >= xi n^2, xi = d/n^2 >= 2/n")
    )

    if d == 2:
        out.append(BoundValue("hardy_ramanujan", "asymptotic", hr_asymptotic_p2(n), True, "d = 2, n -> inf"))
    if d == 3:
        out.append(BoundValue("wright", "asymptotic", wright_asymptotic_p3(n), True, "d = 3, n -> inf"))
    if d > n:
        out.append(
            BoundValue(
                "top_order_high_dim", "asymptotic", (n - 1) * (math.log(d) - math.log(n) + 1),
                d > n * n, "d/n^2 -> inf; error o(n)",
            )
        )
    out.append(BoundValue("n_log_n", "asymptotic", n * math.log(n), n <= d <= n * n, "n <~ d <~ n^2; error o(n log n)"))
    return _finite(out)


def bound_report(d: int, n: int, budget=None, method: str = "auto") -> BoundReport:
    """Exact count (if within budget) plus every applicable bound.

    Raises BoundViolation if a bound whose precondition holds fails to
    bracket the exact value.
    """
    if d < 2 or n < 0:
        raise ValueError("need d >= 2 and n >= 0")
    try:
        exact = count_exact(d, n, method, budget).value
    except BudgetExceeded:
        exact = None
    log_exact = None if exact is None else log_int(exact)
    report = BoundReport(d, n, exact, log_exact, report_bounds(d, n) if n >= 1 else [])
    bad = report.violations()
    if bad:
        names = ", ".join(b.name for b in bad)
        raise BoundViolation(f"bounds {names} do not bracket p_{d}({n}) = {exact}")
    return report
