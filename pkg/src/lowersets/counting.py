"""Exact values of p_d(n), the number of d-dimensional lower sets of size n.

Four independent routes are provided and are expected to agree:

* ``enum``   -- canonical generation, one node per lower set;
* ``dp``     -- chains of nested (d-1)-dimensional slices, memoized;
* ``series`` -- product generating functions (d = 2, 3 only);
* ``decomp`` -- p_d(n) = sum_j C(d, j) q_j(n), where q_j(n) counts the
  j-dimensional sets that touch every axis.  Cheap at any d once n is small.

All arithmetic on counts is exact integer arithmetic.
"""

from __future__ import annotations

import csv
import io
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .lattice import LowerSet, Point, _peel_states, maximal_available_subset

DEFAULT_BUDGET = 10**8
DEFAULT_MEMO_CAP = 1 << 20

METHODS = ("auto", "enum", "dp", "series", "decomp")
FAMILIES = ("euler", "macmahon", "macmahon-conjecture")


class BudgetExceeded(RuntimeError):
    """Raised when a computation would visit more nodes than allowed."""

    def __init__(self, budget: int, what: str = "nodes"):
        super().__init__(f"work budget of {budget} {what} exceeded")
        self.budget = budget


class Budget:
    def __init__(self, limit: int = DEFAULT_BUDGET):
        self.limit = limit
        self.used = 0

    def tick(self, k: int = 1) -> None:
        self.used += k
        if self.used > self.limit:
            raise BudgetExceeded(self.limit)


def _as_budget(budget: int | Budget | None) -> Budget:
    if isinstance(budget, Budget):
        return budget
    return Budget(DEFAULT_BUDGET if budget is None else budget)


# --- canonical generation -------------------------------------------------

Cand = tuple[int, Point]  # (coordinate sum, point), so tuples sort canonically


def _new_cands(p: Point, s: int, d: int, members: set[Point], within) -> list[Cand]:
    # Points that become addable once p is present: only upper neighbours of p.
    out = []
    for i in range(d):
        q = p[:i] + (p[i] + 1,) + p[i + 1 :]
        if within is not None and q not in within:
            continue
        for j in range(d):
            if j != i and q[j] and q[:j] + (q[j] - 1,) + q[j + 1 :] not in members:
                break
        else:
            out.append((s + 1, q))
    return out


def _grow(d: int, max_size: int, budget: Budget, within=None) -> Iterator[list[Point]]:
    """Yield every d-dim lower set of size <= max_size (optionally inside ``within``).

    Points are added in strictly increasing canonical order, so each set
    is produced exactly once, as its canonical point list.  The yielded
    list is live; copy it to keep it.
    """
    origin = (0,) * d
    cells: list[Point] = []
    members: set[Point] = set()

    def rec(cands: list[Cand]) -> Iterator[list[Point]]:
        budget.tick()
        yield cells
        if len(cells) == max_size:
            return
        for idx, (s, p) in enumerate(cands):
            cells.append(p)
            members.add(p)
            child = cands[idx + 1 :] + _new_cands(p, s, d, members, within)
            child.sort()
            yield from rec(child)
            members.discard(p)
            cells.pop()

    start = [] if within is not None and origin not in within else [(0, origin)]
    return rec(start)


def _grow_count(d: int, n: int, budget: Budget, cells: list[Point], cands: list[Cand]) -> list[int]:
    # Size histogram 0..n of all sets reachable from the given canonical prefix.
    counts = [0] * (n + 1)
    members = set(cells)

    def rec(size: int, cands: list[Cand]) -> None:
        budget.tick()
        counts[size] += 1
        if size == n:
            return
        for idx, (s, p) in enumerate(cands):
            members.add(p)
            child = cands[idx + 1 :] + _new_cands(p, s, d, members, None)
            child.sort()
            rec(size + 1, child)
            members.discard(p)

    rec(len(cells), cands)
    return counts


def enumerate_lower_sets(d: int, n: int, budget: int | Budget | None = None) -> Iterator[LowerSet]:
    """Each d-dimensional lower set of cardinality n, exactly once."""
    if d < 1 or n < 0:
        raise ValueError("need d >= 1 and n >= 0")
    b = _as_budget(budget)
    if n <= 1:
        return iter([LowerSet.empty(d) if n == 0 else LowerSet.origin(d)])
    if d > b.limit:
        # Already p_d(2) = d sets; refuse before allocating d-tuples.
        raise BudgetExceeded(b.limit)
    gen = _grow(d, n, b)
    return (LowerSet._from_cells(d, cells) for cells in gen if len(cells) == n)


def _origin_children(d: int) -> list[tuple[list[Point], list[Cand]]]:
    # One (prefix, candidates) seed per subtree below the singleton origin.
    origin = (0,) * d
    units = sorted((1, origin[:i] + (1,) + origin[i + 1 :]) for i in range(d))
    seeds = []
    for idx, (s, p) in enumerate(units):
        members = {origin, p}
        cands = units[idx + 1 :] + _new_cands(p, s, d, members, None)
        cands.sort()
        seeds.append(([origin, p], cands))
    return seeds


def _count_subtree(args) -> tuple[int, int]:
    d, n, limit, cells, cands = args
    b = Budget(limit)
    return _grow_count(d, n, b, cells, cands)[n], b.used


def count_by_enumeration(d: int, n: int, budget: int | Budget | None = None, workers: int = 1) -> int:
    """p_d(n) by canonical generation.

    With ``workers > 1`` the subtrees below the singleton origin are
    counted in separate processes; the budget check is applied to the
    summed node count, so the refusal point does not depend on scheduling.
    """
    b = _as_budget(budget)
    if n <= 1:
        b.tick(n + 1)
        return 1
    if workers <= 1:
        return _grow_count(d, n, b, [], [(0, (0,) * d)])[n]
    jobs = [(d, n, b.limit, cells, cands) for cells, cands in _origin_children(d)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(_count_subtree, jobs))
    b.tick(2 + sum(used for _, used in results))
    return sum(value for value, _ in results)


# --- nested-slice dynamic programme ---------------------------------------


def count_by_slices(
    d: int, n: int, budget: int | Budget | None = None, memo_cap: int = DEFAULT_MEMO_CAP
) -> int:
    """p_d(n) as the number of chains L_0 ⊇ L_1 ⊇ ... of (d-1)-dim lower sets
    whose sizes add up to n.

    ``chains(L, r)`` counts the ways to continue a chain below slice L with
    r points still to place; it is memoized on (canonical L, r).
    """
    b = _as_budget(budget)
    if n == 0 or d == 1:
        b.tick()
        return 1
    e = d - 1

    @lru_cache(maxsize=memo_cap)
    def chains(L: tuple[Point, ...] | None, r: int) -> int:
        b.tick()
        if r == 0:
            return 1
        within = None if L is None else frozenset(L)
        cap = r if L is None else min(r, len(L))
        total = 0
        for sub in _grow(e, cap, b, within):
            if sub:
                total += chains(tuple(sub), r - len(sub))
        return total

    return chains(None, n)


# --- essential-dimension decomposition -----------------------------------


def _touching_all_axes(j: int, n: int, budget: Budget) -> int:
    # Lower sets in Z_+^j of size n containing e_1..e_j.  Their canonical
    # order starts with the origin followed by all unit vectors.
    if j == 0:
        return 1 if n <= 1 else 0
    if n < j + 1:
        return 0
    origin = (0,) * j
    units = sorted(origin[:i] + (1,) + origin[i + 1 :] for i in range(j))
    cells = [origin] + units
    members = set(cells)
    cands: list[Cand] = []
    for p in units:
        cands.extend(c for c in _new_cands(p, 1, j, members, None) if c not in cands)
    cands.sort()
    return _grow_count(j, n, budget, cells, cands)[n]


def essential_counts(
    n: int, j_max: int | None = None, budget: int | Budget | None = None, method: str = "direct"
) -> list[int]:
    """q_j(n) for j = 0..j_max: j-dim lower sets of size n using every axis.

    ``direct`` generates those sets starting from {0, e_1, ..., e_j};
    ``inclusion-exclusion`` uses q_j(n) = sum_i (-1)^(j-i) C(j, i) p_i(n)
    with p_i(n) from the slice DP.  p_d(n) = sum_j C(d, j) q_j(n).
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    top = max(n - 1, 0)
    if j_max is None:
        j_max = top
    if not 0 <= j_max <= top:
        raise ValueError(f"j_max must lie in 0..{top}")
    b = _as_budget(budget)
    if n == 0:
        return [1]
    if method == "direct":
        return [_touching_all_axes(j, n, b) for j in range(j_max + 1)]
    if method == "inclusion-exclusion":
        p = [1 if n <= 1 else 0] + [count_by_slices(i, n, b) for i in range(1, j_max + 1)]
        return [
            sum((-1) ** (j - i) * math.comb(j, i) * p[i] for i in range(j + 1))
            for j in range(j_max + 1)
        ]
    raise ValueError(f"unknown method {method!r}")


def count_by_decomposition(d: int, n: int, budget: int | Budget | None = None) -> int:
    b = _as_budget(budget)
    if n == 0:
        return 1
    q = essential_counts(n, min(d, n - 1), b)
    return sum(math.comb(d, j) * qj for j, qj in enumerate(q))


# --- generating functions -------------------------------------------------


def series_exponent(family: str, d: int, k: int) -> int:
    if family == "euler":
        return 1
    if family == "macmahon":
        return k
    if family == "macmahon-conjecture":
        return math.comb(k + d - 3, k - 1)
    raise ValueError(f"unknown family {family!r}")


@dataclass(frozen=True)
class SeriesTable:
    family: str
    d: int
    max_n: int
    coeffs: tuple[int, ...]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "coefficient"])
        for i, c in enumerate(self.coeffs):
            w.writerow([i, str(c)])
        return buf.getvalue()

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "d": self.d,
            "max_n": self.max_n,
            "coeffs": [str(c) for c in self.coeffs],
        }


def _times_inverse_power(c: list[int], k: int, e: int) -> list[int]:
    """c(x) * (1 - x^k)^(-e), truncated to len(c)."""
    N = len(c)
    if e == 0:
        return c
    if e * k <= N:
        # e passes of the in-place geometric-series update.
        c = list(c)
        for _ in range(e):
            for i in range(k, N):
                c[i] += c[i - k]
        return c
    # Otherwise multiply by the binomial series sum_j C(e+j-1, j) x^(kj).
    binoms = [1]
    for j in range(1, (N - 1) // k + 1):
        binoms.append(binoms[-1] * (e + j - 1) // j)
    out = [0] * N
    for i in range(N):
        acc = 0
        for j in range(i // k + 1):
            acc += binoms[j] * c[i - k * j]
        out[i] = acc
    return out


def series_expand(family: str, d: int | None, max_n: int) -> SeriesTable:
    """Coefficients of prod_{k>=1} (1 - x^k)^(-e_k) up to x^max_n.

    e_k = 1 (euler), k (macmahon), or C(k+d-3, k-1) (macmahon-conjecture).
    """
    if max_n < 0:
        raise ValueError("max_n must be nonnegative")
    if family == "euler":
        d = 2
    elif family == "macmahon":
        d = 3
    elif family == "macmahon-conjecture":
        if d is None or d < 2:
            raise ValueError("macmahon-conjecture needs d >= 2")
    else:
        raise ValueError(f"unknown family {family!r}")
    c = [1] + [0] * max_n
    for k in range(1, max_n + 1):
        c = _times_inverse_power(c, k, series_exponent(family, d, k))
    return SeriesTable(family, d, max_n, tuple(c))


# --- front door -----------------------------------------------------------


@dataclass(frozen=True)
class CountResult:
    d: int
    n: int
    value: int
    method: str

    def to_json(self) -> dict:
        return {"d": self.d, "n": self.n, "value": str(self.value), "method": self.method}


def choose_method(d: int, n: int) -> str:
    if d in (2, 3):
        return "series"
    if d > n:
        return "decomp"
    return "dp"


def count_exact(
    d: int, n: int, method: str = "auto", budget: int | Budget | None = None, workers: int = 1
) -> CountResult:
    if d < 1 or n < 0:
        raise ValueError("need d >= 1 and n >= 0")
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}")
    if method == "auto":
        method = choose_method(d, n)
    b = _as_budget(budget)
    if method == "series":
        if d not in (2, 3):
            raise ValueError("series method only exists for d = 2 and d = 3")
        b.tick(n + 1)
        value = series_expand("euler" if d == 2 else "macmahon", d, n).coeffs[n]
    elif method == "enum":
        value = count_by_enumeration(d, n, b, workers=workers)
    elif method == "dp":
        value = count_by_slices(d, n, b)
    else:
        value = count_by_decomposition(d, n, b)
    return CountResult(d, n, value, method)


def subset_count(S: LowerSet, k: int, budget: int | Budget | None = None) -> int:
    """C(Q, k, d): number of lower subsets of S with at least |S| - k points."""
    b = _as_budget(budget)
    total = 0
    for _ in _peel_states(S, k):
        b.tick()
        total += 1
    return total


def max_available_size(n: int, d: int, budget: int | Budget | None = None) -> int:
    """T(n): the largest |M(Q)| over d-dimensional lower sets with |Q| = n."""
    if n < 1:
        raise ValueError("T(n) needs n >= 1")
    if n == 1:
        return 1
    return max(len(maximal_available_subset(S)) for S in enumerate_lower_sets(d, n, budget))


T = max_available_size


def budget_from_env(default: int = DEFAULT_BUDGET) -> int:
    raw = os.environ.get("LOWERSET_BUDGET")
    return int(raw) if raw else default
