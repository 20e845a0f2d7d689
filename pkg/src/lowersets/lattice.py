"""Lower sets in Z_+^d and the structural operations on them.

A lower set is stored canonically: its points are sorted by
(coordinate sum, lexicographic) and trimmed to the smallest width that
holds every nonzero coordinate.  The dimension is kept as separate
metadata, so a set living in a huge dimension costs no more than the axes
it actually uses.  Every prefix of the canonical order is itself a lower
set, which is what the generators below rely on.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

Point = tuple[int, ...]


class DimensionMismatch(ValueError):
    pass


class NotALowerSet(ValueError):
    pass


def _key(p: Point) -> tuple[int, Point]:
    return (sum(p), p)


def _trim(p: Sequence[int], width: int) -> Point:
    return tuple(p[:width])


def _pad(p: Point, width: int) -> Point:
    if len(p) >= width:
        return p
    return p + (0,) * (width - len(p))


def _check_point(p: Sequence[int], dim: int) -> Point:
    p = tuple(p)
    if len(p) != dim:
        raise DimensionMismatch(f"point {p} does not have dimension {dim}")
    if any((not isinstance(c, int)) or c < 0 for c in p):
        raise ValueError(f"point {p} must have nonnegative integer coordinates")
    return p


def dominates(q: Sequence[int], r: Sequence[int]) -> bool:
    """True iff q_i >= r_i on every axis."""
    if len(q) != len(r):
        raise DimensionMismatch(f"cannot compare {tuple(q)} and {tuple(r)}")
    return all(a >= b for a, b in zip(q, r))


def _closed(cells: Iterable[Point], members: set[Point] | frozenset[Point]) -> bool:
    for p in cells:
        for i, c in enumerate(p):
            if c and p[:i] + (c - 1,) + p[i + 1 :] not in members:
                return False
    return True


def is_lower_set(points: Iterable[Sequence[int]]) -> bool:
    """True iff the given points form a downward-closed set."""
    pts = [tuple(p) for p in points]
    if not pts:
        return True
    dim = len(pts[0])
    if any(len(p) != dim for p in pts):
        raise DimensionMismatch("points of mixed dimension")
    return _closed(pts, set(pts))


@dataclass(frozen=True)
class LowerSet:
    """A finite lower set in Z_+^dim.

    ``cells`` holds the points in canonical order, each truncated to
    ``width`` coordinates (all coordinates past ``width`` are zero).  Use
    :meth:`from_points` to build one from full-length points; ``points``
    gives them back padded to ``dim``.
    """

    dim: int
    cells: tuple[Point, ...]
    width: int = field(default=0)

    @classmethod
    def from_points(cls, dim: int, points: Iterable[Sequence[int]]) -> "LowerSet":
        if dim < 0:
            raise ValueError("dimension must be nonnegative")
        pts = [_check_point(p, dim) for p in points]
        members = set(pts)
        if len(members) != len(pts):
            raise ValueError("duplicate points in input")
        if not _closed(pts, members):
            raise NotALowerSet("points are not downward closed")
        return cls._from_cells(dim, pts)

    @classmethod
    def _from_cells(cls, dim: int, cells: Iterable[Point]) -> "LowerSet":
        # Internal constructor: cells are assumed closed and duplicate-free,
        # any common length, trailing zero axes allowed.
        cells = list(cells)
        width = 0
        for p in cells:
            for i in range(len(p) - 1, width - 1, -1):
                if p[i]:
                    width = i + 1
                    break
        trimmed = sorted((_pad(_trim(p, width), width) for p in cells), key=_key)
        return cls(dim, tuple(trimmed), width)

    @classmethod
    def empty(cls, dim: int) -> "LowerSet":
        return cls(dim, (), 0)

    @classmethod
    def origin(cls, dim: int) -> "LowerSet":
        return cls(dim, ((),), 0)

    def __len__(self) -> int:
        return len(self.cells)

    def __contains__(self, p: object) -> bool:
        if not isinstance(p, tuple) or len(p) != self.dim:
            return False
        if any(p[self.width :]):
            return False
        return p[: self.width] in self._members

    @property
    def _members(self) -> frozenset[Point]:
        cached = self.__dict__.get("_member_cache")
        if cached is None:
            cached = frozenset(self.cells)
            object.__setattr__(self, "_member_cache", cached)
        return cached

    @property
    def points(self) -> tuple[Point, ...]:
        return tuple(_pad(p, self.dim) for p in self.cells)

    def cells_at(self, width: int) -> list[Point]:
        """Cells padded (or truncated, if all extra axes are zero) to ``width``."""
        if width < self.width:
            raise ValueError("width smaller than the set's bounding box")
        return [_pad(p, width) for p in self.cells]

    def key(self) -> tuple[Point, ...]:
        """Hashable canonical form; equal sets in equal dimension give equal keys."""
        return self.cells

    def is_subset(self, other: "LowerSet") -> bool:
        if self.dim != other.dim:
            raise DimensionMismatch("lower sets of different dimension")
        return all(
            not any(p[other.width :]) and p[: other.width] in other._members
            for p in self.cells_at(max(self.width, other.width))
        )

    def to_text(self) -> str:
        """One point per line, coordinates space separated, canonical order."""
        return "".join(" ".join(map(str, p)) + "\n" for p in self.points)

    @classmethod
    def from_text(cls, dim: int, text: str) -> "LowerSet":
        pts = [tuple(int(c) for c in line.split()) for line in text.splitlines() if line.strip()]
        return cls.from_points(dim, pts)


def maximal_available_subset(S: LowerSet) -> frozenset[Point]:
    """The points of S not strictly dominated by another point of S.

    In a lower set a point is dominated by some other point exactly when
    one of its upper neighbours p + e_i is present, so a local scan
    suffices.
    """
    if not S.cells:
        raise ValueError("maximal available subset of an empty set")
    members = S._members
    w = S.width
    out = []
    for p in S.cells:
        if not any(p[:i] + (p[i] + 1,) + p[i + 1 :] in members for i in range(w)):
            out.append(_pad(p, S.dim))
    return frozenset(out)


def _drop_axis(p: Point, axis: int) -> Point:
    return p[:axis] + p[axis + 1 :]


def slices(S: LowerSet, axis: int) -> list[LowerSet]:
    """Layers S ∩ {q_axis = i}, i = 0, 1, ..., each as a (dim-1)-dimensional set.

    ``axis`` is 1-based.  Layers are nested and their sizes nonincreasing.
    """
    if not 1 <= axis <= S.dim:
        raise ValueError(f"axis {axis} outside 1..{S.dim}")
    a = axis - 1
    layers: dict[int, list[Point]] = {}
    for p in S.cells_at(max(S.width, a + 1)):
        layers.setdefault(p[a], []).append(_drop_axis(p, a))
    return [LowerSet._from_cells(S.dim - 1, layers[i]) for i in range(len(layers))]


@dataclass(frozen=True)
class SliceFamily:
    """Residual slices keyed by (axis, layer), 1-based axis, plus uncovered points.

    Each slice drops its own axis and shifts every earlier axis t down by
    k_t, which makes it a (dim-1)-dimensional lower set.
    """

    slices: Mapping[tuple[int, int], LowerSet]
    remainder: frozenset[Point]

    def sizes(self) -> dict[tuple[int, int], int]:
        return {key: len(s) for key, s in self.slices.items()}


def multi_slice_decomposition(S: LowerSet, counts: Sequence[int]) -> SliceFamily:
    """Split S into slices along each axis in turn.

    Slice (p, i) holds the points with q_p = i that were not claimed by
    an earlier axis t < p, i.e. those with q_t >= k_t for every t < p.
    Points never claimed are returned as the remainder; it is empty
    whenever prod(k_p + 1) > |S|.
    """
    if len(counts) != S.dim:
        raise DimensionMismatch("need one slice count per axis")
    if any(k < 1 for k in counts):
        raise ValueError("slice counts must be >= 1")
    d = S.dim
    w = S.width
    pending = list(S.cells)
    family: dict[tuple[int, int], LowerSet] = {}
    for a, k in enumerate(counts):
        buckets: dict[int, list[Point]] = {i: [] for i in range(k)}
        rest = []
        for p in pending:
            c = p[a] if a < w else 0
            if c < k:
                full = _pad(p, max(w, a + 1))
                shifted = tuple(x - counts[t] if t < a else x for t, x in enumerate(full))
                buckets[c].append(_drop_axis(shifted, a))
            else:
                rest.append(p)
        for i in range(k):
            family[(a + 1, i)] = LowerSet._from_cells(d - 1, buckets[i])
        pending = rest
    return SliceFamily(family, frozenset(_pad(p, d) for p in pending))


@dataclass(frozen=True)
class PartitionArray:
    """A (dim)-dimensional partition: heights on a 1-based index grid.

    ``entries`` maps index tuples (i_1, ..., i_dim), each i_k >= 1, to
    positive heights that are nonincreasing in every index.
    """

    dim: int
    entries: Mapping[tuple[int, ...], int]

    def __post_init__(self):
        for idx, h in self.entries.items():
            if len(idx) != self.dim or any(i < 1 for i in idx):
                raise ValueError(f"bad index {idx}")
            if not isinstance(h, int) or h < 1:
                raise ValueError(f"heights must be positive integers, got {h} at {idx}")
            for k in range(self.dim):
                if idx[k] > 1:
                    below = idx[:k] + (idx[k] - 1,) + idx[k + 1 :]
                    if self.entries.get(below, 0) < h:
                        raise NotALowerSet(f"partition array not monotone at {idx}")

    def total(self) -> int:
        return sum(self.entries.values())


def to_partition_array(S: LowerSet) -> PartitionArray:
    """Heights of S along its last axis over each base cell of the first dim-1 axes."""
    if S.dim < 1:
        raise ValueError("a partition array needs dim >= 1")
    heights: dict[tuple[int, ...], int] = {}
    for p in S.points:
        base = tuple(c + 1 for c in p[:-1])
        heights[base] = heights.get(base, 0) + 1
    return PartitionArray(S.dim - 1, heights)


def from_partition_array(A: PartitionArray) -> LowerSet:
    pts = []
    for idx, h in A.entries.items():
        base = tuple(i - 1 for i in idx)
        pts.extend(base + (z,) for z in range(h))
    return LowerSet.from_points(A.dim + 1, pts)


def _peel_states(S: LowerSet, k: int) -> Iterator[set[Point]]:
    # Yields the live member set (do not keep it) at every peeling state.
    n = len(S)
    if not 0 <= k <= n:
        raise ValueError(f"k={k} outside 0..{n}")
    w = S.width
    members = set(S.cells)
    order = {p: i for i, p in enumerate(S.cells)}

    def is_maximal(p: Point) -> bool:
        return not any(p[:i] + (p[i] + 1,) + p[i + 1 :] in members for i in range(w))

    def rec(last: int, removed: int) -> Iterator[set[Point]]:
        yield members
        if removed == k:
            return
        peelable = [q for q in members if order[q] < last and is_maximal(q)]
        for p in sorted(peelable, key=order.__getitem__, reverse=True):
            members.discard(p)
            yield from rec(order[p], removed + 1)
            members.add(p)

    return rec(n, 0)


def enumerate_lower_subsets(S: LowerSet, k: int) -> Iterator[LowerSet]:
    """Every lower subset of S with at least |S| - k points, each once.

    Subsets are reached by peeling points off S one at a time, always a
    maximal point and always in decreasing canonical order, so every
    intermediate state is a lower set and each subset has exactly one
    peeling sequence.
    """
    states = _peel_states(S, k)
    return (LowerSet._from_cells(S.dim, members) for members in states)
