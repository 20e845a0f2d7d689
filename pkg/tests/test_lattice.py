import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lowersets import (
    LowerSet,
    PartitionArray,
    dominates,
    enumerate_lower_subsets,
    from_partition_array,
    is_lower_set,
    maximal_available_subset,
    multi_slice_decomposition,
    random_lower_set,
    slices,
    to_partition_array,
)
from lowersets.lattice import DimensionMismatch, NotALowerSet

from oracles import all_lower_sets_bruteforce, lower_subsets_bruteforce, maximal_by_pairs


# --- dominance and closure ---------------------------------------------------


@pytest.mark.parametrize(
    "q, r, expected",
    [((1, 2), (1, 2), True), ((2, 0), (0, 1), False), ((3, 1, 1), (2, 0, 1), True)],
)
def test_dominates(q, r, expected):
    assert dominates(q, r) is expected


def test_dominates_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        dominates((1, 2), (1, 2, 3))


@pytest.mark.parametrize(
    "points, expected",
    [([(0, 0), (1, 0), (0, 1)], True), ([(1, 1)], False), ([], True)],
)
def test_is_lower_set(points, expected):
    assert is_lower_set(points) is expected


def test_is_lower_set_mixed_dimension():
    with pytest.raises(DimensionMismatch):
        is_lower_set([(0, 0), (0, 0, 0)])


def test_construction_rejects_duplicates_and_open_sets():
    with pytest.raises(ValueError, match="duplicate"):
        LowerSet.from_points(2, [(0, 0), (0, 0)])
    with pytest.raises(NotALowerSet):
        LowerSet.from_points(2, [(0, 0), (1, 1)])
    with pytest.raises(DimensionMismatch):
        LowerSet.from_points(3, [(0, 0)])


def test_canonical_form_is_order_independent():
    a = LowerSet.from_points(2, [(0, 1), (1, 0), (0, 0)])
    b = LowerSet.from_points(2, [(0, 0), (0, 1), (1, 0)])
    assert a == b and a.key() == b.key()
    assert a.points == ((0, 0), (0, 1), (1, 0))


def test_sparse_storage_in_huge_dimension():
    d = 10**9
    S = random_lower_set(d, 5, seed=1)
    assert S.dim == d
    assert S.width <= 4
    assert len(S) == 5


def test_text_round_trip(plane_partition_15):
    S = plane_partition_15
    assert LowerSet.from_text(3, S.to_text()) == S
    assert S.to_text().splitlines()[0] == "0 0 0"


# --- maximal available subset ---------------------------------------------------


def test_maximal_singleton():
    assert maximal_available_subset(LowerSet.origin(2)) == {(0, 0)}


def test_maximal_staircase(staircase):
    assert maximal_available_subset(staircase) == {(1, 0), (0, 1)}


def test_maximal_empty_rejected():
    with pytest.raises(ValueError):
        maximal_available_subset(LowerSet.empty(2))


def test_maximal_sliced_25_matches_pairwise_scan(sliced_25):
    fast = maximal_available_subset(sliced_25)
    assert fast == maximal_by_pairs(sliced_25.points)
    assert len(fast) == 6


def _assert_removable(S, M):
    # Any subset of M can be removed and leave a lower set.
    rest = set(S.points)
    for p in M:
        rest.discard(p)
        assert is_lower_set(rest)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 6), st.integers(1, 14), st.integers(0, 2**32 - 1))
def test_maximal_is_antichain_covering_the_rest(d, n, seed):
    S = random_lower_set(d, n, seed)
    M = maximal_available_subset(S)
    for p in M:
        for q in M:
            if p != q:
                assert not dominates(p, q)
    for p in S.points:
        if p not in M:
            assert any(q != p and dominates(q, p) for q in S.points)
    _assert_removable(S, sorted(M))
    assert len(M) ** d <= d**d * n ** (d - 1)


# --- slices -----------------------------------------------------------------


def test_slices_plane_partition(plane_partition_15):
    layers = slices(plane_partition_15, 1)
    assert [len(L) for L in layers] == [10, 4, 1]
    assert all(L.dim == 2 for L in layers)


def test_slices_sliced_25_total(sliced_25):
    layers = slices(sliced_25, 1)
    assert sum(len(L) for L in layers) == 25
    assert [len(L) for L in layers][:3] == [8, 6, 5]


def test_slices_of_a_column_bottom_out_in_dimension_zero():
    column = LowerSet.from_points(1, [(0,), (1,), (2,)])
    layers = slices(column, 1)
    assert [len(L) for L in layers] == [1, 1, 1]
    assert all(L.dim == 0 and L == LowerSet.origin(0) for L in layers)


def test_slices_axis_range(staircase):
    with pytest.raises(ValueError):
        slices(staircase, 3)
    with pytest.raises(ValueError):
        slices(staircase, 0)


@settings(max_examples=150, deadline=None)
@given(st.integers(2, 5), st.integers(1, 14), st.integers(0, 2**32 - 1), st.data())
def test_slices_nested_and_recover(d, n, seed, data):
    S = random_lower_set(d, n, seed)
    axis = data.draw(st.integers(1, d))
    layers = slices(S, axis)
    sizes = [len(L) for L in layers]
    assert sizes == sorted(sizes, reverse=True)
    for upper, lower in zip(layers, layers[1:]):
        assert lower.is_subset(upper)
    rebuilt = {p[: axis - 1] + (i,) + p[axis - 1 :] for i, L in enumerate(layers) for p in L.points}
    assert rebuilt == set(S.points)


# --- residual slices --------------------------------------------------------


def test_multi_slice_worked_example(sliced_25):
    fam = multi_slice_decomposition(sliced_25, (3, 3, 3))
    sizes = fam.sizes()
    assert [sizes[(1, i)] for i in range(3)] == [8, 6, 5]
    assert [sizes[(2, i)] for i in range(3)] == [3, 1, 1]
    assert [sizes[(3, i)] for i in range(3)] == [1, 0, 0]
    assert not fam.remainder
    assert all(s.dim == 2 for s in fam.slices.values())


def test_multi_slice_singleton():
    fam = multi_slice_decomposition(LowerSet.origin(3), (2, 2, 2))
    sizes = fam.sizes()
    assert sizes[(1, 0)] == 1
    assert sum(sizes.values()) == 1


def test_multi_slice_staircase(staircase):
    # Direct set arithmetic: axis 1 takes q_1 = 0 -> {(0,0),(0,1)}, q_1 = 1 -> {(1,0)};
    # nothing has q_1 >= 2, so the axis-2 slices are empty.
    fam = multi_slice_decomposition(staircase, (2, 2))
    assert fam.sizes() == {(1, 0): 2, (1, 1): 1, (2, 0): 0, (2, 1): 0}


def test_multi_slice_reports_remainder():
    square = LowerSet.from_points(2, [(0, 0), (1, 0), (0, 1), (1, 1)])
    fam = multi_slice_decomposition(square, (1, 1))
    assert fam.remainder == {(1, 1)}
    assert sum(fam.sizes().values()) + len(fam.remainder) == 4


@settings(max_examples=150, deadline=None)
@given(st.integers(2, 4), st.integers(1, 14), st.integers(0, 2**32 - 1), st.data())
def test_multi_slice_partitions_the_set(d, n, seed, data):
    S = random_lower_set(d, n, seed)
    ks = data.draw(st.lists(st.integers(1, 4), min_size=d, max_size=d))
    fam = multi_slice_decomposition(S, ks)
    assert sum(fam.sizes().values()) + len(fam.remainder) == n
    prod = 1
    for k in ks:
        prod *= k + 1
    if prod > n:
        assert not fam.remainder
    for (p, i), L in fam.slices.items():
        assert is_lower_set(L.points)


# --- partition arrays -------------------------------------------------------


def test_partition_array_plane_partition(plane_partition_15):
    arr = to_partition_array(plane_partition_15)
    assert dict(arr.entries) == {(1, 1): 4, (1, 2): 3, (1, 3): 2, (1, 4): 1, (2, 1): 3, (2, 2): 1, (3, 1): 1}
    assert arr.total() == 15


def test_partition_array_column():
    column = LowerSet.from_points(2, [(0, z) for z in range(5)])
    assert dict(to_partition_array(column).entries) == {(1,): 5}
    assert from_partition_array(PartitionArray(1, {(1,): 5})) == column


def test_partition_array_rejects_non_monotone():
    with pytest.raises(NotALowerSet):
        PartitionArray(2, {(1, 1): 1, (1, 2): 2})


def test_partition_array_empty():
    assert from_partition_array(PartitionArray(2, {})) == LowerSet.empty(3)
    assert to_partition_array(LowerSet.empty(3)).entries == {}


@pytest.mark.parametrize("seed", range(20))
def test_partition_array_round_trip(seed):
    S = random_lower_set(3, 12, seed)
    arr = to_partition_array(S)
    assert arr.total() == 12
    assert from_partition_array(arr) == S
    assert to_partition_array(from_partition_array(arr)) == arr


# --- lower subsets ----------------------------------------------------------


def _as_sets(subsets):
    return sorted((frozenset(s.points) for s in subsets), key=lambda s: (len(s), sorted(s)))


def test_lower_subsets_staircase_k1(staircase):
    got = _as_sets(enumerate_lower_subsets(staircase, 1))
    assert got == _as_sets(
        [staircase, LowerSet.from_points(2, [(0, 0), (0, 1)]), LowerSet.from_points(2, [(0, 0), (1, 0)])]
    )


def test_lower_subsets_k0_is_identity(plane_partition_15):
    assert list(enumerate_lower_subsets(plane_partition_15, 0)) == [plane_partition_15]


def test_lower_subsets_square_k2():
    square = LowerSet.from_points(2, [(0, 0), (1, 0), (0, 1), (1, 1)])
    got = list(enumerate_lower_subsets(square, 2))
    assert sorted(len(s) for s in got) == [2, 2, 3, 4]
    brute = [s for s in lower_subsets_bruteforce(square.points) if len(s) >= 2]
    assert len(brute) == 4


def test_lower_subsets_k_range(staircase):
    with pytest.raises(ValueError):
        enumerate_lower_subsets(staircase, 4)


@pytest.mark.parametrize("d,n", [(2, 5), (2, 6), (3, 4), (3, 5)])
def test_lower_subsets_match_power_set_filter(d, n):
    for pts in all_lower_sets_bruteforce(d, n):
        S = LowerSet.from_points(d, pts)
        for k in range(n + 1):
            got = list(enumerate_lower_subsets(S, k))
            keys = {g.key() for g in got}
            assert len(keys) == len(got)
            brute = [s for s in lower_subsets_bruteforce(pts) if len(s) >= n - k]
            assert len(got) == len(brute)
            assert {frozenset(g.points) for g in got} == set(brute)


def test_lower_subsets_random_sets_up_to_12():
    rng = random.Random(5)
    for _ in range(10):
        d = rng.randint(2, 4)
        n = rng.randint(6, 12)
        S = random_lower_set(d, n, rng.randrange(10**6))
        brute = lower_subsets_bruteforce(S.points)
        assert len(list(enumerate_lower_subsets(S, n))) == len(brute)
