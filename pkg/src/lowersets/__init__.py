"""Exact counting of multidimensional partitions (lower sets) and their bounds."""

from .bounds import BoundReport, BoundValue, BoundViolation, bound_report
from .counting import (
    Budget,
    BudgetExceeded,
    CountResult,
    SeriesTable,
    count_exact,
    enumerate_lower_sets,
    essential_counts,
    max_available_size,
    series_expand,
    subset_count,
)
from .lattice import (
    LowerSet,
    PartitionArray,
    dominates,
    enumerate_lower_subsets,
    from_partition_array,
    is_lower_set,
    maximal_available_subset,
    multi_slice_decomposition,
    slices,
    to_partition_array,
)
from .verify import SuiteResult, random_lower_set, run_suite

__version__ = "0.1.0"
