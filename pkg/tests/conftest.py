import sys
from pathlib import Path

import pytest

from lowersets import LowerSet, PartitionArray, from_partition_array

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture
def staircase():
    return LowerSet.from_points(2, [(0, 0), (1, 0), (0, 1)])


@pytest.fixture
def plane_partition_15():
    """The 15-cube plane partition with rows (4,3,2,1), (3,1), (1)."""
    heights = {(1, 1): 4, (1, 2): 3, (1, 3): 2, (1, 4): 1, (2, 1): 3, (2, 2): 1, (3, 1): 1}
    return from_partition_array(PartitionArray(2, heights))


@pytest.fixture
def sliced_25():
    """A 25-cube 3-d set whose residual slices with k = (3, 3, 3) have sizes
    8, 6, 5 / 3, 1, 1 / 1, matching the worked slicing example."""
    layer0 = [(0, 0), (1, 0), (2, 0), (3, 0), (0, 1), (1, 1), (2, 1), (0, 2)]
    layer1 = [(0, 0), (1, 0), (2, 0), (3, 0), (0, 1), (1, 1)]
    layer2 = [(0, 0), (1, 0), (2, 0), (3, 0), (0, 1)]
    pts = [(0,) + p for p in layer0] + [(1,) + p for p in layer1] + [(2,) + p for p in layer2]
    pts += [(3, 0, 0), (4, 0, 0), (5, 0, 0), (3, 1, 0), (3, 2, 0), (3, 3, 0)]
    return LowerSet.from_points(3, pts)


# One line per acceptance criterion, printed after the run.
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
