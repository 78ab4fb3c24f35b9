import pytest

from sidesum.oracle import grid_enumerate, grid_to_tiling
from sidesum.search import enumerate_max


@pytest.fixture(scope="session")
def result8():
    """The full n=8 enumeration, shared by the acceptance criteria: all
    optima up to symmetry plus every surviving leaf tiling for the audit.
    Results are worker-count invariant; two workers just run it faster."""
    return enumerate_max(8, all_optima=True, collect_leaves=True, workers=2)


@pytest.fixture(scope="session")
def small_search_results():
    """Exact maxima for the cheap instance sizes, shared across modules."""
    return {n: enumerate_max(n) for n in (1, 2, 3, 4, 5, 6, 7)}


@pytest.fixture(scope="session")
def oracle_tilings():
    """A corpus of verified tilings from the integer-grid oracle, used as
    independent test data for geometry properties."""
    corpus = []
    for n in (1, 4, 6, 7, 8):
        for board in range(1, 6):
            result = grid_enumerate(n, board)
            for witness in result.witnesses[:6]:
                corpus.append(grid_to_tiling(witness, board))
    return corpus
