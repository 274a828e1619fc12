import numpy as np
import pytest

from srenyi import from_counts, normalize

from support import UCB_COUNTS, UCB_LABELS


@pytest.fixture
def rng():
    return np.random.default_rng(42)


@pytest.fixture
def ucb_counts():
    """Admission counts of the six-college worked example."""
    return from_counts(UCB_LABELS, UCB_COUNTS)


@pytest.fixture
def ucb_dist(ucb_counts):
    return normalize(ucb_counts)


@pytest.fixture
def uniform6():
    return normalize(from_counts(UCB_LABELS, (1,) * 6))
