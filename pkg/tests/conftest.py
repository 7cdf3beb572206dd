import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from dimscope.metrics import distance_matrix
from dimscope.synth import two_pair_fixture


@pytest.fixture(scope="session")
def two_pair_dataset():
    return two_pair_fixture()


@pytest.fixture(scope="session")
def two_pair_distances(two_pair_dataset):
    return distance_matrix(two_pair_dataset)


@pytest.fixture()
def rng():
    return np.random.default_rng(20240817)
