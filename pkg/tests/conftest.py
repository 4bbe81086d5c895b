import random

import pytest

from widgets.config import Settings


@pytest.fixture
def rng():
    return random.Random(20240607)


@pytest.fixture
def small_settings():
    return Settings(selftest={"max_k": 4, "tower_max_k": 4, "random_samples": 5, "snf_samples": 5, "seed": 7})
