import numpy as np
import pytest
from hypothesis import HealthCheck, settings

# every property test draws at least 100 random cases
settings.register_profile(
    "cryomux",
    max_examples=150,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("cryomux")


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
