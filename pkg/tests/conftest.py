import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from hopfad.scalar import QQ, Cyclotomic, PrimeField, RationalFunctions

settings.register_profile(
    "default",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("default")

FIELDS = [QQ, PrimeField(5), PrimeField(7), Cyclotomic(3), Cyclotomic(4), RationalFunctions(), RationalFunctions(PrimeField(5))]


def scalars(field, size=3):
    """Hypothesis strategy drawing elements through the field's own sampler."""
    return st.integers(0, 2**32 - 1).map(lambda s: field.random_element(random.Random(s), size))


@pytest.fixture
def rng():
    return random.Random(12345)
