import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from bilintransfer import FiniteSequence

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

# magnitudes kept away from the subnormal range so powers do not underflow
finite = st.floats(-10, 10, allow_nan=False, allow_infinity=False).filter(
    lambda x: x == 0 or abs(x) > 1e-30)
entries = st.builds(complex, finite, finite)


@st.composite
def sequences(draw, max_len=12, min_len=0, offset=st.integers(-8, 8)):
    vals = draw(st.lists(entries, min_size=min_len, max_size=max_len))
    return FiniteSequence(draw(offset), vals)


def random_sequence(rng, radius=8, real=False):
    n = 2 * radius + 1
    v = rng.standard_normal(n)
    if not real:
        v = v + 1j * rng.standard_normal(n)
    return FiniteSequence(-radius, v)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
