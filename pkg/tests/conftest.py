import pytest
from hypothesis import HealthCheck, settings, strategies as st

from cablekill.words import Alphabet, reduce

# Fixed seed: every property runs the same 1000 cases each time.
settings.register_profile(
    "default", max_examples=1000, derandomize=True, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

ABC = Alphabet(("x1", "x2", "x3"))


def raw_words(alphabet=ABC, max_size=8, max_exp=4):
    letter = st.tuples(st.integers(0, len(alphabet) - 1), st.integers(-max_exp, max_exp))
    return st.lists(letter, max_size=max_size)


def words(alphabet=ABC, max_size=8, max_exp=4):
    return raw_words(alphabet, max_size, max_exp).map(lambda raw: reduce(raw, alphabet))


@pytest.fixture
def abc():
    return ABC
