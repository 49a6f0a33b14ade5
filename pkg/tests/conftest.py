from fractions import Fraction

import pytest
from hypothesis import strategies as st

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=20)
small_rationals = st.fractions(min_value=-6, max_value=6, max_denominator=6)


@pytest.fixture
def ones4():
    return [Fraction(1)] * 10
