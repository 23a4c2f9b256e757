import random

import pytest
from hypothesis import settings, strategies as st

from mbrace.scalars import Element, GradedSpace

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

EXT = GradedSpace.from_basis("ext", [("1", 0), ("th", 1)])
MIXED = GradedSpace.from_basis("mixed", [("u", 0), ("v", 1), ("w", -1)])


@pytest.fixture
def rng():
    return random.Random(1234)


degrees = st.integers(min_value=-3, max_value=3)


@st.composite
def elements(draw, space=MIXED, length=None, max_terms=3):
    n = draw(st.integers(0, 3)) if length is None else length
    words = st.tuples(*[st.integers(0, space.dim - 1)] * n)
    terms = draw(st.dictionaries(words, st.integers(-3, 3), max_size=max_terms))
    return Element(space, terms)


# one line per acceptance criterion, repeated at the end of the run
CRITERIA = []


def pytest_terminal_summary(terminalreporter):
    if CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in sorted(CRITERIA, key=lambda l: int(l.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
