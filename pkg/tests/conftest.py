import pytest
from hypothesis import settings, strategies as st

from lorenzgame import fixture_path, random_game, random_supermodular_game, read_game

settings.register_profile("default", deadline=None, max_examples=40)
settings.load_profile("default")


@pytest.fixture(scope="session")
def ex46():
    return read_game(fixture_path("ex46.json"))


@pytest.fixture(scope="session")
def ex29():
    return read_game(fixture_path("ex29.json"))


@pytest.fixture(scope="session")
def ex41_2p():
    return read_game(fixture_path("ex41-2p.json"))


@pytest.fixture(scope="session")
def ex41_3p():
    return read_game(fixture_path("ex41-3p.json"))


def convex_games(max_n=4, max_bound=6):
    return st.builds(random_supermodular_game, seed=st.integers(0, 10**6),
                     n=st.integers(2, max_n), weight_bound=st.integers(1, max_bound))


def any_games(max_n=4):
    return st.builds(random_game, seed=st.integers(0, 10**6), n=st.integers(2, max_n),
                     weight_bound=st.integers(1, 5), noise=st.integers(1, 3))


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
