import pytest
from hypothesis import settings

from hopfore.characters import make_context

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def fin2_ctx():
    """G = Z/2, a = generator, chi = (-1): q = -1, s = 2."""
    return make_context([2], [1], [-1])


def fin3_ctx():
    """G = Z/3, a = generator, chi = (zeta_3): s = 3."""
    return make_context([3], [1], ["z"])


def inf_ctx():
    """G = Z, a = generator, chi = (1/2): q = 2."""
    return make_context([0], [1], ["1/2"])


def square_ctx(s):
    """G = Z/s^2, a = generator, chi = zeta_{s^2}^s, so chi(a) is a primitive s-th root."""
    return make_context([s * s], [1], [f"z^{s}"])


@pytest.fixture(scope="session")
def fin2():
    return fin2_ctx()


@pytest.fixture(scope="session")
def fin3():
    return fin3_ctx()


@pytest.fixture(scope="session")
def inf():
    return inf_ctx()


@pytest.fixture(scope="session")
def z4():
    return square_ctx(2)


@pytest.fixture(scope="session")
def z9():
    return square_ctx(3)


# acceptance summary: test_acceptance.py records one line per criterion here
ACCEPTANCE_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for key in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[key])
