import pytest

from sievefilters import corpus
from sievefilters.fincat import order_closure
from sievefilters.frames import frame_from_poset


@pytest.fixture(scope="session")
def cats():
    return corpus.categories()


@pytest.fixture(scope="session")
def pt(cats):
    return cats["PT"]


@pytest.fixture(scope="session")
def pp(cats):
    return cats["PP"]


@pytest.fixture(scope="session")
def m1(cats):
    return cats["M1"]


@pytest.fixture(scope="session")
def b2(cats):
    return cats["B2"]


@pytest.fixture(scope="session")
def pt_j(pt):
    return corpus.pt_topology(pt)


def make_frame(name):
    elems, cov = corpus.LATTICES[name]
    return frame_from_poset(elems, order_closure(elems, cov))


@pytest.fixture(scope="session")
def b2_frame():
    return make_frame("B2")


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
