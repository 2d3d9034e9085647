import pytest

from infolattice.events import build_event_lattice
from infolattice.io import running_example
from infolattice.reduction import build_reduced_poset


@pytest.fixture(scope="session")
def fig():
    return running_example()


@pytest.fixture(scope="session")
def fig_lattice(fig):
    return build_event_lattice(fig)


@pytest.fixture(scope="session")
def fig_reduced(fig, fig_lattice):
    return build_reduced_poset(fig, fig_lattice)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
