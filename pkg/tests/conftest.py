"""pytest plugin configuration.

https://docs.pytest.org/en/latest/writing_plugins.html#conftest-py-plugins
"""

# Third-Party Libraries
import pytest

# Geekpad Libraries
from balanced_lifts.config_loader import set_config_overrides
from balanced_lifts.fixture_loader import load_graph, load_partition, load_spec


def pytest_addoption(parser):
    """Add new commandline options to pytest."""
    parser.addoption(
        "--runslow", action="store_true", default=False, help="run slow tests"
    )


def pytest_configure(config):
    """Register new markers."""
    config.addinivalue_line("markers", "slow: mark test as slow")


def pytest_collection_modifyitems(config, items):
    """Modify collected tests based on custom marks and commandline options."""
    if config.getoption("--runslow"):
        # --runslow given in cli: do not skip slow tests
        return
    skip_slow = pytest.mark.skip(reason="need --runslow option to run")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def reset_config_state():
    """Reset global configuration overrides before and after each test."""
    set_config_overrides(None)
    yield
    set_config_overrides(None)


@pytest.fixture
def petersen():
    """Return the Petersen graph."""
    return load_graph("petersen")


@pytest.fixture
def ring4():
    """Return the undirected 4-cycle."""
    return load_graph("ring4")


@pytest.fixture
def ring4_opposite():
    """Return the partition of the 4-cycle into opposite pairs."""
    return load_partition("ring4_opposite")


@pytest.fixture
def double_edge():
    """Return two vertices joined by a double edge in each direction."""
    return load_graph("double_edge")


@pytest.fixture
def six_cell():
    """Return the six-cell symmetric graph with two hub vertices."""
    return load_graph("six_cell")


@pytest.fixture
def lift_feasible_quotient():
    """Return the three-vertex quotient with symmetric lift sizes (1, 3, 2)."""
    return load_graph("lift_feasible_quotient")


@pytest.fixture
def cubic_gradient_spec():
    """Return the cubic gradient coupling spec."""
    return load_spec("cubic_gradient_spec")


@pytest.fixture
def cubic_hamiltonian_spec():
    """Return the cubic Hamiltonian coupling spec."""
    return load_spec("cubic_hamiltonian_spec")
