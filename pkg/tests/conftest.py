import pytest
from hypothesis import HealthCheck, settings

from qnczero.constants import COMPARE_TOLERANCE
from qnczero.simulator.analysis import marginal_distribution
from qnczero.simulator.runner import coherent_run, run_branches, run_unitary

settings.register_profile("qnczero", derandomize=True, deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("qnczero")


def pytest_addoption(parser):
    parser.addoption("--skip-slow", action="store_true", default=False,
                     help="skip the exhaustive sweeps marked slow")


def pytest_collection_modifyitems(config, items):
    if not config.getoption("--skip-slow"):
        return
    skip = pytest.mark.skip(reason="--skip-slow given")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.fixture
def output_dists():
    """Output-register distributions: one per surviving branch, or one for a unitary/coherent run."""
    def run(circuit, x, mode="branches"):
        outputs = list(circuit.output_qubits)
        if mode == "coherent":
            return [marginal_distribution(coherent_run(circuit, x), outputs)]
        if mode == "unitary":
            return [marginal_distribution(run_unitary(circuit, x), outputs)]
        return [marginal_distribution(b.final_state, outputs) for b in run_branches(circuit, x)]
    return run


@pytest.fixture
def assert_output(output_dists):
    """Every distribution puts probability 1 on `expected`."""
    def check(circuit, x, expected, mode="branches"):
        dists = output_dists(circuit, x, mode)
        assert dists
        for dist in dists:
            assert dist.get(expected, 0.0) >= 1 - COMPARE_TOLERANCE, (x, expected, dist)
    return check
