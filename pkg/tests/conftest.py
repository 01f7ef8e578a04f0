import hypothesis
import numpy as np
import pytest
from hypothesis import strategies as st

from timeless.qstate import DensityMatrix, PureState
from timeless.sampling import random_density, random_pure, random_spectrum

hypothesis.settings.register_profile("default", max_examples=60, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=10, deadline=None)
hypothesis.settings.load_profile("default")

seeds = st.integers(min_value=0, max_value=2**32 - 1)
dims = st.integers(min_value=1, max_value=6)


@st.composite
def states_and_spectra(draw, max_d=6):
    """(rng-seeded) random mixed state with a matching, often degenerate, spectrum."""
    rng = np.random.default_rng(draw(seeds))
    d = draw(st.integers(min_value=1, max_value=max_d))
    rank = draw(st.integers(min_value=1, max_value=d))
    return random_density(rng, d, rank), random_spectrum(rng, d)


@st.composite
def pure_and_spectra(draw, max_d=6):
    rng = np.random.default_rng(draw(seeds))
    d = draw(st.integers(min_value=1, max_value=max_d))
    return random_pure(rng, d), random_spectrum(rng, d)


@pytest.fixture
def rng():
    return np.random.default_rng(20261015)


@pytest.fixture
def fig1_qubit():
    """sigma_00 = 0.2, sigma_01 = 0.25 in the eigenbasis of levels (0, 1)."""
    return DensityMatrix([[0.2, 0.25], [0.25, 0.8]])


@pytest.fixture
def qutrit_psi():
    return PureState([1 / np.sqrt(2), 0.5, 0.5])


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def criterion(request):
    """Record one acceptance line; the test's own asserts decide pass/fail."""
    marker = request.node.get_closest_marker("criterion")
    number, title = marker.args
    notes: list[str] = []
    yield notes.append
    failed = getattr(request.node, "rep_call", None) is None or request.node.rep_call.failed
    status = "FAIL" if failed else "PASS"
    detail = f" ({'; '.join(notes)})" if notes else ""
    ACCEPTANCE_LINES.append(f"[{status}] criterion {number:>2}: {title}{detail}")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda l: int(l.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
