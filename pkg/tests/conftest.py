import contextlib
import os
import time

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    max_examples=int(os.environ.get("QTGROTH_EXAMPLES", "60")),
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

_CRITERIA = []


def pytest_addoption(parser):
    parser.addoption("--seed", type=int, default=20240611, help="seed for randomized tests")


def pytest_generate_tests(metafunc):
    if "seed" in metafunc.fixturenames:
        metafunc.parametrize("seed", [metafunc.config.getoption("--seed")])


@pytest.fixture
def criterion():
    """Time a numbered acceptance criterion and fail it when over budget."""

    @contextlib.contextmanager
    def timed(number, name, budget):
        start = time.perf_counter()
        ok = False
        try:
            yield
            ok = True
        finally:
            seconds = time.perf_counter() - start
            passed = ok and seconds < budget
            line = f"[{'PASS' if passed else 'FAIL'}] {number:2d} {name}: {seconds:.2f}s (budget {budget:g}s)"
            _CRITERIA.append((number, line))
            print(line)
        assert seconds < budget, f"criterion {number} took {seconds:.2f}s, budget {budget}s"

    return timed


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(_CRITERIA):
            terminalreporter.write_line(line)
