import sys
from pathlib import Path

import pytest

from olgrecycle.params import ModelParams

sys.path.insert(0, str(Path(__file__).parent))

BASE = dict(
    alpha=0.5, tau=0.5, beta=0.0, gamma=1.0, mu=0.2, z=0.1, theta=0.5,
    eta=1.0, xi=0.2, phi=1.0, epsilon=1.0, rho=2.0, a_tfp=1.0,
)

ACCEPTANCE_LINES: list[str] = []


def make_params(**kw) -> ModelParams:
    return ModelParams(**{**BASE, **kw})


@pytest.fixture
def base_params():
    return make_params()


@pytest.fixture
def report_line():
    def record(line):
        print(line)
        ACCEPTANCE_LINES.append(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
