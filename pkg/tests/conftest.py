from fractions import Fraction

import pytest

from stcut.config import DENSE, SPARSE, WIDE
from stcut.ensemble import WeightDistribution


@pytest.fixture(scope="session")
def paper_dds():
    return {name: spec.degree_distribution()
            for name, spec in (("sparse", SPARSE), ("dense", DENSE), ("wide", WIDE))}


@pytest.fixture
def unit():
    return WeightDistribution.unit()


@pytest.fixture
def half_half():
    return WeightDistribution(2, {1: Fraction(1, 2), 2: Fraction(1, 2)})


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
