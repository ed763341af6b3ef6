import random

import pytest

from reesse1plus import keygen

ACCEPTANCE_REPORT = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_REPORT:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_REPORT:
            terminalreporter.write_line(line)


def make_keypair(n, seed, profile="desk"):
    rng = random.Random(seed)
    params = keygen.generate_params(n, profile, rng)
    pub, priv = keygen.generate_keypair(params, rng)
    return params, pub, priv


@pytest.fixture(scope="session")
def keypair6():
    return make_keypair(6, 600)


@pytest.fixture(scope="session")
def keypair8():
    return make_keypair(8, 800)


@pytest.fixture(scope="session")
def keypair16():
    return make_keypair(16, 1600)
