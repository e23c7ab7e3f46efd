import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")


@pytest.fixture
def rng():
    return np.random.default_rng(2024)


def random_state(rng, n_sites, sz_twice=0):
    from spinring.basis import enumerate_sz_sector
    from spinring.hamiltonian import StateVector

    dim = len(enumerate_sz_sector(n_sites, sz_twice))
    amps = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return StateVector(n_sites, amps / np.linalg.norm(amps), sz_twice)


ACCEPTANCE_LINES = {}


def record_criterion(number, ok, detail):
    ACCEPTANCE_LINES[number] = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}"


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[number])
