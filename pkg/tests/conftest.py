import numpy as np
import pytest

from staircase_fec.bch import build_code, code_by_name

# criterion number -> (passed, detail); filled by test_acceptance
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture(scope="session")
def toy():
    return code_by_name("toy32")


@pytest.fixture(scope="session")
def bch256():
    return code_by_name("bch256")


@pytest.fixture(scope="session")
def t3code():
    return build_code(5, 16, 3, 0, True)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[num]
        terminalreporter.write_line(f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
