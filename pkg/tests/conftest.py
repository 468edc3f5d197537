import numpy as np
import pytest


def random_pd(n, rng):
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return g @ g.conj().T + n * np.eye(n)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


_acceptance = []


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    if "test_acceptance.py" not in report.nodeid:
        return
    notes = "; ".join(f"{k}={v}" for k, v in report.user_properties)
    _acceptance.append((report.nodeid.split("::")[-1], report.outcome, notes))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome, notes in _acceptance:
        status = "PASS" if outcome == "passed" else "FAIL"
        line = f"{status}  {name}"
        if notes:
            line += f"  ({notes})"
        terminalreporter.write_line(line)
