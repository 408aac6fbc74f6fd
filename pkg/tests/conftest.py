import pytest

from pfk3.construction import sample_instance

INSTANCE_SEEDS = (1, 2, 3)

# criterion number -> (passed, detail), filled by test_acceptance
ACCEPTANCE_RESULTS: dict = {}


@pytest.fixture(scope="session")
def instances():
    return {s: sample_instance(s) for s in INSTANCE_SEEDS}


@pytest.fixture(scope="session")
def inst(instances):
    return instances[1]


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_RESULTS):
        ok, detail = ACCEPTANCE_RESULTS[n]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {n:2d}: {detail}")
