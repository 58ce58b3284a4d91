import re

_CRITERIA = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)", report.nodeid)
    if not m:
        return
    key = (int(m.group(1)), m.group(2))
    outcome, secs = _CRITERIA.get(key, ("passed", 0.0))
    # setup time counts too: shared instance batches are built in fixtures
    if report.failed or (report.when == "call" and outcome != "failed"):
        outcome = report.outcome
    _CRITERIA[key] = (outcome, secs + report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for (num, name), (outcome, secs) in sorted(_CRITERIA.items()):
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {num} ({name}): {status} [{secs:.1f}s]")
