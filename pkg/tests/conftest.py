import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

_criteria: list = []


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        outcome = "XFAIL" if hasattr(report, "wasxfail") else report.outcome.upper()
        outcome = {"PASSED": "PASS", "FAILED": "FAIL"}.get(outcome, outcome)
        name = report.nodeid.split("::")[-1][len("test_criterion_"):]
        _criteria.append(f"criterion {name}: {outcome} ({report.duration:.2f}s)")


def pytest_terminal_summary(terminalreporter):
    if _criteria:
        terminalreporter.section("acceptance criteria")
        for line in _criteria:
            terminalreporter.write_line(line)
