import re

_CRITERION = re.compile(r"test_criterion_(\d+)_(\w+)")
_results: dict[int, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    m = _CRITERION.search(report.nodeid)
    if not m:
        return
    n = int(m.group(1))
    if report.when == "call" or report.failed:
        outcome = "PASS" if report.passed else "FAIL"
        if _results.get(n, ("PASS",))[0] == "FAIL":
            outcome = "FAIL"
        _results[n] = (outcome, m.group(2).replace("_", " "))


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_results):
        outcome, label = _results[n]
        terminalreporter.write_line(f"CRITERION {n:2d}: {outcome}  {label}")
