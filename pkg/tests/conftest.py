import time

_START = time.perf_counter()
_CRITERIA: dict[int, tuple[str, bool]] = {}
SUITE_BUDGET = 120.0


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    num = int(name.split("_")[2])
    ok = _CRITERIA.get(num, (name, True))[1]
    if report.failed or (report.when == "call" and not report.passed):
        ok = False
    _CRITERIA[num] = (name, ok)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    elapsed = time.perf_counter() - _START
    tr = terminalreporter
    tr.section("acceptance criteria")
    for num in sorted(_CRITERIA):
        name, ok = _CRITERIA[num]
        extra = ""
        if num == 10:
            within = elapsed < SUITE_BUDGET
            ok = ok and within
            extra = f" (suite time {elapsed:.1f}s, budget {SUITE_BUDGET:.0f}s)"
        tr.write_line(f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}  {name}{extra}")
