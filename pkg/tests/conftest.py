import re
from collections import OrderedDict

_CRITERION = re.compile(r"test_acceptance\.py::test_criterion_(\d+)_")
_results = OrderedDict()


def pytest_runtest_logreport(report):
    match = _CRITERION.search(report.nodeid)
    if not match or (report.when != "call" and report.passed):
        return
    entry = _results.setdefault(int(match.group(1)), {"ok": True, "details": []})
    entry["ok"] &= report.passed
    props = dict(report.user_properties)
    if "detail" in props:
        entry["details"].append(props["detail"])


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_results):
        entry = _results[number]
        status = "PASS" if entry["ok"] else "FAIL"
        terminalreporter.write_line(f"criterion {number:2d}: {status}  {'; '.join(entry['details'])}")
