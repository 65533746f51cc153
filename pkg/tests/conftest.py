import re
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

_CRITERIA: dict[int, dict] = {}
_NAME = re.compile(r"test_criterion_(\d+)_(\w+)")


def pytest_runtest_logreport(report):
    m = _NAME.search(report.nodeid)
    if not m or "test_acceptance" not in report.nodeid:
        return
    num = int(m.group(1))
    entry = _CRITERIA.setdefault(num, {"name": m.group(2), "outcome": "passed", "detail": "", "secs": 0.0})
    if report.when == "call":
        entry["secs"] = report.duration
    if report.failed:
        entry["outcome"] = "failed"
        msg = str(report.longrepr.reprcrash.message) if hasattr(report.longrepr, "reprcrash") else ""
        entry["detail"] = msg.splitlines()[0][:110] if msg else ""
    elif report.skipped and entry["outcome"] != "failed":
        entry["outcome"] = "skipped"


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for num in sorted(_CRITERIA):
        e = _CRITERIA[num]
        status = {"passed": "PASS", "failed": "FAIL", "skipped": "SKIP"}[e["outcome"]]
        line = f"criterion {num:2d} {e['name']:<28} {status}  ({e['secs']:.2f}s)"
        if e["detail"]:
            line += f"  {e['detail']}"
        tr.write_line(line)
    passed = sum(e["outcome"] == "passed" for e in _CRITERIA.values())
    tr.write_line(f"{passed}/{len(_CRITERIA)} criteria pass")
