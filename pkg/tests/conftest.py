"""Collects acceptance-criterion outcomes and prints one line per criterion."""

_criteria = {}


def pytest_collection_finish(session):
    for item in session.items:
        mark = item.get_closest_marker("criterion")
        if mark:
            number, title = mark.args
            _criteria.setdefault(number, {"title": title, "ids": set(), "failed": False, "seen": 0})
            _criteria[number]["ids"].add(item.nodeid)


def pytest_runtest_logreport(report):
    for entry in _criteria.values():
        if report.nodeid in entry["ids"]:
            if report.failed:
                entry["failed"] = True
            if report.when == "call":
                entry["seen"] += 1


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        entry = _criteria[number]
        complete = entry["seen"] == len(entry["ids"])
        status = "PASS" if complete and not entry["failed"] else "FAIL"
        terminalreporter.write_line(f"{status}  criterion {number}: {entry['title']}")
