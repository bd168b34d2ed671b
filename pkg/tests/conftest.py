import re

CRITERION = re.compile(r"test_acceptance\.py::test_c(\d+)_(\w+)$")


def pytest_terminal_summary(terminalreporter):
    lines = []
    for outcome in ("passed", "failed"):
        for rep in terminalreporter.stats.get(outcome, []):
            if rep.when != "call":
                continue
            m = CRITERION.search(rep.nodeid)
            if m:
                lines.append((int(m.group(1)), m.group(2).replace("_", " "), outcome))
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for num, name, outcome in sorted(lines):
        terminalreporter.write_line(f"criterion {num:2d} {'PASS' if outcome == 'passed' else 'FAIL'}  {name}")
