import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

TITLES = {
    1: "e1 interior series equals the reference form",
    2: "e1 full series decomposition",
    3: "e1 motivic volume equals the reference form",
    4: "e2 toric interior series equals the reference form",
    5: "branch_d3 minimizers",
    6: "closed form equals enumeration",
    7: "candidate-pole containment and e1 B set",
    8: "randomized property suite",
    9: "smooth identity",
    10: "curve invariance under equal multiplicity",
    11: "cone series versus lattice enumeration",
}

_outcomes = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion checked by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        _outcomes.setdefault(mark.args[0], []).append((item.name, rep.passed))


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(TITLES):
        runs = _outcomes.get(n)
        if runs is None:
            continue
        failed = [name for name, ok in runs if not ok]
        status = "FAIL" if failed else "PASS"
        line = f"criterion {n:2d}: {status}  {TITLES[n]}"
        if failed:
            line += f"  (failing: {', '.join(failed)})"
        tr.write_line(line)
