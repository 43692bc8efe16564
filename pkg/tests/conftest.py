import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

CRITERIA = {
    1: "running example, exact",
    2: "order polytope to chain polytope for every poset with at most 5 elements",
    3: "mutation by -w undoes mutation by w",
    4: "double dual and boundedness",
    5: "tropical image commutes with duality; convex iff defined",
    6: "mutation does not depend on the G_h family",
    7: "lattice-point count prefixes",
    8: "transfer map is a bijection on lattice points",
}

_outcomes = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion this test checks")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        details = [v for k, v in item.user_properties if k == "detail"]
        _outcomes.setdefault(marker.args[0], []).append((item.name, rep.outcome, details))


@pytest.fixture
def detail(request):
    """Attach a one-line note to the acceptance summary."""
    def add(text):
        request.node.user_properties.append(("detail", text))
    return add


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for k in sorted(CRITERIA):
        runs = _outcomes.get(k)
        if not runs:
            tr.write_line(f"criterion {k} ({CRITERIA[k]}): NOT RUN")
            continue
        ok = all(o == "passed" for _, o, _ in runs)
        tr.write_line(f"criterion {k} ({CRITERIA[k]}): {'PASS' if ok else 'FAIL'}")
        for name, o, details in runs:
            note = "; ".join(details)
            tr.write_line(f"    {o.upper():7} {name}" + (f"  [{note}]" if note else ""))
