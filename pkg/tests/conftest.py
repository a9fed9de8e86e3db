"""Shared test configuration: pass/fail reporting for acceptance criteria.

Each acceptance test is named test_criterion_<n>_...; after the run, one
line per criterion is printed in a dedicated terminal section.
"""

import pytest

ACCEPTANCE_LABELS = {
    1: "compact algebras: dimensions, exact Jacobi, form diagonals, under 5s",
    2: "catalog rows: closed 3-dim subalgebras, exact compactified spans",
    3: "isotypic decompositions: stated profiles and exact spans",
    4: "fixed vectors: centralizer equals normalizer meet m on all spaces",
    5: "sampling: standard everywhere plus scaled families pass, under 2min",
    6: "refutations: skewed block metrics yield replayable exact witnesses",
    7: "filters: non-scalar fixed-part operators rejected, passers pass",
    8: "classification: exactly the four expected spaces flagged, under 5min",
    9: "homothety invariance of verdict and witness on 20 random pairs",
}

_acceptance_results: dict[int, str] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if "test_acceptance" not in item.nodeid:
        return
    record = report.when == "call" or (
        report.when == "setup" and report.outcome != "passed"
    )
    if not record:
        return
    for num in ACCEPTANCE_LABELS:
        if item.name.startswith(f"test_criterion_{num}_"):
            _acceptance_results[num] = report.outcome
            break


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _acceptance_results:
        return
    terminalreporter.section("acceptance criteria")
    words = {"passed": "PASS", "failed": "FAIL", "skipped": "SKIP"}
    for num in sorted(ACCEPTANCE_LABELS):
        outcome = _acceptance_results.get(num)
        if outcome is None:
            continue
        word = words.get(outcome, outcome.upper())
        terminalreporter.write_line(
            f"criterion {num}: {word} - {ACCEPTANCE_LABELS[num]}"
        )
