import re


def pytest_runtest_logreport(report):
    """Emit one PASS/FAIL line per acceptance criterion."""
    if report.when != "call" or "test_acceptance" not in report.nodeid:
        return
    m = re.search(r"criterion_(\d+)", report.nodeid)
    if m:
        outcome = "PASS" if report.passed else "FAIL"
        print(f"\nCRITERION {m.group(1)}: {outcome}")
