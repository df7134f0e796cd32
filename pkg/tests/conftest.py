import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in range(1, 11):
        if number not in results:
            terminalreporter.write_line(f"NOT RUN  criterion {number}")
            continue
        ok, title, seconds = results[number]
        terminalreporter.write_line(
            f"{'PASS' if ok else 'FAIL'}     criterion {number:>2}: {title} [{seconds:.2f}s]")
