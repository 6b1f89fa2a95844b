import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from acceptance_log import CRITERIA, RESULTS  # noqa: E402


def pytest_terminal_summary(terminalreporter):
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, title in CRITERIA.items():
        if number in RESULTS:
            verdict, detail = RESULTS[number]
            suffix = f"  [{detail}]" if detail else ""
            terminalreporter.write_line(f"criterion {number:>2}: {verdict}  {title}{suffix}")
