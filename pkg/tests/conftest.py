import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


_ACCEPTANCE: list[tuple[str, bool, str]] = []


@pytest.fixture
def record():
    """Collect one pass/fail line per acceptance criterion."""

    def _record(label: str, passed: bool, detail: str = "") -> None:
        _ACCEPTANCE.append((label, passed, detail))

    return _record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label, passed, detail in _ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {label}  {detail}")
