import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

_ACCEPTANCE: dict[int, list[tuple[bool, str]]] = {}


class AcceptanceLog:
    """Collects one or more checks per acceptance criterion."""

    def record(self, criterion: int, ok: bool, detail: str) -> bool:
        _ACCEPTANCE.setdefault(criterion, []).append((ok, detail))
        print(f"criterion {criterion}: {'PASS' if ok else 'FAIL'} - {detail}")
        return ok


@pytest.fixture
def acceptance() -> AcceptanceLog:
    return AcceptanceLog()


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_ACCEPTANCE):
        checks = _ACCEPTANCE[n]
        ok = all(c for c, _ in checks)
        detail = "; ".join(d for _, d in checks)
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}")
