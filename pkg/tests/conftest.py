import pytest
from hypothesis import settings

# exact arithmetic makes individual examples uneven in cost
settings.register_profile("default", deadline=None)
settings.load_profile("default")

_ACCEPTANCE: list[tuple[int, str]] = []


@pytest.fixture
def acceptance():
    """Record one criterion line; the summary prints them in order."""

    def record(number: int, name: str, passed: bool, detail: str = "") -> bool:
        mark = "PASS" if passed else "FAIL"
        tail = f"  [{detail}]" if detail else ""
        _ACCEPTANCE.append((number, f"criterion {number:>2}: {mark}  {name}{tail}"))
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.write_sep("=", "acceptance criteria")
        for _, line in sorted(_ACCEPTANCE, key=lambda x: x[0]):
            terminalreporter.write_line(line)
