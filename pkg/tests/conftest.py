"""Suite-wide configuration: hypothesis profile and the criteria summary.

Acceptance tests append one verdict line each; the terminal summary
prints them together so a single pytest run reads as a checklist.
"""

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "repo",
    max_examples=50,
    deadline=None,
    derandomize=True,
    suppress_health_check=[
        HealthCheck.too_slow,
        HealthCheck.filter_too_much,
        HealthCheck.data_too_large,
    ],
)
settings.load_profile("repo")


def pytest_configure(config):
    config._criterion_lines = []


@pytest.fixture(scope="session")
def criterion_log(request):
    """Append one 'Cnn PASS/FAIL — detail' line to the run summary."""

    def add(line: str) -> None:
        request.config._criterion_lines.append(line)

    return add


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_criterion_lines", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
