import time

import pytest

# criterion number -> (title, limit seconds, elapsed, passed, detail)
ACCEPTANCE = {}


class _Criterion:
    def __init__(self, number, title, limit):
        self.number, self.title, self.limit = number, title, limit
        self.detail = ""

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        passed = exc_type is None and elapsed < self.limit
        detail = self.detail
        if exc_type is not None:
            detail = f"{exc_type.__name__}: {exc}".splitlines()[0]
        elif not passed:
            detail = f"took {elapsed:.2f}s, limit {self.limit}s"
        ACCEPTANCE[self.number] = (self.title, self.limit, elapsed, passed, detail)
        if exc_type is None and not passed:
            pytest.fail(detail)
        return False


@pytest.fixture
def criterion():
    """Context manager recording one acceptance criterion with a time limit."""
    return _Criterion


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        title, limit, elapsed, passed, detail = ACCEPTANCE[n]
        status = "PASS" if passed else "FAIL"
        line = f"[{status}] {n:>2}. {title} ({elapsed:.2f}s, limit {limit}s)"
        if detail:
            line += f" -- {detail}"
        tr.write_line(line)
