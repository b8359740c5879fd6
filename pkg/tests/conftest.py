import time

import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


def pytest_configure(config):
    config._acceptance = []


@pytest.fixture
def criterion(request):
    """Record PASS/FAIL and wall time of one acceptance criterion.

    Usage: ``with criterion(3, "title", limit=300): ...``.
    """
    log = request.config._acceptance

    class _Rec:
        def __call__(self, number, title, limit=None):
            self.number, self.title, self.limit = number, title, limit
            return self

        def __enter__(self):
            self.t0 = time.perf_counter()
            return self

        def __exit__(self, exc_type, exc, tb):
            dt = time.perf_counter() - self.t0
            ok = exc_type is None and (self.limit is None or dt < self.limit)
            line = f"{'PASS' if ok else 'FAIL'} criterion {self.number:>2}: {self.title} ({dt:.1f}s"
            line += f", limit {self.limit}s)" if self.limit else ")"
            log.append((self.number, line))
            print(line)
            if exc_type is None and not ok:
                pytest.fail(f"criterion {self.number} took {dt:.1f}s, limit {self.limit}s")
            return False

    return _Rec()


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if config._acceptance:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(config._acceptance):
            terminalreporter.write_line(line)
