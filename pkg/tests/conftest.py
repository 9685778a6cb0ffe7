from __future__ import annotations

import functools

import pytest

from flaghom.rootsys import build_root_system
from flaghom.weyl import enumerate_group

N_CRITERIA = 10
_CRITERIA = pytest.StashKey[dict]()


@functools.lru_cache(maxsize=None)
def group(type_tag: str, rank: int):
    return enumerate_group(build_root_system(type_tag, rank))


@pytest.fixture(scope="session")
def table():
    """Factory for enumerated groups, shared across the session."""
    return group


@pytest.fixture
def criterion(request):
    """record(n, ok, detail) stores one acceptance verdict for the summary."""
    store = request.config.stash.setdefault(_CRITERIA, {})

    def record(n: int, ok: bool, detail: str) -> bool:
        store[n] = (ok, detail)
        return ok

    return record


def pytest_terminal_summary(terminalreporter, config):
    store = config.stash.get(_CRITERIA, None)
    if not store:
        return
    terminalreporter.section("acceptance criteria")
    for n in range(1, N_CRITERIA + 1):
        if n not in store:
            terminalreporter.write_line(f"criterion {n:2d}: FAIL (not run or errored before a verdict)")
            continue
        ok, detail = store[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'} {detail}")
