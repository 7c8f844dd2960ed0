import itertools

import pytest
from hypothesis import strategies as st

ACCEPTANCE_RESULTS: dict[str, str] = {}


def perms(min_size=1, max_size=8):
    return st.integers(min_size, max_size).flatmap(
        lambda n: st.permutations(list(range(1, n + 1))).map(tuple)
    )


def brute_contains(big, small):
    # independent of the library: compare relative orders of every index subset
    k = len(small)
    want = [sorted(range(k), key=lambda j: small[j]).index(j) for j in range(k)]
    for idx in itertools.combinations(range(len(big)), k):
        vals = [big[j] for j in idx]
        if [sorted(range(k), key=lambda j: vals[j]).index(j) for j in range(k)] == want:
            return True
    return False


def brute_level(basis, n):
    return {p for p in itertools.permutations(range(1, n + 1))
            if not any(brute_contains(p, b) for b in basis)}


def pytest_addoption(parser):
    parser.addoption("--extended", action="store_true", help="run tests marked slow")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--extended"):
        return
    skip = pytest.mark.skip(reason="needs --extended")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.fixture
def record():
    def _record(name, ok):
        ACCEPTANCE_RESULTS[name] = "PASS" if ok else "FAIL"
    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, status in ACCEPTANCE_RESULTS.items():
        terminalreporter.write_line(f"{status}  {name}")
