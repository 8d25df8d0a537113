import itertools
import random

import pytest

from boxspline.diophantine import DioSystem

# Example 1: the two-unknown system and the one-unknown system it reduces to.
SYSTEM_TWO_UNKNOWNS = DioSystem(((1, 2), (2, 3)))
SYSTEM_ONE_UNKNOWN = DioSystem(((2,), (3,)))


def brute_count(matrix, offsets, n, relations=None):
    """Count x in N^k with matrix.x + offsets (= or <=) n by scanning a box; independent of the package."""
    t = len(matrix)
    k = len(matrix[0])
    relations = relations or ["eq"] * t
    tops = []
    for j in range(k):
        col = [matrix[i][j] for i in range(t)]
        tops.append(min((n[i] - offsets[i]) // col[i] for i in range(t) if col[i]))
    if any(v < 0 for v in tops):
        return 0
    total = 0
    for x in itertools.product(*(range(v + 1) for v in tops)):
        ok = True
        for i in range(t):
            lhs = sum(matrix[i][j] * x[j] for j in range(k)) + offsets[i]
            if (relations[i] == "eq" and lhs != n[i]) or (relations[i] == "le" and lhs > n[i]):
                ok = False
                break
        total += ok
    return total


def random_system(rng: random.Random, max_t=3, max_k=4, max_entry=3, max_offset=2) -> DioSystem:
    t = rng.randint(1, max_t)
    k = rng.randint(1, max_k)
    while True:
        m = [[rng.randint(0, max_entry) for _ in range(k)] for _ in range(t)]
        if all(any(m[i][j] for i in range(t)) for j in range(k)):
            break
    offsets = [rng.randint(0, max_offset) for _ in range(t)]
    return DioSystem(tuple(map(tuple, m)), tuple(offsets))


def random_pointed(rng: random.Random, max_t=2, max_n=3, lo=-3, hi=3):
    from boxspline.partition import check_pointed
    while True:
        t = rng.randint(1, max_t)
        n = rng.randint(1, max_n)
        a = [[rng.randint(lo, hi) for _ in range(n)] for _ in range(t)]
        if check_pointed(a):
            return a


@pytest.fixture
def system_two():
    return SYSTEM_TWO_UNKNOWNS


@pytest.fixture
def system_one():
    return SYSTEM_ONE_UNKNOWN


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        terminalreporter.write_line(results[n])
