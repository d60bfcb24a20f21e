"""Release gate: every acceptance criterion at its pinned tolerance.

Criteria run once per session (module-scoped fixture); each test prints
the criterion's pass/fail line and asserts it passed.
"""

import pytest

from bergtoep.acceptance import ALL_CRITERIA, run_all


@pytest.fixture(scope="module")
def results():
    return run_all()


@pytest.mark.parametrize("index", range(len(ALL_CRITERIA)))
def test_criterion(results, index):
    result = results[index]
    print(result.line())
    assert result.passed, f"{result.name}: {result.details}"


def test_individual_runtime_limits(results):
    by_name = {r.name.split(" ")[0]: r for r in results}
    assert by_name["1"].seconds < 5.0  # cocycle sweep budget
    assert by_name["4"].seconds < 5.0  # commutation sweep budget


def test_full_suite_runtime(results):
    total = sum(r.seconds for r in results)
    print(f"acceptance suite total: {total:.1f}s")
    assert total < 60.0
