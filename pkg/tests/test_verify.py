from lzdephase.verify import multiset_distance, run_suite


def test_multiset_distance_ignores_order():
    assert multiset_distance([1, 2j, 0], [0, 1, 2j]) == 0.0
    assert multiset_distance([1, 1], [1, 2]) == 1.0


def test_suites_are_reproducible():
    a = [r.worst for r in run_suite("transport", seed=5)]
    b = [r.worst for r in run_suite("transport", seed=5)]
    assert a == b


def test_dynamic_suites_pass():
    for name in ("contraction", "residual"):
        results = run_suite(name, seed=2)
        assert results and all(r.passed for r in results), [r.line() for r in results]
