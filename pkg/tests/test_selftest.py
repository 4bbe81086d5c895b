import pytest

from widgets.bundle import classify_6mfd, in_circle_action_grammar, smale_barden_decompose
from widgets.config import Settings
from widgets.manifold import homology, is_simply_connected
from widgets.selftest import SUITES, run_selftest
from widgets.selftest.suites import (
    ONE_CONNECTED_POOL,
    context_from_settings,
    random_classifiable,
    random_one_connected_sum,
)


def test_run_selftest_all_pass(small_settings):
    table = run_selftest(settings=small_settings)
    assert list(table["suite"]) == list(SUITES)
    assert list(table.columns) == ["suite", "cases", "passed", "status", "seconds", "first failures"]
    failing = table[table["status"] != "PASS"]
    assert failing.empty, failing.to_dict(orient="records")
    assert (table["cases"] > 0).all()


def test_max_k_override(small_settings):
    assert context_from_settings(small_settings).max_k == 4
    assert context_from_settings(small_settings, max_k=2).max_k == 2
    table = run_selftest(max_k=2, settings=small_settings)
    oracle = table.set_index("suite").loc["1 oracle equality"]
    assert oracle["cases"] == 2


def test_algebra_suite_sweeps_its_own_matrix_count(small_settings):
    assert context_from_settings(Settings()).snf_samples == 1000
    ctx = context_from_settings(small_settings)
    cases = SUITES["9 algebra kernel"](ctx)
    assert sum(label.startswith("SNF ") for label, _ in cases) == ctx.snf_samples == 5
    assert all(ok for _, ok in cases)


@pytest.mark.parametrize("n", sorted(ONE_CONNECTED_POOL))
def test_random_sums_are_one_connected(rng, n):
    for _ in range(20):
        m = random_one_connected_sum(rng, n)
        assert m.dim == n
        assert is_simply_connected(m)


def test_random_classifiable_inputs_classify(rng):
    for _ in range(300):
        h2, w2, euler_eq = random_classifiable(rng)
        assert homology(smale_barden_decompose(h2, w2)).at(2) == h2
        assert in_circle_action_grammar(classify_6mfd(h2, w2, euler_eq))
