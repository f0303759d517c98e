import numpy as np
import numpy.testing as npt
import pytest

from hmmfdr.fdr.oracle import (test_outcome,
                               oracle_bh,
                               brute_force_optimal,
                               objective_value,
                               evaluate_against_truth)
from hmmfdr.errors import InvalidQ, TooManyHypotheses
from hmmfdr.tests.decorators import set_sampling_params_iftrue, quick_tests


def decimal_q(rng, n):
    while True:
        q = np.round(rng.beta(0.3, 1.5, n), 6)
        if np.unique(q).shape[0] == n:
            return q


@set_sampling_params_iftrue(quick_tests, instances=40)
def test_optimal(instances=200):
    rng = np.random.default_rng(0)
    for i in range(instances):
        q = decimal_q(rng, 12)
        alpha = [0.05, 0.1, 0.2][i % 3]
        oracle = oracle_bh(q, alpha)
        brute = brute_force_optimal(q, alpha)
        assert objective_value(oracle) == objective_value(brute)
        assert oracle.expected_fdr <= alpha + 1.e-12
        assert brute.expected_fdr <= alpha + 1.e-12


def test_rejects_smallest():
    rng = np.random.default_rng(1)
    for _ in range(50):
        q = rng.uniform(0, 0.5, 30)
        outcome = oracle_bh(q, 0.1)
        assert outcome.expected_fdr <= 0.1 + 1.e-12
        if outcome.R:
            rejected = q[outcome.rejected]
            kept = np.delete(q, outcome.rejected)
            assert kept.size == 0 or rejected.max() <= kept.min()


def test_ties():
    q = np.array([0.15, 0.05, 0.15])
    outcome = oracle_bh(q, 0.1)
    npt.assert_array_equal(outcome.rejected, [1])

    # the unsplit tie fits once the level allows it
    npt.assert_array_equal(oracle_bh(q, 0.12).rejected, [0, 1, 2])

    # brute force may split a tie straddling the cut
    assert brute_force_optimal(q, 0.1).R == 2


def test_outcome_values():
    outcome = test_outcome([2, 0], np.array([0.01, 0.5, 0.03]), 0.1)
    npt.assert_array_equal(outcome.rejected, [0, 2])
    npt.assert_allclose(outcome.expected_true_rejections, 1.96)
    npt.assert_allclose(outcome.expected_fdr, 0.02)
    assert test_outcome([], np.array([0.3]), 0.1).expected_fdr == 0.
    assert objective_value(outcome) == 1960000


def test_empty_and_errors():
    assert oracle_bh(np.array([]), 0.1).R == 0
    with pytest.raises(InvalidQ):
        oracle_bh(np.array([0.1, 1.2]), 0.1)
    with pytest.raises(InvalidQ):
        oracle_bh(np.array([0.1, np.nan]), 0.1)
    with pytest.raises(InvalidQ):
        oracle_bh(np.zeros((2, 2)), 0.1)
    with pytest.raises(ValueError):
        oracle_bh(np.array([0.1]), 0.)
    with pytest.raises(TooManyHypotheses):
        brute_force_optimal(np.full(21, 0.01), 0.1)


def test_evaluate_against_truth():
    outcome = test_outcome([0, 1, 2], np.array([0.01, 0.02, 0.03, 0.9]), 0.1)
    R, V, FDP, true_rejections = evaluate_against_truth(outcome,
                                                        np.array([0, 1, 1, 0]),
                                                        np.array([False, True]))
    assert (R, V, true_rejections) == (3, 1, 2)
    npt.assert_allclose(FDP, 1 / 3.)

    none = test_outcome([], np.array([0.5]), 0.1)
    assert evaluate_against_truth(none, np.array([0]),
                                  np.array([False, True])) == (0, 0, 0., 0)
