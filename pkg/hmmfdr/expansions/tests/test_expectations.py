import numpy as np
import numpy.testing as npt
import pytest

from hmmfdr.chains.spec import binary_stationary_spec, hmm_spec
from hmmfdr.models.location_scale import translation_model, scaling_model
from hmmfdr.models.noncentral_t import t_statistic_model
from hmmfdr.expansions.expectations import (mc_check,
                                            expected_r2_given_eta,
                                            expected_total_r2_given_eta0,
                                            expected_r1_given_eta_check,
                                            expected_r2_given_eta_check,
                                            expected_r2_given_eta0_check,
                                            interchange_check)
from hmmfdr.errors import DegreesOfFreedomTooSmall, KappaNotSupported
from hmmfdr.tests.decorators import set_sampling_params_iftrue, quick_tests


def test_closed_forms():
    spec = binary_stationary_spec(0.25, 0.25)
    model = translation_model()
    npt.assert_allclose(expected_r2_given_eta(spec, model, eta0=1), 1 / 3.)
    npt.assert_allclose(expected_r2_given_eta(spec, model, eta0=0), -1 / 3.)
    npt.assert_allclose(expected_r2_given_eta(spec, model, T=40, eta0=1), 1 / 3.,
                        rtol=1.e-12)
    npt.assert_allclose(expected_total_r2_given_eta0(spec, model, 1), 2 / 3.)

    # p0 = p1: E[r''|η] = Σ r^t (2η_t - 1) J
    eta = np.array([1, 0, 0, 1, 1])
    t = np.arange(1, 6)
    npt.assert_allclose(expected_r2_given_eta(spec, model, eta=eta),
                        np.sum(0.5**t * (2 * eta - 1)))

    # the scaling model has J(0) = 2
    npt.assert_allclose(expected_r2_given_eta(spec, scaling_model(), eta0=1),
                        2 / 3.)

    with pytest.raises(DegreesOfFreedomTooSmall):
        expected_r2_given_eta(spec, t_statistic_model(10), eta0=1)
    with pytest.raises(ValueError):
        expected_r2_given_eta(spec, model)


def test_mc_check():
    check = mc_check('x', 1., 1.3, 0.1, 100)
    assert check.passed
    assert not mc_check('x', 1., 1.5, 0.1, 100).passed
    assert mc_check('x', 1., 1.5, 0.1, 100, atol=0.2).passed
    assert check.as_dict()['replicates'] == 100


@set_sampling_params_iftrue(quick_tests, replicates=1000)
def test_gaussian_given_eta0(replicates=10000):
    spec = binary_stationary_spec(0.25, 0.25)
    model = translation_model()
    check = expected_r2_given_eta0_check(spec, model, 1, 30, replicates, 20)
    npt.assert_allclose(check.target, 1 / 3., rtol=1.e-12)
    assert check.passed

    check = expected_r2_given_eta0_check(spec, model, 0, 30, replicates, 21)
    assert check.passed


@set_sampling_params_iftrue(quick_tests, replicates=1000)
def test_given_eta(replicates=10000):
    for seed, (spec, model) in enumerate([
            (binary_stationary_spec(0.25, 0.25), translation_model()),
            (binary_stationary_spec(0.1, 0.3), scaling_model()),
            (binary_stationary_spec(0.2, 0.15), t_statistic_model(16))]):
        first = expected_r1_given_eta_check(spec, model, 12, replicates, seed)
        assert first.target == 0.
        assert first.passed
        second = expected_r2_given_eta_check(spec, model, 12, replicates, seed)
        assert second.passed


@set_sampling_params_iftrue(quick_tests, replicates=500)
def test_unequal_chain_given_eta0(replicates=5000):
    spec = binary_stationary_spec(0.1, 0.3)
    model = scaling_model()
    for eta0 in (0, 1):
        check = expected_r2_given_eta0_check(spec, model, eta0, 20, replicates,
                                             30 + eta0)
        assert check.passed


@set_sampling_params_iftrue(quick_tests, replicates=100)
def test_interchange(replicates=400):
    spec = binary_stationary_spec(0.2, 0.3)
    check = interchange_check(spec, translation_model(), 8, replicates, 5)
    assert check.passed

    P = [[0., 1.], [0.5, 0.5]]
    kappa2 = hmm_spec((0, 1), (1,), [1 / 3., 2 / 3.], P, kappa=2)
    with pytest.raises(KappaNotSupported):
        interchange_check(kappa2, translation_model(), 8, 10, 5)
