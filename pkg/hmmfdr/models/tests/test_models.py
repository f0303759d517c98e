import numpy as np
import numpy.testing as npt
import pytest
import mpmath as mp
from scipy.integrate import quad
from scipy.stats import nct

from hmmfdr.models.base import expected_d_derivs
from hmmfdr.models.location_scale import (potential,
                                          translation_model,
                                          scaling_model)
from hmmfdr.models.noncentral_t import (t_statistic_model,
                                        noncentral_t_logpdf,
                                        c_k)
from hmmfdr.models.config import model_from_config, model_to_config
from hmmfdr.errors import DegreesOfFreedomTooSmall, ConfigError
from hmmfdr.tests.decorators import set_sampling_params_iftrue, quick_tests


def logistic_potential():
    return potential(lambda z: z + 2 * np.logaddexp(0, -z),
                     lambda z: np.tanh(np.asarray(z, float) / 2),
                     lambda z: 0.5 / np.cosh(np.asarray(z, float) / 2)**2,
                     lambda rng, size: rng.logistic(size=size),
                     name='logistic')


def all_models():
    return [translation_model(),
            scaling_model(),
            translation_model(logistic_potential()),
            t_statistic_model(16)]


def noise_point(model, rng):
    return model.sample_noise(rng, 1)[0]


def test_normalized():
    for model in all_models():
        for vartheta in [-0.7, 0., 0.4]:
            mass, _ = quad(lambda x: np.exp(model.log_density(x, vartheta)),
                           -np.inf, np.inf, epsabs=1.e-11)
            npt.assert_allclose(mass, 1, rtol=1.e-7)


def test_nct_against_scipy():
    nu = 16
    x = np.linspace(-4, 4, 17)
    for vartheta in [-1., 0., 0.5, 2.]:
        npt.assert_allclose(noncentral_t_logpdf(x, nu, vartheta),
                            nct.logpdf(x, nu, vartheta), atol=1.e-8)
    npt.assert_allclose(noncentral_t_logpdf(x, 5, 1.3),
                        nct.logpdf(x, 5, 1.3), atol=1.e-8)


def test_gradient_matches_partials():
    rng = np.random.default_rng(0)
    for model in all_models():
        z = model.sample_noise(rng, 20)
        x = model.noise_to_x0(z)
        l_x, l_t = model.gradient(x, 0.)
        npt.assert_allclose(l_t, model.partials(x)[0], rtol=1.e-9, atol=1.e-12)

        # ∂λ/∂x and ∂λ/∂ϑ at a nonzero ϑ by central differences
        h = 1.e-6
        for vartheta in [0., 0.3]:
            l_x, l_t = model.gradient(x, vartheta)
            fd_x = (model.log_density(x + h, vartheta) -
                    model.log_density(x - h, vartheta)) / (2 * h)
            fd_t = (model.log_density(x, vartheta + h) -
                    model.log_density(x, vartheta - h)) / (2 * h)
            npt.assert_allclose(l_x, fd_x, rtol=1.e-5, atol=1.e-7)
            npt.assert_allclose(l_t, fd_t, rtol=1.e-5, atol=1.e-7)

        # second partials at zero
        _, l_tt, l_xt = model.partials(x)
        fd_tt = (model.gradient(x, h)[1] - model.gradient(x, -h)[1]) / (2 * h)
        fd_xt = (model.gradient(x + h, 0.)[1] -
                 model.gradient(x - h, 0.)[1]) / (2 * h)
        npt.assert_allclose(l_tt, fd_tt, rtol=1.e-5, atol=1.e-7)
        npt.assert_allclose(l_xt, fd_xt, rtol=1.e-5, atol=1.e-7)


def test_ell_d1():
    rng = np.random.default_rng(1)
    h = 1.e-6
    for model in all_models():
        for a, b in [(0, 0), (0, 1), (1, 0), (1, 1)]:
            z = noise_point(model, rng)
            for eps in [0., 0.25]:
                fd = (model.ell(z, a, b, eps + h) -
                      model.ell(z, a, b, eps - h)) / (2 * h)
                npt.assert_allclose(model.ell_d1(z, a, b, eps), fd,
                                    rtol=1.e-5, atol=1.e-7)


def test_gaussian_fisher_info():
    assert translation_model().fisher_info_at_zero() == 1.
    assert scaling_model().fisher_info_at_zero() == 2.
    # Fisher information of the logistic location family
    npt.assert_allclose(translation_model(logistic_potential()).fisher_info_at_zero(),
                        1 / 3., rtol=1.e-8)


def test_t_variance():
    model = t_statistic_model(16)
    with mp.workdps(30):
        closed = mp.mpf(1) / 2 * (16 * mp.gamma(8) / mp.gamma(mp.mpf(17) / 2))**2
    npt.assert_allclose(model.variance_d1(), float(closed), rtol=1.e-12)
    npt.assert_allclose(model.fisher_info_at_zero(), c_k(16, 1)**2 / 17.,
                        rtol=1.e-14)


def test_t_moment_guard():
    model = t_statistic_model(12)
    with pytest.raises(DegreesOfFreedomTooSmall):
        model.fisher_info_at_zero()
    with pytest.raises(DegreesOfFreedomTooSmall):
        model.variance_d1()
    with pytest.raises(DegreesOfFreedomTooSmall):
        expected_d_derivs(model, 1.)
    assert np.isfinite(model.log_density(0.7, 0.2))
    t_statistic_model(13).fisher_info_at_zero()


@set_sampling_params_iftrue(quick_tests, samples=5000)
def test_fisher_checks(samples=40000):
    for seed, model in enumerate(all_models()):
        for check in (model.fisher_info_check,
                      model.fisher_identity_check,
                      model.score_mean_check):
            closed, estimate, se = check(samples, seed)
            assert np.fabs(estimate - closed) <= 4 * se


@set_sampling_params_iftrue(quick_tests, samples=5000)
def test_t_symmetry_moment(samples=40000):
    nu = 16
    model = t_statistic_model(nu)
    z = model.sample_noise(np.random.default_rng(9), samples)
    ratio = z[:, 0]**2 / (z[:, 0]**2 + z[:, 1]**2)
    se = ratio.std() / np.sqrt(samples)
    assert np.fabs(ratio.mean() - 1. / (nu + 1)) <= 4 * se


def test_expected_d_derivs():
    model = translation_model()
    npt.assert_allclose(expected_d_derivs(model, 1.), (0., 1., 1.))
    npt.assert_allclose(expected_d_derivs(model, 0.), (0., 1., -1.))

    model = scaling_model()
    npt.assert_allclose(expected_d_derivs(model, 1.), (0., 2., 2.))


def test_model_config():
    assert model_from_config('translation_gaussian').name == 'translation'
    assert model_from_config('scaling_gaussian').name == 'scaling'
    model = model_from_config('t_statistic', nu=16)
    assert model.nu == 16
    assert model_to_config(model) == {'type': 't', 'nu': 16}
    assert model_from_config(model_to_config(model)).nu == 16
    assert model_to_config(model_from_config({'type': 'scaling'})) == \
        {'type': 'scaling', 'potential': 'gaussian'}

    for value, kwargs, field in [('cauchy', {}, 'model'),
                                 ('t_statistic', {}, 'nu'),
                                 ('t_statistic', {'nu': 2.5}, 'nu'),
                                 ({'type': 'translation',
                                   'potential': 'laplace'}, {},
                                  'model.potential'),
                                 (3, {}, 'model')]:
        with pytest.raises(ConfigError) as info:
            model_from_config(value, **kwargs)
        assert info.value.field == field
