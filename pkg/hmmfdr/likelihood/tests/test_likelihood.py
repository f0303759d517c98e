import numpy as np
import numpy.testing as npt
import pytest
from scipy.special import logsumexp

from hmmfdr.chains.spec import binary_stationary_spec, hmm_spec, validate_spec
from hmmfdr.chains.simulate import simulate, replicate_rng
from hmmfdr.models.location_scale import (potential,
                                          translation_model,
                                          scaling_model)
from hmmfdr.likelihood.psi import psi, log_psi_table
from hmmfdr.likelihood.lmatrix import (L_sequence,
                                       forward_l,
                                       backward_l,
                                       lambda_ratio,
                                       lambda_vector,
                                       log_ratio,
                                       brute_force_l,
                                       l_sequence_from_table)
from hmmfdr.likelihood.posterior import (posterior,
                                         posterior_from_table,
                                         local_posterior,
                                         brute_force_posterior,
                                         rho_from_lambdas,
                                         log_flr_llr,
                                         martingale_convergence_probe)
from hmmfdr.errors import (NonFiniteDensity,
                           WindowTooLarge,
                           DegenerateDenominator)
from hmmfdr.tests.decorators import set_sampling_params_iftrue, quick_tests


def random_instance(seed, window, model=None):
    rng = np.random.default_rng(seed)
    p01, p10 = rng.uniform(0.05, 0.95, 2)
    spec = binary_stationary_spec(p01, p10)
    model = model or [translation_model(), scaling_model()][seed % 2]
    eps = rng.uniform(0.2, 1.5)
    traj = simulate(spec, model, eps, window, replicate_rng(seed, 0))
    return spec, model, eps, traj


def three_state_instance(seed, window):
    P = np.array([[0.8, 0.1, 0.1],
                  [0.2, 0.6, 0.2],
                  [0.2, 0.2, 0.6]])
    spec = validate_spec(hmm_spec(('null', 'weak', 'strong'),
                                  ('weak', 'strong'),
                                  [0.5, 0.25, 0.25],
                                  P,
                                  levels=[0., 1., 2.]))
    model = translation_model()
    traj = simulate(spec, model, 0.8, window, replicate_rng(seed, 0))
    return spec, model, 0.8, traj


@set_sampling_params_iftrue(quick_tests, instances=20)
def test_posterior_brute_force(instances=200):
    for seed in range(instances):
        m = n = 1 + seed % 6
        spec, model, eps, traj = random_instance(seed, (m, n))
        dp = posterior(model, traj, eps, m, n)
        brute = brute_force_posterior(model, traj, eps, m, n)
        npt.assert_allclose(dp.probs, brute.probs, atol=1.e-10, rtol=0)
        npt.assert_allclose(dp.rho, brute.rho, atol=1.e-10, rtol=1.e-10)
        npt.assert_allclose(dp.log_llr, brute.log_llr, atol=1.e-12)
        npt.assert_allclose(dp.probs.sum(1), 1, atol=1.e-12)


def test_three_state_brute_force():
    spec, model, eps, traj = three_state_instance(4, (3, 3))
    dp = posterior(model, traj, eps, 3, 3)
    brute = brute_force_posterior(model, traj, eps, 3, 3)
    npt.assert_allclose(dp.probs, brute.probs, atol=1.e-10, rtol=0)
    npt.assert_allclose(dp.log_flr, brute.log_flr, atol=1.e-9)


@set_sampling_params_iftrue(quick_tests, instances=10)
def test_L_brute_force(instances=50):
    for seed in range(instances):
        depth = 1 + seed % 6
        spec, model, eps, traj = random_instance(seed, (depth, depth))
        for direction, lseq in ((1, forward_l(model, traj, eps, depth)),
                                (-1, backward_l(model, traj, eps, depth))):
            log_L = brute_force_l(model, traj, eps, depth, 0, direction)
            npt.assert_allclose(lseq.log_matrix(depth), log_L, atol=1.e-9)

            rows = logsumexp(log_L, axis=1)
            npt.assert_allclose(np.log(lambda_vector(lseq)), rows - rows[0],
                                atol=1.e-10)
            npt.assert_allclose(np.log(lambda_ratio(lseq, 1)),
                                log_ratio(model, traj, eps, depth, direction),
                                atol=1.e-14)

    spec, model, eps, traj = three_state_instance(1, (4, 4))
    log_L = brute_force_l(model, traj, eps, 4, 0, -1)
    npt.assert_allclose(backward_l(model, traj, eps, 4).log_matrix(4), log_L,
                        atol=1.e-9)


def test_L_start():
    spec, model, eps, traj = random_instance(0, (3, 3))
    lseq = forward_l(model, traj, eps, 3)
    assert lseq.depth == 3
    npt.assert_array_equal(lseq[0], np.identity(2))
    npt.assert_allclose(lambda_vector(lseq, 0), 1)


def test_scale_invariance():
    spec, model, eps, traj = random_instance(3, (5, 5))
    table = log_psi_table(model, traj, eps)
    shift = np.random.default_rng(0).uniform(-300, 300, table.shape[0])
    base = posterior_from_table(spec, table, -5)
    shifted = posterior_from_table(spec, table + shift[:, None], -5)
    npt.assert_allclose(shifted.probs, base.probs, atol=1.e-12)
    npt.assert_allclose(shifted.log_flr, base.log_flr, atol=1.e-9)
    npt.assert_allclose(shifted.log_llr, base.log_llr, atol=1.e-9)


def test_rho_from_lambdas():
    for seed in range(10):
        spec, model, eps, traj = random_instance(seed, (6, 6))
        dp = posterior(model, traj, eps, 6, 6)
        for t in (-6, -2, 0, 3, 6):
            npt.assert_allclose(rho_from_lambdas(model, traj, eps, t, 6, 6),
                                dp.log_flr[dp.at(t)], atol=1.e-9)

    spec, model, eps, traj = three_state_instance(2, (5, 5))
    dp = posterior(model, traj, eps, 5, 5)
    for t in (-3, 0, 4):
        npt.assert_allclose(rho_from_lambdas(model, traj, eps, t, 5, 5),
                            dp.log_flr[dp.at(t)], atol=1.e-9)


def test_reference_state_invariance():
    spec, model, eps, traj = three_state_instance(6, (4, 4))
    table = log_psi_table(model, traj, eps)
    back = l_sequence_from_table(spec, table, traj, 0, 4, -1)
    fwd = l_sequence_from_table(spec, table, traj, 0, 4, 1)
    logw0 = table[traj.index(0)] + np.log(spec.marginal(0))

    ratios = []
    for ref in range(3):
        lam = lambda_vector(back, ref=ref) * lambda_vector(fwd, ref=ref)
        logw = logw0 + np.log(lam)
        ratios.append(logsumexp(logw[1:]) - logw[0])
    npt.assert_allclose(ratios, ratios[0], atol=1.e-12)
    npt.assert_allclose(ratios[0], rho_from_lambdas(model, traj, eps, 0, 4, 4),
                        atol=1.e-12)


def test_flr_llr_decomposition():
    for seed in range(10):
        spec, model, eps, traj = random_instance(seed, (7, 5))
        total = log_flr_llr(model, traj, eps, 7, 5)
        parts = (log_ratio(model, traj, eps, 5, 1) +
                 log_ratio(model, traj, eps, 7, -1))
        npt.assert_allclose(total, parts, atol=1.e-10)


def test_iid_flr_equals_llr():
    spec = binary_stationary_spec(0.3, 0.7)
    for seed in range(5):
        traj = simulate(spec, translation_model(), 1., (10, 10),
                        replicate_rng(seed, 0))
        result = posterior(translation_model(), traj, 1., 10, 10)
        npt.assert_allclose(result.log_flr, result.log_llr, atol=1.e-10)
        npt.assert_allclose(result.q_flr, result.q_llr, atol=1.e-10)


def test_local_posterior():
    spec, model, eps, traj = random_instance(5, (4, 4))
    local = local_posterior(model, traj, eps)
    result = posterior(model, traj, eps, 4, 4)
    npt.assert_allclose(local.sum(1), 1)
    npt.assert_allclose(np.log(local[:, 1] / local[:, 0]), result.log_llr,
                        atol=1.e-10)
    npt.assert_allclose(result.q_llr, local[:, 0], atol=1.e-12)


def test_psi():
    spec, model, eps, traj = random_instance(2, (3, 3))
    table = log_psi_table(model, traj, eps)
    for t in (-3, 0, 2):
        for c in spec.states:
            npt.assert_allclose(psi(model, traj, t, eps, c),
                                table[traj.index(t), spec.index_of(c)])


def test_non_finite_density():
    box = potential(lambda z: np.where(np.fabs(z) < 1, np.log(2.), np.inf),
                    lambda z: np.zeros_like(np.asarray(z, float)),
                    lambda z: np.zeros_like(np.asarray(z, float)),
                    lambda rng, size: rng.uniform(-1, 1, size),
                    name='box')
    model = translation_model(box)
    spec = binary_stationary_spec(0.3, 0.3)
    traj = simulate(spec, model, 3., (2, 2), replicate_rng(0, 0), eta0=1)
    with pytest.raises(NonFiniteDensity) as info:
        log_psi_table(model, traj, 3.)
    assert info.value.c in spec.states
    with pytest.raises(NonFiniteDensity):
        psi(model, traj, 0, 3., 0)


def test_guards():
    spec, model, eps, traj = random_instance(0, (10, 10))
    with pytest.raises(WindowTooLarge):
        brute_force_posterior(model, traj, eps, 10, 10)

    lseq = L_sequence([np.array([[0., 0.], [1., 1.]])], [0.], 1, 0)
    with pytest.raises(DegenerateDenominator):
        lambda_ratio(lseq, 1)


def test_martingale_convergence():
    spec = binary_stationary_spec(0.25, 0.25)
    model = translation_model()
    traj = simulate(spec, model, 1., (40, 40), replicate_rng(8, 0))
    schedule = [(k, k) for k in range(1, 41)]
    sequence, tail = martingale_convergence_probe(model, traj, 1., 0, schedule)
    assert sequence.shape == (40,)
    assert np.all(sequence > 0)
    # r = 0.5: successive differences shrink geometrically
    assert tail < 1.e-5 * sequence[-1]
    assert np.fabs(sequence[-1] - sequence[-2]) < 1.e-9 * sequence[-1]
    npt.assert_allclose(np.log(sequence[-1]),
                        posterior(model, traj, 1., 40, 40).log_flr[40],
                        atol=1.e-9)


def test_martingale_constant_without_dependence():
    # r = 0: the neighbours carry no information about η_0
    spec = binary_stationary_spec(0.3, 0.7)
    model = translation_model()
    traj = simulate(spec, model, 1., (10, 10), replicate_rng(3, 0))
    schedule = [(k, k) for k in range(1, 11)]
    sequence, tail = martingale_convergence_probe(model, traj, 1., 0, schedule)
    npt.assert_allclose(sequence, sequence[0], rtol=1.e-12)
    assert tail <= 1.e-12 * sequence[-1]
    npt.assert_allclose(np.log(sequence[0]),
                        posterior(model, traj, 1., 10, 10).log_llr[10],
                        atol=1.e-12)


def test_shift_consistency():
    instances = [random_instance(seed, (8, 8))[1:] for seed in range(4)]
    instances.append(three_state_instance(5, (8, 8))[1:])
    for model, eps, traj in instances:
        base = posterior(model, traj, eps, 8, 8)
        for t in (-8, -3, 0, 2, 8):
            moved = traj.recentered(t)
            shifted = posterior(model, moved, eps, 8 + t, 8 - t)
            assert shifted.window == (8 + t, 8 - t)
            npt.assert_allclose(shifted.probs[shifted.at(0)],
                                base.probs[base.at(t)], atol=1.e-12, rtol=0)
            npt.assert_allclose(shifted.log_flr[shifted.at(0)],
                                base.log_flr[base.at(t)], atol=1.e-12)


def row_ratio_extremes(lseq):
    lows, highs = [], []
    for n in range(1, lseq.depth + 1):
        L = lseq[n]
        R = L[None, :, :] / L[:, None, :]
        lows.append(R.min(2))
        highs.append(R.max(2))
    return np.array(lows), np.array(highs)


def test_row_ratio_monotone():
    instances = [random_instance(seed, (12, 12)) for seed in range(10)]
    instances += [three_state_instance(seed, (12, 12)) for seed in range(3)]
    for spec, model, eps, traj in instances:
        table = log_psi_table(model, traj, eps)
        for direction in (1, -1):
            lseq = l_sequence_from_table(spec, table, traj, 0, 12, direction)
            lows, highs = row_ratio_extremes(lseq)
            # min_e L_{n,be}/L_{n,ae} rises and max_e falls with n
            assert np.all(lows[1:] >= lows[:-1] * (1 - 1.e-12))
            assert np.all(highs[1:] <= highs[:-1] * (1 + 1.e-12))
            assert np.all(lows <= highs)


def test_posterior_records_window():
    spec, model, eps, traj = random_instance(1, (4, 3))
    for result in (posterior(model, traj, eps, 4, 3),
                   brute_force_posterior(model, traj, eps, 4, 3)):
        assert result.epsilon == eps
        assert result.window == (4, 3)
        npt.assert_array_equal(result.times, np.arange(-4, 4))


def test_long_window_time_varying_chain():
    P0 = [[0.7, 0.3], [0.4, 0.6]]
    P1 = [[0.5, 0.5], [0.2, 0.8]]
    P2 = [[0.85, 0.15], [0.35, 0.65]]
    spec = validate_spec(hmm_spec((0, 1), (1,), [4 / 7., 3 / 7.], [P0, P1, P2]))
    model = translation_model()
    for m in (40, 60):
        traj = simulate(spec, model, 0.7, (m, 5), replicate_rng(m, 0))
        result = posterior(model, traj, 0.7, m, 5)
        assert np.all(np.isfinite(result.log_flr))
        npt.assert_allclose(result.probs.sum(1), 1, atol=1.e-12)
        npt.assert_allclose(local_posterior(model, traj, 0.7)[0, 0],
                            result.q_llr[0], atol=1.e-12)

    # far from the declared matrices the chain is stationary under P0
    stationary = binary_stationary_spec(0.3, 0.4)
    traj = simulate(spec, model, 0.7, (60, 5), replicate_rng(2, 0))
    table = log_psi_table(model, traj, 0.7)[:21]
    npt.assert_allclose(posterior_from_table(spec, table, -60).probs,
                        posterior_from_table(stationary, table, -60).probs,
                        atol=1.e-12)
