"""
Conditional means of the weak-signal derivatives and the Monte Carlo
checks that back them.

Given the hidden path, E[λ_n'(0) | η] = 0 and

    E[λ_n''(0) | η] = Var[d_0'(0)] Σ_t D_{0t} [2η_t - P_{0t}(1,1) - P_{0t}(0,1)],

which given η_0 alone is (2η_0 - 1) Var[d_0'(0)] Σ_t D_{0t}^2.

"""
import logging

import numpy as np

from ..errors import KappaNotSupported
from ..chains.spec import check_binary
from ..chains.simulate import simulate, replicate_rng
from ..models.base import expected_d_derivs
from ..likelihood.lmatrix import log_ratio
from ..utils.tools import replicate_map
from .weak_signal import (chain_terms,
                          derivative_terms,
                          stationary_coefficients,
                          truncation_for)

logger = logging.getLogger(__name__)


class mc_check(object):

    """
    A Monte Carlo estimate compared to its target.

    The check passes when |estimate - target| <= 4 se + atol.
    """

    def __init__(self, name, target, estimate, se, replicates, atol=0.):
        self.name = name
        self.target = float(target)
        self.estimate = float(estimate)
        self.se = float(se)
        self.replicates = replicates
        self.atol = atol

    @property
    def passed(self):
        return bool(np.fabs(self.estimate - self.target) <= 4 * self.se + self.atol)

    def as_dict(self):
        return {'name': self.name,
                'target': self.target,
                'estimate': self.estimate,
                'se': self.se,
                'replicates': self.replicates,
                'passed': self.passed}


def _summary(name, target, values, atol=0.):
    values = np.asarray(values)
    R = values.shape[0]
    check = mc_check(name, target, values.mean(), values.std(ddof=1) / np.sqrt(R),
                     R, atol)
    logger.info('%s: target %.6g, estimate %.6g (se %.2g)', name,
                check.target, check.estimate, check.se)
    return check


def _levels(spec, eta):
    return spec.levels[np.asarray(eta)]


def expected_r2_given_eta(spec, model, T=None, eta=None, eta0=None, t0=0,
                          direction=1):
    """
    E[λ_T''(0) | η] (given the path `eta` of states 1..T) or
    E[λ_T''(0) | η_0] (given `eta0` only).

    Parameters
    ----------

    spec : hmm_spec
        Binary chain with κ = 1.

    model : interaction_model

    T : int
        Depth. With `eta` it defaults to len(eta); with `eta0` on a
        stationary chain, None gives the infinite sum r^2/(1-r^2).

    eta : np.int
        Hidden states at t0+1, ..., t0+T as positions in `spec.states`.

    eta0 : int
        Hidden state at t0, as a position.

    """
    check_binary(spec)
    model.require_moments()
    levels = spec.levels
    var = model.variance_d1(levels[0], levels[1])

    if eta is not None:
        eta = np.asarray(eta)
        T = eta.shape[0] if T is None else T
        terms = chain_terms(spec, t0, T, direction)
        P0 = np.array(terms.P0[1:])
        mean_d2 = np.array([expected_d_derivs(model, level, levels[0],
                                              levels[1])[2]
                            for level in _levels(spec, eta[:T])])
        return float(np.sum(terms.D0 * (mean_d2 +
                                        (P0[:, 1, 0] - P0[:, 0, 1]) * var)))

    if eta0 is None:
        raise ValueError('either eta or eta0 is needed')
    sign = 2 * int(eta0) - 1
    if T is None:
        try:
            _, _, r = stationary_coefficients(spec)
            return sign * var * r**2 / (1 - r**2)
        except ValueError:
            T = truncation_for(spec)
    terms = chain_terms(spec, t0, T, direction)
    return float(sign * var * np.sum(terms.D0**2))


def expected_total_r2_given_eta0(spec, model, eta0, T=None, t0=0):
    """
    E[(ln FLR/LLR)''(0) | η_0]: the forward and backward second
    derivatives together, (2η_0 - 1) Var[d_0'] (Σ D_{0t}^2 + Σ D̄_{0t}^2).
    """
    return (expected_r2_given_eta(spec, model, T, eta0=eta0, t0=t0) +
            expected_r2_given_eta(spec, model, T, eta0=eta0, t0=t0,
                                  direction=-1))


def expected_r1_given_eta_check(spec, model, T, replicates, seed, eta=None,
                                t0=0):
    """
    Monte Carlo mean of λ_T'(0) with the hidden path held fixed.

    The path is drawn from stream 0 unless given; replicate k draws
    its noise from stream k+1.
    """
    model.require_moments()
    terms = chain_terms(spec, t0, T)
    if eta is None:
        eta = simulate(spec, model, 0., (0, T), replicate_rng(seed, 0)).eta[1:]
    eta = np.asarray(eta)

    def one(k):
        z = model.sample_noise(replicate_rng(seed, k + 1), T)
        d1 = derivative_terms(model, spec, z, eta)[0]
        return terms.first_order(d1)

    return _summary('E[r1|eta]', 0., replicate_map(one, replicates))


def expected_r2_given_eta_check(spec, model, T, replicates, seed, eta=None,
                                t0=0):
    """
    Monte Carlo mean of λ_T''(0) with the hidden path held fixed.
    """
    model.require_moments()
    terms = chain_terms(spec, t0, T)
    if eta is None:
        eta = simulate(spec, model, 0., (0, T), replicate_rng(seed, 0)).eta[1:]
    eta = np.asarray(eta)
    target = expected_r2_given_eta(spec, model, T, eta=eta, t0=t0)

    def one(k):
        z = model.sample_noise(replicate_rng(seed, k + 1), T)
        d1, d2, ell0 = derivative_terms(model, spec, z, eta)
        diagonal, cross, _ = terms.second_order(d1, d2, ell0)
        return diagonal.sum() + 2 * np.sum(d1 * cross)

    return _summary('E[r2|eta]', target, replicate_map(one, replicates))


def expected_r2_given_eta0_check(spec, model, eta0, T, replicates, seed):
    """
    Monte Carlo mean of λ_T''(0) given η_0, the rest of the path
    being simulated in each replicate.

    Parameters
    ----------

    eta0 : state label

    """
    model.require_moments()
    terms = chain_terms(spec, 0, T)
    target = expected_r2_given_eta(spec, model, T, eta0=spec.index_of(eta0))

    def one(k):
        traj = simulate(spec, model, 0., (0, T), replicate_rng(seed, k),
                        eta0=eta0)
        d1, d2, ell0 = derivative_terms(model, spec, traj.z[1:], traj.eta[1:])
        diagonal, cross, _ = terms.second_order(d1, d2, ell0)
        return diagonal.sum() + 2 * np.sum(d1 * cross)

    return _summary('E[r2|eta0=%s]' % (eta0,), target,
                    replicate_map(one, replicates))


def interchange_check(spec, model, n, replicates, seed, epsilon=0.,
                      h_outer=1.e-2, h_inner=1.e-5):
    """
    Compare the ε-derivative of E[ln Λ_{n,1}(ε)] (finite differences
    of Monte Carlo means) with the Monte Carlo mean of the per-replicate
    derivative (tight finite differences), on common random numbers.

    Only chains with κ = 1 are covered.
    """
    if spec.kappa != 1:
        raise KappaNotSupported('the interchange check needs kappa = 1')

    def one(k):
        traj = simulate(spec, model, epsilon, (0, n), replicate_rng(seed, k))
        g = lambda e: log_ratio(model, traj, e, n)
        inner = (g(epsilon + h_inner) - g(epsilon - h_inner)) / (2 * h_inner)
        return g(epsilon + h_outer), g(epsilon - h_outer), inner

    values = np.array(replicate_map(one, replicates))
    outer = (values[:, 0] - values[:, 1]) / (2 * h_outer)
    inner = values[:, 2]
    R = values.shape[0]
    diff = outer - inner
    check = mc_check('interchange',
                     outer.mean(),
                     inner.mean(),
                     diff.std(ddof=1) / np.sqrt(R),
                     R,
                     atol=1.e-3 * max(1., np.fabs(inner.mean())))
    logger.info('interchange: derivative of mean %.6g, mean derivative %.6g',
                check.target, check.estimate)
    return check
