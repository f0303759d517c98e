"""
Command line interface.

    hmmfdr {simulate,posterior,expand,test,diagnose,mc-verify}
           --config CONFIG [--out DIR] [--seed SEED] [--quiet]

Each command writes a CSV table and a JSON summary into the output
directory and exits with status 0 exactly when all of its checks pass.

"""
import argparse
import json
import logging
import os
import sys

import numpy as np

from .info import __version__
from .errors import (ConfigError,
                     HmmfdrError,
                     NotBinary,
                     NotStationary,
                     KappaNotSupported)
from .chains.spec import (spec_from_dict,
                          spec_to_dict,
                          spec_hash,
                          validate_spec)
from .chains.simulate import simulate, replicate_rng
from .models.config import model_from_config, model_to_config
from .likelihood.posterior import (posterior,
                                   brute_force_posterior,
                                   rho_from_lambdas,
                                   log_flr_llr)
from .expansions.weak_signal import (weak_signal_expansion,
                                     stationary_expansion,
                                     stationary_coefficients,
                                     fd_derivative,
                                     fd_log_ratio_derivative)
from .expansions.expectations import (mc_check,
                                      expected_r1_given_eta_check,
                                      expected_r2_given_eta0_check,
                                      interchange_check)
from .fdr.experiment import flr_llr_experiment, summarize
from .diagnostics.contraction import (delta_trace,
                                      lambda_convergence_trace,
                                      lambda_bounds_check)
from .utils.io import config_hash, write_csv, write_json
from .utils.tools import timethis

logger = logging.getLogger(__name__)

DEFAULTS = {'epsilon': 0.,
            'window': [20, 20],
            'alpha': 0.1,
            'replicates': 200,
            'seed': 0,
            'T': 14,
            'fd_h1': 1.e-5,
            'fd_h2': 1.e-3,
            'eps0': 0.5,
            'n_max': 40,
            'mc_samples': 20000,
            'out': '.'}

BRUTE_FORCE_PATHS = 2**16


class experiment_config(object):

    """
    A validated experiment configuration.

    Parameters
    ----------

    value : dict
        Parsed JSON with keys ``spec`` and ``model`` and optional
        ``epsilon`` (number or list), ``window`` [m, n], ``alpha``,
        ``replicates``, ``seed``, ``T``, ``fd_h1``, ``fd_h2``, ``eps0``,
        ``n_max``, ``mc_samples``, ``out`` and ``nu`` for the
        ``"t_statistic"`` selector.

    """

    def __init__(self, value):
        if not isinstance(value, dict):
            raise ConfigError('config', 'expected a JSON object')
        unknown = set(value).difference(DEFAULTS).difference(['spec', 'model',
                                                              'nu'])
        if unknown:
            raise ConfigError(sorted(unknown)[0], 'unknown field')
        self.raw = dict(DEFAULTS)
        self.raw.update(value)

        for field in ('spec', 'model'):
            if field not in value:
                raise ConfigError(field, 'missing')
        try:
            self.spec = validate_spec(spec_from_dict(value['spec']))
        except ConfigError:
            raise
        except (ValueError, KeyError, TypeError) as err:
            raise ConfigError('spec', str(err))
        self.model = model_from_config(value['model'], value.get('nu'))

        eps = self.raw['epsilon']
        self.epsilons = [float(e) for e in (eps if isinstance(eps, list) else [eps])]
        if not self.epsilons or not all(np.isfinite(self.epsilons)):
            raise ConfigError('epsilon', 'need finite signal strengths')

        window = self.raw['window']
        if (not isinstance(window, list) or len(window) != 2 or
            min(window) < 0):
            raise ConfigError('window', 'expected [m, n] with m, n >= 0')
        self.window = (int(window[0]), int(window[1]))

        self.alpha = self._number('alpha', 0, 1, open_interval=True)
        self.replicates = int(self._number('replicates', 1, np.inf))
        self.seed = int(self._number('seed', 0, np.inf))
        self.T = int(self._number('T', 1, np.inf))
        self.fd_h1 = self._number('fd_h1', 0, 1, open_interval=True)
        self.fd_h2 = self._number('fd_h2', 0, 1, open_interval=True)
        self.eps0 = self._number('eps0', 0, np.inf, open_interval=True)
        self.n_max = int(self._number('n_max', 1, np.inf))
        self.mc_samples = int(self._number('mc_samples', 2, np.inf))
        self.out = str(self.raw['out'])

    def _number(self, field, lower, upper, open_interval=False):
        value = self.raw[field]
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(field, 'expected a number')
        if open_interval:
            ok = lower < value < upper
        else:
            ok = lower <= value <= upper
        if not ok:
            raise ConfigError(field, '%r out of range' % (value,))
        return value

    @classmethod
    def from_file(cls, path):
        try:
            with open(path) as f:
                value = json.load(f)
        except (IOError, OSError) as err:
            raise ConfigError('config', str(err))
        except ValueError as err:
            raise ConfigError('config', 'invalid JSON: %s' % err)
        return cls(value)

    def as_dict(self):
        value = dict(self.raw)
        value['spec'] = spec_to_dict(self.spec)
        value['model'] = model_to_config(self.model)
        value.pop('nu', None)
        # where results go does not change them
        value.pop('out', None)
        return value

    @property
    def hash(self):
        return config_hash(self.as_dict())


def _files(config, command):
    return (os.path.join(config.out, '%s.csv' % command),
            os.path.join(config.out, '%s.json' % command))


def _finish(config, command, header, rows, summary, checks):
    csv_path, json_path = _files(config, command)
    summary = dict(summary)
    summary['command'] = command
    summary['checks'] = checks
    summary['passed'] = all(check['passed'] for check in checks)
    summary['spec_hash'] = spec_hash(config.spec)
    write_csv(csv_path, header, rows, config.hash, config.seed)
    write_json(json_path, summary, config.hash, config.seed)
    for check in checks:
        level = logging.INFO if check['passed'] else logging.WARNING
        logger.log(level, '%s: %s', check['name'],
                   'ok' if check['passed'] else 'FAILED')
    return summary


def _check(name, passed, **detail):
    value = {'name': name, 'passed': bool(passed)}
    value.update(detail)
    return value


def _simulate(config, epsilon=None, window=None):
    eps = config.epsilons[0] if epsilon is None else epsilon
    return simulate(config.spec, config.model, eps, window or config.window,
                    replicate_rng(config.seed, 0))


@timethis
def run_simulate(config):
    traj = _simulate(config)
    z = traj.z.reshape((len(traj), -1))
    header = (['t', 'eta'] + ['z%d' % j for j in range(z.shape[1])] + ['x'])
    rows = [[t, label] + list(zi) + [xi]
            for t, label, zi, xi in zip(traj.times, traj.labels, z, traj.x)]
    summary = {'model': config.model.name,
               'epsilon': traj.epsilon,
               'window': list(config.window),
               'transitions_outside_declared': ('stationary'
                                                if config.spec.stationary
                                                else 'nearest')}
    checks = [_check('x reproducible',
                     np.array_equal(traj.x_at(traj.epsilon), traj.x))]
    return _finish(config, 'simulate', header, rows, summary, checks)


@timethis
def run_posterior(config):
    spec, model = config.spec, config.model
    m, n = config.window
    traj = _simulate(config)
    header = (['epsilon', 't', 'eta'] +
              ['post_%s' % (s,) for s in spec.states] +
              ['rho', 'log_flr', 'log_llr'])
    rows, checks = [], []
    small = spec.K**(m + n + 1) <= BRUTE_FORCE_PATHS
    for eps in config.epsilons:
        post = posterior(model, traj, eps, m, n)
        for i, t in enumerate(post.times):
            rows.append([eps, t, traj.labels[traj.index(t)]] +
                        list(post.probs[i]) +
                        [post.rho[i], post.log_flr[i], post.log_llr[i]])
        checks.append(_check('posterior sums to one (eps=%g)' % eps,
                             np.max(np.fabs(post.probs.sum(1) - 1)) <= 1.e-12))
        checks.append(_check('rho positive (eps=%g)' % eps,
                             np.all(np.isfinite(post.log_flr))))
        lam = rho_from_lambdas(model, traj, eps, 0, m, n)
        checks.append(_check('rho from Lambda (eps=%g)' % eps,
                             np.fabs(lam - post.log_flr[post.at(0)]) <= 1.e-9))
        if small:
            brute = brute_force_posterior(model, traj, eps, m, n)
            checks.append(_check('brute force (eps=%g)' % eps,
                                 np.max(np.fabs(brute.probs - post.probs))
                                 <= 1.e-10))
    summary = {'epsilons': config.epsilons, 'window': list(config.window)}
    return _finish(config, 'posterior', header, rows, summary, checks)


@timethis
def run_expand(config):
    spec, model = config.spec, config.model
    T = config.T
    window = (max(config.window[0], T), max(config.window[1], T))
    traj = _simulate(config, 0., window)

    forward = weak_signal_expansion(model, traj, T, 0, 1)
    backward = weak_signal_expansion(model, traj, T, 0, -1)

    checks = []
    for name, result, direction in (('forward', forward, 1),
                                    ('backward', backward, -1)):
        fd1 = fd_log_ratio_derivative(model, traj, T, 1, 0, direction,
                                      config.fd_h1)
        fd2 = fd_log_ratio_derivative(model, traj, T, 2, 0, direction,
                                      config.fd_h2)
        checks.append(_check('%s r1 vs finite difference' % name,
                             np.fabs(fd1 - result.r1) <=
                             1.e-4 * max(1., np.fabs(result.r1)),
                             analytic=result.r1, numeric=fd1))
        checks.append(_check('%s r2 vs finite difference' % name,
                             np.fabs(fd2 - result.r2) <=
                             1.e-3 * max(1., np.fabs(result.r2)),
                             analytic=result.r2, numeric=fd2))
        try:
            stationary_coefficients(spec)
        except ValueError:
            continue
        closed = stationary_expansion(model, traj, T, 0, direction)
        checks.append(_check('%s stationary closed form' % name,
                             np.fabs(closed.r1 - result.r1) <=
                             1.e-12 * max(1., np.fabs(result.r1)) and
                             np.fabs(closed.r2 - result.r2) <=
                             1.e-12 * max(1., np.fabs(result.r2))))

    m, n = T, T
    total = fd_derivative(lambda e: log_flr_llr(model, traj, e, m, n), 0.,
                          config.fd_h1, 1)
    checks.append(_check('ln(FLR/LLR) first derivative',
                         np.fabs(total - forward.r1 - backward.r1) <=
                         1.e-4 * max(1., np.fabs(total))))

    header = ['t', 'D0t', 'd1', 'd2', 'cum_r1', 'cum_r2']
    rows = backward.rows()[::-1] + forward.rows()
    summary = {'T': T,
               'r1': forward.r1, 'r2': forward.r2,
               'tail_bound': forward.tail_bound,
               'backward_r1': backward.r1, 'backward_r2': backward.r2,
               'backward_tail_bound': backward.tail_bound}
    return _finish(config, 'expand', header, rows, summary, checks)


@timethis
def run_test(config):
    spec, model = config.spec, config.model
    header = ['epsilon', 'replicate', 'method', 'R', 'V', 'FDP',
              'true_rejections', 'expected_fdr']
    rows, checks, summaries = [], [], []
    for eps in config.epsilons:
        results = flr_llr_experiment(spec, model, eps, config.window,
                                     config.alpha, config.replicates,
                                     config.seed)
        for row in results:
            rows.append([eps, row['replicate'], row['method'], row['R'],
                         row['V'], row['FDP'], row['true_rejections'],
                         row['expected_fdr']])
        checks.append(_check('expected FDR <= alpha (eps=%g)' % eps,
                             all(row['expected_fdr'] <= config.alpha + 1.e-12
                                 for row in results)))
        try:
            r = stationary_coefficients(spec)[2]
        except ValueError:
            r = None
        if r is not None and np.fabs(r) < 1.e-15:
            flr = [row['rejected'] for row in results if row['method'] == 'FLR']
            llr = [row['rejected'] for row in results if row['method'] == 'LLR']
            checks.append(_check('FLR equals LLR without dependence (eps=%g)'
                                 % eps,
                                 all(np.array_equal(a, b)
                                     for a, b in zip(flr, llr))))
        for method in ('FLR', 'LLR'):
            summary = summarize(results, method)
            summary['epsilon'] = eps
            summaries.append(summary)
    summary = {'alpha': config.alpha, 'replicates': config.replicates,
               'methods': summaries}
    return _finish(config, 'test', header, rows, summary, checks)


@timethis
def run_diagnose(config):
    spec, model = config.spec, config.model
    n_max = config.n_max
    traj = _simulate(config, window=(n_max, n_max))
    eps = config.epsilons[0]

    trace = delta_trace(model, traj, eps, n_max, 0, 1,
                        h={1: config.fd_h1, 2: config.fd_h2})
    back = delta_trace(model, traj, eps, n_max, 0, -1,
                       h={1: config.fd_h1, 2: config.fd_h2})
    schedule = sorted(set(int(k) for k in np.geomspace(spec.kappa, n_max, 8))
                      | {spec.kappa, n_max})
    lam = lambda_convergence_trace(model, traj, eps, schedule)

    checks = [_check('forward Delta trace', not trace.violations,
                     violations=trace.violations,
                     fitted_rate=trace.fitted_rate,
                     bound_rate=trace.bound_rate),
              _check('backward Delta trace', not back.violations,
                     violations=back.violations,
                     fitted_rate=back.fitted_rate),
              _check('Lambda envelope', not lam.violations,
                     violations=lam.violations)]
    if spec.kappa == 1:
        bad = lambda_bounds_check(model, traj, eps, n_max)
        checks.append(_check('Lambda bounds', not bad, violations=bad))

    header = ['n', 'delta', 'delta_nu1', 'delta_nu2']
    if trace.bound is not None:
        header.append('bound')
    summary = {'epsilon': eps,
               'n_max': n_max,
               'gamma': trace.gamma,
               'fitted_rate': trace.fitted_rate,
               'bound_rate': trace.bound_rate,
               'lambda_gaps': lam.gaps}
    return _finish(config, 'diagnose', header, trace.rows(), summary, checks)


@timethis
def run_mc_verify(config):
    spec, model = config.spec, config.model
    samples, seed = config.mc_samples, config.seed
    results = []
    for name, method in (('fisher information', model.fisher_info_check),
                         ('fisher identity', model.fisher_identity_check),
                         ('score mean', model.score_mean_check)):
        target, estimate, se = method(samples, seed)
        results.append(mc_check(name, target, estimate, se, samples))

    binary = spec.K == 2 and spec.kappa == 1
    if binary:
        T, R = config.T, config.replicates
        results.append(expected_r1_given_eta_check(spec, model, T, R, seed))
        for eta0 in spec.states:
            results.append(expected_r2_given_eta0_check(spec, model, eta0, T,
                                                        R, seed))
        results.append(interchange_check(spec, model, T, R, seed,
                                         config.epsilons[0]))

    header = ['check', 'target', 'estimate', 'se', 'replicates', 'passed']
    rows = [[c.name, c.target, c.estimate, c.se, c.replicates, c.passed]
            for c in results]
    checks = [c.as_dict() for c in results]
    return _finish(config, 'mc-verify', header, rows, {'samples': samples},
                   checks)


COMMANDS = {'simulate': run_simulate,
            'posterior': run_posterior,
            'expand': run_expand,
            'test': run_test,
            'diagnose': run_diagnose,
            'mc-verify': run_mc_verify}


def make_parser():
    parser = argparse.ArgumentParser(
        prog='hmmfdr',
        description='Likelihood ratios, expansions and FDR control '
                    'for hidden Markov hypotheses.')
    parser.add_argument('--version', action='version',
                        version='hmmfdr %s' % __version__)
    parser.add_argument('command', choices=sorted(COMMANDS))
    parser.add_argument('--config', required=True,
                        help='JSON experiment configuration')
    parser.add_argument('--out', help='output directory')
    parser.add_argument('--seed', type=int, help='base seed')
    parser.add_argument('--quiet', action='store_true',
                        help='only log warnings and errors')
    return parser


def main(argv=None):
    args = make_parser().parse_args(argv)
    logging.basicConfig(level=logging.WARNING if args.quiet else logging.INFO,
                        format='%(asctime)s %(name)s %(levelname)s %(message)s')
    try:
        with open(args.config) as f:
            value = json.load(f)
        if args.seed is not None:
            value['seed'] = args.seed
        if args.out is not None:
            value['out'] = args.out
        config = experiment_config(value)
    except (IOError, OSError) as err:
        logger.error('config: %s', err)
        return 2
    except (ValueError, TypeError) as err:
        # ConfigError, JSON errors, a top level that is not an object
        logger.error('%s', err)
        return 2

    logger.info('%s with config %s, seed %d', args.command, config.hash,
                config.seed)
    try:
        summary = COMMANDS[args.command](config)
    except (NotBinary, KappaNotSupported, NotStationary) as err:
        logger.error('%s needs a different chain: %s', args.command, err)
        return 2
    except HmmfdrError as err:
        logger.error('%s failed for config %s: %s (%s)', args.command,
                     config.hash, err, type(err).__name__)
        return 2
    return 0 if summary['passed'] else 1


if __name__ == '__main__':
    sys.exit(main())
