"""
Posterior laws of the hidden states, the full likelihood ratio (FLR)
and the local likelihood ratio (LLR).

For a window [-m, n] the full likelihood ratio at t is

    ρ_t = P(η_t ∈ H1 | X_{-m..n}) / P(η_t ∈ H0 | X_{-m..n})

and the local ratio uses X_t alone,

    LLR_t = Σ_{H1} P_t(a) ψ_t(a) / Σ_{H0} P_t(a) ψ_t(a).

"""
import numpy as np
from scipy.special import logsumexp, expit

from ..errors import DegenerateDenominator, WindowTooLarge
from .psi import log_psi_table
from .lmatrix import l_sequence_from_table, lambda_vector

MAX_PATHS = 2**20


class posterior_result(object):

    """
    Posterior summaries over a window.

    Parameters
    ----------

    times : np.int((N,))
        Indices t of the window.

    probs : np.float((N,K))
        P(η_t = a | X).

    log_flr : np.float((N,))
        ln ρ_t.

    log_llr : np.float((N,))
        ln LLR_t.

    h1_mask : np.bool((K,))

    epsilon : float
        Signal strength the observations were evaluated at.

    window : (int, int)
        The pair (m, n) of the window [-m, n].

    """

    def __init__(self, times, probs, log_flr, log_llr, h1_mask,
                 epsilon=None, window=None):
        self.times = np.asarray(times)
        self.probs = probs
        self.log_flr = log_flr
        self.log_llr = log_llr
        self.h1_mask = h1_mask
        self.epsilon = epsilon
        if window is None:
            window = (-int(self.times[0]), int(self.times[-1]))
        self.window = tuple(window)

    @property
    def rho(self):
        return np.exp(self.log_flr)

    @property
    def q_flr(self):
        """
        Posterior null probabilities P(η_t ∈ H0 | X).
        """
        return expit(-self.log_flr)

    @property
    def q_llr(self):
        """
        Local null probabilities P(η_t ∈ H0 | X_t).
        """
        return expit(-self.log_llr)

    def at(self, t):
        i = int(np.searchsorted(self.times, t))
        if i >= self.times.shape[0] or self.times[i] != t:
            raise IndexError('%d is not in the window' % t)
        return i


def _log_class_ratio(logw, h1_mask):
    return (logsumexp(logw[..., h1_mask], axis=-1) -
            logsumexp(logw[..., ~h1_mask], axis=-1))


def local_log_ratios(spec, log_psi, lo):
    """
    ln LLR_t for rows of `log_psi` starting at index `lo`.
    """
    N = log_psi.shape[0]
    with np.errstate(divide='ignore'):
        logP = np.log(np.array([spec.marginal(lo + i) for i in range(N)]))
    return _log_class_ratio(logP + log_psi, spec.h1_mask)


def posterior_from_table(spec, log_psi, lo, epsilon=None):
    """
    Scaled forward-backward pass over the rows of `log_psi`,
    row i being index lo + i. `epsilon` is only recorded.

    Returns
    -------

    result : posterior_result

    """
    N, K = log_psi.shape
    emit = np.exp(log_psi - log_psi.max(1)[:, None])

    alpha = np.empty((N, K))
    a = spec.marginal(lo) * emit[0]
    alpha[0] = a / a.sum()
    for i in range(1, N):
        a = alpha[i - 1].dot(spec.one_step(lo + i - 1)) * emit[i]
        total = a.sum()
        if not np.isfinite(total) or total <= 0:
            raise DegenerateDenominator('forward pass vanished at %d' % (lo + i))
        alpha[i] = a / total

    beta = np.empty((N, K))
    beta[-1] = 1. / K
    for i in range(N - 2, -1, -1):
        b = spec.one_step(lo + i).dot(emit[i + 1] * beta[i + 1])
        total = b.sum()
        if not np.isfinite(total) or total <= 0:
            raise DegenerateDenominator('backward pass vanished at %d' % (lo + i))
        beta[i] = b / total

    with np.errstate(divide='ignore'):
        logpost = np.log(alpha) + np.log(beta)
    logpost -= logsumexp(logpost, axis=1)[:, None]
    probs = np.exp(logpost)

    return posterior_result(lo + np.arange(N),
                            probs,
                            _log_class_ratio(logpost, spec.h1_mask),
                            local_log_ratios(spec, log_psi, lo),
                            spec.h1_mask,
                            epsilon=epsilon)


def _window_rows(traj, m, n):
    lo, hi = traj.index(-m), traj.index(n)
    return slice(lo, hi + 1)


def posterior(model, traj, epsilon, m, n):
    """
    Posterior of every hidden state in the window [-m, n]
    given the observations in that window.

    Parameters
    ----------

    model : interaction_model

    traj : trajectory
        Must cover [-m, n].

    epsilon : float

    m, n : int

    Returns
    -------

    result : posterior_result

    """
    table = log_psi_table(model, traj, epsilon)[_window_rows(traj, m, n)]
    return posterior_from_table(traj.spec, table, -m, epsilon=float(epsilon))


def local_posterior(model, traj, epsilon, m=None, n=None):
    """
    P(η_t = a | X_t) for t in [-m, n], by default the whole trajectory.
    """
    m = traj.m if m is None else m
    n = traj.n if n is None else n
    spec = traj.spec
    table = log_psi_table(model, traj, epsilon)[_window_rows(traj, m, n)]
    with np.errstate(divide='ignore'):
        logw = np.log(np.array([spec.marginal(t) for t in range(-m, n + 1)])) + table
    logw -= logsumexp(logw, axis=1)[:, None]
    return np.exp(logw)


def brute_force_posterior(model, traj, epsilon, m, n):
    """
    Posterior over [-m, n] by enumerating every hidden path.

    Raises `WindowTooLarge` beyond 2^20 paths.
    """
    spec = traj.spec
    K, N = spec.K, m + n + 1
    if K**N > MAX_PATHS:
        raise WindowTooLarge('%d^%d paths exceed %d' % (K, N, MAX_PATHS))
    table = log_psi_table(model, traj, epsilon)[_window_rows(traj, m, n)]

    # path p has state (p // K^(N-1-i)) % K at position i
    codes = np.arange(K**N)
    paths = np.empty((K**N, N), np.int8)
    for i in range(N):
        paths[:, i] = (codes // K**(N - 1 - i)) % K

    with np.errstate(divide='ignore'):
        logw = np.log(spec.marginal(-m))[paths[:, 0]] + table[0, paths[:, 0]]
        for i in range(1, N):
            logP = np.log(spec.one_step(-m + i - 1))
            logw = logw + logP[paths[:, i - 1], paths[:, i]] + table[i, paths[:, i]]

    logpost = np.full((N, K), -np.inf)
    for i in range(N):
        for a in range(K):
            keep = paths[:, i] == a
            logpost[i, a] = logsumexp(logw[keep])
    logpost -= logsumexp(logpost, axis=1)[:, None]

    return posterior_result(np.arange(-m, n + 1),
                            np.exp(logpost),
                            _log_class_ratio(logpost, spec.h1_mask),
                            local_log_ratios(spec, table, -m),
                            spec.h1_mask,
                            epsilon=float(epsilon),
                            window=(m, n))


def rho_from_lambdas(model, traj, epsilon, t, m, n):
    """
    ln ρ_t for the window [-m, n] assembled as

        Σ_{H1} ψ_t(a) P_t(a) Λ_{back,a} Λ_{fwd,a} /
        Σ_{H0} ψ_t(a) P_t(a) Λ_{back,a} Λ_{fwd,a}

    with the backward chain run t+m steps and the forward chain
    n-t steps from t.
    """
    spec = traj.spec
    table = log_psi_table(model, traj, epsilon)
    return _rho_from_sequences(spec, table, traj, t,
                               l_sequence_from_table(spec, table, traj, t,
                                                     t + m, -1),
                               l_sequence_from_table(spec, table, traj, t,
                                                     n - t, 1))


def _rho_from_sequences(spec, table, traj, t, back, fwd, m_depth=None,
                        n_depth=None):
    lam = lambda_vector(back, m_depth) * lambda_vector(fwd, n_depth)
    with np.errstate(divide='ignore'):
        logw = table[traj.index(t)] + np.log(spec.marginal(t)) + np.log(lam)
    return _log_class_ratio(logw, spec.h1_mask)


def log_flr_llr(model, traj, epsilon, m, n, t=0):
    """
    ln(FLR_t / LLR_t) over the window [-m, n].
    """
    result = posterior(model, traj, epsilon, m, n)
    i = result.at(t)
    return result.log_flr[i] - result.log_llr[i]


def martingale_convergence_probe(model, traj, epsilon, t, schedule):
    """
    ρ_t over a growing schedule of windows.

    Parameters
    ----------

    schedule : [(int, int)]
        Windows (m, n), each containing t.

    Returns
    -------

    sequence : np.float((len(schedule),))
        ρ_t for each window.

    tail_max_diff : float
        Largest change between successive entries over the second
        half of the schedule.

    """
    spec = traj.spec
    table = log_psi_table(model, traj, epsilon)
    back_depth = max(t + m for m, _ in schedule)
    fwd_depth = max(n - t for _, n in schedule)
    back = l_sequence_from_table(spec, table, traj, t, back_depth, -1)
    fwd = l_sequence_from_table(spec, table, traj, t, fwd_depth, 1)

    sequence = np.array([np.exp(_rho_from_sequences(spec, table, traj, t,
                                                    back, fwd, t + m, n - t))
                         for m, n in schedule])
    tail = sequence[len(sequence) // 2:]
    tail_max_diff = np.fabs(np.diff(tail)).max() if tail.shape[0] > 1 else 0.
    return sequence, tail_max_diff
