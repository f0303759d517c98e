"""
The L-matrices

    L_{n,ab} = E[1{σ_n = b} ∏_{s=1}^n ψ_s | σ_0 = a]

of the chain run forward (n > 0) or backward (n < 0) from a
center index, computed by L_n = L_{n-1} P diag(ψ_n) with the
running maximum divided out at each step and kept as a log scale.

"""
import itertools

import numpy as np
from scipy.special import logsumexp

from ..errors import DegenerateDenominator, WindowTooLarge
from .psi import log_psi_table

UNDERFLOW = 1.e-280
MAX_PATHS = 2**20


class L_sequence(object):

    """
    L_0, ..., L_depth for one direction.

    Parameters
    ----------

    matrices : [np.float((K,K))]
        Max-normalized L-matrices.

    log_scales : [float]
        ln of the factor divided out of each matrix.

    direction : int
        +1 for the forward chain, -1 for the time-reversed chain.

    center : int
        Index the chain starts from.

    """

    def __init__(self, matrices, log_scales, direction, center):
        self.matrices = matrices
        self.log_scales = np.asarray(log_scales)
        self.direction = direction
        self.center = center

    @property
    def depth(self):
        return len(self.matrices) - 1

    def __getitem__(self, n):
        return self.matrices[n]

    def log_matrix(self, n):
        """
        ln L_n on its true scale.
        """
        with np.errstate(divide='ignore'):
            return np.log(self.matrices[n]) + self.log_scales[n]

    def row_sums(self, n=None):
        n = self.depth if n is None else n
        return self.matrices[n].sum(1)


def _rescale(L, log_scale):
    top = L.max()
    if not np.isfinite(top) or top <= 0:
        raise DegenerateDenominator('L-matrix vanished')
    return L / top, log_scale + np.log(top)


def _direction_rows(traj, t, depth, direction):
    # array positions of t + direction * j, j = 1..depth
    traj.index(t + direction * depth)
    i0 = traj.index(t)
    return i0 + direction * np.arange(1, depth + 1)


def l_sequence_from_table(spec, log_psi, traj, t, depth, direction):
    rows = _direction_rows(traj, t, depth, direction)
    steps = spec.step_matrices(t, depth, direction)
    K = spec.K
    L, scale = np.identity(K), 0.
    matrices, scales = [L], [scale]
    for M, lp in zip(steps, log_psi[rows]):
        L = L.dot(M)
        positive = L[L > 0]
        if positive.size and positive.min() < UNDERFLOW * L.max():
            L, scale = _rescale(L, scale)
        shift = lp.max()
        L = L * np.exp(lp - shift)[None, :]
        L, scale = _rescale(L, scale + shift)
        matrices.append(L)
        scales.append(scale)
    return L_sequence(matrices, scales, direction, t)


def forward_l(model, traj, epsilon, n, t=0):
    """
    L_1, ..., L_n of the chain run forward from index `t`.

    Parameters
    ----------

    model : interaction_model

    traj : trajectory

    epsilon : float

    n : int
        Depth; indices t+1, ..., t+n must lie in the trajectory.

    t : int
        Center index.

    Returns
    -------

    L : L_sequence

    """
    table = log_psi_table(model, traj, epsilon)
    return l_sequence_from_table(traj.spec, table, traj, t, n, 1)


def backward_l(model, traj, epsilon, m, t=0):
    """
    L_{-1}, ..., L_{-m} of the time-reversed chain from index `t`.
    """
    table = log_psi_table(model, traj, epsilon)
    return l_sequence_from_table(traj.spec, table, traj, t, m, -1)


def lambda_ratio(lseq, a, n=None, ref=None):
    """
    Λ_{n,a} = Σ_b L_{n,ab} / Σ_b L_{n,ıb}.

    Parameters
    ----------

    lseq : L_sequence

    a : int
        Position of the state in `spec.states`.

    n : int
        Depth, defaults to the deepest matrix.

    ref : int
        Position of the reference state ı, by default 0.

    """
    sums = lseq.row_sums(n)
    ref = 0 if ref is None else ref
    if not np.isfinite(sums[ref]) or sums[ref] <= 0:
        raise DegenerateDenominator('reference row of L_%d vanished'
                                    % (lseq.direction * (lseq.depth if n is None
                                                         else n)))
    return sums[a] / sums[ref]


def lambda_vector(lseq, n=None, ref=0):
    sums = lseq.row_sums(n)
    if not np.isfinite(sums[ref]) or sums[ref] <= 0:
        raise DegenerateDenominator('reference row vanished')
    return sums / sums[ref]


def log_ratio(model, traj, epsilon, n, direction=1, t=0):
    """
    λ_{±n}(ε) = ln Λ_{±n,a}(ε) for the first signal state `a`,
    the reference being the first null state.
    """
    spec = traj.spec
    table = log_psi_table(model, traj, epsilon)
    lseq = l_sequence_from_table(spec, table, traj, t, n, direction)
    return np.log(lambda_ratio(lseq, spec.h1_indices[0], ref=spec.h0_indices[0]))


def brute_force_l(model, traj, epsilon, n, t=0, direction=1):
    """
    ln L_{±n} by summing over every path σ_1, ..., σ_n.

    Returns
    -------

    log_L : np.float((K,K))

    """
    spec = traj.spec
    K = spec.K
    if K**n > MAX_PATHS:
        raise WindowTooLarge('%d^%d paths exceed %d' % (K, n, MAX_PATHS))
    table = log_psi_table(model, traj, epsilon)
    rows = _direction_rows(traj, t, n, direction)
    with np.errstate(divide='ignore'):
        log_steps = [np.log(M) for M in spec.step_matrices(t, n, direction)]

    paths = np.array(list(itertools.product(range(K), repeat=n)), int)
    log_L = np.full((K, K), -np.inf)
    for a in range(K):
        w = np.zeros(paths.shape[0])
        previous = np.full(paths.shape[0], a)
        for j in range(n):
            w += log_steps[j][previous, paths[:, j]] + table[rows[j], paths[:, j]]
            previous = paths[:, j]
        for b in range(K):
            keep = paths[:, -1] == b
            if keep.any():
                log_L[a, b] = logsumexp(w[keep])
    return log_L
