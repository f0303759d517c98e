"""
The oracle FDR procedure for posterior null probabilities.

With q_k = P(H_k true | data), rejecting a set S has expected number
of false rejections Σ_{k∈S} q_k. The procedure rejects the largest
lower set of q-values whose mean q stays below α, which maximises the
expected number of true rejections R - Σ q subject to that constraint.

"""
import numpy as np

from ..errors import InvalidQ, TooManyHypotheses

MAX_BRUTE_FORCE = 20
DECIMALS = 6
FLOAT_SLACK = 1.e-12


class test_outcome(object):

    """
    Rejections made at level α.

    Parameters
    ----------

    rejected : np.int
        Sorted indices of the rejected hypotheses.

    q : np.float
        The q-values the decision was made from.

    alpha : float

    """

    def __init__(self, rejected, q, alpha):
        self.rejected = np.sort(np.asarray(rejected, int))
        self.alpha = alpha
        self._q = np.asarray(q, float)

    @property
    def R(self):
        return self.rejected.shape[0]

    @property
    def expected_true_rejections(self):
        return self.R - self._q[self.rejected].sum()

    @property
    def expected_fdr(self):
        if self.R == 0:
            return 0.
        return self._q[self.rejected].mean()

# make sure pytest does not try to collect this class
test_outcome.__test__ = False


def _check_q(q, alpha):
    q = np.asarray(q, float)
    if q.ndim != 1:
        raise InvalidQ('q must be a vector')
    if not np.all(np.isfinite(q)) or np.any(q < 0) or np.any(q > 1):
        raise InvalidQ('q-values must lie in [0, 1]')
    if not 0 < alpha < 1:
        raise ValueError('alpha must lie in (0, 1)')
    return q


def _scaled(q, alpha, decimals=DECIMALS):
    """
    Integer versions of q and α when both have at most `decimals`
    decimal places, else None.
    """
    scale = 10**decimals
    qi = np.round(q * scale)
    ai = np.round(alpha * scale)
    if np.all(np.fabs(q * scale - qi) < 1.e-6) and \
       np.fabs(alpha * scale - ai) < 1.e-6:
        return qi.astype(np.int64), int(ai)
    return None


def _feasible(sums, counts, alpha, scaled):
    # Σ q <= α R, exactly on the decimal grid when possible
    if scaled is not None:
        return sums <= scaled[1] * counts
    return sums <= alpha * counts + FLOAT_SLACK * counts


def oracle_bh(q, alpha):
    """
    Reject the hypotheses with the smallest q-values, as many as
    keep the mean rejected q at most α.

    >>> oracle_bh(np.array([0.01, 0.02, 0.5, 0.9]), 0.1).rejected
    array([0, 1])
    >>> oracle_bh(np.array([0.3, 0.4]), 0.1).R
    0

    Parameters
    ----------

    q : np.float
        Posterior null probabilities in [0, 1].

    alpha : float

    Returns
    -------

    outcome : test_outcome

    Notes
    -----

    With q sorted, r = max{j : Σ_{i<=j} q_(i) <= α j} and the
    hypotheses with q_k <= q_(r) are rejected. Tied q-values share
    one fate: r only stops at the end of a run of ties.

    """
    q = _check_q(q, alpha)
    n = q.shape[0]
    if n == 0:
        return test_outcome([], q, alpha)

    scaled = _scaled(q, alpha)
    order = np.argsort(q, kind='mergesort')
    if scaled is not None:
        sums = np.cumsum(scaled[0][order])
    else:
        sums = np.cumsum(q[order])
    counts = np.arange(1, n + 1)

    qs = q[order]
    ends = np.ones(n, bool)
    ends[:-1] = qs[:-1] < qs[1:]

    candidates = np.nonzero(_feasible(sums, counts, alpha, scaled) & ends)[0]
    r = candidates.max() + 1 if candidates.size else 0
    return test_outcome(order[:r], q, alpha)


def brute_force_optimal(q, alpha):
    """
    Maximise R - Σ_{S} q over all sets S with Σ_{S} q <= α R
    by enumeration.

    Raises `TooManyHypotheses` beyond 20 hypotheses.
    """
    q = _check_q(q, alpha)
    n = q.shape[0]
    if n > MAX_BRUTE_FORCE:
        raise TooManyHypotheses('brute force is limited to %d hypotheses'
                                % MAX_BRUTE_FORCE)
    scaled = _scaled(q, alpha)
    values = scaled[0] if scaled is not None else q

    codes = np.arange(2**n)
    sums = np.zeros(codes.shape[0], values.dtype)
    counts = np.zeros(codes.shape[0], np.int64)
    for i in range(n):
        bit = (codes >> i) & 1
        sums += bit * values[i]
        counts += bit

    if scaled is not None:
        objective = counts * 10**DECIMALS - sums
    else:
        objective = counts - sums
    feasible = _feasible(sums, counts, alpha, scaled)
    objective = np.where(feasible, objective, objective.min() - 1)
    best = codes[np.argmax(objective)]
    rejected = [i for i in range(n) if (best >> i) & 1]
    return test_outcome(rejected, q, alpha)


def objective_value(outcome):
    """
    R - Σ q over the rejected set, as an exact integer on the
    decimal grid (scaled by 10^6) when the q-values allow it.
    """
    scaled = _scaled(outcome._q, outcome.alpha)
    if scaled is not None:
        return int(outcome.R * 10**DECIMALS - scaled[0][outcome.rejected].sum())
    return outcome.expected_true_rejections


def evaluate_against_truth(outcome, eta, h1_mask):
    """
    Realised counts of a decision against the hidden truth.

    Parameters
    ----------

    outcome : test_outcome

    eta : np.int
        Hidden states as positions, aligned with the q-values.

    h1_mask : np.bool
        Which positions are signal states.

    Returns
    -------

    R, V, FDP, true_rejections : int, int, float, int
        V counts rejected nulls; FDP = V / max(R, 1).

    """
    null = ~np.asarray(h1_mask)[np.asarray(eta)]
    V = int(null[outcome.rejected].sum())
    R = outcome.R
    return R, V, V / float(max(R, 1)), R - V
