"""
Hidden Markov chains whose hidden states carry the hypotheses.

An `hmm_spec` holds the state set, its split into null states
and signal states, the law of the state at index 0, and the transition
matrices. Transitions are either one stationary matrix or a list of
matrices, the j-th of which is P_{t,t+1} for t = transition_start + j.
Indices outside the declared list use the nearest declared matrix.

"""
import copy
import hashlib
import json
import numbers

import numpy as np

from ..errors import (NonStochasticRow,
                      InvalidInitialLaw,
                      EmptyPartitionClass,
                      FloorViolation,
                      IndexOutOfWindow,
                      BackwardMarginalError,
                      NotBinary,
                      NotStationary)

STOCHASTIC_TOL = 1.e-12

class hmm_spec(object):

    """
    A finite-state Markov chain with a partition of its states
    into null states and signal states.

    Parameters
    ----------

    states : sequence
        Labels of the hidden states.

    h1_states : sequence
        The labels that are signal states. Every other label is
        a null state.

    initial : np.float((K,))
        Law of the hidden state at index 0.

    transitions : np.float((K,K)) or np.float((M,K,K))
        A stationary transition matrix, or the matrices
        P_{t,t+1}, t = transition_start, ..., transition_start+M-1.

    kappa : int
        Number of steps after which transition probabilities
        are bounded below by `phi_star`.

    phi_star : float
        The κ-step floor. Defaults to the smallest κ-step
        transition probability of the declared matrices.

    transition_start : int
        Index of the first declared matrix.

    window : (int, int)
        Optional (lo, hi) range of indices that `k_step` accepts.

    levels : sequence
        Numeric signal level of each state, passed to the
        interaction model's parametrization. Defaults to the labels
        themselves when they are numbers, else to the indicator of
        the signal states.

    """

    def __init__(self,
                 states,
                 h1_states,
                 initial,
                 transitions,
                 kappa=1,
                 phi_star=None,
                 transition_start=0,
                 window=None,
                 levels=None):

        self.states = tuple(states)
        self.K = len(self.states)
        h1 = set(h1_states)
        unknown = h1.difference(self.states)
        if unknown:
            raise ValueError('unknown signal states: %s' % sorted(unknown))
        self.h1_mask = np.array([s in h1 for s in self.states], bool)

        self.initial = np.asarray(initial, float)
        if self.initial.shape != (self.K,):
            raise InvalidInitialLaw('initial law must have %d entries' % self.K)

        P = np.asarray(transitions, float)
        if P.ndim == 2:
            P = P[None]
        if P.ndim != 3 or P.shape[1:] != (self.K, self.K):
            raise ValueError('transitions must be (K,K) or (M,K,K) with K=%d'
                             % self.K)
        self._matrices = P
        self.stationary = P.shape[0] == 1
        self.transition_start = int(transition_start)

        self.kappa = int(kappa)
        if self.kappa < 1:
            raise ValueError('kappa must be a positive integer')

        if phi_star is None:
            phi_star = min([self._kappa_product(s).min()
                            for s in self._floor_range()])
        self.phi_star = float(phi_star)
        self.window = None if window is None else (int(window[0]),
                                                   int(window[1]))

        if levels is None:
            if all(isinstance(s, numbers.Number) for s in self.states):
                levels = [float(s) for s in self.states]
            else:
                levels = self.h1_mask.astype(float)
        self.levels = np.asarray(levels, float)

        self._marginals = {0: self.initial}
        self._constant_marginals = (self.stationary and
                                    np.max(np.fabs(self.initial.dot(P[0]) -
                                                   self.initial))
                                    <= STOCHASTIC_TOL)

    @property
    def matrices(self):
        return self._matrices

    @property
    def h1_indices(self):
        return np.nonzero(self.h1_mask)[0]

    @property
    def h0_indices(self):
        return np.nonzero(~self.h1_mask)[0]

    def index_of(self, label):
        """
        Position of a state label in `self.states`.
        """
        try:
            return self.states.index(label)
        except ValueError:
            raise ValueError('unknown state %r' % (label,))

    def one_step(self, t):
        """
        P_{t,t+1}: the law of the state at t+1 given the state at t.
        """
        if self.stationary:
            return self._matrices[0]
        j = t - self.transition_start
        j = min(max(j, 0), self._matrices.shape[0] - 1)
        return self._matrices[j]

    def marginal(self, t):
        """
        Law of the hidden state at index `t`.

        Later indices are propagated forward from `initial`; earlier
        indices solve p_{t-1} P_{t-1,t} = p_t, except that a law
        invariant for the step matrix is carried back unchanged.
        """
        if self._constant_marginals:
            return self.initial
        if t in self._marginals:
            return self._marginals[t]

        if t > 0:
            s = max(k for k in self._marginals if k < t)
            p = self._marginals[s]
            for u in range(s, t):
                p = p.dot(self.one_step(u))
                self._marginals[u + 1] = p
            return p

        s = min(k for k in self._marginals if k > t)
        p = self._marginals[s]
        for u in range(s, t, -1):
            P = self.one_step(u - 1)
            if np.max(np.fabs(p.dot(P) - p)) <= STOCHASTIC_TOL:
                # p is invariant for P; solving would only add round-off
                self._marginals[u - 1] = p
                continue
            try:
                q = np.linalg.solve(P.T, p)
            except np.linalg.LinAlgError:
                raise BackwardMarginalError('P_{%d,%d} is singular, the law '
                                            'at %d is not determined'
                                            % (u - 1, u, u - 1))
            if np.any(q < -1.e-10) or np.fabs(q.sum() - 1) > 1.e-8:
                raise BackwardMarginalError('no probability vector at index '
                                            '%d leads to the law at %d'
                                            % (u - 1, u))
            q = np.clip(q, 0, np.inf)
            p = q / q.sum()
            self._marginals[u - 1] = p
        return p

    def reverse_step(self, t):
        """
        Matrix R with R(a, b) = P(η_{t-1} = b | η_t = a).
        """
        P = self.one_step(t - 1)
        before, after = self.marginal(t - 1), self.marginal(t)
        if np.any(after <= 0):
            raise BackwardMarginalError('state law at %d has a zero entry' % t)
        return (before[None, :] * P.T) / after[:, None]

    def step_matrices(self, t0, n, direction=1):
        """
        One-step matrices of the chain started at `t0`.

        For `direction=1` the j-th matrix is P_{t0+j-1, t0+j}; for
        `direction=-1` it is the time-reversed step from t0-j+1 to t0-j.
        """
        if direction > 0:
            return [self.one_step(t0 + j) for j in range(n)]
        return [self.reverse_step(t0 - j) for j in range(n)]

    # private

    def _floor_range(self):
        if self.stationary:
            return [0]
        return range(self.transition_start - self.kappa,
                     self.transition_start + self._matrices.shape[0])

    def _kappa_product(self, s):
        P = np.identity(self.K)
        for u in range(s, s + self.kappa):
            P = P.dot(self.one_step(u))
        return P

    def to_dict(self):
        return spec_to_dict(self)


class binary_stationary_spec(hmm_spec):

    """
    Stationary two-state chain with states 0 (null) and 1 (signal),
    started from its stationary law.

    Parameters
    ----------

    p01 : float
        P(η_{t+1} = 1 | η_t = 0).

    p10 : float
        P(η_{t+1} = 0 | η_t = 1).

    """

    def __init__(self, p01, p10, phi_star=None, window=None):
        if not (0 < p01 < 1 and 0 < p10 < 1):
            raise ValueError('p01 and p10 must lie in (0, 1)')
        self.p01, self.p10 = float(p01), float(p10)
        Q = np.array([[1 - p01, p01],
                      [p10, 1 - p10]])
        hmm_spec.__init__(self,
                          (0, 1),
                          (1,),
                          [self.p0, self.p1],
                          Q,
                          kappa=1,
                          phi_star=phi_star,
                          window=window)

        # stationary and reversible
        pi = self.initial
        if (np.max(np.fabs(pi.dot(Q) - pi)) > STOCHASTIC_TOL or
            np.fabs(pi[0] * Q[0, 1] - pi[1] * Q[1, 0]) > STOCHASTIC_TOL):
            raise NotStationary('stationary law could not be matched')

    @property
    def p0(self):
        return self.p10 / (self.p01 + self.p10)

    @property
    def p1(self):
        return self.p01 / (self.p01 + self.p10)

    @property
    def r(self):
        return 1 - self.p01 - self.p10


def stationary_distribution(P):
    """
    Solve π P = π, Σ π = 1 by least squares.
    """
    P = np.asarray(P, float)
    K = P.shape[0]
    A = np.vstack([P.T - np.identity(K), np.ones((1, K))])
    b = np.zeros(K + 1)
    b[-1] = 1
    pi = np.linalg.lstsq(A, b, rcond=None)[0]
    pi = np.clip(pi, 0, np.inf)
    return pi / pi.sum()


def validate_spec(spec):
    """
    Check the invariants of a chain and return a copy annotated
    with the smallest verified κ-step transition probability
    (attribute `verified_floor`).

    Raises the error naming the first violated invariant, in the
    order: partition, initial law, stochastic rows, floor.
    """
    if spec.h1_mask.all() or not spec.h1_mask.any():
        raise EmptyPartitionClass('both the null and the signal class '
                                  'need at least one state')

    if np.any(spec.initial <= 0):
        raise InvalidInitialLaw('initial law must be strictly positive')
    if np.fabs(spec.initial.sum() - 1) > STOCHASTIC_TOL:
        raise InvalidInitialLaw('initial law sums to %r' % spec.initial.sum())

    for j, P in enumerate(spec.matrices):
        rowsum = P.sum(1)
        bad = np.nonzero((np.fabs(rowsum - 1) > STOCHASTIC_TOL) |
                         np.any(P < 0, 1))[0]
        if bad.size:
            raise NonStochasticRow('row %s of transition matrix %d is not '
                                   'a probability vector'
                                   % (spec.states[bad[0]], j))

    if not 0 < spec.phi_star <= 1. / spec.K:
        raise ValueError('phi_star must lie in (0, 1/K]')

    verified = np.inf
    for s in spec._floor_range():
        Pk = spec._kappa_product(s)
        low = np.argwhere(Pk < spec.phi_star)
        if low.size:
            a, b = low[0]
            raise FloorViolation(s, s + spec.kappa,
                                 spec.states[a], spec.states[b],
                                 Pk[a, b], spec.phi_star)
        verified = min(verified, Pk.min())

    validated = copy.copy(spec)
    validated.verified_floor = verified
    return validated


def k_step(spec, s, t):
    """
    P_{st}, the law of η_t given η_s, for s <= t.
    """
    if s > t:
        raise IndexOutOfWindow('k_step needs s <= t, got s=%d, t=%d' % (s, t))
    if spec.window is not None:
        lo, hi = spec.window
        if s < lo or t > hi:
            raise IndexOutOfWindow('[%d, %d] is outside the window [%d, %d]'
                                   % (s, t, lo, hi))
    if spec.stationary:
        return np.linalg.matrix_power(spec.one_step(s), t - s)
    P = np.identity(spec.K)
    for u in range(s, t):
        P = P.dot(spec.one_step(u))
    return P


def check_binary(spec):
    """
    Binary chains have two states, listing the null state first.
    """
    if spec.K != 2 or list(spec.h1_mask) != [False, True]:
        raise NotBinary('expected two states with the null state first')
    return spec


def d_coefficient(spec, t, s=0):
    """
    D_{st} = P_{st}(1,1) - P_{st}(0,1) for a binary chain.

    For a stationary binary chain this is r**(t-s).

    >>> d_coefficient(binary_stationary_spec(0.25, 0.25), 2)
    0.25
    """
    check_binary(spec)
    if isinstance(spec, binary_stationary_spec):
        if s > t:
            raise IndexOutOfWindow('d_coefficient needs s <= t')
        return spec.r ** (t - s)
    P = k_step(spec, s, t)
    return P[1, 1] - P[0, 1]


def spec_to_dict(spec):
    if isinstance(spec, binary_stationary_spec):
        value = {'p01': spec.p01, 'p10': spec.p10, 'phi_star': spec.phi_star}
    else:
        P = spec.matrices
        value = {'states': list(spec.states),
                 'h1_states': [s for s, h in zip(spec.states, spec.h1_mask)
                               if h],
                 'initial': spec.initial.tolist(),
                 'transitions': P[0].tolist() if spec.stationary
                                else P.tolist(),
                 'kappa': spec.kappa,
                 'phi_star': spec.phi_star,
                 'transition_start': spec.transition_start,
                 'levels': spec.levels.tolist()}
    if spec.window is not None:
        value['window'] = list(spec.window)
    return value


def spec_from_dict(value):
    """
    Build a chain from its JSON description.

    Either the binary shortcut ``{"p01": .., "p10": ..}`` or the
    general form with ``states``, ``h1_states``, ``initial`` (a list
    or the string ``"stationary"``), ``transitions``, ``kappa`` and
    ``phi_star``.
    """
    value = dict(value)
    if 'p01' in value or 'p10' in value:
        return binary_stationary_spec(value['p01'],
                                      value['p10'],
                                      phi_star=value.get('phi_star'),
                                      window=value.get('window'))
    initial = value['initial']
    if isinstance(initial, str):
        if initial != 'stationary':
            raise ValueError('initial must be a list or "stationary"')
        P = np.asarray(value['transitions'], float)
        initial = stationary_distribution(P if P.ndim == 2 else P[0])
    return hmm_spec(value['states'],
                    value['h1_states'],
                    initial,
                    value['transitions'],
                    kappa=value.get('kappa', 1),
                    phi_star=value.get('phi_star'),
                    transition_start=value.get('transition_start', 0),
                    window=value.get('window'),
                    levels=value.get('levels'))


def spec_hash(spec):
    """
    Short digest of the canonical JSON form of a chain.
    """
    text = json.dumps(spec_to_dict(spec), sort_keys=True)
    return hashlib.sha256(text.encode('utf-8')).hexdigest()[:16]
