"""
Simulation of hidden paths and observations.
"""
import numpy as np

from ..errors import IndexOutOfWindow
from .chain import hidden_chain


def replicate_rng(seed, k):
    """
    Generator of replicate `k`: PCG64 seeded with ``seed ^ k``.
    """
    return np.random.Generator(np.random.PCG64(int(seed) ^ int(k)))


class trajectory(object):

    """
    A hidden path and its noise on the window [-m, n].

    Observations are X_t = φ(Z_t, θ_{η_t}(ε)); they are kept for
    the generating ε and can be recomputed at any other ε with
    the same path and noise.

    Parameters
    ----------

    spec : hmm_spec

    model : interaction_model

    eta : np.int((m+n+1,))
        Hidden states as positions in `spec.states`.

    z : np.float((m+n+1,)) or np.float((m+n+1,d))
        Noise points.

    epsilon : float
        Signal strength used to generate `x`.

    window : (int, int)
        The pair (m, n).

    """

    def __init__(self, spec, model, eta, z, epsilon, window):
        self.spec, self.model = spec, model
        self.m, self.n = [int(w) for w in window]
        self.eta = np.asarray(eta, int)
        self.z = np.asarray(z, float)
        if self.eta.shape[0] != self.m + self.n + 1 or \
           self.z.shape[0] != self.eta.shape[0]:
            raise ValueError('path and noise must have m+n+1 entries')
        self.epsilon = float(epsilon)
        self.x = self.x_at(self.epsilon)

    def __len__(self):
        return self.eta.shape[0]

    @property
    def times(self):
        return np.arange(-self.m, self.n + 1)

    @property
    def labels(self):
        return [self.spec.states[e] for e in self.eta]

    def index(self, t):
        """
        Array position of index `t`.
        """
        if not -self.m <= t <= self.n:
            raise IndexOutOfWindow('%d is outside [%d, %d]'
                                   % (t, -self.m, self.n))
        return t + self.m

    def x_at(self, epsilon):
        """
        Observations X_t(ε) for the stored path and noise.
        """
        model = self.model
        v = model.theta(self.spec.levels[self.eta], epsilon)
        return model.phi(self.z, v)

    def recentered(self, t):
        """
        The same data with index `t` relabelled as 0.
        """
        self.index(t)
        return trajectory(self.spec,
                          self.model,
                          self.eta,
                          self.z,
                          self.epsilon,
                          (self.m + t, self.n - t))


def simulate(spec, model, epsilon, window, rng, eta0=None):
    """
    Draw a hidden path on [-m, n] and its observations.

    The state at 0 is drawn from `spec.initial` (or set to `eta0`),
    the chain is run forward to n and then backward, through the
    time-reversed conditionals, to -m. The noise is drawn last.

    Parameters
    ----------

    spec : hmm_spec

    model : interaction_model

    epsilon : float

    window : (int, int)
        (m, n) with m, n >= 0.

    rng : np.random.Generator

    eta0 : state label
        Optional state at index 0.

    Returns
    -------

    traj : trajectory

    """
    m, n = [int(w) for w in window]
    if m < 0 or n < 0:
        raise IndexOutOfWindow('window sizes must be nonnegative')

    state0 = None if eta0 is None else spec.index_of(eta0)
    chain = hidden_chain(spec, rng, t=0, state=state0)

    path = np.empty(m + n + 1, int)
    path[m] = chain.state
    for i in range(1, n + 1):
        path[m + i] = chain.forward_step()
    chain.reset(0, path[m])
    for i in range(1, m + 1):
        path[m - i] = chain.backward_step()

    z = model.sample_noise(rng, m + n + 1)
    return trajectory(spec, model, path, z, epsilon, (m, n))
