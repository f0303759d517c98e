"""
Markov chains that can be run forward and, through the
time-reversed conditionals, backward in time.
"""

import numpy as np


class markov_chain(object):

    """
    Abstract implementation of a Markov chain.
    """

    # API

    # A Markov chain knows how to step forward

    def forward_step(self):
        raise NotImplementedError('abstract method')

    # Some Markov chains can run in time-reversed direction.
    # Not all subclasses need this method implemented

    def backward_step(self):
        raise NotImplementedError('abstract method')

    # A Markov chain has a state

    def get_state(self):
        return self._state

    def set_state(self, state):
        self._state = state

    state = property(get_state, set_state)

    # A Markov chain is iterable

    def __iter__(self):
        return self

    def __next__(self):
        return self.forward_step()


class hidden_chain(markov_chain):

    """
    The hidden chain of an `hmm_spec`, with an index `t`
    and a state given as a position in `spec.states`.

    Parameters
    ----------

    spec : hmm_spec

    rng : np.random.Generator
        Source of the uniforms used for every step.

    t : int
        Index of the current state.

    state : int
        Current state. If None, drawn from the law at `t`.

    """

    def __init__(self, spec, rng, t=0, state=None):
        self.spec = spec
        self.rng = rng
        self.t = t
        if state is None:
            state = self._draw(np.cumsum(spec.marginal(t)))
        self.state = state
        self._cdfs = {}

    def forward_step(self):
        cdf = self._cdf(self.t, 1)
        self.state = self._draw(cdf[self.state])
        self.t += 1
        return self.state

    def backward_step(self):
        cdf = self._cdf(self.t, -1)
        self.state = self._draw(cdf[self.state])
        self.t -= 1
        return self.state

    def reset(self, t, state):
        self.t, self.state = t, state

    # private

    def _draw(self, cdf):
        u = self.rng.random()
        return int(min(np.searchsorted(cdf, u, side='right'),
                       self.spec.K - 1))

    def _cdf(self, t, direction):
        # constant steps are cached once
        spec = self.spec
        key = (direction,) if spec._constant_marginals else (direction, t)
        if key not in self._cdfs:
            if direction > 0:
                M = spec.one_step(t)
            else:
                M = spec.reverse_step(t)
            self._cdfs[key] = np.cumsum(M, 1)
        return self._cdfs[key]
