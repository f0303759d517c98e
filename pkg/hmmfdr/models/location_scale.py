"""
Translation and scaling models built on a potential V,
the noise density being exp(-V).

Translation :   X = Z + v,          λ(x, ϑ) = -V(x - ϑ)
Scaling :       X = exp(-v) Z,      λ(x, ϑ) = ϑ - V(exp(ϑ) x)

"""
import numpy as np
from scipy.integrate import quad

from .base import interaction_model


class potential(object):

    """
    A noise potential V with density exp(-V).

    Parameters
    ----------

    V, dV, d2V : callable
        The potential and its first two derivatives, vectorised.

    sample : callable
        sample(rng, size) draws noise with density exp(-V).

    name : str

    """

    def __init__(self, V, dV, d2V, sample, name='custom'):
        self.V, self.dV, self.d2V = V, dV, d2V
        self.sample = sample
        self.name = name

    def expect(self, func):
        """
        ∫ func(x) exp(-V(x)) dx.
        """
        value, _ = quad(lambda x: func(x) * np.exp(-self.V(x)),
                        -np.inf, np.inf, epsabs=1.e-13, epsrel=1.e-12)
        return value


def gaussian_potential():
    """
    V(z) = z^2/2 + ln sqrt(2π).
    """
    return potential(lambda z: 0.5 * np.asarray(z)**2 + 0.5 * np.log(2 * np.pi),
                     lambda z: np.asarray(z, float),
                     lambda z: np.ones_like(np.asarray(z, float)),
                     lambda rng, size: rng.standard_normal(size),
                     name='gaussian')


class translation_model(interaction_model):

    """
    Location family X = Z + θ_η(ε).
    """

    name = 'translation'

    def __init__(self, V=None):
        self.potential = V or gaussian_potential()
        self._J = None

    def phi(self, z, v):
        return np.asarray(z, float) + v

    def phi_partial_v(self, z, v=0.):
        return np.ones_like(np.asarray(z, float))

    def log_density(self, x, vartheta):
        return -self.potential.V(np.asarray(x, float) - vartheta)

    def gradient(self, x, vartheta):
        dV = self.potential.dV(np.asarray(x, float) - vartheta)
        return -dV, dV

    def partials(self, x):
        x = np.asarray(x, float)
        d2V = self.potential.d2V(x)
        return self.potential.dV(x), -d2V, d2V

    def sample_noise(self, rng, size):
        return self.potential.sample(rng, size)

    def fisher_info_at_zero(self):
        if self._J is None:
            if self.potential.name == 'gaussian':
                self._J = 1.
            else:
                dV = self.potential.dV
                self._J = self.potential.expect(lambda x: dV(x)**2)
        return self._J


class scaling_model(interaction_model):

    """
    Scale family X = exp(-θ_η(ε)) Z.
    """

    name = 'scaling'

    def __init__(self, V=None):
        self.potential = V or gaussian_potential()
        self._J = None

    def phi(self, z, v):
        return np.exp(-v) * np.asarray(z, float)

    def phi_partial_v(self, z, v=0.):
        return -np.exp(-v) * np.asarray(z, float)

    def log_density(self, x, vartheta):
        vartheta = np.asarray(vartheta, float)
        return vartheta - self.potential.V(np.exp(vartheta) * x)

    def gradient(self, x, vartheta):
        scale = np.exp(vartheta)
        y = scale * np.asarray(x, float)
        dV = self.potential.dV(y)
        return -scale * dV, 1 - y * dV

    def partials(self, x):
        x = np.asarray(x, float)
        dV, d2V = self.potential.dV(x), self.potential.d2V(x)
        l_t = 1 - x * dV
        l_tt = -x * dV - x**2 * d2V
        l_xt = -dV - x * d2V
        return l_t, l_tt, l_xt

    def sample_noise(self, rng, size):
        return self.potential.sample(rng, size)

    def fisher_info_at_zero(self):
        if self._J is None:
            if self.potential.name == 'gaussian':
                self._J = 2.
            else:
                dV = self.potential.dV
                self._J = self.potential.expect(lambda x: (1 - x * dV(x))**2)
        return self._J
