"""
This module implements the class `interaction_model`, the
observation mechanism X = φ(Z, θ_η(ε)) together with the
log-density λ(x, ϑ) = ln f(x, ϑ) that scores it.

"""
from abc import ABCMeta, abstractmethod

import numpy as np


class interaction_model(object, metaclass=ABCMeta):

    """
    An interaction model.

    HOW TO MAKE A SUBCLASS :
    You have to implement :

    phi(self, z, v), phi_partial_v(self, z, v) :
        the observation map and its v-derivative

    log_density(self, x, vartheta) :
        λ(x, ϑ), vectorised in both arguments

    gradient(self, x, vartheta) :
        (∂λ/∂x, ∂λ/∂ϑ) at any ϑ

    partials(self, x) :
        (∂λ/∂ϑ, ∂²λ/∂ϑ², ∂²λ/∂x∂ϑ) at ϑ = 0

    sample_noise(self, rng, size), fisher_info_at_zero(self)

    With these you can use :
        -> ell, ell_d1, variance_d1
        -> fisher_info_check, fisher_identity_check, score_mean_check

    The parametrization is θ_a(ε) = theta_scale * a * ε.

    """

    name = 'abstract'
    theta_scale = 1.

    @abstractmethod
    def phi(self, z, v):
        pass

    @abstractmethod
    def phi_partial_v(self, z, v=0.):
        pass

    @abstractmethod
    def log_density(self, x, vartheta):
        pass

    @abstractmethod
    def gradient(self, x, vartheta):
        pass

    @abstractmethod
    def partials(self, x):
        pass

    @abstractmethod
    def sample_noise(self, rng, size):
        pass

    @abstractmethod
    def fisher_info_at_zero(self):
        pass

    def require_moments(self):
        """
        Hook for models whose moments only exist in part of
        the parameter space.
        """
        return True

    def theta(self, a, epsilon):
        return self.theta_scale * np.asarray(a, float) * epsilon

    def theta_d1(self, a, epsilon=0.):
        return self.theta_scale * np.asarray(a, float)

    def theta_d2(self, a, epsilon=0.):
        return np.zeros_like(np.asarray(a, float))

    def noise_to_x0(self, z):
        """
        X at zero signal, φ(z, 0).
        """
        return self.phi(z, 0.)

    def ell(self, z, a, b, epsilon):
        """
        ℓ(ε) = λ(φ(z, θ_a(ε)), θ_b(ε)).
        """
        x = self.phi(z, self.theta(a, epsilon))
        return self.log_density(x, self.theta(b, epsilon))

    def ell_d1(self, z, a, b, epsilon):
        """
        ∂ℓ/∂ε by the chain rule:
        λ_x φ_v θ_a'(ε) + λ_ϑ θ_b'(ε).
        """
        v = self.theta(a, epsilon)
        x = self.phi(z, v)
        l_x, l_t = self.gradient(x, self.theta(b, epsilon))
        return (l_x * self.phi_partial_v(z, v) * self.theta_d1(a, epsilon) +
                l_t * self.theta_d1(b, epsilon))

    def variance_d1(self, null_level=0., signal_level=1.):
        """
        Var[d_0'(0)] = [θ_1'(0) - θ_0'(0)]^2 J(0).
        """
        delta = self.theta_d1(signal_level) - self.theta_d1(null_level)
        return float(delta**2 * self.fisher_info_at_zero())

    # Monte Carlo checks

    def _x0_sample(self, samples, seed):
        z = self.sample_noise(np.random.default_rng(seed), samples)
        return z, self.noise_to_x0(z)

    def fisher_info_check(self, samples, seed):
        """
        Closed-form J(0) against a Monte Carlo mean of (∂λ/∂ϑ)^2.

        Returns
        -------

        closed, estimate, se : float
        """
        self.require_moments()
        _, x = self._x0_sample(samples, seed)
        score2 = self.partials(x)[0]**2
        return (self.fisher_info_at_zero(), score2.mean(),
                score2.std() / np.sqrt(samples))

    def fisher_identity_check(self, samples, seed):
        """
        J(0) against a Monte Carlo mean of ∂²λ/∂x∂ϑ · ∂φ/∂v.
        """
        self.require_moments()
        z, x = self._x0_sample(samples, seed)
        value = self.partials(x)[2] * self.phi_partial_v(z, 0.)
        return (self.fisher_info_at_zero(), value.mean(),
                value.std() / np.sqrt(samples))

    def score_mean_check(self, samples, seed):
        """
        Monte Carlo mean of ∂λ/∂ϑ at zero signal, which is 0.
        """
        self.require_moments()
        _, x = self._x0_sample(samples, seed)
        score = self.partials(x)[0]
        return 0., score.mean(), score.std() / np.sqrt(samples)


def expected_d_derivs(model, level, null_level=0., signal_level=1.):
    """
    Conditional moments of d_t'(0) and d_t''(0) given η_t.

    Parameters
    ----------

    model : interaction_model

    level : float
        Signal level of η_t.

    Returns
    -------

    mean_d1, var_d1, mean_d2 : float
        0, [θ_1'-θ_0']^2 J(0) and
        [θ_1'-θ_0'][2θ_η' - θ_0' - θ_1'] J(0).

    """
    model.require_moments()
    J = model.fisher_info_at_zero()
    th0 = model.theta_d1(null_level)
    th1 = model.theta_d1(signal_level)
    th = model.theta_d1(level)
    return (0.,
            float((th1 - th0)**2 * J),
            float((th1 - th0) * (2 * th - th0 - th1) * J))
