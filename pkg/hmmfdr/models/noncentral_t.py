"""
The t-statistic model.

The noise is Z = (ζ, S) with ζ standard normal and S^2 chi-square
on ν degrees of freedom, X = sqrt(ν)(ζ + v)/S and
θ_a(ε) = sqrt(ν+1) a ε, so that X is noncentral t with
noncentrality θ_η(ε).

The noncentral t density is evaluated through

    t_ν(x) exp(-ϑ^2/2) Σ_k c_k u^k ϑ^k / k!,    u = x / sqrt(ν + x^2),

with c_k = Γ((ν+k+1)/2) 2^{k/2} / Γ((ν+1)/2). The series alternates
when xϑ < 0; when the largest term dwarfs the sum it is recomputed
with mpmath at increasing precision.

"""
import warnings

import numpy as np
from scipy.special import gammaln
import mpmath as mp

from ..errors import DegreesOfFreedomTooSmall
from .base import interaction_model

SERIES_TOL = 1.e-14
CANCELLATION = 1.e8
MAX_TERMS = 20000
MIN_MOMENT_DF = 12


def log_ck(nu, k):
    """
    ln c_k for the noncentral t series.
    """
    return (gammaln((nu + k + 1) / 2.) - gammaln((nu + 1) / 2.) +
            0.5 * k * np.log(2))


def c_k(nu, k):
    return np.exp(log_ck(nu, k))


def log_t_density(x, nu):
    """
    Central t log-density ln t_ν(x).
    """
    x = np.asarray(x, float)
    logC = (0.5 * nu * np.log(nu) + gammaln((nu + 1) / 2.) -
            0.5 * np.log(np.pi) - gammaln(nu / 2.))
    return logC - 0.5 * (nu + 1) * np.log(nu + x**2)


def _power(logabs, p):
    if p == 0:
        return np.zeros_like(logabs)
    return p * logabs


def _series(x, nu, vartheta, du=0, dv=0, df=0):
    """
    Σ_{k} c_k u^(k-du) ϑ^(k-dv) / (k-df)!, k >= max(du, dv, df),
    summed in float.

    Returns the sum and the largest term in absolute value.
    """
    x, v = np.broadcast_arrays(np.asarray(x, float),
                               np.asarray(vartheta, float))
    u = x / np.sqrt(nu + x**2)
    with np.errstate(divide='ignore'):
        lu, lv = np.log(np.fabs(u)), np.log(np.fabs(v))
    su, sv = np.sign(u), np.sign(v)

    total = np.zeros(x.shape)
    largest = np.zeros(x.shape)
    previous = np.full(x.shape, np.inf)
    done = np.zeros(x.shape, bool)

    k0 = max(du, dv, df)
    for k in range(k0, k0 + MAX_TERMS):
        logmag = (log_ck(nu, k) + _power(lu, k - du) + _power(lv, k - dv) -
                  gammaln(k - df + 1))
        magnitude = np.where(done, 0, np.exp(logmag))
        total += su**(k - du) * sv**(k - dv) * magnitude
        largest = np.maximum(largest, magnitude)
        # past the peak and negligible
        done |= (magnitude <= SERIES_TOL * np.fabs(total)) & \
                (magnitude <= previous)
        previous = magnitude
        if done.all():
            break
    return total, largest


def _series_mp(x, nu, vartheta, du=0, dv=0, df=0, dps=30):
    """
    The same series in mpmath, doubling the precision until two
    successive evaluations agree.
    """
    def evaluate(dps):
        with mp.workdps(dps):
            x_, v_, nu_ = mp.mpf(x), mp.mpf(vartheta), mp.mpf(nu)
            u = x_ / mp.sqrt(nu_ + x_**2)
            lg = mp.loggamma((nu_ + 1) / 2)
            total, previous = mp.mpf(0), mp.inf
            k = max(du, dv, df)
            while True:
                term = (mp.exp(mp.loggamma((nu_ + k + 1) / 2) - lg) *
                        mp.power(2, mp.mpf(k) / 2) *
                        mp.power(u, k - du) * mp.power(v_, k - dv) /
                        mp.factorial(k - df))
                total += term
                if abs(term) <= mp.mpf(10)**(-dps) * abs(total) and \
                   abs(term) <= previous:
                    break
                previous = abs(term)
                k += 1
            return total

    not_precise = True
    value = evaluate(dps)
    while not_precise:
        dps *= 2
        refined = evaluate(dps)
        not_precise = abs(refined - value) > 1.e-15 * abs(refined)
        value = refined
    return float(value)


def nct_series(x, nu, vartheta, du=0, dv=0, df=0):
    total, largest = _series(x, nu, vartheta, du, dv, df)
    bad = largest > CANCELLATION * np.fabs(total)
    if np.any(bad):
        warnings.warn('noncentral t series lost precision, '
                      'recomputing %d value(s) with mpmath' % bad.sum())
        x, v = np.broadcast_arrays(np.asarray(x, float),
                                   np.asarray(vartheta, float))
        total = np.array(total)
        for idx in zip(*np.nonzero(bad)):
            total[idx] = _series_mp(x[idx], nu, v[idx], du, dv, df)
    return total


def noncentral_t_logpdf(x, nu, vartheta):
    """
    ln t_{ν,ϑ}(x), the noncentral t log-density.
    """
    vartheta = np.asarray(vartheta, float)
    S = nct_series(x, nu, vartheta)
    with np.errstate(divide='ignore', invalid='ignore'):
        return log_t_density(x, nu) - 0.5 * vartheta**2 + np.log(S)


class t_statistic_model(interaction_model):

    """
    One-sample t statistics: X = sqrt(ν)(ζ + v)/S.

    Parameters
    ----------

    nu : float
        Degrees of freedom. Expectations are only computed
        for ν > 12.

    """

    name = 't'

    def __init__(self, nu):
        if nu <= 0:
            raise ValueError('degrees of freedom must be positive')
        self.nu = float(nu)
        self.theta_scale = np.sqrt(self.nu + 1)

    def require_moments(self):
        if self.nu <= MIN_MOMENT_DF:
            raise DegreesOfFreedomTooSmall('expectations of the t model need '
                                           'nu > %d, got %g'
                                           % (MIN_MOMENT_DF, self.nu))
        return True

    def phi(self, z, v):
        z = np.asarray(z, float)
        return np.sqrt(self.nu) * (z[..., 0] + v) / z[..., 1]

    def phi_partial_v(self, z, v=0.):
        z = np.asarray(z, float)
        return np.sqrt(self.nu) / z[..., 1]

    def log_density(self, x, vartheta):
        return noncentral_t_logpdf(x, self.nu, vartheta)

    def gradient(self, x, vartheta):
        nu = self.nu
        x = np.asarray(x, float)
        vartheta = np.asarray(vartheta, float)
        S = nct_series(x, nu, vartheta)
        S_v = nct_series(x, nu, vartheta, dv=1, df=1)
        S_u = nct_series(x, nu, vartheta, du=1, df=1)
        du_dx = nu / (nu + x**2)**1.5
        l_x = -(nu + 1) * x / (nu + x**2) + du_dx * S_u / S
        l_t = -vartheta + S_v / S
        return l_x, l_t

    def partials(self, x):
        nu = self.nu
        x = np.asarray(x, float)
        c1, c2 = c_k(nu, 1), c_k(nu, 2)
        l_t = c1 * x / np.sqrt(nu + x**2)
        l_tt = (c2 - c1**2) * x**2 / (nu + x**2) - 1
        l_xt = c1 * nu / (nu + x**2)**1.5
        return l_t, l_tt, l_xt

    def sample_noise(self, rng, size):
        zeta = rng.standard_normal(size)
        S = np.sqrt(rng.chisquare(self.nu, size))
        return np.column_stack([zeta, S])

    def fisher_info_at_zero(self):
        self.require_moments()
        return c_k(self.nu, 1)**2 / (self.nu + 1)
