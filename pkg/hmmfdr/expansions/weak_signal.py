"""
Weak-signal expansions of the forward and backward log ratios

    λ_n(ε) = ln Λ_{n,1}(ε),   Λ taken relative to state 0,

about ε = 0 for binary chains with κ = 1. With
D_{st} = P_{st}(1,1) - P_{st}(0,1),

    λ_n'(0)  = Σ_t D_{0t} d_t'(0)
    λ_n''(0) = Σ_t D_{0t} {d_t'' + [P_{0t}(1,0) - P_{0t}(0,1)] d_t'^2}
               + 2 Σ_t d_t' Σ_{s<t} u_{st}

where

    u_{st} = D_{0s}[D_{st} P_{0s}(0,0) - D_{0t}] d_s'
             + D_{0s} D_{st} ℓ_s'(0,0)
             - D_{0t} (ℓ_s'(0,0) + P_{0s}(0,1) d_s').

Both are exact at finite depth. The backward expansion runs the same
formulas on the time-reversed chain.

"""
import warnings

import numpy as np

from ..errors import KappaNotSupported, NotStationary
from ..chains.spec import check_binary, binary_stationary_spec
from ..likelihood.lmatrix import log_ratio


class expansion_result(object):

    """
    First and second ε-derivatives of λ_{±T} at zero.

    Parameters
    ----------

    D : np.float((T,))
        D_{0t}, t = 1, ..., T.

    d1, d2 : np.float((T,))
        d_t'(0) and d_t''(0).

    diagonal : np.float((T,))
        Per-t diagonal contributions to the second derivative.

    cross : np.float((T,))
        Σ_{s<t} u_{st} for each t.

    tail_bound : float
        Bound on the first-derivative terms beyond T.

    direction : int

    """

    def __init__(self, D, d1, d2, diagonal, cross, tail_bound, direction=1,
                 u=None):
        self.D = D
        self.d1, self.d2 = d1, d2
        self.diagonal = diagonal
        self.cross = cross
        self.tail_bound = tail_bound
        self.direction = direction
        self.u = u

    @property
    def T(self):
        return self.D.shape[0]

    @property
    def r1(self):
        return float(np.sum(self.D * self.d1))

    @property
    def r2(self):
        return float(np.sum(self.diagonal) + 2 * np.sum(self.d1 * self.cross))

    def cumulative(self):
        """
        Partial sums of the first and second derivative over t.
        """
        return (np.cumsum(self.D * self.d1),
                np.cumsum(self.diagonal + 2 * self.d1 * self.cross))

    def rows(self):
        """
        (t, D_{0t}, d_t', d_t'', cumulative r', cumulative r'')
        """
        c1, c2 = self.cumulative()
        t = self.direction * np.arange(1, self.T + 1)
        return list(zip(t, self.D, self.d1, self.d2, c1, c2))


def derivative_terms(model, spec, z, eta):
    """
    d_t'(0), d_t''(0) and ℓ_t'(0, 0) from the chain rule.

    Parameters
    ----------

    model : interaction_model

    spec : hmm_spec
        Binary chain, giving the levels of states 0 and 1.

    z : np.float
        Noise points.

    eta : np.int
        Hidden states as positions in `spec.states`.

    Returns
    -------

    d1, d2, ell0 : np.float

    """
    levels = spec.levels
    th0, th1 = model.theta_d1(levels[0]), model.theta_d1(levels[1])
    tt0, tt1 = model.theta_d2(levels[0]), model.theta_d2(levels[1])
    th_eta = model.theta_d1(levels[np.asarray(eta)])

    x = model.noise_to_x0(z)
    l_t, l_tt, l_xt = model.partials(x)
    l_x = model.gradient(x, 0.)[0]
    phi_v = model.phi_partial_v(z, 0.)

    delta = th1 - th0
    d1 = delta * l_t
    d2 = (2 * delta * th_eta * l_xt * phi_v + (th1**2 - th0**2) * l_tt +
          (tt1 - tt0) * l_t)
    ell0 = l_x * phi_v * th_eta + l_t * th0
    return d1, d2, ell0


def dt_derivs(model, traj, t):
    """
    (d_t'(0), d_t''(0)) at index `t` of a trajectory.
    """
    i = traj.index(t)
    d1, d2, _ = derivative_terms(model, traj.spec, traj.z[i], traj.eta[i])
    return float(d1), float(d2)


class chain_terms(object):

    """
    Transition quantities along a direction from a center index.

    P0[t] = P_{0t} and D[s, t] = D_{st} for 0 <= s <= t <= T.
    """

    def __init__(self, spec, t0, T, direction=1):
        check_binary(spec)
        if spec.kappa != 1:
            raise KappaNotSupported('expansions need kappa = 1')
        self.T = T
        self.direction = direction
        self.steps = spec.step_matrices(t0, T, direction)

        self.P0 = [np.identity(2)]
        for M in self.steps:
            self.P0.append(self.P0[-1].dot(M))

        D = np.zeros((T + 1, T + 1))
        for s in range(T + 1):
            P = np.identity(2)
            D[s, s] = 1.
            for t in range(s + 1, T + 1):
                P = P.dot(self.steps[t - 1])
                D[s, t] = P[1, 1] - P[0, 1]
        self.D = D

    @property
    def D0(self):
        return self.D[0, 1:]

    def first_order(self, d1):
        return np.sum(self.D0 * d1)

    def second_order(self, d1, d2, ell0):
        """
        Diagonal terms, Σ_{s<t} u_{st} and the matrix u.
        """
        P0 = np.array(self.P0[1:])
        D0 = self.D0
        Dst = self.D[1:, 1:]

        diagonal = D0 * (d2 + (P0[:, 1, 0] - P0[:, 0, 1]) * d1**2)

        # u[s, t] with s, t = 1..T, zero unless s < t
        Ds = D0[:, None]
        Dt = D0[None, :]
        u = (Ds * (Dst * P0[:, 0, 0][:, None] - Dt) * d1[:, None] +
             Ds * Dst * ell0[:, None] -
             Dt * (ell0[:, None] + P0[:, 0, 1][:, None] * d1[:, None]))
        u = np.triu(u, 1)
        return diagonal, u.sum(0), u


def _tail_bound(terms, d1_all, T, rho):
    if rho >= 1:
        return np.inf
    last = np.fabs(terms.D[0, T]) if T > 0 else 1.
    return float(np.fabs(d1_all).max() * last * rho / (1 - rho))


def weak_signal_expansion(model, traj, T, t0=0, direction=1):
    """
    First and second ε-derivatives of λ_{±T} at zero.

    Parameters
    ----------

    model : interaction_model

    traj : trajectory
        Must cover t0 + direction * (1, ..., T).

    T : int
        Truncation depth.

    t0 : int
        Center index.

    direction : int
        +1 for λ_T, -1 for the backward λ_{-T}.

    Returns
    -------

    result : expansion_result

    """
    spec = check_binary(traj.spec)
    terms = chain_terms(spec, t0, T, direction)

    i0 = traj.index(t0)
    traj.index(t0 + direction * T)
    if direction > 0:
        beyond = slice(i0 + 1, None)
    else:
        beyond = slice(0, i0)
    rows = i0 + direction * np.arange(1, T + 1)

    d1, d2, ell0 = derivative_terms(model, spec, traj.z[rows], traj.eta[rows])
    d1_all = derivative_terms(model, spec, traj.z[beyond], traj.eta[beyond])[0]

    diagonal, cross, u = terms.second_order(d1, d2, ell0)
    ratio = _direction_ratio(spec, t0, T, direction)
    return expansion_result(terms.D0.copy(), d1, d2, diagonal, cross,
                            _tail_bound(terms, d1_all, T, ratio),
                            direction, u)


def _direction_ratio(spec, t0, T, direction):
    # contraction of the steps after T
    if spec.stationary and direction > 0:
        M = spec.one_step(t0)
        return np.fabs(M[1, 1] - M[0, 1])
    if direction > 0:
        mats = list(spec.matrices) + spec.step_matrices(t0 + T, 1, 1)
    else:
        # declared reverse steps down to the edge, then the extension
        depth = max(1, t0 - T - spec.transition_start + 1)
        mats = spec.step_matrices(t0 - T, depth, -1)
    return max(np.fabs(M[1, 1] - M[0, 1]) for M in mats)


def r_prime(model, traj, T, t0=0):
    """
    λ_T'(0) = Σ_{t=1}^T D_{0t} d_t'(0), read off `result.r1`.

    Returns
    -------

    result : expansion_result
        Also carries the tail bound on the terms beyond T.
    """
    return weak_signal_expansion(model, traj, T, t0, 1)


def r_double_prime(model, traj, T, t0=0):
    """
    λ_T''(0), read off `result.r2`; `result.diagonal` and
    `result.cross` hold its term breakdown.

    Returns
    -------

    result : expansion_result
    """
    return weak_signal_expansion(model, traj, T, t0, 1)


def backward_expansion(model, traj, T, t0=0):
    """
    Expansion of the backward ratio λ_{-T} about ε = 0.
    """
    return weak_signal_expansion(model, traj, T, t0, -1)


def stationary_coefficients(spec):
    """
    (p0, p1, r) of a stationary binary chain in its stationary law.
    """
    check_binary(spec)
    if isinstance(spec, binary_stationary_spec):
        return spec.p0, spec.p1, spec.r
    if not spec.stationary or not spec._constant_marginals:
        raise NotStationary('closed forms need a stationary chain started '
                            'from its stationary law')
    Q = spec.one_step(0)
    p01, p10 = Q[0, 1], Q[1, 0]
    return p10 / (p01 + p10), p01 / (p01 + p10), 1 - p01 - p10


def stationary_expansion(model, traj, T, t0=0, direction=1):
    """
    Closed forms for a stationary chain:

        λ_T'(0)  = Σ r^t d_t'
        λ_T''(0) = Σ r^t {d_t'' + (p0-p1)(1-r^t) d_t'^2}
                   + 2 (p0-p1) Σ_t r^t d_t' Σ_{s<t} (1-r^s) d_s'
    """
    spec = traj.spec
    p0, p1, r = stationary_coefficients(spec)
    if spec.kappa != 1:
        raise KappaNotSupported('expansions need kappa = 1')

    i0 = traj.index(t0)
    traj.index(t0 + direction * T)
    rows = i0 + direction * np.arange(1, T + 1)
    d1, d2, _ = derivative_terms(model, spec, traj.z[rows], traj.eta[rows])

    t = np.arange(1, T + 1)
    rt = r**t
    diagonal = rt * (d2 + (p0 - p1) * (1 - rt) * d1**2)
    before = np.concatenate([[0.], np.cumsum((1 - rt) * d1)[:-1]])
    cross = (p0 - p1) * rt * before

    beyond = slice(i0 + 1, None) if direction > 0 else slice(0, i0)
    d1_all = derivative_terms(model, spec, traj.z[beyond], traj.eta[beyond])[0]
    ar = np.fabs(r)
    tail = (np.fabs(d1_all).max() * ar**(T + 1) / (1 - ar)) if ar < 1 else np.inf
    return expansion_result(rt, d1, d2, diagonal, cross, float(tail), direction)


def gaussian_series(z, r, T, center=None):
    """
    Σ_{0<|t|<=T} r^|t| z_t, the first ε-derivative of ln(FLR/LLR)
    at the center of a Gaussian translation trajectory.
    """
    z = np.asarray(z, float)
    c = z.shape[0] // 2 if center is None else center
    t = np.arange(1, T + 1)
    return float(np.sum(r**t * (z[c + t] + z[c - t])))


def truncation_for(spec, tol=1.e-10):
    """
    Smallest T with the neglected tail below `tol`: |r|^T/(1-|r|) for
    stationary binary chains, (1-2φ*)^⌊T/κ⌋ otherwise.
    """
    try:
        _, _, r = stationary_coefficients(spec)
        ar = np.fabs(r)
        if ar == 0:
            return 1
        T = 1
        while ar**T / (1 - ar) >= tol:
            T += 1
        return T
    except (NotStationary, ValueError):
        rho = 1 - 2 * spec.phi_star
        if rho <= 0:
            return spec.kappa
        T = spec.kappa
        while rho**(T // spec.kappa) >= tol:
            T += spec.kappa
        return T


def fd_derivative(func, x0=0., h=1.e-5, order=1, rtol=None):
    """
    Central finite difference of order 1 or 2 with a Richardson
    fallback when steps h and h/2 disagree.
    """
    if rtol is None:
        rtol = 1.e-6 if order == 1 else 1.e-4

    def central(h):
        if order == 1:
            return (func(x0 + h) - func(x0 - h)) / (2 * h)
        return (func(x0 + h) - 2 * func(x0) + func(x0 - h)) / h**2

    coarse, fine = central(h), central(h / 2.)
    if np.fabs(coarse - fine) > rtol * max(1., np.fabs(fine)):
        warnings.warn('finite difference not settled at h=%g, '
                      'using Richardson extrapolation' % h)
        return (4 * fine - coarse) / 3.
    return coarse


def fd_log_ratio_derivative(model, traj, T, order=1, t0=0, direction=1, h=None):
    """
    Finite-difference ε-derivative of λ_{±T} at zero.
    """
    if h is None:
        h = 1.e-5 if order == 1 else 1.e-3
    f = lambda e: log_ratio(model, traj, e, T, direction, t0)
    return fd_derivative(f, 0., h, order)
