"""
Contraction diagnostics for the L-matrices.

The spread

    Δ_n = max_{a,b,c,d} |L_{n,bc}/L_{n,ac} - L_{n,bd}/L_{n,ad}|

is nonincreasing in n from n = κ on and controls how fast
Λ_{n,a} settles:

    |Λ_{n,a} - Λ_{s,a}| <= 2 Δ_n + Δ_s,    s >= n.

With κ = 1 and every transition probability at least φ,
Δ_n <= (1/φ - 1) γ^n where 1 - γ is the smallest ratio
min_{c,d,e} P(e,d)/P(e,c) / max_{c,d,e} P(e,d)/P(e,c) over the steps.

"""
import numpy as np

from ..errors import KappaNotSupported
from ..likelihood.psi import log_psi_table
from ..likelihood.lmatrix import l_sequence_from_table, lambda_vector

SLACK = 1.e-9


class contraction_trace(object):

    """
    Δ_n and its ε-derivatives along a depth schedule.

    Parameters
    ----------

    n : np.int
        Depths, starting at κ.

    delta : np.float
        Δ_n.

    delta_nu : dict
        Order -> Δ_{n,ν}, the spread of the ν-th ε-derivatives of the
        row ratios.

    bound : np.float
        (1/φ - 1) γ^n when κ = 1, else None.

    gamma : float

    violations : [(str, int, float)]
        (kind, n, excess) for each failed check.

    """

    def __init__(self, n, delta, delta_nu, bound, gamma, violations):
        self.n = np.asarray(n)
        self.delta = np.asarray(delta)
        self.delta_nu = delta_nu
        self.bound = bound
        self.gamma = gamma
        self.violations = violations

    @property
    def fitted_rate(self):
        """
        Least-squares slope of ln Δ_n over the second half of the
        positive entries; negative when Δ_n decays geometrically.
        """
        keep = self.delta > 1.e-300
        n, logd = self.n[keep], np.log(self.delta[keep])
        n, logd = n[n.shape[0] // 2:], logd[logd.shape[0] // 2:]
        if n.shape[0] < 2:
            return -np.inf if not keep.all() else np.nan
        return float(np.polyfit(n, logd, 1)[0])

    @property
    def bound_rate(self):
        if self.gamma is None or self.gamma <= 0:
            return -np.inf
        return float(np.log(self.gamma))

    def rows(self):
        columns = [self.n, self.delta]
        for order in sorted(self.delta_nu):
            columns.append(self.delta_nu[order])
        if self.bound is not None:
            columns.append(self.bound)
        return list(zip(*columns))


def spread(L):
    """
    max over a, b of the range over c of L[b,c]/L[a,c].
    """
    with np.errstate(divide='ignore', invalid='ignore'):
        R = L[None, :, :] / L[:, None, :]
    return float((R.max(2) - R.min(2)).max())


def _ratios(L):
    return L[None, :, :] / L[:, None, :]


def transition_gamma(matrices):
    """
    γ = 1 - inf over steps of the smallest over the largest ratio
    P(e,d)/P(e,c).
    """
    gamma = 0.
    for P in matrices:
        ratios = P[:, :, None] / P[:, None, :]
        gamma = max(gamma, 1 - ratios.min() / ratios.max())
    return gamma


def _direction_floor(spec, steps):
    return min([spec.phi_star] + [M.min() for M in steps])


def delta_trace(model, traj, epsilon, n_max, t=0, direction=1, orders=(1, 2),
                h=None):
    """
    Δ_n for n = κ, ..., n_max, with its ε-derivative versions
    by central differences.

    Parameters
    ----------

    model : interaction_model

    traj : trajectory

    epsilon : float

    n_max : int

    t : int
        Center index.

    direction : int

    orders : sequence
        Derivative orders ν for Δ_{n,ν}.

    h : dict
        Order -> finite-difference step, default {1: 1e-5, 2: 1e-3}.

    Returns
    -------

    trace : contraction_trace

    """
    spec = traj.spec
    h = h or {1: 1.e-5, 2: 1.e-3}

    def sequence(e):
        table = log_psi_table(model, traj, e)
        return l_sequence_from_table(spec, table, traj, t, n_max, direction)

    base = sequence(epsilon)
    ns = np.arange(spec.kappa, n_max + 1)
    delta = np.array([spread(base[k]) for k in ns])

    delta_nu = {}
    for order in orders:
        step = h[order]
        plus, minus = sequence(epsilon + step), sequence(epsilon - step)
        values = []
        for k in ns:
            if order == 1:
                D = (_ratios(plus[k]) - _ratios(minus[k])) / (2 * step)
            else:
                D = (_ratios(plus[k]) - 2 * _ratios(base[k]) +
                     _ratios(minus[k])) / step**2
            values.append(float((D.max(2) - D.min(2)).max()))
        delta_nu[order] = np.array(values)

    violations = []
    excess = delta[1:] - delta[:-1] * (1 + SLACK) - 1.e-12
    for k, amount in zip(ns[1:], excess):
        if amount > 0:
            violations.append(('nonincreasing', int(k), float(amount)))

    bound, gamma = None, None
    if spec.kappa == 1:
        steps = spec.step_matrices(t, n_max, direction)
        gamma = transition_gamma(steps)
        phi = _direction_floor(spec, steps)
        bound = (1. / phi - 1) * gamma**ns
        excess = delta - bound * (1 + SLACK) - 1.e-12
        for k, amount in zip(ns, excess):
            if amount > 0:
                violations.append(('bound', int(k), float(amount)))

    return contraction_trace(ns, delta, delta_nu, bound, gamma, violations)


class lambda_trace(object):

    """
    Λ_{n,·} along a schedule with the envelope 2Δ_n + Δ_s.
    """

    def __init__(self, schedule, values, delta, gaps, violations):
        self.schedule = np.asarray(schedule)
        self.values = values
        self.delta = delta
        self.gaps = gaps
        self.violations = violations


def lambda_convergence_trace(model, traj, epsilon, schedule, t=0, direction=1,
                             a=None):
    """
    Λ_{n,a} for n in `schedule`, the gaps |Λ_n - Λ_{n_max}| and the
    check |Λ_n - Λ_s| <= 2Δ_n + Δ_s for successive depths n < s.
    """
    spec = traj.spec
    a = spec.h1_indices[0] if a is None else a
    schedule = sorted(schedule)
    if schedule[0] < spec.kappa:
        raise ValueError('schedule must start at kappa or later')
    table = log_psi_table(model, traj, epsilon)
    lseq = l_sequence_from_table(spec, table, traj, t, schedule[-1], direction)

    values = np.array([lambda_vector(lseq, k) for k in schedule])
    delta = np.array([spread(lseq[k]) for k in schedule])
    gaps = np.fabs(values[:, a] - values[-1, a])

    violations = []
    for i in range(len(schedule) - 1):
        change = np.fabs(values[i] - values[i + 1]).max()
        envelope = 2 * delta[i] + delta[i + 1]
        if change > envelope * (1 + SLACK) + 1.e-12:
            violations.append(('envelope', schedule[i], float(change - envelope)))
    return lambda_trace(schedule, values, delta, gaps, violations)


def lambda_bounds_check(model, traj, epsilon, n_max, t=0, direction=1):
    """
    φ/(1-φ) <= Λ_{n,a} <= (1-φ)/φ for n = 1, ..., n_max and every a.

    Returns
    -------

    violations : [(int, int, float)]
        (n, a, Λ_{n,a}) outside the bounds.
    """
    spec = traj.spec
    if spec.kappa != 1:
        raise KappaNotSupported('the Λ bounds need kappa = 1')
    table = log_psi_table(model, traj, epsilon)
    lseq = l_sequence_from_table(spec, table, traj, t, n_max, direction)
    phi = _direction_floor(spec, spec.step_matrices(t, n_max, direction))
    lower, upper = phi / (1 - phi), (1 - phi) / phi

    violations = []
    for k in range(1, n_max + 1):
        lam = lambda_vector(lseq, k)
        for a in np.nonzero((lam < lower * (1 - SLACK)) |
                            (lam > upper * (1 + SLACK)))[0]:
            violations.append((k, int(a), float(lam[a])))
    return violations


def uniformity_probe(model, traj, eps0, schedule, grid=21, t=0, direction=1,
                     a=None):
    """
    max over ε in a grid on [-eps0, eps0] of |Λ_{n,a}(ε) - Λ_{n_max,a}(ε)|
    for each n in `schedule`.
    """
    spec = traj.spec
    a = spec.h1_indices[0] if a is None else a
    schedule = sorted(schedule)
    worst = np.zeros(len(schedule))
    for e in np.linspace(-eps0, eps0, grid):
        table = log_psi_table(model, traj, e)
        lseq = l_sequence_from_table(spec, table, traj, t, schedule[-1],
                                     direction)
        values = np.array([lambda_vector(lseq, k)[a] for k in schedule])
        worst = np.maximum(worst, np.fabs(values - values[-1]))
    return worst
