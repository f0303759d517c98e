"""
Interaction terms ψ_t(ε, c) = f(X_t(ε), θ_c(ε)), kept on the log scale.
"""
import numpy as np

from ..errors import NonFiniteDensity


def log_psi_table(model, traj, epsilon):
    """
    ln ψ_t(ε, c) for every index of the trajectory and every state.

    Parameters
    ----------

    model : interaction_model

    traj : trajectory

    epsilon : float

    Returns
    -------

    table : np.float((m+n+1, K))
        Row i corresponds to index i - m.

    """
    spec = traj.spec
    x = traj.x_at(epsilon)
    table = np.empty((x.shape[0], spec.K))
    for c in range(spec.K):
        table[:, c] = model.log_density(x, model.theta(spec.levels[c], epsilon))
    bad = ~np.isfinite(table)
    if bad.any():
        i, c = np.argwhere(bad)[0]
        raise NonFiniteDensity(i - traj.m, spec.states[c])
    return table


def psi(model, traj, t, epsilon, c):
    """
    ln ψ_t(ε, c) for a single index and state label.
    """
    spec = traj.spec
    i = traj.index(t)
    eta = traj.eta[i]
    x = model.phi(traj.z[i], model.theta(spec.levels[eta], epsilon))
    value = float(model.log_density(x, model.theta(spec.levels[spec.index_of(c)],
                                                   epsilon)))
    if not np.isfinite(value):
        raise NonFiniteDensity(t, c)
    return value
