"""
Replicated comparison of full and local likelihood ratios as
inputs to the oracle procedure.
"""
import logging

import numpy as np

from ..chains.simulate import simulate, replicate_rng
from ..likelihood.posterior import posterior
from ..utils.tools import replicate_map
from .oracle import oracle_bh, evaluate_against_truth

logger = logging.getLogger(__name__)

METHODS = ('FLR', 'LLR')


def flr_llr_experiment(spec, model, epsilon, window, alpha, replicates, seed):
    """
    Simulate, compute q-values from the full and the local ratio,
    run the oracle procedure on each and score it against the path.

    Parameters
    ----------

    spec : hmm_spec

    model : interaction_model

    epsilon : float

    window : (int, int)
        Every index of [-m, n] is a hypothesis.

    alpha : float

    replicates : int

    seed : int
        Replicate k uses PCG64(seed ^ k).

    Returns
    -------

    rows : [dict]
        One row per replicate and method with keys replicate, method,
        R, V, FDP, true_rejections, expected_fdr.

    """
    m, n = window

    def one(k):
        traj = simulate(spec, model, epsilon, window, replicate_rng(seed, k))
        post = posterior(model, traj, epsilon, m, n)
        rows = []
        for method, q in zip(METHODS, (post.q_flr, post.q_llr)):
            outcome = oracle_bh(np.clip(q, 0, 1), alpha)
            R, V, FDP, true_rejections = evaluate_against_truth(outcome,
                                                                traj.eta,
                                                                spec.h1_mask)
            rows.append({'replicate': k,
                         'method': method,
                         'R': R,
                         'V': V,
                         'FDP': FDP,
                         'true_rejections': true_rejections,
                         'expected_fdr': outcome.expected_fdr,
                         'rejected': outcome.rejected})
        return rows

    results = replicate_map(one, replicates)
    rows = [row for rows in results for row in rows]
    for method in METHODS:
        summary = summarize(rows, method)
        logger.info('%s: mean FDP %.4f, mean true rejections %.2f',
                    method, summary['mean_FDP'], summary['mean_true_rejections'])
    return rows


def summarize(rows, method):
    """
    Means over replicates for one method.
    """
    picked = [row for row in rows if row['method'] == method]
    return {'method': method,
            'replicates': len(picked),
            'mean_R': float(np.mean([row['R'] for row in picked])),
            'mean_FDP': float(np.mean([row['FDP'] for row in picked])),
            'mean_true_rejections': float(np.mean([row['true_rejections']
                                                   for row in picked]))}
