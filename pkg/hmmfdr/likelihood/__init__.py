"""
Likelihood engine: L-matrices, posteriors and likelihood ratios.
"""
