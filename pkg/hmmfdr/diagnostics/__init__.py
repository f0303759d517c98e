"""
Contraction diagnostics for the L-matrices and the ratios Λ.
"""
