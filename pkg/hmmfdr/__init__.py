"""
Full and local likelihood ratios for hypotheses carried by the hidden
states of a Markov chain: exact computation, weak-signal expansions,
contraction diagnostics and oracle FDR control.
"""
from .info import __version__
