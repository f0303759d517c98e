"""
Weak-signal expansions of the log likelihood ratios.
"""
