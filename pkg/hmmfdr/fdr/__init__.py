"""
False discovery rate control from posterior null probabilities.
"""
