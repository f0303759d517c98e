"""
Hidden Markov chains: description, validation and simulation.
"""
