"""
Interaction models: how the hidden state and the noise make an
observation, and the log-density that scores it.
"""
