from .spec import (hmm_spec,
                   binary_stationary_spec,
                   stationary_distribution,
                   validate_spec,
                   k_step,
                   check_binary,
                   d_coefficient,
                   spec_from_dict,
                   spec_to_dict,
                   spec_hash)
from .chain import markov_chain, hidden_chain
from .simulate import trajectory, simulate, replicate_rng
