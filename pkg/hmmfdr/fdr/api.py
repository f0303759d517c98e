from .oracle import (test_outcome,
                     oracle_bh,
                     brute_force_optimal,
                     objective_value,
                     evaluate_against_truth)
from .experiment import flr_llr_experiment, summarize
