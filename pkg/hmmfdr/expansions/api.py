from .weak_signal import (expansion_result,
                          derivative_terms,
                          dt_derivs,
                          chain_terms,
                          weak_signal_expansion,
                          r_prime,
                          r_double_prime,
                          backward_expansion,
                          stationary_coefficients,
                          stationary_expansion,
                          gaussian_series,
                          truncation_for,
                          fd_derivative,
                          fd_log_ratio_derivative)
from .expectations import (mc_check,
                           expected_r2_given_eta,
                           expected_total_r2_given_eta0,
                           expected_r1_given_eta_check,
                           expected_r2_given_eta_check,
                           expected_r2_given_eta0_check,
                           interchange_check)
