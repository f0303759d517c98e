from .psi import psi, log_psi_table
from .lmatrix import (L_sequence,
                      forward_l,
                      backward_l,
                      lambda_ratio,
                      lambda_vector,
                      log_ratio,
                      brute_force_l)
from .posterior import (posterior_result,
                        posterior,
                        posterior_from_table,
                        local_posterior,
                        brute_force_posterior,
                        rho_from_lambdas,
                        log_flr_llr,
                        martingale_convergence_probe)
