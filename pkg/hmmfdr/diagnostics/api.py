from .contraction import (contraction_trace,
                          spread,
                          transition_gamma,
                          delta_trace,
                          lambda_trace,
                          lambda_convergence_trace,
                          lambda_bounds_check,
                          uniformity_probe)
