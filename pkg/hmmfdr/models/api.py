from .base import interaction_model, expected_d_derivs
from .location_scale import (potential,
                             gaussian_potential,
                             translation_model,
                             scaling_model)
from .noncentral_t import (t_statistic_model,
                           noncentral_t_logpdf,
                           log_t_density,
                           c_k)
from .config import model_from_config, model_to_config
