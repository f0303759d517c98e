from ..errors import ConfigError
from .location_scale import translation_model, scaling_model, gaussian_potential
from .noncentral_t import t_statistic_model

POTENTIALS = {'gaussian': gaussian_potential}

SELECTORS = {'translation_gaussian': {'type': 'translation',
                                      'potential': 'gaussian'},
             'scaling_gaussian': {'type': 'scaling',
                                  'potential': 'gaussian'},
             't_statistic': {'type': 't'}}


def model_from_config(value, nu=None):
    """
    Build an interaction model from its JSON description.

    Either a selector string, ``"translation_gaussian"``,
    ``"scaling_gaussian"`` or ``"t_statistic"`` (with `nu`), or
    a dict such as ``{"type": "translation", "potential": "gaussian"}``
    or ``{"type": "t", "nu": 16}``.
    """
    if isinstance(value, str):
        if value not in SELECTORS:
            raise ConfigError('model', 'unknown model %r' % value)
        value = dict(SELECTORS[value])
        if nu is not None:
            value['nu'] = nu
    if not isinstance(value, dict):
        raise ConfigError('model', 'expected a selector string or an object')
    value = dict(value)
    kind = value.get('type')
    if kind in ('translation', 'scaling'):
        name = value.get('potential', 'gaussian')
        if name not in POTENTIALS:
            raise ConfigError('model.potential', 'unknown potential %r' % name)
        V = POTENTIALS[name]()
        if kind == 'translation':
            return translation_model(V)
        return scaling_model(V)
    if kind == 't':
        if 'nu' not in value:
            raise ConfigError('nu', 'the t model needs degrees of freedom')
        nu = value['nu']
        if isinstance(nu, bool) or not isinstance(nu, int) or nu < 1:
            raise ConfigError('nu', 'expected a positive integer, got %r'
                              % (nu,))
        return t_statistic_model(nu)
    raise ConfigError('model.type', 'unknown model %r' % (kind,))


def model_to_config(model):
    if model.name == 't':
        nu = int(model.nu) if model.nu == int(model.nu) else model.nu
        return {'type': 't', 'nu': nu}
    return {'type': model.name, 'potential': model.potential.name}
