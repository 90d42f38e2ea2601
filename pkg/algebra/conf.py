"""
Budget lookup against the DYNAMICS settings dict.
"""

from django.conf import settings

DEFAULTS = {
    "PRECISION_BITS": 128,
    "ITER_BUDGET": 64,
    "BIDEGREE": 6,
    "ITERATE_BOUND": 3,
    "ORBIT_LEN": 80,
    "NMAX": 6,
    "JET_ORDER": 12,
    "E_MAX": 2,
    "BOTTCHER_ORDER": 8,
    "MAX_WORKERS": 4,
    "HEIGHT_BIT_CAP": 200000,
    "COMPARISON_MODE": False,
}


def get_budget(name, override=None):
    """
    Return `override` when given, otherwise settings.DYNAMICS[name].

    :param name: One of the DYNAMICS keys, e.g. "ITER_BUDGET".
    :param override: An explicit value that wins over configuration.
    :return: The effective value.
    """
    if override is not None:
        return override
    configured = getattr(settings, "DYNAMICS", {}) if settings.configured else {}
    return configured.get(name, DEFAULTS[name])
