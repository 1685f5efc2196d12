from django.conf import settings

DEFAULTS = {
    "SUPERQUIVER_MONOMIAL_CAP": 200000,
    "SUPERQUIVER_GRASSMANN_MAX_GENERATORS": 8,
    "SUPERQUIVER_BAREISS_THRESHOLD": 5,
    "SUPERQUIVER_DETLIKE_MAX_MULTIPLICITY": 2,
    "SUPERQUIVER_ORACLE_DISPATCH": "inline",
}


def setting(name):
    """Read a computation setting, falling back to the documented default."""
    return getattr(settings, name, DEFAULTS[name])
