"""
Django settings for dynamicsBase project.

The project has no database and no web surface; Django supplies the settings
layer, the app registry, logging configuration, forms validation and the
management-command CLI.

For more information on this file, see
https://docs.djangoproject.com/en/5.1/topics/settings/
"""

import os
from pathlib import Path

from dotenv import load_dotenv

load_dotenv()

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

SECRET_KEY = os.getenv("SECRET_KEY", "dynamics-local-only")

DEBUG = os.getenv("DEBUG", "false").lower() == "true"

ALLOWED_HOSTS = []

# Application definition

INSTALLED_APPS = [
    "django.contrib.auth",
    "django.contrib.contenttypes",
    "rest_framework",
    "algebra",
    "bottcher",
    "heights",
    "pairs",
    "transcendence",
    "plane",
    "jobs",
]

# Reports are rendered through serializers only, never over HTTP.
REST_FRAMEWORK = {
    "DEFAULT_AUTHENTICATION_CLASSES": [],
    "DEFAULT_PERMISSION_CLASSES": [],
    "UNAUTHENTICATED_USER": None,
}

DATABASES = {}

DEFAULT_AUTO_FIELD = "django.db.models.BigAutoField"

USE_TZ = True

TIME_ZONE = "UTC"


def _env_int(name, default):
    value = os.getenv(name)
    return int(value) if value not in (None, "") else default


# Budgets shared by every computation. Explicit arguments and CLI flags take
# precedence over these; environment variables take precedence over defaults.
DYNAMICS = {
    "PRECISION_BITS": _env_int("DYNAMICS_PRECISION_BITS", 128),
    "ITER_BUDGET": _env_int("DYNAMICS_ITER_BUDGET", 64),
    "BIDEGREE": _env_int("DYNAMICS_BIDEGREE", 6),
    "ITERATE_BOUND": _env_int("DYNAMICS_ITERATE_BOUND", 3),
    "ORBIT_LEN": _env_int("DYNAMICS_ORBIT_LEN", 80),
    "NMAX": _env_int("DYNAMICS_NMAX", 6),
    "JET_ORDER": _env_int("DYNAMICS_JET_ORDER", 12),
    "E_MAX": _env_int("DYNAMICS_E_MAX", 2),
    "BOTTCHER_ORDER": _env_int("DYNAMICS_BOTTCHER_ORDER", 8),
    "MAX_WORKERS": _env_int("DYNAMICS_MAX_WORKERS", 4),
    "HEIGHT_BIT_CAP": _env_int("DYNAMICS_HEIGHT_BIT_CAP", 200000),
    "COMPARISON_MODE": os.getenv("DYNAMICS_COMPARISON_MODE", "false").lower()
    == "true",
}

LOG_LEVEL = os.getenv("DYNAMICS_LOG_LEVEL", "INFO")

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "verbose": {
            "format": "{levelname} {asctime} {name} {message}",
            "style": "{",
        },
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "formatter": "verbose",
        },
    },
    "root": {
        "handlers": ["console"],
        "level": "WARNING",
    },
    "loggers": {
        app: {"handlers": ["console"], "level": LOG_LEVEL, "propagate": False}
        for app in (
            "algebra",
            "bottcher",
            "heights",
            "pairs",
            "transcendence",
            "plane",
            "jobs",
        )
    },
}
