"""
Django settings for the superquiver project.

The project has no web surface: it is driven through management commands
(``runjob``, ``formatjob``, ``verify_theorems``) and an optional Celery worker
that computes oracle components.
"""

import os
from pathlib import Path
import environ

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

env = environ.Env(
    DEBUG=(bool, False),
    SUPERQUIVER_MONOMIAL_CAP=(int, 200000),
    SUPERQUIVER_GRASSMANN_MAX_GENERATORS=(int, 8),
    SUPERQUIVER_BAREISS_THRESHOLD=(int, 5),
    SUPERQUIVER_DETLIKE_MAX_MULTIPLICITY=(int, 2),
    SUPERQUIVER_ORACLE_DISPATCH=(str, 'inline'),
    SUPERQUIVER_LOG_LEVEL=(str, 'INFO'),
    CELERY_TASK_ALWAYS_EAGER=(bool, True),
)

# Read .env file
environ.Env.read_env(os.path.join(BASE_DIR, '.env'))

# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = env('SECRET_KEY', default='superquiver-desk-key')

DEBUG = env('DEBUG')

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    'django.contrib.contenttypes',
    'core.apps.CoreConfig',
    'quivers.apps.QuiversConfig',
    'superalgebra.apps.SuperalgebraConfig',
    'supermatrices.apps.SupermatricesConfig',
    'invariants.apps.InvariantsConfig',
    'lie.apps.LieConfig',
    'oracle.apps.OracleConfig',
    'jobs.apps.JobsConfig',
]


# Database
# Oracle runs and theorem verification results are stored locally.

DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': env('SUPERQUIVER_DB_PATH', default=str(BASE_DIR / 'db.sqlite3')),
    }
}

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'


# Computation limits ----------------------------------------------------------
# Components whose monomial basis exceeds the cap are reported INCONCLUSIVE.
SUPERQUIVER_MONOMIAL_CAP = env('SUPERQUIVER_MONOMIAL_CAP')
SUPERQUIVER_GRASSMANN_MAX_GENERATORS = env('SUPERQUIVER_GRASSMANN_MAX_GENERATORS')
SUPERQUIVER_BAREISS_THRESHOLD = env('SUPERQUIVER_BAREISS_THRESHOLD')
SUPERQUIVER_DETLIKE_MAX_MULTIPLICITY = env('SUPERQUIVER_DETLIKE_MAX_MULTIPLICITY')
# "inline" computes components in-process, "celery" fans them out to workers.
SUPERQUIVER_ORACLE_DISPATCH = env('SUPERQUIVER_ORACLE_DISPATCH')


# Logging ---------------------------------------------------------------------
SUPERQUIVER_LOG_LEVEL = env('SUPERQUIVER_LOG_LEVEL')

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{asctime} {levelname} {name} {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'verbose',
        },
    },
    'loggers': {
        app: {
            'handlers': ['console'],
            'level': SUPERQUIVER_LOG_LEVEL,
            'propagate': False,
        }
        for app in (
            'core', 'quivers', 'superalgebra', 'supermatrices',
            'invariants', 'lie', 'oracle', 'jobs',
        )
    },
}


# Celery configuration -------------------------------------------------------
# Oracle components run eagerly unless a broker is configured and
# SUPERQUIVER_ORACLE_DISPATCH is set to "celery".
CELERY_BROKER_URL = env('CELERY_BROKER_URL', default='redis://127.0.0.1:6379/0')
CELERY_RESULT_BACKEND = env('CELERY_RESULT_BACKEND', default=CELERY_BROKER_URL)
CELERY_ACCEPT_CONTENT = ['json']
CELERY_TASK_SERIALIZER = 'json'
CELERY_RESULT_SERIALIZER = 'json'
CELERY_TIMEZONE = TIME_ZONE
CELERY_TASK_ALWAYS_EAGER = env('CELERY_TASK_ALWAYS_EAGER')
CELERY_TASK_EAGER_PROPAGATES = True
