"""
Django settings for the workbench project.

There is no web surface: the project only runs management commands and the
test runner, so no URLconf, middleware or templates are configured.
"""

from pathlib import Path
import environ
import os


env = environ.Env(
    # set casting, default value
    DEBUG=(bool, False),
    WORKBENCH_LOG_LEVEL=(str, 'WARNING'),
    WORKBENCH_WORKERS=(int, 1),
)

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# Take environment variables from .env file
environ.Env.read_env(os.path.join(BASE_DIR, '.env'))

SECRET_KEY = env.str('WORKBENCH_SECRET_KEY', 'workbench-local-only')

DEBUG = env('DEBUG')

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    'django.contrib.contenttypes',
    'django.contrib.auth',

    # Third-party
    'rest_framework',

    # Local apps
    'lgroups',
    'rings',
    'gamma',
    'characters',
    'traces',
    'restriction',
    'congruences',
    'verification',
]

# Nothing is persisted; the sqlite file is never created by the test runner
# because every test case is a SimpleTestCase.
DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': BASE_DIR / 'db.sqlite3',
    }
}

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True

# REST Framework is only used for serializers
REST_FRAMEWORK = {
    'UNAUTHENTICATED_USER': None,
    'DEFAULT_AUTHENTICATION_CLASSES': [],
    'DEFAULT_PERMISSION_CLASSES': [],
}


# Logging
LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'colored': {
            '()': 'coloredlogs.ColoredFormatter',
            'fmt': '%(asctime)s %(name)s %(levelname)s %(message)s',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'colored',
        },
    },
    'root': {
        'handlers': ['console'],
        'level': env('WORKBENCH_LOG_LEVEL'),
    },
}


# Workbench defaults; the verify command overrides them per run
WORKBENCH = {
    'PRIME': env.int('WORKBENCH_PRIME', 3),
    'PRECISION': env.int('WORKBENCH_PRECISION', 6),
    'GAMMA_EXPONENT': env.int('WORKBENCH_GAMMA_EXPONENT', 2),
    'GROUP_SIZE_CAP_EXPONENT': env.int('WORKBENCH_GROUP_SIZE_CAP_EXPONENT', 6),
    'PLOG_MAX_POWER': env.int('WORKBENCH_PLOG_MAX_POWER', 6),
    'WORKERS': env('WORKBENCH_WORKERS'),
    'SEED': env.int('WORKBENCH_SEED', 42),
    'SAMPLES': {
        'units': env.int('WORKBENCH_UNIT_SAMPLES', 100),
        'beta': env.int('WORKBENCH_BETA_SAMPLES', 50),
    },
}
