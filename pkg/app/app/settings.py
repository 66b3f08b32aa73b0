"""
Django settings for the pml proof-repair project.

The project has no database and no HTTP surface. Django provides the
settings layer, the management commands, the cache framework and the
test runner; everything else is plain Python in the apps below.

For the full list of settings and their values, see
https://docs.djangoproject.com/en/4.0/ref/settings/
"""

import os
from pathlib import Path

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent


SECRET_KEY = os.environ.get('SECRET_KEY', 'changeme')

DEBUG = bool(int(os.environ.get('DEBUG', 0)))

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    'rest_framework',
    'kernel',
    'corpus',
    'config',
    'search',
    'transform',
    'decompile',
    'frontend',
]

DATABASES = {}


# Caches
# The 'lift' alias holds repaired definitions between runs when a cache
# directory is configured.

PML_CACHE_DIR = os.environ.get('PML_CACHE_DIR', '')

CACHES = {
    'default': {
        'BACKEND': 'django.core.cache.backends.locmem.LocMemCache',
    },
    'lift': {
        'BACKEND': 'django.core.cache.backends.filebased.FileBasedCache',
        'LOCATION': PML_CACHE_DIR,
        'TIMEOUT': None,
    } if PML_CACHE_DIR else {
        'BACKEND': 'django.core.cache.backends.locmem.LocMemCache',
        'LOCATION': 'pml-lift',
        'TIMEOUT': None,
    },
}


# Proof engine

PML_ALLOW_ASSUMPTIONS = bool(int(os.environ.get('PML_ALLOW_ASSUMPTIONS', 0)))

PML_LIFT_CACHE = bool(int(os.environ.get('PML_LIFT_CACHE', 1)))

PML_RECURSION_LIMIT = int(os.environ.get('PML_RECURSION_LIMIT', 20000))

PML_CORPUS_DIR = Path(
    os.environ.get('PML_CORPUS_DIR', BASE_DIR / 'corpus' / 'pml')
)

PML_LOG_LEVEL = os.environ.get('PML_LOG_LEVEL', 'WARNING')


# Logging

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'compact': {
            'format': '{levelname} {name}: {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'compact',
        },
    },
    'root': {
        'handlers': ['console'],
        'level': PML_LOG_LEVEL,
    },
}


# Internationalization

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'

REST_FRAMEWORK = {
    'UNAUTHENTICATED_USER': None,
}
