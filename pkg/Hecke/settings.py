"""
Django settings for the Hecke project.

The project has no web surface: it hosts the braidcy app, its management
commands and the archive of saved analyses.
"""

import os
from pathlib import Path

import dj_database_url

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent


SECRET_KEY = os.environ.get('DJANGO_SECRET_KEY', 'django-insecure-hecke-local-development-only')

DEBUG = os.environ.get('DJANGO_DEBUG', '0') == '1'

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    'django.contrib.contenttypes',
    'braidcy',
]


# Database

DATABASES = {
    'default': dj_database_url.config(
        default=f"sqlite:///{BASE_DIR / 'db.sqlite3'}",
        conn_max_age=0,
    )
}


# Analysis engine

BRAIDCY = {
    'TENSOR_BUDGET': int(os.environ.get('BRAIDCY_TENSOR_BUDGET', 30000)),
    'MIN_CAP': 4,
    'MAX_CAP': int(os.environ.get('BRAIDCY_MAX_CAP', 16)),
    'REPORT_VERSION': '1.0',
}


# Logging goes to stderr only; stdout carries the reports.

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'plain': {
            'format': '{levelname} {name}: {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'stream': 'ext://sys.stderr',
            'formatter': 'plain',
        },
    },
    'loggers': {
        'braidcy': {
            'handlers': ['console'],
            'level': os.environ.get('BRAIDCY_LOG_LEVEL', 'WARNING'),
            'propagate': False,
        },
    },
}


# Internationalization

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True


DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'
