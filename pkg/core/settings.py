"""
Django settings for the crysred project.

Projede veritabanı tablosu ve kimliği doğrulanmış kullanıcı yok. Her app saf bir
hesaplama katmanıdır (p-adik aritmetik, Hecke modülleri, verifier, classifier);
management command'ları ve küçük, durumsuz bir API üzerinden sunulur.

For the full list of settings and their values, see
https://docs.djangoproject.com/en/5.1/ref/settings/
"""

import os
from pathlib import Path

from dotenv import load_dotenv

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

load_dotenv(BASE_DIR / ".env")

SECRET_KEY = os.getenv("CRYSRED_SECRET_KEY", "crysred-local-only-not-a-secret")

DEBUG = os.getenv("CRYSRED_DEBUG", "false").lower() in ("1", "true", "yes")

ALLOWED_HOSTS = os.getenv("CRYSRED_ALLOWED_HOSTS", "localhost,127.0.0.1,testserver").split(",")


# Application definition

INSTALLED_APPS = [
    "django.contrib.contenttypes",
    "rest_framework",
    # crysred uygulamaları
    "config.apps.ConfigConfig",
    "padic.apps.PadicConfig",
    "polymod.apps.PolymodConfig",
    "induction.apps.InductionConfig",
    "hecke.apps.HeckeConfig",
    "verifier.apps.VerifierConfig",
    "classifier.apps.ClassifierConfig",
    "cli.apps.CliConfig",
]

MIDDLEWARE = [
    "django.middleware.security.SecurityMiddleware",
    "django.middleware.common.CommonMiddleware",
]

ROOT_URLCONF = "core.urls"

# runserver django.core.wsgi.get_wsgi_application()'a düşer.
WSGI_APPLICATION = None


# Database
# Hiçbir şey kalıcı değil; sonuçlar stdout'a veya HTTP cevabına gider.

DATABASES = {}


# Internationalization

LANGUAGE_CODE = "en-us"

TIME_ZONE = "UTC"

USE_I18N = True

USE_TZ = True

DEFAULT_AUTO_FIELD = "django.db.models.BigAutoField"


# Django REST Framework
REST_FRAMEWORK = {
    "DEFAULT_RENDERER_CLASSES": [
        "rest_framework.renderers.JSONRenderer",
    ],
    "DEFAULT_PARSER_CLASSES": [
        "rest_framework.parsers.JSONParser",
    ],
    "DEFAULT_AUTHENTICATION_CLASSES": [],
    "DEFAULT_PERMISSION_CLASSES": [
        "rest_framework.permissions.AllowAny",
    ],
    "UNAUTHENTICATED_USER": None,
    "EXCEPTION_HANDLER": "core.exceptions.crysred_exception_handler",
}


# Çalışma ayarları
# config.models.SystemSetting.get() üzerinden okunur; CRYSRED_<KEY> adlı ortam
# değişkenleri aşağıdaki değerlerin önüne geçer.
CRYSRED = {
    # 0: "e·(t+4) parametrelerden türetilir".
    "PRECISION": 0,
    "PRECISION_RETRY_FACTOR": 8,
    "PARALLELISM": 1,
    "BINOMIAL_N_MAX": 200,
    "OUTPUT_FORMAT": "json",
}


# Logging
CRYSRED_LOG_LEVEL = os.getenv("CRYSRED_LOG_LEVEL", "WARNING").upper()

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "plain": {
            "format": "%(asctime)s %(levelname)s %(name)s: %(message)s",
        },
    },
    "handlers": {
        "stderr": {
            "class": "logging.StreamHandler",
            "stream": "ext://sys.stderr",
            "formatter": "plain",
        },
    },
    "loggers": {
        app: {"handlers": ["stderr"], "level": CRYSRED_LOG_LEVEL, "propagate": False}
        for app in ("config", "padic", "polymod", "induction", "hecke", "verifier", "classifier", "cli")
    },
}
