# =============================================================================
# config/models.py
#
# Django App: config
# Bağımlılıklar: django.conf.settings, python-dotenv
#
# Çalışma Ayarları. Hesaplama app'lerinde hiçbir ayar sayısı koda gömülmez.
# Çalışma hassasiyeti, retry tavanı, worker sayısı ve sweep boyutları
# SystemSetting.get() üzerinden okunur.
#
# Çözümleme sırası (ilk bulunan kazanır):
#   1. runtime override'lar (CLI flag'leri, sonra --config key=value dosyası)
#   2. ortam değişkeni      (CRYSRED_<KEY>, örn. CRYSRED_PRECISION=24)
#   3. settings.CRYSRED     (proje varsayılanları)
#   4. INITIAL_SETTINGS     (aşağıdaki kayıt defteri varsayılanı)
# =============================================================================

from __future__ import annotations

import os
from contextlib import contextmanager
from pathlib import Path

from django.conf import settings
from django.db import models
from django.utils.translation import gettext_lazy as _
from dotenv import dotenv_values

from core.exceptions import UsageError


class ValueType(models.TextChoices):
    """
    Ham değerlerin hepsi string (env var, config dosyası satırı).
    SystemSetting._parse() bunu tanımlı Python tipine çevirir.
    """

    INT = "INT", _("Tam Sayı")
    STRING = "STRING", _("Metin")


INITIAL_SETTINGS: list[dict] = [
    {
        "key": "PRECISION",
        "value": "0",
        "value_type": ValueType.INT,
        "description": "Çalışma π-adik hassasiyeti. 0 ise parametrelerden e·(t+4) türetilir.",
    },
    {
        "key": "PRECISION_RETRY_FACTOR",
        "value": "8",
        "value_type": ValueType.INT,
        "description": "PrecisionError'da sınıflandırıcı P'yi başlangıç P'sinin bu katına kadar ikiye katlar.",
    },
    {
        "key": "PARALLELISM",
        "value": "1",
        "value_type": ValueType.INT,
        "description": "Sweep ve suite'ler için worker process sayısı. 1 ise inline çalışır.",
    },
    {
        "key": "BINOMIAL_N_MAX",
        "value": "200",
        "value_type": ValueType.INT,
        "description": "check_binomial n aralığının alt sınırı (aralık max(bu, r)).",
    },
    {
        "key": "OUTPUT_FORMAT",
        "value": "json",
        "value_type": ValueType.STRING,
        "description": "json veya table.",
    },
]

_REGISTRY = {entry["key"]: entry for entry in INITIAL_SETTINGS}


class SystemSetting:
    """
    Çalışma ayarları için tipli tek erişim noktası.

    Örnek kullanım (service / command katmanında):
        precision = SystemSetting.get("PRECISION", default=0)
        workers = SystemSetting.get("PARALLELISM", default=1)

    Override'lar process'e özeldir; kapsamı SystemSetting.overrides(...) ile belirlenir.
    """

    ENV_PREFIX = "CRYSRED_"
    _overrides: dict[str, str] = {}

    @classmethod
    def get(cls, key: str, default=None):
        value_type = _REGISTRY.get(key, {}).get("value_type", ValueType.STRING)

        if key in cls._overrides:
            return cls._parse(cls._overrides[key], value_type)

        from_env = os.environ.get(f"{cls.ENV_PREFIX}{key}")
        if from_env not in (None, ""):
            return cls._parse(from_env, value_type)

        project = getattr(settings, "CRYSRED", {})
        if key in project:
            return project[key]

        if key in _REGISTRY:
            return cls._parse(_REGISTRY[key]["value"], value_type)
        return default

    @classmethod
    @contextmanager
    def overrides(cls, values: dict):
        """Ayarları geçici olarak sabitler; None değerler yok sayılır."""
        previous = dict(cls._overrides)
        cls._overrides.update({k: str(v) for k, v in values.items() if v is not None})
        try:
            yield
        finally:
            cls._overrides = previous

    @staticmethod
    def read_file(path: str | Path) -> dict[str, str]:
        """
        Düz key=value run-config dosyası (dotenv sözdizimi).

        Anahtarlar CRYSRED_ önekiyle veya öneksiz yazılabilir.
        Bilinmeyen anahtar UsageError verir.
        """
        path = Path(path)
        if not path.is_file():
            raise UsageError(f"config file not found: {path}")

        values = {}
        for raw_key, raw_value in dotenv_values(path).items():
            key = raw_key.upper().removeprefix(SystemSetting.ENV_PREFIX)
            if key not in _REGISTRY:
                raise UsageError(f"unknown setting {raw_key!r} in {path}")
            values[key] = raw_value
        return values

    @staticmethod
    def _parse(value: str, value_type: str):
        if value_type == ValueType.INT:
            try:
                return int(value)
            except ValueError as exc:
                raise UsageError(f"expected an integer setting, got {value!r}") from exc
        return value
