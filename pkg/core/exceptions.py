# =============================================================================
# core/exceptions.py
#
# Proje geneli exception hiyerarşisi.
#
# Hesaplamaların fırlatabileceği her hata CrysredError'dan türer ve şunları taşır:
#   exit_code   → management command'ları kullanır (cli app)
#   status_code → aşağıdaki DRF exception handler kullanır
#
# Hassasiyet sorunları tahminle geçiştirilmez: görünen basamakların karar
# veremediği bir valuation karşılaştırması PrecisionError fırlatır; istenirse
# çağıranın yeniden denemesi gereken hassasiyeti de taşır.
# =============================================================================

from __future__ import annotations

import logging

from rest_framework import status
from rest_framework.response import Response
from rest_framework.views import exception_handler

logger = logging.getLogger(__name__)


class CrysredError(Exception):
    exit_code = 1
    status_code = status.HTTP_400_BAD_REQUEST


class UsageError(CrysredError):
    """Hatalı argüman (a-spec sözdizimi, bilinmeyen statement id, ...)."""


class RingMismatch(CrysredError):
    """Operandlar farklı katsayı halkalarında veya genişlemelerde."""


class DomainError(CrysredError):
    """Girdi işlemin tanım kümesi dışında, örn. v(a) ∉ (0, 1)."""

    exit_code = 2
    status_code = status.HTTP_422_UNPROCESSABLE_ENTITY


class HypothesisError(DomainError):
    """Sabit bir hipotez (r ≡ 1 mod p−1, N > t₀/v(a), ...) sağlanmıyor."""


class NonUnit(DomainError):
    """Valuation'ı kesin olarak pozitif olan bir elemanın tersi istendi."""


class Singular(DomainError):
    """Tersinir olmayan grup elemanı."""


class NonSquareCentre(DomainError):
    """±√((k−2)p) disk merkezleri eleman modelinde yaşamıyor."""

    def __init__(self, message: str, discs=None):
        super().__init__(message)
        self.discs = discs


class PrecisionError(CrysredError):
    """Görünen basamaklar valuation karşılaştırmasına karar veremiyor."""

    exit_code = 3
    status_code = status.HTTP_422_UNPROCESSABLE_ENTITY

    def __init__(self, message: str, suggested_precision: int | None = None):
        super().__init__(message)
        self.suggested_precision = suggested_precision


class IntegralityFailure(CrysredError):
    """(T−a)ψ integral çıkmadı. Bu bir implementasyon hatasıdır; erişilebilir bir durum değildir."""

    exit_code = 4
    status_code = status.HTTP_500_INTERNAL_SERVER_ERROR


class BranchMismatch(CrysredError):
    """Bölüm bağıntısı iki dala da uymadı."""

    exit_code = 4
    status_code = status.HTTP_500_INTERNAL_SERVER_ERROR


def crysred_exception_handler(exc, context):
    """
    DRF EXCEPTION_HANDLER.

    CrysredError → {"error": <sınıf adı>, "detail": <mesaj>}, sınıfın
    status_code'u ile. Geri kalan her şey DRF'in varsayılan handler'ına gider.
    """
    if isinstance(exc, CrysredError):
        body = {"error": type(exc).__name__, "detail": str(exc)}
        if isinstance(exc, PrecisionError) and exc.suggested_precision:
            body["suggested_precision"] = exc.suggested_precision
        if exc.status_code >= 500:
            logger.error("Internal check failure in %s: %s", context.get("view"), exc)
        return Response(body, status=exc.status_code)
    return exception_handler(exc, context)
