# =============================================================================
# verifier/models.py
#
# Django App: verifier
# Bağımlılıklar: core dışında yok
#
# Her statement çalıştırması için bir CheckReport. Rapor ancak ve ancak tanık
# taşımıyorsa geçer. Tanık ilk başarısız örnektir (indisler ve iki tarafın
# değerleri); başarısız bir rapor elle yeniden üretilebilir.
# =============================================================================

from __future__ import annotations

from dataclasses import dataclass, field

from django.db import models
from django.utils.translation import gettext_lazy as _

from core.exceptions import DomainError


class Suite(models.TextChoices):
    SECTION2 = "section2", _("Binom ve kuvvet toplamı kongrüansları")
    SECTION4 = "section4", _("Hecke hesapları ve bölüm bağıntısı")
    ALL = "all", _("Hepsi")


class Statement(models.TextChoices):
    BINOMIAL = "check_binomial", _("Binom katsayılarının valuation'ları")
    FACTORIAL_BOUND = "check_factorial_bound", _("v(n!) ≤ n/(p−1)")
    R_BOUND = "check_r_bound", _("r ≥ t + 3")
    FIRST_CONGRUENCE = "check_first_congruence", _("(−[μ]x + py)^r − x^{r−1}(−[μ]x + py) mod p^{t+2}")
    POWER_SUMS = "check_power_sums", _("1 + [μ] ve [μ] − [λ] kuvvet toplamları")
    SUM_LX = "check_sum_lx", _("Σ_μ([μ]x − [λ]x + py)^r mod p^{t+2}")
    PSI_VALUES = "check_psi_values", _("y^r, x^r ve x^{r−1}y üzerinde Ψ")
    T_POWERS = "check_T_powers", _("[1, X^{p−2}] üzerinde T ve T²")
    TMA_GENERATOR = "check_Tma_generator", _("(T − a)[g, y^r − x^{r−1}y] mod p^{t+2}")
    XG = "check_Xg", _("(T − a)φ_g mod p^{t₀}")
    TMAX = "check_TmaX", _("(T − a)φ mod p^{t₁}")
    THETA_RELATION = "check_theta_relation", _("İndirgenmiş çekirdek tanığının Ψ görüntüsü")
    EXPLICIT_DESCRIPTION = "check_explicit_description", _("İndirgemenin okunması")


@dataclass(frozen=True)
class CheckReport:
    """
    Tek bir parametre kümesinde tek bir statement'ın sonucu.

    params ve witness JSON'a hazır dict'lerdir. ms duvar saati süresidir ve
    aynı kontrolün iki çalıştırması arasında farklılaşan tek alandır.
    """

    statement: str
    params: dict
    passed: bool
    witness: dict | None = None
    ms: int | None = None
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.passed != (self.witness is None):
            raise DomainError(f"{self.statement}: a report passes exactly when it has no witness")

    def to_json(self, timing: bool = True) -> dict:
        out = {
            "statement": str(self.statement),
            "params": self.params,
            "pass": self.passed,
            "witness": self.witness,
        }
        if timing:
            out["ms"] = self.ms
        if self.details:
            out["details"] = self.details
        return out
