# =============================================================================
# hecke/models.py
#
# Django App: hecke
# Bağımlılıklar: padic, polymod, induction
#
# HeckeContext tek bir Hecke hesabının (p, r, a) parametrelerini ve katsayı
# halkasını sabitler; sonraki tüm kontrollerin kullandığı kongrüans
# derinliklerini türetir:
#
#   t  = v(r − 1)
#   t₀ = min(t + 1 + v(a), v(a² − rp))
#   t₁ = t₀ + min(v(a), 1 − v(a))
#
# Üçü de π-adik modül olarak saklanır (v(a) ∈ (1/e)Z olduğundan tamsayı).
# =============================================================================

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from django.db import models
from django.utils.translation import gettext_lazy as _

from core.exceptions import DomainError, HypothesisError, PrecisionError
from induction.models import InductionElement
from padic.models import RamifiedElement, int_valuation
from padic.services import PadicService
from polymod.models import CoefficientRing


class Branch(models.IntegerChoices):
    """Theta tanığının düştüğü bölüm bağıntısı."""

    T = 1, _("T[1, X^{p−2}]")
    QUADRATIC = 2, _("(T² − τ̄T + 1)[1, X^{p−2}]")


def _as_modulus(value: Fraction, e: int) -> int:
    scaled = value * e
    if scaled.denominator != 1:
        raise DomainError(f"depth {value} is not a multiple of 1/{e}")
    return int(scaled)


@dataclass(frozen=True)
class HeckeContext:
    """
    Katsayı halkası, ağırlık ve (isteğe bağlı) özdeğer a.

    a verilirse halkaya taşınır ve kesin valuation'ı (0, 1) içinde olmalıdır.
    apply_T için a'sız context yeterlidir.
    """

    ring: CoefficientRing
    r: int
    a: RamifiedElement | None = None

    def __post_init__(self):
        if self.r < 0:
            raise DomainError(f"weight r must be ≥ 0, got {self.r}")
        if self.a is None:
            return
        object.__setattr__(self, "a", self.ring.coerce(self.a))
        va = self.a.valuation()
        if not va.exact:
            raise PrecisionError(
                f"v(a) is not visible at precision {self.ring.precision}",
                suggested_precision=2 * self.ring.precision,
            )
        if not 0 < va.value < 1:
            raise DomainError(f"v(a) = {va.value} is outside (0, 1)")

    @classmethod
    def for_element(cls, r: int, a: RamifiedElement) -> HeckeContext:
        return cls(CoefficientRing.ramified(a.p, a.e, a.precision), r, a)

    # ------------------------------------------------------------------
    # Parametreler
    # ------------------------------------------------------------------

    @property
    def p(self) -> int:
        return self.ring.p

    @property
    def e(self) -> int:
        return self.ring.e

    @property
    def precision(self) -> int:
        return self.ring.precision

    def require_weight_hypotheses(self) -> None:
        """p > 2, r > p ve r ≡ 1 mod p − 1."""
        p, r = self.p, self.r
        if p == 2 or r <= p or (r - 1) % (p - 1):
            raise HypothesisError(f"need p > 2, r > p and r ≡ 1 mod {p - 1}; got p = {p}, r = {r}")

    def require_a(self) -> RamifiedElement:
        if self.a is None:
            raise HypothesisError("this computation needs the eigenvalue a")
        return self.a

    # ------------------------------------------------------------------
    # Derinlikler
    # ------------------------------------------------------------------

    @cached_property
    def t(self) -> int:
        t = int_valuation(self.r - 1, self.p)
        if t is None:
            raise HypothesisError("t = v(r − 1) is infinite for r = 1")
        return t

    @cached_property
    def va(self) -> Fraction:
        return self.require_a().valuation().value

    @cached_property
    def discriminant(self) -> RamifiedElement:
        """a² − rp"""
        a = self.require_a()
        return a * a - self.r * self.p

    @cached_property
    def branch(self) -> int:
        """Branch.QUADRATIC ancak ve ancak t + 1 + v(a) ≤ v(a² − rp) ise."""
        if PadicService.valuation_at_least(self.discriminant.valuation(), self.t + 1 + self.va):
            return Branch.QUADRATIC
        return Branch.T

    @cached_property
    def t0(self) -> Fraction:
        bound = self.t + 1 + self.va
        if self.branch == Branch.QUADRATIC:
            return Fraction(bound)
        return self.discriminant.valuation().value

    @cached_property
    def t1(self) -> Fraction:
        return self.t0 + min(self.va, 1 - self.va)

    @property
    def generator_modulus(self) -> int:
        """p^{t+2}'nin π-adik modülü."""
        return self.e * (self.t + 2)

    @property
    def xg_modulus(self) -> int:
        return _as_modulus(self.t0, self.e)

    @property
    def phi_modulus(self) -> int:
        return _as_modulus(self.t1, self.e)

    @property
    def default_terms(self) -> int:
        """N > t₀/v(a) sağlayan en küçük N'nin bir fazlası: ⌈t₀/v(a)⌉ + 1."""
        return math.ceil(self.t0 / self.va) + 1

    def depths(self) -> dict:
        out = {"t": self.t}
        if self.a is not None:
            out.update(
                {
                    "v_a": str(self.va),
                    "v_a2_minus_rp": self.discriminant.valuation().to_json(),
                    "t0": str(self.t0),
                    "t1": str(self.t1),
                    "branch": int(self.branch),
                }
            )
        return out

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "r": self.r,
            "ring": self.ring.to_json(),
            "a": None if self.a is None else list(self.a.coeffs),
        }


def divisible_by_pi(E: InductionElement, k: int) -> bool:
    """E'nin her katsayısının π-adik valuation'ı ≥ k (sıfır katsayılar sayılmaz)."""
    return all(
        c.is_zero() or c.valuation().value * c.e >= k for _, poly in E.terms for c in poly.coeffs
    )


@dataclass(frozen=True)
class ThetaWitness:
    """
    ψ = π^{−shift}·φ için φ, shift ve (T − a)φ.

    integral (T − a)φ'nin katsayılarından okunur. image, service π^shift'i
    böldükten sonra (T − a)ψ'yi tutar; aksi halde None kalır.
    """

    phi: InductionElement
    shift: int
    unscaled: InductionElement
    image: InductionElement | None = None

    @property
    def integral(self) -> bool:
        return divisible_by_pi(self.unscaled, self.shift)

    def to_json(self) -> dict:
        return {
            "shift": self.shift,
            "integral": self.integral,
            "support": None if self.image is None else len(self.image.terms),
            "image": None if self.image is None else self.image.to_json(),
        }
