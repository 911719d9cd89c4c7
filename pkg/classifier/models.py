# =============================================================================
# classifier/models.py
#
# Django App: classifier
# Bağımlılıklar: padic (RamifiedElement)
#
# ASpec            a = (d₀ + d₁π + … )·π^s in O_e = Z_p[π]/(π^e − p)
# ClassificationResult
#                  ind(ω₂^t) (irreducible) veya Frobenius izi τ̄ olan
#                  dallanmamış bir twist (reducible), artı kararı veren
#                  valuation'lar
# ExceptionalDiscs ±√((k−2)p) etrafında reducible olunan iki disk
# SweepRow / SweepTable
#                  grid noktası başına bir classify(); hatalar yerinde kaydedilir
# =============================================================================

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from django.db import models
from django.utils.translation import gettext_lazy as _

from core.exceptions import DomainError, UsageError
from padic.models import ExtValuation, RamifiedElement, check_prime


class Variant(models.TextChoices):
    IRREDUCIBLE = "irreducible", _("İndirgenemez ind(ω₂^t)")
    REDUCIBLE = "reducible", _("İndirgenebilir, dallanmamış twist")


@dataclass(frozen=True)
class ASpec:
    """
    Açık birim diskin bir noktası: π'de birim benzeri bir polinomun
    basamakları ve bir shift ile verilir.

    Basamak listesinin birimle başlaması gerekmez: v(a) elemanın kendisinden
    okunur; shift 0 ve e = 2 ile (3, 1) için v(a) = 1/2.
    """

    p: int
    e: int
    unit: tuple[int, ...]
    shift: int = 0
    precision: int | None = None

    def __post_init__(self):
        check_prime(self.p)
        if self.e < 1:
            raise UsageError(f"ramification index must be ≥ 1, got {self.e}")
        if not self.unit:
            raise UsageError("the unit digit list is empty")
        if self.shift < 0:
            raise UsageError(f"shift must be ≥ 0, got {self.shift}")
        if self.precision is not None and self.precision < 1:
            raise UsageError(f"precision must be ≥ 1, got {self.precision}")
        object.__setattr__(self, "unit", tuple(int(d) for d in self.unit))

    @classmethod
    def parse(cls, p: int, e: int, unit: str | list, shift: int = 0, precision: int | None = None) -> ASpec:
        """`--unit 4,3` biçimindeki girdi."""
        if isinstance(unit, str):
            try:
                digits = tuple(int(d) for d in unit.replace(" ", "").split(",") if d != "")
            except ValueError as exc:
                raise UsageError(f"unit digits must be integers separated by commas, got {unit!r}") from exc
        else:
            digits = tuple(unit)
        return cls(p, e, digits, shift, precision)

    def element(self, precision: int) -> RamifiedElement:
        unit = RamifiedElement.from_coefficients(self.p, self.e, precision, self.unit)
        return unit.shift(self.shift).with_precision(precision)

    def valuation(self, precision: int) -> ExtValuation:
        return self.element(precision).valuation()

    def to_json(self) -> dict:
        return {"p": self.p, "e": self.e, "unit": list(self.unit), "shift": self.shift}

    def __str__(self) -> str:
        body = " + ".join(
            str(d) if i == 0 else f"{d}π" if i == 1 else f"{d}π^{i}" for i, d in enumerate(self.unit) if d
        ) or "0"
        return f"({body})·π^{self.shift} (π^{self.e} = {self.p})"


@dataclass(frozen=True)
class ClassificationResult:
    p: int
    k: int
    a: ASpec
    variant: str
    t: int | None = None
    trace: int | None = None
    precision: int = 0
    diagnostics: dict = field(default_factory=dict)
    note: str | None = None

    def __post_init__(self):
        if self.variant == Variant.IRREDUCIBLE:
            if self.t is None or not 1 <= self.t <= self.p - 1:
                raise DomainError(f"irreducible exponent {self.t} outside 1..{self.p - 1}")
        elif self.variant == Variant.REDUCIBLE:
            if self.trace is None or not 0 <= self.trace < self.p:
                raise DomainError(f"trace {self.trace} is not an element of F_{self.p}")

    def key(self) -> tuple:
        """Hassasiyet artınca değişmemesi gerekenler."""
        return self.variant, self.t, self.trace

    def to_json(self) -> dict:
        return {
            "variant": str(self.variant),
            "t": self.t,
            "trace": self.trace,
            "p": self.p,
            "k": self.k,
            "a": self.a.to_json(),
            "precision": self.precision,
            "diagnostics": self.diagnostics,
            "note": self.note,
        }


@dataclass(frozen=True)
class ExceptionalDiscs:
    """
    {a : v(a ∓ √((k−2)p)) ≥ radius_exponent}.

    k − 2 mod p kare değilse centres None olur; diskler o zaman denk koşul
    v(a² − (k−2)p) ≥ radius_exponent + v(a) ile tanımlanır.
    """

    p: int
    k: int
    radius_exponent: int
    centres: tuple[RamifiedElement, RamifiedElement] | None = None

    @property
    def square_centre(self) -> bool:
        return self.centres is not None

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "k": self.k,
            "radius_exponent": self.radius_exponent,
            "centres": None if self.centres is None else [list(c.coeffs) for c in self.centres],
            "condition": f"v(a^2 - {self.k - 2}*{self.p}) >= {self.radius_exponent} + v(a)",
        }


@dataclass(frozen=True)
class SweepRow:
    index: int
    a: ASpec
    result: ClassificationResult | None = None
    error: dict | None = None

    @property
    def status(self) -> str:
        return "error" if self.error else str(self.result.variant)

    def to_json(self) -> dict:
        out = {"index": self.index, "a": self.a.to_json(), "status": self.status}
        if self.result is not None:
            out["result"] = self.result.to_json()
        if self.error is not None:
            out["error"] = self.error
        return out


@dataclass(frozen=True)
class SweepTable:
    p: int
    k: int
    rows: tuple[SweepRow, ...] = ()

    @property
    def summary(self) -> dict:
        counts = Counter(row.status for row in self.rows)
        return {
            Variant.IRREDUCIBLE.value: counts.get(Variant.IRREDUCIBLE.value, 0),
            Variant.REDUCIBLE.value: counts.get(Variant.REDUCIBLE.value, 0),
            "error": counts.get("error", 0),
        }

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "k": self.k,
            "rows": [row.to_json() for row in self.rows],
            "summary": self.summary,
        }
