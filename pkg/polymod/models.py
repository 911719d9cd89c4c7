# =============================================================================
# polymod/models.py
#
# Django App: polymod
# Bağımlılıklar: padic (RamifiedElement, PadicInt, Teichmüller lift'leri)
#
# Üç katsayı halkasından biri üzerinde Symm^r(R²):
#
#   IntegerMod{p, M}    Z/p^M
#   Ramified{p, e, P}   O_e/π^P
#   PrimeField{p}       F_p
#
# Her katsayı halkanın (p, e, P) değerleriyle bir RamifiedElement olarak
# saklanır; dallanmamış iki tür e = 1 kullanır.
# =============================================================================

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from django.db import models
from django.utils.translation import gettext_lazy as _

from core.exceptions import DomainError, PrecisionError, RingMismatch
from padic.models import ExtValuation, PadicInt, RamifiedElement, check_prime


class RingKind(models.TextChoices):
    INTEGER_MOD = "integer_mod", _("Z/p^M")
    RAMIFIED = "ramified", _("O_e/π^P")
    PRIME_FIELD = "prime_field", _("F_p")


@dataclass(frozen=True)
class CoefficientRing:
    """
    Bir HomogPoly'nin (ve bir InductionElement'in) tüm katsayılarının ortak etiketi.

    precision π-adiktir: IntegerMod ve PrimeField (e = 1) için sırasıyla
    p-adik üs M ve 1'dir.
    """

    kind: str
    p: int
    e: int = 1
    precision: int = 1

    def __post_init__(self):
        check_prime(self.p)
        if self.kind == RingKind.PRIME_FIELD and (self.e, self.precision) != (1, 1):
            raise DomainError("F_p has e = 1 and precision 1")
        if self.kind == RingKind.INTEGER_MOD and self.e != 1:
            raise DomainError("Z/p^M has e = 1")
        if self.precision < 1:
            raise PrecisionError(f"ring precision must be ≥ 1, got {self.precision}")

    # ------------------------------------------------------------------
    # Kurucular
    # ------------------------------------------------------------------

    @classmethod
    def integer_mod(cls, p: int, M: int) -> CoefficientRing:
        return cls(RingKind.INTEGER_MOD, p, 1, M)

    @classmethod
    def ramified(cls, p: int, e: int, precision: int) -> CoefficientRing:
        return cls(RingKind.RAMIFIED, p, e, precision)

    @classmethod
    def prime_field(cls, p: int) -> CoefficientRing:
        return cls(RingKind.PRIME_FIELD, p, 1, 1)

    # ------------------------------------------------------------------
    # Elemanlar
    # ------------------------------------------------------------------

    @property
    def padic_digits(self) -> int:
        """Z_p'nin bir elemanını bu halkada sabitlemek için gereken p-adik basamak sayısı."""
        return -(-self.precision // self.e)

    def element(self, n: int) -> RamifiedElement:
        return RamifiedElement.from_int(self.p, self.e, self.precision, n)

    def zero(self) -> RamifiedElement:
        return self.element(0)

    def one(self) -> RamifiedElement:
        return self.element(1)

    def uniformizer(self) -> RamifiedElement:
        return RamifiedElement.uniformizer(self.p, self.e, self.precision)

    def teichmuller(self, lam: int) -> RamifiedElement:
        from padic.services import PadicService

        lift = PadicService.teichmuller(lam % self.p, self.p, self.padic_digits)
        return self.element(lift.value)

    def coerce(self, value) -> RamifiedElement:
        """
        Bir int, PadicInt veya RamifiedElement'i bu halkaya taşır.

        Kesin olmayan girdiler en az halkanın hassasiyetini taşımalıdır. Daha
        küçük bir dallanmış genişlemenin elemanı önce gömülür.
        """
        if isinstance(value, RamifiedElement):
            if value.p != self.p:
                raise RingMismatch(f"p={value.p} element in a p={self.p} ring")
            if value.e != self.e:
                value = value.embed(self.e)
            if value.precision < self.precision:
                raise PrecisionError(
                    f"element known to π^{value.precision}, ring needs π^{self.precision}",
                    suggested_precision=self.precision,
                )
            return value.with_precision(self.precision)
        if isinstance(value, PadicInt):
            if value.p != self.p:
                raise RingMismatch(f"p={value.p} element in a p={self.p} ring")
            if value.N < self.padic_digits:
                raise PrecisionError(
                    f"{value} is too coarse for this ring",
                    suggested_precision=self.padic_digits * self.e,
                )
            return self.element(value.value)
        if isinstance(value, int):
            return self.element(value)
        raise RingMismatch(f"cannot coerce {type(value).__name__} into {self}")

    def residue_field(self) -> CoefficientRing:
        return CoefficientRing.prime_field(self.p)

    def with_precision(self, precision: int) -> CoefficientRing:
        if self.kind == RingKind.PRIME_FIELD:
            return self
        return CoefficientRing(self.kind, self.p, self.e, precision)

    def to_json(self) -> dict:
        return {"kind": self.kind, "p": self.p, "e": self.e, "P": self.precision}

    def __str__(self) -> str:
        if self.kind == RingKind.PRIME_FIELD:
            return f"F_{self.p}"
        if self.kind == RingKind.INTEGER_MOD:
            return f"Z/{self.p}^{self.precision}"
        return f"O_{self.e}/pi^{self.precision} (p={self.p})"


def coefficient_json(c: RamifiedElement):
    """e = 1 için int, aksi halde [c_0, …, c_{e−1}] basamak listesi."""
    return c.coeffs[0] if c.e == 1 else list(c.coeffs)


@dataclass(frozen=True)
class HomogPoly:
    """
    a_0 … a_r `ring` içinde olmak üzere Σ a_i x^{r−i} y^i.

    Homojenlik yapısaldır: yalnızca r+1 katsayı saklanır.
    """

    ring: CoefficientRing
    coeffs: tuple[RamifiedElement, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise DomainError("a homogeneous polynomial needs at least one coefficient")
        ring = self.ring
        for c in self.coeffs:
            if (c.p, c.e, c.precision) != (ring.p, ring.e, ring.precision):
                raise RingMismatch(f"coefficient {c} does not live in {ring}")

    # ------------------------------------------------------------------
    # Kurucular
    # ------------------------------------------------------------------

    @classmethod
    def zero(cls, ring: CoefficientRing, r: int) -> HomogPoly:
        return cls(ring, (ring.zero(),) * (r + 1))

    @classmethod
    def monomial(cls, ring: CoefficientRing, r: int, i: int, coefficient=1) -> HomogPoly:
        """coefficient · x^{r−i} y^i"""
        if not 0 <= i <= r:
            raise DomainError(f"monomial index {i} outside 0..{r}")
        coeffs = [ring.zero()] * (r + 1)
        coeffs[i] = ring.coerce(coefficient)
        return cls(ring, tuple(coeffs))

    @classmethod
    def from_values(cls, ring: CoefficientRing, values) -> HomogPoly:
        return cls(ring, tuple(ring.coerce(v) for v in values))

    @classmethod
    def linear(cls, ring: CoefficientRing, x_coefficient, y_coefficient) -> HomogPoly:
        return cls(ring, (ring.coerce(x_coefficient), ring.coerce(y_coefficient)))

    # ------------------------------------------------------------------
    # Modül yapısı
    # ------------------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def _check(self, other: HomogPoly) -> None:
        if other.ring != self.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")
        if other.degree != self.degree:
            raise RingMismatch(f"degree {self.degree} vs degree {other.degree}")

    def __add__(self, other: HomogPoly) -> HomogPoly:
        self._check(other)
        return HomogPoly(self.ring, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: HomogPoly) -> HomogPoly:
        self._check(other)
        return HomogPoly(self.ring, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> HomogPoly:
        return HomogPoly(self.ring, tuple(-a for a in self.coeffs))

    def scale(self, scalar) -> HomogPoly:
        s = self.ring.coerce(scalar)
        return HomogPoly(self.ring, tuple(s * a for a in self.coeffs))

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def valuation(self) -> ExtValuation:
        best = None
        for c in self.coeffs:
            v = c.valuation()
            if v.exact and (best is None or v.value < best):
                best = v.value
        if best is None:
            return ExtValuation.bound(self.ring.precision, self.ring.e)
        return ExtValuation(Fraction(best), True)

    def to_json(self) -> list:
        return [coefficient_json(c) for c in self.coeffs]

    def __str__(self) -> str:
        r = self.degree
        terms = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            body = str(c.coeffs[0]) if c.e == 1 else f"({c})"
            terms.append(f"{body}*x^{r - i}*y^{i}")
        return " + ".join(terms) or "0"


Entry = int | PadicInt


@dataclass(frozen=True)
class Mat2:
    """
    Girdileri Z_p'de olan p^scale · (a b; c d).

    Merkezi çarpan p^scale Symm^r üzerinde trivial etki eder; coset
    muhasebesinde ise önemlidir (KZ merkezi içerir).
    """

    a: Entry
    b: Entry
    c: Entry
    d: Entry
    scale: int = 0

    @classmethod
    def identity(cls) -> Mat2:
        return cls(1, 0, 0, 1)

    @classmethod
    def diagonal(cls, alpha: Entry, delta: Entry) -> Mat2:
        return cls(alpha, 0, 0, delta)

    @classmethod
    def upper(cls, alpha: Entry, beta: Entry) -> Mat2:
        """(alpha, beta; 0, 1), her coset temsilcisinin biçimi."""
        return cls(alpha, beta, 0, 1)

    def __matmul__(self, other: Mat2) -> Mat2:
        return Mat2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
            self.scale + other.scale,
        )

    def det(self) -> Entry:
        """Merkezi çarpan hariç matrisin determinantı."""
        return self.a * self.d - self.b * self.c

    @property
    def entries(self) -> tuple[Entry, Entry, Entry, Entry]:
        return self.a, self.b, self.c, self.d

    def to_json(self) -> dict:
        def entry(x):
            return x.value if isinstance(x, PadicInt) else x

        return {"entries": [entry(x) for x in self.entries], "scale": self.scale}
