# =============================================================================
# padic/models.py
#
# Django App: padic
# Bağımlılıklar: sympy (asallık, katlılık)
#
# Hassasiyeti takip edilen p-adik değerler. Burada hiçbir şey veritabanına
# dokunmaz; "model"ler değiştirilemez değer tipleridir:
#
#   ExtValuation    v ∈ Q ∪ {+∞}, kesinlik bayrağıyla
#   PadicInt        Z/p^N'nin bir elemanı
#   RamifiedElement O_e/π^P'nin bir elemanı, O_e = Z_p[π]/(π^e − p)
#
# Üçünün ortak değişmezi: iki değer Python nesnesi olarak ancak ve ancak
# kesilmiş p-adik nicelikler olarak eşitse eşittir (kanonik saklama).
# =============================================================================

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from django.db import models
from django.utils.translation import gettext_lazy as _
from sympy import isprime, multiplicity

from core.exceptions import DomainError, NonUnit, PrecisionError, RingMismatch


@lru_cache(maxsize=None)
def check_prime(p: int) -> int:
    """Bu projede her p tek asaldır."""
    if not isinstance(p, int) or p <= 2 or not isprime(p):
        raise DomainError(f"p must be an odd prime, got {p!r}")
    return p


def int_valuation(n: int, p: int) -> int | None:
    """n ≠ 0 için v_p(n); None +∞ demektir."""
    if n == 0:
        return None
    return int(multiplicity(p, abs(n)))


class ValuationKind(models.TextChoices):
    FINITE = "finite", _("Sonlu")
    INFINITE = "infinite", _("Sonsuz")


class Ordering(models.IntegerChoices):
    LESS = -1, _("Küçük")
    EQUAL = 0, _("Eşit")
    GREATER = 1, _("Büyük")


@dataclass(frozen=True)
class ExtValuation:
    """
    Q ∪ {+∞} içinde bir valuation.

    exact=True  → değer biliniyor.
    exact=False → görünen basamakların hepsi sıfır; yalnızca "≥ value" biliniyor.
    +∞ her zaman kesindir (0 tamsayısı için v(0) = +∞).
    """

    value: Fraction | None
    exact: bool = True

    @classmethod
    def finite(cls, numerator: int, denominator: int = 1) -> ExtValuation:
        return cls(Fraction(numerator, denominator), True)

    @classmethod
    def bound(cls, numerator: int, denominator: int = 1) -> ExtValuation:
        return cls(Fraction(numerator, denominator), False)

    @classmethod
    def infinity(cls) -> ExtValuation:
        return cls(None, True)

    @property
    def kind(self) -> str:
        return ValuationKind.INFINITE if self.value is None else ValuationKind.FINITE

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    @property
    def numerator(self) -> int | None:
        return None if self.value is None else self.value.numerator

    @property
    def denominator(self) -> int | None:
        return None if self.value is None else self.value.denominator

    def __add__(self, other: ExtValuation | int | Fraction) -> ExtValuation:
        if not isinstance(other, ExtValuation):
            other = ExtValuation(Fraction(other), True)
        if self.is_infinite or other.is_infinite:
            return ExtValuation.infinity()
        return ExtValuation(self.value + other.value, self.exact and other.exact)

    __radd__ = __add__

    def to_json(self):
        if self.is_infinite:
            return {"kind": self.kind, "exact": True}
        return {
            "kind": self.kind,
            "value": f"{self.value.numerator}/{self.value.denominator}"
            if self.value.denominator != 1
            else str(self.value.numerator),
            "exact": self.exact,
        }

    def __str__(self) -> str:
        if self.is_infinite:
            return "+inf"
        text = str(self.value)
        return text if self.exact else f">={text}"


@dataclass(frozen=True)
class PadicInt:
    """
    Z/p^N'nin bir elemanı, yani mutlak hassasiyeti N olan bir p-adik tamsayı.

    Başka bir PadicInt ile aritmetik küçük olan hassasiyette yapılır; düz
    Python int'leri kesindir ve bu elemanın hassasiyetini alır.
    """

    p: int
    N: int
    value: int

    def __post_init__(self):
        check_prime(self.p)
        if self.N < 1:
            raise PrecisionError(f"PadicInt needs N ≥ 1, got {self.N}")
        object.__setattr__(self, "value", self.value % self.p**self.N)

    @property
    def modulus(self) -> int:
        return self.p**self.N

    def _coerce(self, other) -> tuple[int, int]:
        if isinstance(other, PadicInt):
            if other.p != self.p:
                raise RingMismatch(f"p-adic integers for p={self.p} and p={other.p}")
            return other.value, min(self.N, other.N)
        if isinstance(other, int):
            return other, self.N
        return NotImplemented

    def __add__(self, other):
        coerced = self._coerce(other)
        if coerced is NotImplemented:
            return NotImplemented
        value, N = coerced
        return PadicInt(self.p, N, self.value + value)

    __radd__ = __add__

    def __sub__(self, other):
        coerced = self._coerce(other)
        if coerced is NotImplemented:
            return NotImplemented
        value, N = coerced
        return PadicInt(self.p, N, self.value - value)

    def __rsub__(self, other):
        coerced = self._coerce(other)
        if coerced is NotImplemented:
            return NotImplemented
        value, N = coerced
        return PadicInt(self.p, N, value - self.value)

    def __mul__(self, other):
        coerced = self._coerce(other)
        if coerced is NotImplemented:
            return NotImplemented
        value, N = coerced
        return PadicInt(self.p, N, self.value * value)

    __rmul__ = __mul__

    def __neg__(self) -> PadicInt:
        return PadicInt(self.p, self.N, -self.value)

    def __pow__(self, exponent: int) -> PadicInt:
        if exponent < 0:
            raise DomainError("negative powers need invert()")
        return PadicInt(self.p, self.N, pow(self.value, exponent, self.modulus))

    def valuation(self) -> ExtValuation:
        if self.value == 0:
            return ExtValuation.bound(self.N)
        return ExtValuation.finite(int_valuation(self.value, self.p))

    def with_precision(self, N: int) -> PadicInt:
        if N > self.N:
            raise PrecisionError(f"cannot raise precision of {self} from {self.N} to {N}")
        return PadicInt(self.p, N, self.value)

    def divide_by_p(self, k: int) -> PadicInt:
        """p^k ile tam bölme; sonuç k basamak kaybeder."""
        if k == 0:
            return self
        if self.N - k < 1:
            raise PrecisionError(f"dividing {self} by p^{k} leaves no digits")
        if self.value % self.p**k:
            raise DomainError(f"{self} is not divisible by p^{k}")
        return PadicInt(self.p, self.N - k, self.value // self.p**k)

    def invert(self) -> PadicInt:
        if self.value == 0:
            raise PrecisionError(f"{self} is not a visible unit")
        if self.value % self.p == 0:
            raise NonUnit(f"{self} has positive valuation")
        return PadicInt(self.p, self.N, pow(self.value, -1, self.modulus))

    def __str__(self) -> str:
        return f"{self.value} mod {self.p}^{self.N}"


@lru_cache(maxsize=None)
def _moduli(p: int, e: int, P: int) -> tuple[int, ...]:
    # π^P·O_e = ⊕ p^⌈(P−i)/e⌉ Z_p π^i
    return tuple(p ** max(0, -(-(P - i) // e)) for i in range(e))


@dataclass(frozen=True)
class RamifiedElement:
    """
    O_e = Z_p[π]/(π^e − p) içinde Σ c_i π^i (0 ≤ i < e), π^P modülünde bilinir.

    c_i, p^⌈(P−i)/e⌉ modülüne indirgenmiş olarak saklanır; saklama böylece
    kanoniktir. π bir Eisenstein uniformizer olduğu için valuation
    min_i (v_p(c_i) + i/e) olur. e = 1 iken bu Z/p^P'de aritmetiktir.
    """

    p: int
    e: int
    precision: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        check_prime(self.p)
        if self.e < 1:
            raise DomainError(f"ramification index must be ≥ 1, got {self.e}")
        if self.precision < 0:
            raise PrecisionError(f"negative precision {self.precision}")
        coeffs = _fold(self.p, self.e, tuple(self.coeffs))
        moduli = _moduli(self.p, self.e, self.precision)
        object.__setattr__(self, "coeffs", tuple(c % m for c, m in zip(coeffs, moduli)))

    # ------------------------------------------------------------------
    # Kurucular
    # ------------------------------------------------------------------

    @classmethod
    def from_int(cls, p: int, e: int, precision: int, n: int) -> RamifiedElement:
        return cls(p, e, precision, (n,) + (0,) * (e - 1))

    @classmethod
    def uniformizer(cls, p: int, e: int, precision: int) -> RamifiedElement:
        return cls.from_coefficients(p, e, precision, [0, 1])

    @classmethod
    def from_coefficients(cls, p: int, e: int, precision: int, coeffs) -> RamifiedElement:
        """İstenen sayıda katsayı için Σ coeffs[i]·π^i (π^e, p'ye katlanır)."""
        return cls(p, e, precision, tuple(coeffs))

    # ------------------------------------------------------------------
    # Aritmetik
    # ------------------------------------------------------------------

    def _other(self, other) -> RamifiedElement:
        if isinstance(other, RamifiedElement):
            if (other.p, other.e) != (self.p, self.e):
                raise RingMismatch(
                    f"O_{self.e} over p={self.p} vs O_{other.e} over p={other.p}"
                )
            return other
        if isinstance(other, PadicInt):
            if other.p != self.p:
                raise RingMismatch(f"p={self.p} vs p={other.p}")
            return RamifiedElement.from_int(self.p, self.e, min(self.precision, other.N * self.e), other.value)
        if isinstance(other, int):
            return RamifiedElement.from_int(self.p, self.e, self.precision, other)
        return NotImplemented

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        return RamifiedElement(
            self.p,
            self.e,
            min(self.precision, other.precision),
            tuple(a + b for a, b in zip(self.coeffs, other.coeffs)),
        )

    __radd__ = __add__

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        return RamifiedElement(
            self.p,
            self.e,
            min(self.precision, other.precision),
            tuple(a - b for a, b in zip(self.coeffs, other.coeffs)),
        )

    def __rsub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __neg__(self) -> RamifiedElement:
        return RamifiedElement(self.p, self.e, self.precision, tuple(-c for c in self.coeffs))

    def __mul__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        e, p = self.e, self.p
        product = [0] * e
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if i + j < e:
                    product[i + j] += a * b
                else:
                    product[i + j - e] += p * a * b
        # İki operand da integral; min(P_x + e·v(y), P_y + e·v(x), P_x, P_y)
        # hiçbir zaman min(P_x, P_y)'den büyük olmaz.
        return RamifiedElement(p, e, min(self.precision, other.precision), tuple(product))

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> RamifiedElement:
        if exponent < 0:
            raise DomainError("negative powers need PadicService.ram_invert_unit")
        result = RamifiedElement.from_int(self.p, self.e, self.precision, 1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    # ------------------------------------------------------------------
    # Valuation, hassasiyet, kaydırmalar
    # ------------------------------------------------------------------

    def valuation(self) -> ExtValuation:
        best = None
        for i, c in enumerate(self.coeffs):
            if c:
                candidate = Fraction(int_valuation(c, self.p) * self.e + i, self.e)
                best = candidate if best is None else min(best, candidate)
        if best is None:
            return ExtValuation.bound(self.precision, self.e)
        return ExtValuation(best, True)

    def is_zero(self) -> bool:
        """π^P modülünde sıfır (eleman yine de sıfırdan farklı bir p-adik sayı olabilir)."""
        return not any(self.coeffs)

    def with_precision(self, precision: int) -> RamifiedElement:
        if precision > self.precision:
            raise PrecisionError(
                f"cannot raise precision from {self.precision} to {precision}",
                suggested_precision=precision,
            )
        return RamifiedElement(self.p, self.e, precision, self.coeffs)

    def shift(self, k: int) -> RamifiedElement:
        """
        π^k ile çarpar. k < 0 için bu tam bölmedir ve elemanın π^{−k} ile
        görünür şekilde bölünebilmesi gerekir; hassasiyet her iki durumda k kadar kayar.
        """
        coeffs = list(self.coeffs)
        precision = self.precision
        p, e = self.p, self.e
        for _ in range(max(k, 0)):
            coeffs = [p * coeffs[-1]] + coeffs[:-1]
            precision += 1
        for _ in range(max(-k, 0)):
            if precision < 1:
                raise PrecisionError("no visible digits left to divide by π")
            if coeffs[0] % p:
                raise DomainError(f"{self} is not divisible by π^{-k}")
            coeffs = coeffs[1:] + [coeffs[0] // p]
            precision -= 1
        return RamifiedElement(p, e, precision, tuple(coeffs))

    def embed(self, e_target: int) -> RamifiedElement:
        """e | e' için O_e → O_{e'}; π_e, π_{e'}^{e'/e}'ye gider."""
        if e_target % self.e:
            raise RingMismatch(f"cannot embed O_{self.e} into O_{e_target}")
        step = e_target // self.e
        coeffs = [0] * e_target
        for i, c in enumerate(self.coeffs):
            coeffs[i * step] = c
        return RamifiedElement(self.p, e_target, self.precision * step, tuple(coeffs))

    def to_json(self) -> dict:
        return {"p": self.p, "e": self.e, "P": self.precision, "digits": list(self.coeffs)}

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(str(c) if i == 0 else f"{c}*pi" if i == 1 else f"{c}*pi^{i}")
        body = " + ".join(terms) or "0"
        return f"{body} (mod pi^{self.precision}, pi^{self.e}={self.p})"


def _fold(p: int, e: int, coeffs: tuple[int, ...]) -> tuple[int, ...]:
    if len(coeffs) == e:
        return coeffs
    folded = [0] * e
    for i, c in enumerate(coeffs):
        q, s = divmod(i, e)
        folded[s] += c * p**q
    return tuple(folded)
