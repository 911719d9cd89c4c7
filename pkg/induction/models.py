# =============================================================================
# induction/models.py
#
# Django App: induction
# Bağımlılıklar: polymod (HomogPoly, CoefficientRing, Mat2)
#
# I(V) = ind_{KZ}^G V, sonlu formel toplamlar Σ [g, v] olarak.
#
# Coset temsilcileri (p^m, c; 0, 1) olarak saklanır; c Teichmüller
# basamaklarıyla c = Σ_{j=low}^{m−1} [λ_j] p^j yazılır. ≥ m konumlarındaki
# basamaklar KZ'ye emilir; (m, low, digits) g·KZ coset'ini belirler.
# =============================================================================

from __future__ import annotations

from dataclasses import dataclass, field

from core.exceptions import DomainError, RingMismatch
from polymod.models import CoefficientRing, HomogPoly, Mat2


@dataclass(frozen=True, order=True)
class CosetRep:
    """
    Bir g·KZ coset'inin kanonik temsilcisi (p^m, c; 0, 1).

    Kanonik form:
        low ≤ 0; low < 0 yalnızca low konumundaki basamak sıfırdan farklıysa;
        len(digits) = max(0, m − low).
    Alan sırası aynı zamanda deterministik sıralamadır (m, low, digits).
    """

    m: int
    low: int = 0
    digits: tuple[int, ...] = field(default=())

    @classmethod
    def build(cls, m: int, low: int, digits) -> CosetRep:
        """Rastgele bir basamak penceresini kanonik forma getirir."""
        digits = list(digits)
        if low > 0:
            digits = [0] * low + digits
            low = 0
        # ≥ m konumları KZ'ye emilir
        digits = digits[: max(0, m - low)]
        while low < 0 and digits and digits[0] == 0:
            digits.pop(0)
            low += 1
        if low < 0 and not digits:
            low = 0
        digits += [0] * (max(0, m - low) - len(digits))
        return cls(m, low, tuple(digits))

    @classmethod
    def identity(cls) -> CosetRep:
        return cls(0, 0, ())

    def digit_at(self, position: int) -> int:
        index = position - self.low
        if 0 <= index < len(self.digits):
            return self.digits[index]
        return 0

    def step(self, lam: int) -> CosetRep:
        """g·(p, [λ]; 0, 1) = (p^{m+1}, c + [λ]p^m; 0, 1), tam olarak."""
        start = min(self.low, self.m)
        window = [self.digit_at(j) for j in range(start, self.m)] + [lam]
        return CosetRep.build(self.m + 1, start, window)

    def down(self) -> tuple[CosetRep, int]:
        """
        g·(1, 0; 0, p) = p·(p^{m−1}, c'; 0, 1)·(1, [λ_{m−1}]; 0, 1).

        Yeni temsilciyi ve KZ'ye geçen λ_{m−1} basamağını döndürür (yoksa 0).
        """
        dropped = self.digit_at(self.m - 1)
        return CosetRep.build(self.m - 1, self.low, self.digits), dropped

    def matrix(self, p: int, N: int) -> Mat2:
        """
        c'si N p-adik basamağa kadar verilmiş (p^m, c; 0, 1). c'nin negatif
        konumları varsa p^low·(p^{m−low}, p^{−low}c; 0, p^{−low}) olarak yazılır.
        """
        from padic.models import PadicInt
        from padic.services import PadicService

        shift = -self.low
        value = 0
        for j, lam in enumerate(self.digits):
            value += PadicService.teichmuller(lam, p, N + shift).value * p**j
        c = PadicInt(p, N + shift, value)
        if shift == 0:
            return Mat2.upper(p**self.m, c) if self.m >= 0 else Mat2(1, c * p**-self.m, 0, p**-self.m, self.m)
        return Mat2(p ** (self.m + shift), c, 0, p**shift, -shift)

    def to_json(self) -> dict:
        # en anlamlı basamak önce, c'nin genelde yazıldığı gibi (p[λ] + [μ])
        return {"m": self.m, "low": self.low, "c_digits": list(reversed(self.digits))}

    def __str__(self) -> str:
        if not self.digits:
            return f"(p^{self.m}, 0)"
        body = " + ".join(f"[{d}]p^{self.low + j}" for j, d in enumerate(self.digits) if d) or "0"
        return f"(p^{self.m}, {body})"


@dataclass(frozen=True)
class InductionElement:
    """
    Kanonik coset temsilcileri üzerinde Σ [g, v].

    terms CosetRep'e göre sıralıdır ve hiçbir zaman sıfır polinom içermez.
    """

    ring: CoefficientRing
    degree: int
    terms: tuple[tuple[CosetRep, HomogPoly], ...] = ()

    def __post_init__(self):
        for rep, poly in self.terms:
            if poly.ring != self.ring or poly.degree != self.degree:
                raise RingMismatch(f"term at {rep} is over {poly.ring}, degree {poly.degree}")

    @classmethod
    def zero(cls, ring: CoefficientRing, degree: int) -> InductionElement:
        return cls(ring, degree, ())

    @classmethod
    def single(cls, rep: CosetRep, poly: HomogPoly) -> InductionElement:
        return InductionBuilder(poly.ring, poly.degree).add(rep, poly).build()

    def as_dict(self) -> dict[CosetRep, HomogPoly]:
        return dict(self.terms)

    def support(self) -> list[CosetRep]:
        return [rep for rep, _ in self.terms]

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: InductionElement) -> None:
        if (other.ring, other.degree) != (self.ring, self.degree):
            raise RingMismatch(
                f"I(Symm^{self.degree}) over {self.ring} vs I(Symm^{other.degree}) over {other.ring}"
            )

    def __add__(self, other: InductionElement) -> InductionElement:
        self._check(other)
        builder = InductionBuilder(self.ring, self.degree).extend(self)
        return builder.extend(other).build()

    def __sub__(self, other: InductionElement) -> InductionElement:
        return self + (-other)

    def __neg__(self) -> InductionElement:
        return InductionElement(self.ring, self.degree, tuple((rep, -poly) for rep, poly in self.terms))

    def scale(self, scalar) -> InductionElement:
        builder = InductionBuilder(self.ring, self.degree)
        for rep, poly in self.terms:
            builder.add(rep, poly.scale(scalar))
        return builder.build()

    def to_json(self) -> dict:
        return {
            "ring": self.ring.to_json(),
            "degree": self.degree,
            "terms": [{**rep.to_json(), "poly": poly.to_json()} for rep, poly in self.terms],
        }


class InductionBuilder:
    """Değiştirilebilir toplayıcı; build() sıfırlanan terimleri atar ve sıralar."""

    def __init__(self, ring: CoefficientRing, degree: int):
        self.ring = ring
        self.degree = degree
        self._terms: dict[CosetRep, HomogPoly] = {}

    def add(self, rep: CosetRep, poly: HomogPoly) -> InductionBuilder:
        if poly.ring != self.ring or poly.degree != self.degree:
            raise RingMismatch(f"cannot add a degree {poly.degree} term over {poly.ring}")
        current = self._terms.get(rep)
        self._terms[rep] = poly if current is None else current + poly
        return self

    def extend(self, element: InductionElement) -> InductionBuilder:
        for rep, poly in element.terms:
            self.add(rep, poly)
        return self

    def build(self) -> InductionElement:
        terms = tuple(sorted((rep, poly) for rep, poly in self._terms.items() if not poly.is_zero()))
        return InductionElement(self.ring, self.degree, terms)


@dataclass(frozen=True)
class Difference:
    """İki elemanın π^M modülünde ayrıştığı ilk yer."""

    rep: CosetRep
    index: int
    left: object
    right: object
    modulus: int

    def to_json(self) -> dict:
        return {
            "coset": self.rep.to_json(),
            "monomial": self.index,
            "left": self.left,
            "right": self.right,
            "modulus": self.modulus,
        }


def ensure_same_family(left: InductionElement, right: InductionElement) -> None:
    if left.ring.p != right.ring.p or left.ring.e != right.ring.e or left.degree != right.degree:
        raise DomainError("elements of different induced modules cannot be compared")
