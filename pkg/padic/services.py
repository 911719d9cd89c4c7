from __future__ import annotations

import logging
from fractions import Fraction
from functools import lru_cache

from sympy.ntheory import is_quad_residue, sqrt_mod

from core.exceptions import DomainError, NonUnit, PrecisionError, RingMismatch
from .models import ExtValuation, Ordering, PadicInt, RamifiedElement, check_prime, int_valuation

logger = logging.getLogger(__name__)


class PadicService:
    """
    padic değer tipleri üzerindeki işlemler.

    Yalnızca saf fonksiyonlar: her metot yeni bir değer döndürür. (p, λ, N)
    ile belirlenen Teichmüller lift'leri dışında hiçbir şey cache'lenmez.
    """

    # ------------------------------------------------------------------
    # Tamsayılar ve Teichmüller lift'leri
    # ------------------------------------------------------------------

    @staticmethod
    def val_int(n: int, p: int) -> ExtValuation:
        check_prime(p)
        v = int_valuation(n, p)
        return ExtValuation.infinity() if v is None else ExtValuation.finite(v)

    @staticmethod
    @lru_cache(maxsize=4096)
    def teichmuller(lam: int, p: int, N: int) -> PadicInt:
        """
        [λ] mod p^N: λ'dan başlayıp x ↦ x^p sabitlenene kadar yinelenir.

        k yinelemeden sonra değer mod p^{k+1} doğrudur; N yineleme sabit
        noktaya her zaman ulaşır.
        """
        check_prime(p)
        if not 0 <= lam < p:
            raise DomainError(f"residue {lam} is not in 0..{p - 1}")
        modulus = p**N
        x = lam % modulus
        for _ in range(N):
            nxt = pow(x, p, modulus)
            if nxt == x:
                break
            x = nxt
        return PadicInt(p, N, x)

    @classmethod
    def teichmuller_digits(cls, value: int, p: int, count: int) -> tuple[int, ...]:
        """
        value = Σ [λ_j] p^j açılımının ilk `count` basamağı λ_j (value mod p^count).
        """
        digits = []
        remaining = value % p**count if count > 0 else 0
        for j in range(count):
            lam = remaining % p
            digits.append(lam)
            lift = cls.teichmuller(lam, p, count - j).value
            remaining = (remaining - lift) // p
        return tuple(digits)

    # ------------------------------------------------------------------
    # Dallanmış aritmetik
    # ------------------------------------------------------------------

    @staticmethod
    def ram_arith(x: RamifiedElement, y: RamifiedElement, op: str) -> RamifiedElement:
        if (x.p, x.e) != (y.p, y.e):
            raise RingMismatch(f"O_{x.e} over p={x.p} vs O_{y.e} over p={y.p}")
        if op == "add":
            return x + y
        if op == "sub":
            return x - y
        if op == "mul":
            return x * y
        raise DomainError(f"unknown operation {op!r}")

    @staticmethod
    def ram_valuation(x: RamifiedElement) -> ExtValuation:
        return x.valuation()

    # ------------------------------------------------------------------
    # Valuation karşılaştırmaları
    # ------------------------------------------------------------------

    @staticmethod
    def compare_valuations(u: ExtValuation, w: ExtValuation) -> Ordering:
        """
        Valuation'lar üzerinde tam sıralama. Kesinlik bayrakları karar
        veremiyorsa reddedilir (çağıran daha yüksek hassasiyetle yeniden hesaplar).
        """
        if u.exact and w.exact:
            if u.is_infinite or w.is_infinite:
                if u.is_infinite and w.is_infinite:
                    return Ordering.EQUAL
                return Ordering.GREATER if u.is_infinite else Ordering.LESS
            if u.value == w.value:
                return Ordering.EQUAL
            return Ordering.LESS if u.value < w.value else Ordering.GREATER

        if u.exact and not w.exact:
            if u.is_infinite is False and u.value < w.value:
                return Ordering.LESS
        elif w.exact and not u.exact:
            if w.is_infinite is False and w.value < u.value:
                return Ordering.GREATER

        raise PrecisionError(f"cannot order valuations {u} and {w} at this precision")

    @staticmethod
    def valuation_at_least(w: ExtValuation, bound: Fraction | int) -> bool:
        """w ≥ bound kararı; kesin olmayan w yalnızca alt sınırı yetiyorsa karar verir."""
        bound = Fraction(bound)
        if w.is_infinite:
            return True
        if w.exact:
            return w.value >= bound
        if w.value >= bound:
            return True
        raise PrecisionError(f"cannot decide {w} ≥ {bound} at this precision")

    # ------------------------------------------------------------------
    # Birimler, kalıntılar, bölme
    # ------------------------------------------------------------------

    @staticmethod
    def ram_invert_unit(x: RamifiedElement) -> RamifiedElement:
        """
        O_e'nin bir biriminin π^P modülünde tersi.

        Kalıntının tersinden başlar ve y ← y(2 − xy) ile yükseltir; her adım
        doğru π-adik basamak sayısını ikiye katlar.
        """
        v = x.valuation()
        if not v.exact:
            raise PrecisionError(f"{x} has no visible unit digit", suggested_precision=2 * max(x.precision, 1))
        if v.value > 0:
            raise NonUnit(f"{x} has valuation {v}")

        p, e, P = x.p, x.e, x.precision
        y = RamifiedElement.from_int(p, e, P, pow(x.coeffs[0] % p, -1, p))
        correct = 1
        while correct < P:
            y = y * (2 - x * y)
            correct *= 2
        return y

    @staticmethod
    def residue(x: RamifiedElement) -> int:
        """O_e/π = F_p içindeki görüntü."""
        if x.precision < 1:
            raise PrecisionError("residue needs at least one π-adic digit", suggested_precision=x.e)
        return x.coeffs[0] % x.p

    @classmethod
    def ram_divide(cls, x: RamifiedElement, y: RamifiedElement) -> RamifiedElement:
        """
        Integral bölüm için x / y: ikisinden de v(y) kaydırılır, sonra y'nin
        birim kısmının tersiyle çarpılır.
        """
        vy = y.valuation()
        if not vy.exact:
            raise PrecisionError(f"divisor {y} vanishes at this precision", suggested_precision=2 * y.precision)
        k = int(vy.value * y.e)
        if not cls.valuation_at_least(x.valuation(), vy.value):
            raise DomainError(f"{x} / {y} is not integral")
        numerator = x.shift(-k)
        unit = y.shift(-k)
        precision = min(numerator.precision, unit.precision)
        return numerator.with_precision(precision) * cls.ram_invert_unit(unit.with_precision(precision))

    @staticmethod
    def sqrt_unit_times_p(n: int, p: int, precision: int) -> RamifiedElement:
        """
        p-adik birim n için O_2 = Z_p[π]/(π² − p) içinde √(n·p).

        √(n·p) = s·π, Z_p'de s² = n; s, n'nin mod p karekökünün basamak basamak
        yükseltilmişidir (sympy'nin sqrt_mod'u p^N'ye kadar yükseltir).
        """
        check_prime(p)
        if n % p == 0:
            raise DomainError(f"{n} is not a p-adic unit")
        if not is_quad_residue(n % p, p):
            raise DomainError(f"{n} is not a square modulo {p}")
        digits = -(-precision // 2)
        modulus = p ** max(digits, 1)
        s = sqrt_mod(n % modulus, modulus)
        logger.debug("sqrt(%s) mod %s^%s = %s", n, p, digits, s)
        return RamifiedElement.from_coefficients(p, 2, precision, [0, s])
