from __future__ import annotations

import logging

from core.exceptions import DomainError, HypothesisError, RingMismatch
from padic.models import RamifiedElement
from .models import CoefficientRing, HomogPoly, Mat2, RingKind

logger = logging.getLogger(__name__)

_PASCAL: list[tuple[int, ...]] = [(1,)]


class PolyService:
    """
    Symm^r üzerinde GL₂ yerine koyma etkisi ve Ψ izdüşümü.

    Her şey katsayı halkasında kesindir. Hiçbir metot, verifier'ın
    doğrulayacağı niceliklerin kapalı formlarını kullanmaz.
    """

    # ------------------------------------------------------------------
    # Binom katsayıları
    # ------------------------------------------------------------------

    @staticmethod
    def binomial_row(n: int) -> tuple[int, ...]:
        """Pascal bağıntısıyla C(n, 0) … C(n, n) (satırlar cache'lenir)."""
        if n < 0:
            raise DomainError(f"no binomial row for n = {n}")
        while len(_PASCAL) <= n:
            prev = _PASCAL[-1]
            _PASCAL.append((1,) + tuple(prev[i] + prev[i + 1] for i in range(len(prev) - 1)) + (1,))
        return _PASCAL[n]

    @classmethod
    def binomial(cls, n: int, k: int) -> int:
        if k < 0 or k > n:
            return 0
        return cls.binomial_row(n)[k]

    # ------------------------------------------------------------------
    # Yerine koyma
    # ------------------------------------------------------------------

    @staticmethod
    def _times_linear(coeffs: list[RamifiedElement], alpha: RamifiedElement, gamma: RamifiedElement):
        """(Σ c_j x^{k−j} y^j)·(αx + γy), k+1 dereceli katsayı listesi olarak."""
        zero = alpha - alpha
        out = [zero] * (len(coeffs) + 1)
        if not alpha.is_zero():
            for j, c in enumerate(coeffs):
                out[j] = c * alpha
        if not gamma.is_zero():
            for j, c in enumerate(coeffs):
                out[j + 1] = out[j + 1] + c * gamma
        return out

    @classmethod
    def substitute_pair(cls, f: HomogPoly, u: HomogPoly, w: HomogPoly) -> HomogPoly:
        """
        f'nin halkası üzerindeki u, w doğrusal formları için f(u, w).

        Homojen formda Horner: S_k = S_{k−1}·u + a_k·w^k; tüm yerine koyma
        O(r²) halka işlemi tutar.
        """
        ring = f.ring
        for form in (u, w):
            if form.ring != ring:
                raise RingMismatch(f"linear form over {form.ring}, polynomial over {ring}")
            if form.degree != 1:
                raise DomainError(f"expected a linear form, got degree {form.degree}")

        (alpha, gamma), (beta, delta) = u.coeffs, w.coeffs
        r = f.degree

        if gamma.is_zero() and beta.is_zero():
            # (αx, δy): köşegen, katsayı katsayı.
            alpha_pows = cls._powers(alpha, r)
            delta_pows = cls._powers(delta, r)
            return HomogPoly(
                ring,
                tuple(a * alpha_pows[r - i] * delta_pows[i] for i, a in enumerate(f.coeffs)),
            )

        acc = [f.coeffs[0]]
        w_pow = [ring.one()]
        for k in range(1, r + 1):
            w_pow = cls._times_linear(w_pow, beta, delta)
            acc = cls._times_linear(acc, alpha, gamma)
            a_k = f.coeffs[k]
            if not a_k.is_zero():
                acc = [s + a_k * t for s, t in zip(acc, w_pow)]
        return HomogPoly(ring, tuple(acc))

    @staticmethod
    def _powers(x: RamifiedElement, n: int) -> list[RamifiedElement]:
        out = [x - x + 1]
        for _ in range(n):
            out.append(out[-1] * x)
        return out

    @classmethod
    def act(cls, M: Mat2, f: HomogPoly) -> HomogPoly:
        """
        (a b; c d)·x^{r−i}y^i = (ax+cy)^{r−i}(bx+dy)^i.

        M'nin merkezi çarpanı p^scale yok sayılır: merkez trivial etki eder.
        """
        ring = f.ring
        a, b, c, d = (ring.coerce(x) for x in M.entries)
        return cls.substitute_pair(f, HomogPoly(ring, (a, c)), HomogPoly(ring, (b, d)))

    @classmethod
    def linear_power(cls, ring: CoefficientRing, r: int, x_coefficient, y_coefficient) -> HomogPoly:
        """(αx + γy)^r"""
        y_r = HomogPoly.monomial(ring, r, r)
        return cls.substitute_pair(y_r, HomogPoly.linear(ring, 1, 0), HomogPoly.linear(ring, x_coefficient, y_coefficient))

    # ------------------------------------------------------------------
    # Katsayı dönüşümleri
    # ------------------------------------------------------------------

    @staticmethod
    def reduce_mod_pi(f: HomogPoly) -> HomogPoly:
        field = f.ring.residue_field()
        return HomogPoly(field, tuple(field.element(c.coeffs[0] % f.ring.p) for c in f.coeffs))

    @staticmethod
    def divide_by_pi(f: HomogPoly, k: int) -> HomogPoly:
        """Her katsayının π^k ile tam bölümü; halka k basamak kaybeder."""
        if k == 0:
            return f
        ring = f.ring.with_precision(f.ring.precision - k)
        return HomogPoly(ring, tuple(c.shift(-k) for c in f.coeffs))

    @staticmethod
    def truncate(f: HomogPoly, precision: int) -> HomogPoly:
        ring = f.ring.with_precision(precision)
        return HomogPoly(ring, tuple(c.with_precision(precision) for c in f.coeffs))

    # ------------------------------------------------------------------
    # Ψ : Symm^r F_p² → det ⊗ Symm^{p−2} F_p²
    # ------------------------------------------------------------------

    @classmethod
    def psi(cls, f: HomogPoly) -> HomogPoly:
        """
        Ψ(f) = Σ_{s,t ∈ F_p} f(s, t)·(tX − sY)^{p−2}, tanımdaki çift toplamla.

        r ≥ p ve r ≡ 1 (mod p−1) gerekir; çıktı aynı taban düzenini kullanır
        (j indisinde X^{p−2−j} Y^j).
        """
        ring = f.ring
        if ring.kind != RingKind.PRIME_FIELD:
            raise RingMismatch(f"Ψ is defined over F_p, got {ring}")
        p, r = ring.p, f.degree
        if r < p or (r - 1) % (p - 1):
            raise HypothesisError(f"Ψ needs r ≥ p and r ≡ 1 mod {p - 1}, got r = {r}")

        a = [c.coeffs[0] for c in f.coeffs]
        n = p - 2
        row = cls.binomial_row(n)
        out = [0] * (n + 1)
        for s in range(p):
            for t in range(p):
                value = sum(a_i * pow(s, r - i, p) * pow(t, i, p) for i, a_i in enumerate(a) if a_i) % p
                if not value:
                    continue
                for j in range(n + 1):
                    out[j] += value * row[j] * pow(t, n - j, p) * pow(-s, j, p)
        logger.debug("psi: r=%s p=%s image=%s", r, p, [x % p for x in out])
        return HomogPoly(ring, tuple(ring.element(x) for x in out))
