from __future__ import annotations

import logging

from django.db import models
from django.utils.translation import gettext_lazy as _

from core.exceptions import DomainError, HypothesisError, PrecisionError, RingMismatch, Singular
from padic.models import Ordering, PadicInt, check_prime, int_valuation
from padic.services import PadicService
from polymod.models import CoefficientRing, HomogPoly, Mat2, RingKind, coefficient_json
from polymod.services import PolyService
from .models import CosetRep, Difference, InductionBuilder, InductionElement, ensure_same_family

logger = logging.getLogger(__name__)


class Reduction(models.TextChoices):
    NONE = "none", _("Halkayı koru")
    MOD_PI = "mod_pi", _("π modülüne indirge (F_p'ye)")
    MOD_P = "mod_p", _("p = π^e modülüne indirge")


class InductionService:
    """
    Grup elemanlarının kanonikleştirilmesi ve Σ [g, v] üzerindeki muhasebe.
    """

    # ------------------------------------------------------------------
    # Coset'ler
    # ------------------------------------------------------------------

    @staticmethod
    def _lift(g: Mat2, p: int, digits: int) -> tuple[list[PadicInt], int]:
        entries = g.entries
        inexact = [x for x in entries if isinstance(x, PadicInt)]
        if inexact:
            if any(x.p != p for x in inexact):
                raise RingMismatch(f"matrix entries are not {p}-adic")
            N = min(x.N for x in inexact)
        else:
            det = g.det()
            if det == 0:
                raise Singular(f"{g} is not invertible")
            # aşağıdaki her bölme en fazla v(det) basamak kaybettirir
            N = digits + 2 * int_valuation(det, p) + 1
        lifted = [x.with_precision(N) if isinstance(x, PadicInt) else PadicInt(p, N, x) for x in entries]
        return lifted, N

    @classmethod
    def canonicalize(cls, g: Mat2, p: int, digits: int) -> tuple[CosetRep, Mat2]:
        """
        κ ∈ KZ ve κ'nın girdileri `digits` p-adik basamakla bilinmek üzere g = (p^m, c; 0, 1)·κ.

        Sütun indirgemesi: alt satırdaki en küçük valuation'lı girdi sağa
        alınır ve sol alt girdi sıfırlanır. Birim köşegen κ'ya çekilir, merkezi
        p-kuvveti ayrılır. Son olarak c, p^m altındaki Teichmüller basamaklarına
        ve κ'ya giden bir z kalanına ayrılır.
        """
        check_prime(p)
        if g.c == 0 and g.d == 0 and not isinstance(g.c, PadicInt) and not isinstance(g.d, PadicInt):
            raise Singular("bottom row vanishes")
        (a, b, c, d), _ = cls._lift(g, p, digits)

        swapped = PadicService.compare_valuations(c.valuation(), d.valuation()) == Ordering.LESS
        if swapped:
            a, b, c, d = b, a, d, c

        vd = d.valuation()
        if not vd.exact:
            raise PrecisionError(f"bottom row of {g} vanishes at this precision")
        n = int(vd.value)
        u = d.divide_by_p(n)
        u_inv = u.invert()
        q = c.divide_by_p(n) * u_inv
        alpha = a.with_precision(q.N) - b * q

        va = alpha.valuation()
        if not va.exact:
            raise PrecisionError(f"determinant of {g} vanishes at this precision")
        l = int(va.value)
        u_prime = alpha.divide_by_p(l)

        beta = b.with_precision(u_inv.N) * u_inv
        if beta.N < l + 1:
            raise PrecisionError(f"{g}: need {l + 1} digits of c, have {beta.N}")
        lams = PadicService.teichmuller_digits(beta.value, p, l)
        canonical = sum(PadicService.teichmuller(lam, p, beta.N).value * p**j for j, lam in enumerate(lams))
        z = PadicInt(p, beta.N, beta.value - canonical).divide_by_p(l)

        rep = CosetRep.build(l - n, -n, lams)

        # κ = p^{scale+n}·(1, z; 0, 1)·diag(u', u)·(1, 0; q, 1)·(yer değiştiyse w)
        zu = z * u
        top_left = u_prime + zu * q
        bottom_left = u * q
        if swapped:
            kappa_entries = (zu, top_left, u, bottom_left)
        else:
            kappa_entries = (top_left, zu, bottom_left, u)
        precision = min(x.N if isinstance(x, PadicInt) else digits for x in kappa_entries)
        if precision < digits:
            raise PrecisionError(
                f"κ for {g} is only known to {precision} digits, {digits} needed",
                suggested_precision=digits + (digits - precision),
            )
        kappa = Mat2(*(x.with_precision(digits) for x in kappa_entries), scale=g.scale + n)
        logger.debug("canonicalize: %s -> %s (swap=%s, n=%s, l=%s)", g.to_json(), rep, swapped, n, l)
        return rep, kappa

    # ------------------------------------------------------------------
    # Eleman oluşturma
    # ------------------------------------------------------------------

    @classmethod
    def insert_term(cls, E: InductionElement, g: Mat2, v: HomogPoly) -> InductionElement:
        """E + [g, v]; [gκ, v] = [g, κv] ile [rep, κv] olarak yeniden yazılır."""
        if v.ring != E.ring or v.degree != E.degree:
            raise RingMismatch(f"[g, v] with v over {v.ring} cannot join {E.ring}")
        rep, kappa = cls.canonicalize(g, E.ring.p, E.ring.padic_digits)
        builder = InductionBuilder(E.ring, E.degree).extend(E)
        builder.add(rep, PolyService.act(kappa, v))
        return builder.build()

    @classmethod
    def from_terms(cls, ring: CoefficientRing, degree: int, terms) -> InductionElement:
        """(Mat2 | CosetRep, HomogPoly) çiftlerinden oluşan bir iterable için Σ [g, v]."""
        builder = InductionBuilder(ring, degree)
        for g, v in terms:
            if isinstance(g, CosetRep):
                builder.add(g, v)
                continue
            rep, kappa = cls.canonicalize(g, ring.p, ring.padic_digits)
            builder.add(rep, PolyService.act(kappa, v))
        return builder.build()

    # ------------------------------------------------------------------
    # Kongrüanslar
    # ------------------------------------------------------------------

    @staticmethod
    def first_difference(E1: InductionElement, E2: InductionElement, modulus: int) -> Difference | None:
        """
        E1 ile E2'nin π^modulus modülünde ayrıştığı ilk (coset, monom); coset'ler
        kanonik sırada taranır. Uyuşuyorlarsa None.
        """
        ensure_same_family(E1, E2)
        available = min(E1.ring.precision, E2.ring.precision)
        if modulus > available:
            raise PrecisionError(
                f"congruence modulo π^{modulus} needs that many digits, have {available}",
                suggested_precision=modulus,
            )
        left, right = E1.as_dict(), E2.as_dict()
        for rep in sorted(set(left) | set(right)):
            lp, rp = left.get(rep), right.get(rep)
            for i in range(E1.degree + 1):
                lc = lp.coeffs[i].with_precision(modulus) if lp else None
                rc = rp.coeffs[i].with_precision(modulus) if rp else None
                if lc is None and rc is None:
                    continue
                if lc is not None and rc is not None:
                    if lc == rc:
                        continue
                elif (lc or rc).is_zero():
                    continue
                return Difference(
                    rep,
                    i,
                    coefficient_json(lc) if lc is not None else 0,
                    coefficient_json(rc) if rc is not None else 0,
                    modulus,
                )
        return None

    @classmethod
    def equal_mod(cls, E1: InductionElement, E2: InductionElement, modulus: int) -> bool:
        """π^modulus modülünde E1 ≡ E2, yani E1 − E2'nin her katsayısı için v ≥ modulus/e."""
        return cls.first_difference(E1, E2, modulus) is None

    # ------------------------------------------------------------------
    # Katsayı dönüşümleri
    # ------------------------------------------------------------------

    @staticmethod
    def map_coefficients(E: InductionElement, reduction: str = Reduction.MOD_PI, divide_by_pi: int = 0) -> InductionElement:
        """
        Her katsayıyı π^divide_by_pi ile (tam olarak) böler, sonra indirger.

        Bölünemeyen katsayı DomainError fırlatır; sıfırlanan terimler atılır.
        """
        ring = E.ring
        if divide_by_pi:
            ring = ring.with_precision(ring.precision - divide_by_pi)
        if reduction == Reduction.MOD_PI:
            target = ring.residue_field()
        elif reduction == Reduction.MOD_P:
            target = ring.with_precision(min(ring.e, ring.precision))
        else:
            target = ring

        builder = InductionBuilder(target, E.degree)
        for rep, poly in E.terms:
            poly = PolyService.divide_by_pi(poly, divide_by_pi)
            if reduction == Reduction.MOD_PI:
                poly = PolyService.reduce_mod_pi(poly)
            elif target != poly.ring:
                poly = PolyService.truncate(poly, target.precision)
            builder.add(rep, poly)
        return builder.build()

    @staticmethod
    def apply_psi_termwise(E: InductionElement) -> InductionElement:
        """F_p üzerindeki E için [g, v] ↦ [g, Ψ(v)]; I(det ⊗ Symm^{p−2}) içine düşer."""
        ring, r = E.ring, E.degree
        if ring.kind != RingKind.PRIME_FIELD:
            raise RingMismatch(f"Ψ needs an element over F_p, got {ring}")
        if r <= ring.p or (r - 1) % (ring.p - 1):
            raise HypothesisError(f"Ψ termwise needs r > p and r ≡ 1 mod {ring.p - 1}, got r = {r}")
        builder = InductionBuilder(ring, ring.p - 2)
        for rep, poly in E.terms:
            builder.add(rep, PolyService.psi(poly))
        return builder.build()

    # ------------------------------------------------------------------
    # Yardımcılar
    # ------------------------------------------------------------------

    @staticmethod
    def matrix_of(rep: CosetRep, ring: CoefficientRing, guard: int = 4) -> Mat2:
        """Bir temsilcinin (p^m, c; 0, 1) matrisi, `ring` için yeterli hassasiyette."""
        if rep.m < 0 and rep.low == 0:
            return rep.matrix(ring.p, ring.padic_digits + guard)
        return rep.matrix(ring.p, ring.padic_digits + guard + max(rep.m, 0) - min(rep.low, 0))


def lead_coefficient(E: InductionElement, rep: CosetRep, index: int):
    """Verilen coset'teki verilen monomun katsayısı; yoksa None."""
    poly = E.as_dict().get(rep)
    if poly is None:
        return None
    c = poly.coeffs[index]
    return None if c.is_zero() else c
