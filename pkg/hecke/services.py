from __future__ import annotations

import logging
from dataclasses import replace

from config.models import SystemSetting
from core.exceptions import HypothesisError, IntegralityFailure, RingMismatch
from induction.models import CosetRep, InductionBuilder, InductionElement
from induction.services import InductionService, Reduction
from padic.models import RamifiedElement, int_valuation
from polymod.models import CoefficientRing, HomogPoly, Mat2
from polymod.services import PolyService
from .models import HeckeContext, ThetaWitness

logger = logging.getLogger(__name__)


class HeckeService:
    """
    I(Symm^r) üzerinde T, açık formülle

        T[g, v] = Σ_λ [g(p, [λ]; 0, 1), v(x, −[λ]x + py)] + [g(1, 0; 0, p), v(px, y)]

    ve (T − a)-görüntüleri bölüm bağıntısını taşıyan yapılı φ_g, φ vektörleri.
    """

    # ------------------------------------------------------------------
    # Context'ler
    # ------------------------------------------------------------------

    @staticmethod
    def default_precision(p: int, r: int, e: int) -> int:
        """Ayarlıysa PRECISION, değilse e·(t + 4)."""
        configured = SystemSetting.get("PRECISION", default=0)
        if configured:
            return configured
        t = int_valuation(r - 1, p) or 0
        return e * (t + 4)

    @classmethod
    def context(cls, r: int, a: RamifiedElement) -> HeckeContext:
        ctx = HeckeContext.for_element(r, a)
        ctx.require_weight_hypotheses()
        logger.debug("hecke context p=%s r=%s e=%s P=%s depths=%s", ctx.p, r, ctx.e, ctx.precision, ctx.depths())
        return ctx

    # ------------------------------------------------------------------
    # T ve T − a
    # ------------------------------------------------------------------

    @staticmethod
    def apply_T(E: InductionElement) -> InductionElement:
        ring, p = E.ring, E.ring.p
        x = HomogPoly.linear(ring, 1, 0)
        px = HomogPoly.linear(ring, p, 0)
        steps = [HomogPoly.linear(ring, -ring.teichmuller(lam), p) for lam in range(p)]

        builder = InductionBuilder(ring, E.degree)
        for rep, v in E.terms:
            for lam in range(p):
                builder.add(rep.step(lam), PolyService.substitute_pair(v, x, steps[lam]))
            # g(1, 0; 0, p) = p·rep'·(1, [λ]; 0, 1); λ pencereden çıkan basamak
            below, dropped = rep.down()
            builder.add(below, PolyService.substitute_pair(v, px, HomogPoly.linear(ring, ring.teichmuller(dropped), 1)))
        image = builder.build()
        logger.debug("apply_T: %s terms -> %s terms", len(E.terms), len(image.terms))
        return image

    @classmethod
    def apply_T_power(cls, E: InductionElement, n: int) -> InductionElement:
        for _ in range(n):
            E = cls.apply_T(E)
        return E

    @classmethod
    def apply_T_minus_a(cls, ctx: HeckeContext, E: InductionElement) -> InductionElement:
        a = ctx.require_a()
        if E.ring != ctx.ring or E.degree != ctx.r:
            raise RingMismatch(f"element over {E.ring} (degree {E.degree}) in a context over {ctx.ring} (r = {ctx.r})")
        return cls.apply_T(E) - E.scale(a)

    # ------------------------------------------------------------------
    # Test vektörleri
    # ------------------------------------------------------------------

    @staticmethod
    def generator_poly(ring: CoefficientRing, r: int) -> HomogPoly:
        """y^r − x^{r−1}y"""
        return HomogPoly.monomial(ring, r, r) - HomogPoly.monomial(ring, r, 1)

    @classmethod
    def build_phi_g(cls, ctx: HeckeContext, g: CosetRep | Mat2, N: int | None = None) -> InductionElement:
        """φ_g = Σ_{j=0}^{N} [g(p^j, 0; 0, 1), a^j(y^r − x^{r−1}y)]"""
        a = ctx.require_a()
        if N is None:
            N = ctx.default_terms
        if N * ctx.va <= ctx.t0:
            raise HypothesisError(f"N = {N} does not exceed t₀/v(a) = {ctx.t0 / ctx.va}")

        base = cls.generator_poly(ctx.ring, ctx.r)
        terms = []
        power = ctx.ring.one()
        for j in range(N + 1):
            if isinstance(g, CosetRep):
                position = g
                for _ in range(j):
                    position = position.step(0)
            else:
                position = g @ Mat2.diagonal(ctx.p**j, 1)
            terms.append((position, base.scale(power)))
            power = power * a
        return InductionService.from_terms(ctx.ring, ctx.r, terms)

    @staticmethod
    def teichmuller_power_sum(ring: CoefficientRing, r: int) -> HomogPoly:
        """Σ_μ ([μ]x + y)^r"""
        total = HomogPoly.zero(ring, r)
        for mu in range(ring.p):
            total = total + PolyService.linear_power(ring, r, ring.teichmuller(mu), 1)
        return total

    @classmethod
    def build_phi(cls, ctx: HeckeContext, N: int | None = None) -> InductionElement:
        """φ = −pφ_1 + Σ_μ aφ_{(p,[μ];0,1)} + [1, Σ_μ([μ]x + y)^r − rp·x^{r−1}y]"""
        a = ctx.require_a()
        ring, r, p = ctx.ring, ctx.r, ctx.p
        identity = CosetRep.identity()

        phi = cls.build_phi_g(ctx, identity, N).scale(-p)
        for mu in range(p):
            phi = phi + cls.build_phi_g(ctx, identity.step(mu), N).scale(a)
        tail = cls.teichmuller_power_sum(ring, r) - HomogPoly.monomial(ring, r, 1, r * p)
        phi = phi + InductionElement.single(identity, tail)
        logger.debug("build_phi: %s terms", len(phi.terms))
        return phi

    @classmethod
    def theta_kernel_witness(cls, ctx: HeckeContext, N: int | None = None) -> ThetaWitness:
        """ψ = π^{−e·t₀}·φ; φ'yi, shift'i ve integral (T − a)ψ elemanını döndürür."""
        ctx.require_weight_hypotheses()
        phi = cls.build_phi(ctx, N)
        shift = ctx.xg_modulus
        witness = ThetaWitness(phi, shift, cls.apply_T_minus_a(ctx, phi))
        if not witness.integral:
            raise IntegralityFailure(f"(T − a)ψ is not integral: (T − a)φ is not divisible by π^{shift}")
        scaled = InductionService.map_coefficients(witness.unscaled, Reduction.NONE, divide_by_pi=shift)
        logger.info(
            "theta witness p=%s r=%s: shift π^%s, %s terms in (T − a)ψ", ctx.p, ctx.r, shift, len(scaled.terms)
        )
        return replace(witness, image=scaled)
