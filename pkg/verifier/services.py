from __future__ import annotations

import logging
import time
from concurrent.futures import ProcessPoolExecutor

from classifier.models import ASpec, Variant
from classifier.services import ClassifierService
from config.models import SystemSetting
from core.exceptions import BranchMismatch, CrysredError, DomainError, HypothesisError, RingMismatch, UsageError
from hecke.models import Branch, HeckeContext
from hecke.services import HeckeService
from induction.models import CosetRep, Difference, InductionElement
from induction.services import InductionService, Reduction, lead_coefficient
from padic.models import check_prime, int_valuation
from padic.services import PadicService
from polymod.models import CoefficientRing, HomogPoly, Mat2, coefficient_json
from polymod.services import PolyService
from .models import CheckReport, Statement, Suite

logger = logging.getLogger(__name__)

# matris tarafında grup elemanlarının taşıdığı ek p-adik basamaklar
GUARD = 8

# g ∈ {1, (p, [1]; 0, 1), (p², p[1] + [2]; 0, 1)}
G_SAMPLES = (CosetRep.identity(), CosetRep(1, 0, (1,)), CosetRep(2, 0, (2, 1)))

HECKE_ARGS = ("p", "r", "a", "drop_block", "precision")

STATEMENT_ARGS = {
    Statement.BINOMIAL: ("p", "r", "n_max"),
    Statement.FACTORIAL_BOUND: ("p", "n_max"),
    Statement.R_BOUND: ("p", "r"),
    Statement.FIRST_CONGRUENCE: ("p", "r"),
    Statement.POWER_SUMS: ("p", "r"),
    Statement.SUM_LX: ("p", "r"),
    Statement.PSI_VALUES: ("p", "r"),
    Statement.T_POWERS: ("p",),
    Statement.TMA_GENERATOR: HECKE_ARGS,
    Statement.XG: HECKE_ARGS,
    Statement.TMAX: HECKE_ARGS,
    Statement.THETA_RELATION: HECKE_ARGS,
    Statement.EXPLICIT_DESCRIPTION: HECKE_ARGS,
}

SECTION2 = (
    Statement.BINOMIAL,
    Statement.FACTORIAL_BOUND,
    Statement.R_BOUND,
    Statement.FIRST_CONGRUENCE,
    Statement.POWER_SUMS,
    Statement.SUM_LX,
)
SECTION4 = (
    Statement.PSI_VALUES,
    Statement.T_POWERS,
    Statement.TMA_GENERATOR,
    Statement.XG,
    Statement.TMAX,
    Statement.THETA_RELATION,
    Statement.EXPLICIT_DESCRIPTION,
)
SUITES = {Suite.SECTION2: SECTION2, Suite.SECTION4: SECTION4, Suite.ALL: SECTION2 + SECTION4}

# her bölüm bağıntısının normalleştirme katsayısını taşıyan coset
ANCHORS = {Branch.T: CosetRep(1, 0, (0,)), Branch.QUADRATIC: CosetRep.identity()}


def _lift(lam: int, p: int, ring: CoefficientRing):
    return PadicService.teichmuller(lam % p, p, ring.padic_digits + GUARD)


def _poly_difference(left: HomogPoly, right: HomogPoly) -> int | None:
    for i, (lc, rc) in enumerate(zip(left.coeffs, right.coeffs)):
        if not (lc - rc).is_zero():
            return i
    return None


def _params_json(params: dict) -> dict:
    return {key: value.to_json() if hasattr(value, "to_json") else value for key, value in params.items() if value is not None}


class VerifierService:
    """
    Her statement için bir kontrol. Sol taraflar Hecke mekanizmasından geçer
    (coset basamakları, apply_T). Sağ taraflar gösterilen formüllerden açık
    matris çarpımları ve canonicalize() ile yazılır.
    """

    # ------------------------------------------------------------------
    # Ortak
    # ------------------------------------------------------------------

    @staticmethod
    def _report(statement: str, params: dict, started: float, witness: dict | None = None, details: dict | None = None):
        ms = int((time.perf_counter() - started) * 1000)
        report = CheckReport(str(statement), _params_json(params), witness is None, witness, ms, details or {})
        logger.info("%s %s: %s in %s ms", statement, report.params, "pass" if report.passed else "FAIL", ms)
        return report

    @staticmethod
    def _standing(p: int, r: int, above_p: bool = False) -> int:
        """p > 2, r > 1 (above_p ile r > p) ve r ≡ 1 mod p − 1; t = v(r − 1) döndürür."""
        check_prime(p)
        if r <= 1 or (r - 1) % (p - 1):
            raise HypothesisError(f"need r > 1 and r ≡ 1 mod {p - 1}, got r = {r}")
        if above_p and r <= p:
            raise HypothesisError(f"need r > p, got r = {r} for p = {p}")
        return int_valuation(r - 1, p)

    @staticmethod
    def _context(p: int, r: int, a: ASpec, precision: int | None) -> HeckeContext:
        if a.p != p:
            raise RingMismatch(f"a is given over p = {a.p}, checking p = {p}")
        P = precision or a.precision or HeckeService.default_precision(p, r, a.e)
        return HeckeService.context(r, a.element(P))

    @staticmethod
    def _compare(lhs: InductionElement, blocks: list[InductionElement], modulus: int, drop_block: int | None):
        """π^modulus modülünde lhs ile Σ blokları (atılan hariç) arasındaki ilk fark."""
        if drop_block is not None and not 0 <= drop_block < len(blocks):
            raise UsageError(f"drop_block must be in 0..{len(blocks) - 1}, got {drop_block}")
        rhs = InductionElement.zero(lhs.ring, lhs.degree)
        for index, block in enumerate(blocks):
            if index != drop_block:
                rhs = rhs + block
        details = {"modulus": modulus, "blocks": len(blocks)}
        if drop_block is not None:
            details["dropped_block"] = drop_block
            details["dropped_block_visible"] = not InductionService.equal_mod(
                blocks[drop_block], InductionElement.zero(lhs.ring, lhs.degree), modulus
            )
        return InductionService.first_difference(lhs, rhs, modulus), rhs, details

    # ------------------------------------------------------------------
    # Binomlar, faktöriyeller, r
    # ------------------------------------------------------------------

    @classmethod
    def check_binomial(cls, p: int, r: int, n_max: int | None = None) -> CheckReport:
        """
        (1) n ≥ 2 için v(C(r, n)) + n ≥ t + 2 ve (2) v(C(r−1, n)) + n ≥ t + 1
        için n ≥ 1; n_max'a kadar taranır. r'den sonra binomlar sıfırdır.
        """
        started = time.perf_counter()
        check_prime(p)
        if r < 2:
            raise DomainError(f"need r ≥ 2, got {r}")
        n_max = n_max or max(SystemSetting.get("BINOMIAL_N_MAX", default=200), r)
        t = int_valuation(r - 1, p)
        parts = ((1, PolyService.binomial_row(r), 2, t + 2), (2, PolyService.binomial_row(r - 1), 1, t + 1))

        witness = None
        for part, row, first, bound in parts:
            for n in range(first, min(n_max, len(row) - 1) + 1):
                lhs = int_valuation(row[n], p) + n
                if lhs < bound:
                    witness = {"part": part, "n": n, "binomial": row[n], "lhs": lhs, "rhs": bound}
                    break
            if witness:
                break
        return cls._report(Statement.BINOMIAL, {"p": p, "r": r, "n_max": n_max}, started, witness, {"t": t})

    @classmethod
    def check_factorial_bound(cls, p: int, n_max: int | None = None) -> CheckReport:
        """(p − 1)·v(n!) ≤ n; v(n!) çarpan çarpan biriktirilir."""
        started = time.perf_counter()
        check_prime(p)
        n_max = n_max or SystemSetting.get("BINOMIAL_N_MAX", default=200)
        witness = None
        v_factorial = 0
        for n in range(1, n_max + 1):
            v_factorial += int_valuation(n, p)
            if (p - 1) * v_factorial > n:
                witness = {"n": n, "v_factorial": v_factorial, "bound": f"{n}/{p - 1}"}
                break
        return cls._report(Statement.FACTORIAL_BOUND, {"p": p, "n_max": n_max}, started, witness)

    @classmethod
    def check_r_bound(cls, p: int, r: int) -> CheckReport:
        started = time.perf_counter()
        t = cls._standing(p, r)
        witness = None if r >= t + 3 else {"r": r, "t": t, "rhs": t + 3}
        return cls._report(Statement.R_BOUND, {"p": p, "r": r}, started, witness, {"t": t})

    # ------------------------------------------------------------------
    # Z/p^{t+2} üzerinde kongrüanslar
    # ------------------------------------------------------------------

    @classmethod
    def check_first_congruence(cls, p: int, r: int) -> CheckReport:
        """(−[μ]x + py)^r − x^{r−1}(−[μ]x + py) ≡ −px^{r−1}y (μ = 0), (r−1)px^{r−1}y (μ ≠ 0)."""
        started = time.perf_counter()
        t = cls._standing(p, r)
        ring = CoefficientRing.integer_mod(p, t + 2)

        witness = None
        for mu in range(p):
            lift = -ring.teichmuller(mu)
            lhs = PolyService.linear_power(ring, r, lift, p) - (
                HomogPoly.monomial(ring, r, 0, lift) + HomogPoly.monomial(ring, r, 1, p)
            )
            rhs = HomogPoly.monomial(ring, r, 1, -p if mu == 0 else (r - 1) * p)
            index = _poly_difference(lhs, rhs)
            if index is not None:
                witness = {
                    "mu": mu,
                    "monomial": index,
                    "left": coefficient_json(lhs.coeffs[index]),
                    "right": coefficient_json(rhs.coeffs[index]),
                    "modulus": p ** (t + 2),
                }
                break
        return cls._report(Statement.FIRST_CONGRUENCE, {"p": p, "r": r}, started, witness, {"t": t})

    @classmethod
    def check_power_sums(cls, p: int, r: int) -> CheckReport:
        """
        Σ_μ (1 + [μ])^r ≡ rp (p^{t+2}), Σ_μ (1 + [μ])^{r−1} ≡ p − 1 (p^{t+1}),
        ve her λ için: Σ_μ ([μ] − [λ])^r ≡ −[λ]rp (p^{t+2}),
        Σ_μ ([μ] − [λ])^{r−1} ≡ p − 1 (p^{t+1}).
        """
        started = time.perf_counter()
        t = cls._standing(p, r)
        high, low = p ** (t + 2), p ** (t + 1)
        lifts = [PadicService.teichmuller(mu, p, t + 2).value for mu in range(p)]

        cases = [
            ("sum_power_r", None, sum(pow(1 + m, r, high) for m in lifts), r * p, high),
            ("sum_power_r_minus_1", None, sum(pow(1 + m, r - 1, low) for m in lifts), p - 1, low),
        ]
        for lam, l in enumerate(lifts):
            cases.append(("shifted_power_r", lam, sum(pow(m - l, r, high) for m in lifts), -l * r * p, high))
            cases.append(("shifted_power_r_minus_1", lam, sum(pow(m - l, r - 1, low) for m in lifts), p - 1, low))

        witness = None
        for part, lam, left, right, modulus in cases:
            if (left - right) % modulus:
                witness = {"part": part, "lambda": lam, "left": left % modulus, "right": right % modulus, "modulus": modulus}
                break
        return cls._report(Statement.POWER_SUMS, {"p": p, "r": r}, started, witness, {"t": t, "cases": len(cases)})

    @classmethod
    def check_sum_lx(cls, p: int, r: int) -> CheckReport:
        """Σ_μ ([μ]x − [λ]x + py)^r ≡ −[λ]rp·x^r + rp(p−1)·x^{r−1}y mod p^{t+2}."""
        started = time.perf_counter()
        t = cls._standing(p, r)
        ring = CoefficientRing.integer_mod(p, t + 2)

        witness = None
        for lam in range(p):
            lifted = ring.teichmuller(lam)
            lhs = HomogPoly.zero(ring, r)
            for mu in range(p):
                lhs = lhs + PolyService.linear_power(ring, r, ring.teichmuller(mu) - lifted, p)
            rhs = HomogPoly.monomial(ring, r, 0, -lifted * (r * p)) + HomogPoly.monomial(ring, r, 1, r * p * (p - 1))
            index = _poly_difference(lhs, rhs)
            if index is not None:
                witness = {
                    "lambda": lam,
                    "monomial": index,
                    "left": coefficient_json(lhs.coeffs[index]),
                    "right": coefficient_json(rhs.coeffs[index]),
                    "modulus": p ** (t + 2),
                }
                break
        return cls._report(Statement.SUM_LX, {"p": p, "r": r}, started, witness, {"t": t})

    # ------------------------------------------------------------------
    # F_p üzerinde Ψ ve T
    # ------------------------------------------------------------------

    @classmethod
    def check_psi_values(cls, p: int, r: int) -> CheckReport:
        """Ψ(y^r) = 0, Ψ(x^r) = 0, Ψ(x^{r−1}y) = X^{p−2}."""
        started = time.perf_counter()
        cls._standing(p, r, above_p=True)
        field = CoefficientRing.prime_field(p)
        zero = HomogPoly.zero(field, p - 2)
        cases = (
            ("y^r", HomogPoly.monomial(field, r, r), zero),
            ("x^r", HomogPoly.monomial(field, r, 0), zero),
            ("x^(r-1)y", HomogPoly.monomial(field, r, 1), HomogPoly.monomial(field, p - 2, 0)),
        )
        witness = None
        for name, f, expected in cases:
            image = PolyService.psi(f)
            if _poly_difference(image, expected) is not None:
                witness = {"input": name, "left": image.to_json(), "right": expected.to_json()}
                break
        return cls._report(Statement.PSI_VALUES, {"p": p, "r": r}, started, witness)

    @staticmethod
    def _t_images(p: int) -> tuple[InductionElement, InductionElement]:
        """F_p üzerinde Σ_μ [(p, [μ]; 0, 1), X^{p−2}] ve Σ_{λ,μ} [(p², p[λ] + [μ]; 0, 1), X^{p−2}]."""
        field = CoefficientRing.prime_field(p)
        X = HomogPoly.monomial(field, p - 2, 0)
        once = InductionService.from_terms(field, p - 2, [(Mat2.upper(p, _lift(mu, p, field)), X) for mu in range(p)])
        twice = InductionService.from_terms(
            field,
            p - 2,
            [
                (Mat2.upper(p * p, _lift(lam, p, field) * p + _lift(mu, p, field)), X)
                for lam in range(p)
                for mu in range(p)
            ],
        )
        return once, twice

    @classmethod
    def check_T_powers(cls, p: int) -> CheckReport:
        started = time.perf_counter()
        check_prime(p)
        field = CoefficientRing.prime_field(p)
        start = InductionElement.single(CosetRep.identity(), HomogPoly.monomial(field, p - 2, 0))
        image = HeckeService.apply_T(start)
        expected = cls._t_images(p)

        witness = None
        for power in (1, 2):
            difference = InductionService.first_difference(image, expected[power - 1], 1)
            if difference is not None:
                witness = {"power": power, **difference.to_json()}
                break
            image = HeckeService.apply_T(image)
        return cls._report(Statement.T_POWERS, {"p": p}, started, witness)

    # ------------------------------------------------------------------
    # (T − a) özdeşlikleri
    # ------------------------------------------------------------------

    @staticmethod
    def _tma_generator_blocks(ctx: HeckeContext, g: Mat2) -> list[InductionElement]:
        ring, r, p, a = ctx.ring, ctx.r, ctx.p, ctx.a
        y_r = HomogPoly.monomial(ring, r, r)
        return [
            InductionService.from_terms(ring, r, [(g @ Mat2.upper(p, 0), HomogPoly.monomial(ring, r, 1, -p))]),
            InductionService.from_terms(
                ring,
                r,
                [(g @ Mat2.upper(p, _lift(lam, p, ring)), HomogPoly.monomial(ring, r, 1, (r - 1) * p)) for lam in range(1, p)],
            ),
            InductionService.from_terms(ring, r, [(g @ Mat2.diagonal(1, p), y_r)]),
            InductionService.from_terms(ring, r, [(g, (y_r - HomogPoly.monomial(ring, r, 1)).scale(-a))]),
        ]

    @staticmethod
    def _xg_blocks(ctx: HeckeContext, g: Mat2) -> list[InductionElement]:
        ring, r, p, a = ctx.ring, ctx.r, ctx.p, ctx.a
        return [
            InductionService.from_terms(
                ring,
                r,
                [(g @ Mat2.upper(p, _lift(lam, p, ring)), HomogPoly.monomial(ring, r, 1, (r - 1) * p)) for lam in range(p)],
            ),
            InductionService.from_terms(ring, r, [(g @ Mat2.diagonal(1, p), HomogPoly.monomial(ring, r, r))]),
            InductionService.from_terms(ring, r, [(g, HomogPoly.monomial(ring, r, 1, a))]),
        ]

    @classmethod
    def _check_over_samples(cls, statement, ctx, lhs_for, blocks_for, modulus, drop_block, params, started):
        witness, details = None, {}
        for rep in G_SAMPLES:
            g = InductionService.matrix_of(rep, ctx.ring, guard=GUARD)
            difference, _, details = cls._compare(lhs_for(rep), blocks_for(ctx, g), modulus, drop_block)
            if difference is not None:
                witness = {"g": rep.to_json(), **difference.to_json()}
                break
        details.update(ctx.depths())
        details["g_samples"] = len(G_SAMPLES)
        return cls._report(statement, params, started, witness, details)

    @classmethod
    def check_Tma_generator(
        cls, p: int, r: int, a: ASpec, drop_block: int | None = None, precision: int | None = None
    ) -> CheckReport:
        """
        (T − a)[g, y^r − x^{r−1}y] ≡ [g(p, 0; 0, 1), −px^{r−1}y]
            + Σ_{λ≠0} [g(p, [λ]; 0, 1), (r−1)px^{r−1}y] + [g(1, 0; 0, p), y^r]
            − [g, a(y^r − x^{r−1}y)]   mod p^{t+2}
        """
        started = time.perf_counter()
        ctx = cls._context(p, r, a, precision)
        generator = HeckeService.generator_poly(ctx.ring, r)
        params = {"p": p, "r": r, "a": a, "precision": ctx.precision, "drop_block": drop_block}
        return cls._check_over_samples(
            Statement.TMA_GENERATOR,
            ctx,
            lambda rep: HeckeService.apply_T_minus_a(ctx, InductionElement.single(rep, generator)),
            cls._tma_generator_blocks,
            ctx.generator_modulus,
            drop_block,
            params,
            started,
        )

    @classmethod
    def check_Xg(cls, p: int, r: int, a: ASpec, drop_block: int | None = None, precision: int | None = None) -> CheckReport:
        """
        (T − a)φ_g ≡ Σ_λ [g(p, [λ]; 0, 1), (r−1)px^{r−1}y] + [g(1, 0; 0, p), y^r]
            + [g, ax^{r−1}y]   mod p^{t₀}
        """
        started = time.perf_counter()
        ctx = cls._context(p, r, a, precision)
        params = {"p": p, "r": r, "a": a, "precision": ctx.precision, "drop_block": drop_block}
        return cls._check_over_samples(
            Statement.XG,
            ctx,
            lambda rep: HeckeService.apply_T_minus_a(ctx, HeckeService.build_phi_g(ctx, rep)),
            cls._xg_blocks,
            ctx.xg_modulus,
            drop_block,
            params,
            started,
        )

    @staticmethod
    def _tmax_blocks(ctx: HeckeContext) -> list[InductionElement]:
        ring, r, p, a = ctx.ring, ctx.r, ctx.p, ctx.a
        edge = HomogPoly.monomial(ring, r, 1, a * ((r - 1) * p))
        return [
            InductionService.from_terms(
                ring,
                r,
                [
                    (Mat2.upper(p * p, _lift(lam, p, ring) * p + _lift(mu, p, ring)), edge)
                    for lam in range(p)
                    for mu in range(p)
                ],
            ),
            InductionService.from_terms(ring, r, [(Mat2.identity(), edge)]),
            InductionService.from_terms(
                ring,
                r,
                [(Mat2.upper(p, _lift(lam, p, ring)), HomogPoly.monomial(ring, r, 1, ctx.discriminant)) for lam in range(p)],
            ),
        ]

    @classmethod
    def check_TmaX(cls, p: int, r: int, a: ASpec, drop_block: int | None = None, precision: int | None = None) -> CheckReport:
        """
        (T − a)φ ≡ Σ_{λ,μ} [(p², p[λ] + [μ]; 0, 1), a(r−1)px^{r−1}y] + [1, ap(r−1)x^{r−1}y]
            + Σ_λ [(p, [λ]; 0, 1), (a² − rp)x^{r−1}y]   mod p^{t₁}

        Modülün bir π-adik basamak üstüne de bakılır; sonuç details'e yazılır
        ve raporun kararını etkilemez.
        """
        started = time.perf_counter()
        ctx = cls._context(p, r, a, precision)
        lhs = HeckeService.apply_T_minus_a(ctx, HeckeService.build_phi(ctx))
        blocks = cls._tmax_blocks(ctx)
        difference, rhs, details = cls._compare(lhs, blocks, ctx.phi_modulus, drop_block)
        details.update(ctx.depths())

        next_modulus = ctx.phi_modulus + 1
        if drop_block is None and next_modulus <= ctx.precision:
            above = InductionService.first_difference(lhs, rhs, next_modulus)
            details["sharpness"] = {"modulus": next_modulus, "holds": above is None}
            if above is not None:
                # bloklar sırasıyla m = 2, 0 ve 1'de
                block = {2: 0, 0: 1, 1: 2}.get(above.rep.m) if above.rep.low == 0 else None
                details["sharpness"].update({"coset": above.rep.to_json(), "breaking_block": block})

        witness = None if difference is None else difference.to_json()
        params = {"p": p, "r": r, "a": a, "precision": ctx.precision, "drop_block": drop_block}
        return cls._report(Statement.TMAX, params, started, witness, details)

    # ------------------------------------------------------------------
    # Bölüm bağıntısı
    # ------------------------------------------------------------------

    @staticmethod
    def _tau_bar(ctx: HeckeContext) -> int | None:
        """τ = (rp − a²)/(ap(r − 1)) için τ̄; τ integral değilse None."""
        try:
            tau = PadicService.ram_divide(-ctx.discriminant, ctx.a * (ctx.p * (ctx.r - 1)))
        except DomainError:
            return None
        return PadicService.residue(tau)

    @classmethod
    def _relation_blocks(cls, p: int, branch: int, tau_bar: int | None) -> list[InductionElement]:
        once, twice = cls._t_images(p)
        if branch == Branch.T:
            return [once]
        identity = InductionElement.single(CosetRep.identity(), HomogPoly.monomial(once.ring, p - 2, 0))
        return [twice, identity, once.scale(-tau_bar)]

    @staticmethod
    def _normalize(image: InductionElement, anchor: CosetRep) -> InductionElement | None:
        lead = lead_coefficient(image, anchor, 0)
        if lead is None:
            return None
        return image.scale(pow(lead.coeffs[0], -1, image.ring.p))

    @classmethod
    def _match_relation(cls, ctx: HeckeContext, drop_block: int | None = None) -> dict:
        """
        İndirgenmiş çekirdek tanığının Ψ görüntüsü. Çapa coset'inde
        normalleştirilir ve önce öngörülen dalın, sonra diğer dalın bağıntısıyla
        karşılaştırılır. Öngörülen ve eşleşen dalları, öngörülen bağıntıya göre
        ilk farkla birlikte döndürür.
        """
        witness = HeckeService.theta_kernel_witness(ctx)
        reduced = InductionService.map_coefficients(witness.image, Reduction.MOD_PI)
        image = InductionService.apply_psi_termwise(reduced)
        tau_bar = cls._tau_bar(ctx)
        predicted = Branch(ctx.branch)

        def compare(branch, drop=None) -> tuple[Difference | None, dict]:
            blocks = cls._relation_blocks(ctx.p, branch, tau_bar)
            normalized = cls._normalize(image, ANCHORS[branch]) or image
            difference, _, details = cls._compare(normalized, blocks, 1, drop)
            return difference, details

        difference, details = compare(predicted, drop_block)
        reading = {
            "predicted_branch": int(predicted),
            "matched_branch": int(predicted) if difference is None else None,
            "tau_bar": tau_bar,
            "shift": witness.shift,
            "support": len(image.terms),
            "difference": difference,
            **{key: value for key, value in details.items() if key.startswith("dropped")},
        }
        if difference is None or drop_block is not None:
            return reading

        other = Branch.T if predicted == Branch.QUADRATIC else Branch.QUADRATIC
        if other == Branch.QUADRATIC and tau_bar is None:
            raise BranchMismatch(f"Ψ(witness) matches neither relation (τ is not integral): {difference.to_json()}")
        if compare(other)[0] is not None:
            raise BranchMismatch(f"Ψ(witness) matches neither relation: {difference.to_json()}")
        reading["matched_branch"] = int(other)
        logger.warning("theta relation p=%s r=%s: predicted branch %s, matched %s", ctx.p, ctx.r, predicted, other)
        return reading

    @classmethod
    def check_theta_relation(
        cls, p: int, r: int, a: ASpec, drop_block: int | None = None, precision: int | None = None
    ) -> CheckReport:
        """
        T dalı (t + 1 + v(a) > v(a² − rp)): Ψ(tanık) bir birim çarpı T[1, X^{p−2}].
        QUADRATIC dalı: bir birim çarpı (T² − τ̄T + 1)[1, X^{p−2}].
        """
        started = time.perf_counter()
        ctx = cls._context(p, r, a, precision)
        reading = cls._match_relation(ctx, drop_block)
        difference = reading.pop("difference")
        witness = None if difference is None else {"branch": reading["predicted_branch"], **difference.to_json()}
        details = {**reading, **ctx.depths()}
        params = {"p": p, "r": r, "a": a, "precision": ctx.precision, "drop_block": drop_block}
        return cls._report(Statement.THETA_RELATION, params, started, witness, details)

    @classmethod
    def check_explicit_description(
        cls, p: int, r: int, a: ASpec, drop_block: int | None = None, precision: int | None = None
    ) -> CheckReport:
        """
        İndirgemeyi eşleşen bağıntıdan okur (T → irreducible, quadratic → iz τ̄
        olan reducible) ve k = r + 2'de sınıflandırıcıyla karşılaştırır.
        """
        started = time.perf_counter()
        ctx = cls._context(p, r, a, precision)
        params = {"p": p, "r": r, "a": a, "precision": ctx.precision, "drop_block": drop_block}
        reading = cls._match_relation(ctx, drop_block)
        difference = reading.pop("difference")
        if difference is not None:
            witness = {"stage": "theta_relation", **difference.to_json()}
            return cls._report(Statement.EXPLICIT_DESCRIPTION, params, started, witness, reading)

        if reading["matched_branch"] == Branch.QUADRATIC:
            read_off = {"variant": Variant.REDUCIBLE.value, "trace": reading["tau_bar"]}
        else:
            read_off = {"variant": Variant.IRREDUCIBLE.value, "trace": None}
        result = ClassifierService.classify(p, r + 2, a, precision=ctx.precision)
        classified = {"variant": str(result.variant), "trace": result.trace}

        witness = None
        if read_off != classified:
            witness = {"stage": "classifier", "theta": read_off, "classifier": classified}
        details = {**reading, "read_off": read_off, "classifier": {**classified, "t": result.t, "note": result.note}}
        return cls._report(Statement.EXPLICIT_DESCRIPTION, params, started, witness, details)

    # ------------------------------------------------------------------
    # Yönlendirme
    # ------------------------------------------------------------------

    @classmethod
    def run_statement(cls, name: str, params: dict) -> CheckReport:
        """
        Tek bir statement'ı aldığı parametrelerle çalıştırır. a gerektirip a
        almayan statement'lar O_2 üzerinde a = π kullanır.
        """
        if name not in Statement.values:
            raise UsageError(f"unknown statement {name!r}; known: {', '.join(Statement.values)}")
        accepted = STATEMENT_ARGS[Statement(name)]
        params = dict(params)
        if "a" in accepted and params.get("a") is None and params.get("p") is not None:
            params["a"] = ASpec(params["p"], 2, (1,), 1)
        missing = [key for key in ("p", "r") if key in accepted and params.get(key) is None]
        if missing:
            raise UsageError(f"{name} needs {', '.join(missing)}")
        kwargs = {key: params[key] for key in accepted if params.get(key) is not None}
        return getattr(cls, name)(**kwargs)

    @classmethod
    def run_suite(cls, name: str, params: dict, parallelism: int | None = None) -> list[CheckReport]:
        """Her üye bir kez, suite sırasıyla; üye hataları başarısız rapora dönüşür."""
        if name not in Suite.values:
            raise UsageError(f"unknown suite {name!r}; known: {', '.join(Suite.values)}")
        jobs = [(str(statement), params) for statement in SUITES[Suite(name)]]
        workers = parallelism or SystemSetting.get("PARALLELISM", default=1)
        if workers > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                reports = list(pool.map(_run_member, jobs))
        else:
            reports = [_run_member(job) for job in jobs]
        logger.info(
            "suite %s: %s/%s passed", name, sum(report.passed for report in reports), len(reports)
        )
        return reports


def _run_member(job) -> CheckReport:
    statement, params = job
    started = time.perf_counter()
    try:
        return VerifierService.run_statement(statement, params)
    except CrysredError as exc:
        logger.debug("suite member %s failed: %s", statement, exc)
        error = {"error": type(exc).__name__, "detail": str(exc)}
    except Exception as exc:
        logger.exception("suite member %s failed unexpectedly", statement)
        error = {"error": type(exc).__name__, "detail": str(exc)}
    return VerifierService._report(statement, params, started, error)
