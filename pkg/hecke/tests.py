import random

from django.test import SimpleTestCase, override_settings

from core.exceptions import DomainError, HypothesisError, RingMismatch
from induction.models import CosetRep, InductionElement
from induction.services import InductionService, Reduction
from padic.models import RamifiedElement
from padic.services import PadicService
from polymod.models import CoefficientRing, HomogPoly, Mat2
from polymod.services import PolyService
from .models import Branch, HeckeContext, ThetaWitness
from .services import HeckeService


def element_a(p, e, precision, digits):
    return RamifiedElement.from_coefficients(p, e, precision, digits)


def expand_by_matrices(E: InductionElement) -> InductionElement:
    """Tanımdaki formül; Mat2 çarpımları ve canonicalize üzerinden."""
    ring, p = E.ring, E.ring.p
    x, px = HomogPoly.linear(ring, 1, 0), HomogPoly.linear(ring, p, 0)
    y = HomogPoly.linear(ring, 0, 1)
    terms = []
    for rep, v in E.terms:
        g = InductionService.matrix_of(rep, ring, guard=8)
        for lam in range(p):
            lift = PadicService.teichmuller(lam, p, 40)
            w = HomogPoly.linear(ring, -ring.teichmuller(lam), p)
            terms.append((g @ Mat2.upper(p, lift), PolyService.substitute_pair(v, x, w)))
        terms.append((g @ Mat2.diagonal(1, p), PolyService.substitute_pair(v, px, y)))
    return InductionService.from_terms(ring, E.degree, terms)


class SymmPMinusTwoTests(SimpleTestCase):
    def test_T_on_lowest_weight_vector(self):
        for p in (3, 5, 7):
            field = CoefficientRing.prime_field(p)
            X = HomogPoly.monomial(field, p - 2, 0)
            image = HeckeService.apply_T(InductionElement.single(CosetRep.identity(), X))
            expected = InductionElement.zero(field, p - 2)
            for mu in range(p):
                expected = expected + InductionElement.single(CosetRep(1, 0, (mu,)), X)
            self.assertEqual(image, expected)

    def test_T_squared(self):
        for p in (3, 5):
            field = CoefficientRing.prime_field(p)
            X = HomogPoly.monomial(field, p - 2, 0)
            image = HeckeService.apply_T_power(InductionElement.single(CosetRep.identity(), X), 2)
            # (p², p[μ] + [λ]; 0, 1) stores λ at position 0
            expected = InductionElement.zero(field, p - 2)
            for lam in range(p):
                for mu in range(p):
                    expected = expected + InductionElement.single(CosetRep(2, 0, (lam, mu)), X)
            self.assertEqual(image, expected)
            self.assertEqual(len(image.terms), p * p)


class ApplyTTests(SimpleTestCase):
    def setUp(self):
        self.ring = CoefficientRing.integer_mod(3, 3)
        self.r = 7

    def test_on_y_r(self):
        y_r = HomogPoly.monomial(self.ring, self.r, self.r)
        image = HeckeService.apply_T(InductionElement.single(CosetRep.identity(), y_r))
        expected = InductionElement.single(CosetRep(-1), y_r)
        for lam in range(3):
            expected = expected + InductionElement.single(
                CosetRep(1, 0, (lam,)), PolyService.linear_power(self.ring, self.r, -self.ring.teichmuller(lam), 3)
            )
        self.assertEqual(image, expected)

    def test_zero(self):
        zero = InductionElement.zero(self.ring, self.r)
        self.assertTrue(HeckeService.apply_T(zero).is_zero())

    def test_linear(self):
        rng = random.Random(5)
        v = HomogPoly.from_values(self.ring, [rng.randrange(27) for _ in range(8)])
        w = HomogPoly.from_values(self.ring, [rng.randrange(27) for _ in range(8)])
        E = InductionElement.single(CosetRep(1, 0, (2,)), v)
        F = InductionElement.single(CosetRep(2, 0, (1, 1)), w)
        self.assertEqual(
            HeckeService.apply_T(E + F.scale(5)),
            HeckeService.apply_T(E) + HeckeService.apply_T(F).scale(5),
        )

    def test_agrees_with_matrix_expansion(self):
        rng = random.Random(11)
        ring = CoefficientRing.ramified(3, 2, 8)
        reps = [CosetRep.identity(), CosetRep(1, 0, (1,)), CosetRep(2, 0, (1, 2)), CosetRep(-1), CosetRep(0, -1, (2,))]
        for rep in reps:
            v = HomogPoly.from_values(ring, [rng.randrange(81) for _ in range(self.r + 1)])
            E = InductionElement.single(rep, v)
            self.assertEqual(HeckeService.apply_T(E), expand_by_matrices(E))

    def test_independent_of_representative(self):
        rng = random.Random(12)
        ring = CoefficientRing.ramified(3, 2, 8)
        g = InductionService.matrix_of(CosetRep(1, 0, (2,)), ring, guard=8)
        kappa = Mat2(4, 7, 3, 2)
        v = HomogPoly.from_values(ring, [rng.randrange(81) for _ in range(self.r + 1)])
        zero = InductionElement.zero(ring, self.r)
        self.assertEqual(
            HeckeService.apply_T(InductionService.insert_term(zero, g @ kappa, v)),
            expand_by_matrices(InductionService.insert_term(zero, g, PolyService.act(kappa, v))),
        )

    def test_commutes_with_reduction(self):
        rng = random.Random(13)
        ring = CoefficientRing.ramified(5, 2, 6)
        r = 9
        E = InductionElement.zero(ring, r)
        for rep in (CosetRep.identity(), CosetRep(1, 0, (3,)), CosetRep(-1)):
            E = E + InductionElement.single(rep, HomogPoly.from_values(ring, [rng.randrange(125) for _ in range(r + 1)]))
        self.assertEqual(
            InductionService.map_coefficients(HeckeService.apply_T(E), Reduction.MOD_PI),
            HeckeService.apply_T(InductionService.map_coefficients(E, Reduction.MOD_PI)),
        )


class ContextTests(SimpleTestCase):
    def test_depths_for_uniformizer(self):
        ctx = HeckeService.context(7, element_a(3, 2, 10, [0, 1]))
        self.assertEqual(ctx.t, 1)
        self.assertEqual(ctx.t0, 2)
        self.assertEqual(ctx.branch, Branch.T)
        self.assertEqual((ctx.generator_modulus, ctx.xg_modulus, ctx.phi_modulus), (6, 4, 5))
        self.assertEqual(ctx.default_terms, 5)

    def test_depths_on_the_quadratic_branch(self):
        # a = (4 + 3π)π = 9 + 4π, a² − 21 = 108 + 72π
        ctx = HeckeService.context(7, element_a(3, 2, 10, [0, 4, 3]))
        self.assertEqual(ctx.discriminant.valuation().value, 2.5)
        self.assertEqual(ctx.branch, Branch.QUADRATIC)
        self.assertEqual((ctx.xg_modulus, ctx.phi_modulus), (5, 6))

    def test_slope_outside_range(self):
        with self.assertRaises(DomainError):
            HeckeService.context(7, element_a(3, 1, 4, [3]))
        with self.assertRaises(DomainError):
            HeckeService.context(7, element_a(3, 2, 8, [1]))

    def test_weight_hypotheses(self):
        with self.assertRaises(HypothesisError):
            HeckeService.context(8, element_a(3, 2, 10, [0, 1]))
        with self.assertRaises(HypothesisError):
            HeckeService.context(3, element_a(3, 2, 10, [0, 1]))

    @override_settings(CRYSRED={"PRECISION": 16})
    def test_configured_precision(self):
        self.assertEqual(HeckeService.default_precision(3, 7, 2), 16)

    def test_derived_precision(self):
        self.assertEqual(HeckeService.default_precision(3, 7, 2), 10)
        self.assertEqual(HeckeService.default_precision(3, 19, 2), 12)


class PhiTests(SimpleTestCase):
    def setUp(self):
        self.ctx = HeckeService.context(7, element_a(3, 2, 10, [0, 1]))

    def test_phi_g_needs_enough_terms(self):
        HeckeService.build_phi_g(self.ctx, CosetRep.identity(), 5)
        with self.assertRaises(HypothesisError):
            HeckeService.build_phi_g(self.ctx, CosetRep.identity(), 4)

    def test_phi_g_first_term(self):
        phi = HeckeService.build_phi_g(self.ctx, CosetRep.identity())
        self.assertEqual(phi.as_dict()[CosetRep.identity()], HeckeService.generator_poly(self.ctx.ring, 7))
        self.assertEqual(len(phi.terms), self.ctx.default_terms + 1)

    def test_phi_g_from_matrix_matches_coset(self):
        ring = self.ctx.ring
        g = InductionService.matrix_of(CosetRep(1, 0, (1,)), ring, guard=8)
        self.assertEqual(
            HeckeService.build_phi_g(self.ctx, g),
            HeckeService.build_phi_g(self.ctx, CosetRep(1, 0, (1,))),
        )

    def test_identity_tail(self):
        ring = CoefficientRing.integer_mod(3, 3)
        # [0] = 0, [1] = 1, [2] ≡ −1 mod 27: x⁷ terimleri sadeleşir, y'nin tek kuvvetleri kalır
        total = HeckeService.teichmuller_power_sum(ring, 7)
        expected = [0] * 8
        for mu in (0, 1, -1):
            for i in range(8):
                expected[i] += PolyService.binomial(7, i) * mu ** (7 - i)
        self.assertEqual(total, HomogPoly.from_values(ring, expected))

    def test_power_sum_of_p_multiples(self):
        # Σ_μ([μ]px + y)^r ≡ p·y^r mod p^{t₁}
        ring = CoefficientRing.ramified(3, 2, self.ctx.phi_modulus)
        total = HomogPoly.zero(ring, 7)
        for mu in range(3):
            total = total + PolyService.linear_power(ring, 7, ring.teichmuller(mu) * 3, 1)
        self.assertEqual(total, HomogPoly.monomial(ring, 7, 7, 3))

    def test_higher_phi_blocks_vanish(self):
        # s ≥ 2 için a^{s−1}(a² − p) ≡ 0 mod p^{t₀}
        for digits in ([0, 1], [0, 4, 3], [0, 2]):
            ctx = HeckeService.context(7, element_a(3, 2, 10, digits))
            ring = CoefficientRing.ramified(3, 2, ctx.xg_modulus)
            a = ring.coerce(ctx.a)
            for s in range(2, 6):
                self.assertTrue((a ** (s - 1) * (a * a - 3)).is_zero())

    def test_scaling_a_rescales_a_blocks(self):
        ctx = self.ctx
        phi = HeckeService.build_phi(ctx)
        plain = HeckeService.build_phi_g(ctx, CosetRep.identity()).scale(-3)
        for mu in range(3):
            plain = plain + HeckeService.build_phi_g(ctx, CosetRep(1, 0, (mu,))).scale(ctx.a)
        tail = phi - plain
        self.assertEqual(tail.support(), [CosetRep.identity()])


class ThetaWitnessTests(SimpleTestCase):
    def test_integral_for_uniformizer(self):
        ctx = HeckeService.context(7, element_a(3, 2, 10, [0, 1]))
        witness = HeckeService.theta_kernel_witness(ctx)
        self.assertTrue(witness.integral)
        self.assertEqual(witness.shift, 4)
        self.assertEqual(witness.image.ring.precision, 6)

    def test_integral_on_quadratic_branch(self):
        ctx = HeckeService.context(7, element_a(3, 2, 10, [0, 4, 3]))
        witness = HeckeService.theta_kernel_witness(ctx)
        self.assertEqual(witness.shift, 5)
        self.assertFalse(witness.image.is_zero())
        self.assertTrue(witness.to_json()["integral"])

    def test_integral_reads_the_valuations(self):
        ring = CoefficientRing.ramified(3, 2, 10)
        E = InductionElement.single(CosetRep.identity(), HomogPoly.monomial(ring, 7, 0, ring.uniformizer()))
        self.assertTrue(ThetaWitness(E, 1, E).integral)
        self.assertFalse(ThetaWitness(E, 2, E).integral)
        body = ThetaWitness(E, 2, E).to_json()
        self.assertFalse(body["integral"])
        self.assertIsNone(body["image"])
        self.assertTrue(ThetaWitness(E, 5, InductionElement.zero(ring, 7)).integral)

    def test_T_minus_a_on_zero(self):
        ctx = HeckeService.context(7, element_a(3, 2, 10, [0, 1]))
        self.assertTrue(HeckeService.apply_T_minus_a(ctx, InductionElement.zero(ctx.ring, 7)).is_zero())

    def test_T_minus_a_matches_direct_expansion(self):
        ctx = HeckeService.context(7, element_a(3, 2, 10, [0, 1]))
        E = InductionElement.single(CosetRep.identity(), HeckeService.generator_poly(ctx.ring, 7))
        self.assertEqual(
            HeckeService.apply_T_minus_a(ctx, E),
            expand_by_matrices(E) - E.scale(ctx.ring.uniformizer()),
        )

    def test_ring_mismatch(self):
        ctx = HeckeService.context(7, element_a(3, 2, 10, [0, 1]))
        other = InductionElement.zero(CoefficientRing.ramified(3, 2, 8), 7)
        with self.assertRaises(RingMismatch):
            HeckeService.apply_T_minus_a(ctx, other)

    def test_context_without_a(self):
        ctx = HeckeContext(CoefficientRing.prime_field(3), 1)
        with self.assertRaises(HypothesisError):
            ctx.require_a()
