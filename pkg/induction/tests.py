import random

from django.test import SimpleTestCase

from core.exceptions import HypothesisError, PrecisionError, Singular
from padic.models import PadicInt
from padic.services import PadicService
from polymod.models import CoefficientRing, HomogPoly, Mat2
from polymod.services import PolyService
from .models import CosetRep, InductionElement
from .serializers import InductionElementSerializer, InductionTermSerializer, element_from_terms
from .services import InductionService, Reduction


def random_k(rng: random.Random, p: int) -> Mat2:
    while True:
        entries = [rng.randrange(p**5) for _ in range(4)]
        if (entries[0] * entries[3] - entries[1] * entries[2]) % p:
            return Mat2(*entries)


def teich(lam: int, p: int, N: int = 12) -> PadicInt:
    return PadicService.teichmuller(lam, p, N)


class CosetRepTests(SimpleTestCase):
    def test_build_is_canonical(self):
        self.assertEqual(CosetRep.build(2, 0, [1]), CosetRep(2, 0, (1, 0)))
        self.assertEqual(CosetRep.build(1, -2, [0, 0, 2, 2]), CosetRep(1, 0, (2,)))
        self.assertEqual(CosetRep.build(-1, -1, []), CosetRep(-1, 0, ()))
        self.assertEqual(CosetRep.build(0, -1, [2]), CosetRep(0, -1, (2,)))

    def test_step_appends_digit(self):
        rep = CosetRep.identity().step(1).step(2)
        self.assertEqual(rep, CosetRep(2, 0, (1, 2)))

    def test_down_drops_top_digit(self):
        rep, dropped = CosetRep(2, 0, (2, 1)).down()
        self.assertEqual(rep, CosetRep(1, 0, (2,)))
        self.assertEqual(dropped, 1)
        rep, dropped = CosetRep.identity().down()
        self.assertEqual((rep, dropped), (CosetRep(-1, 0, ()), 0))

    def test_step_below_zero(self):
        rep, _ = CosetRep.identity().down()
        self.assertEqual(rep.step(0), CosetRep.identity())
        self.assertEqual(rep.step(2), CosetRep(0, -1, (2,)))

    def test_sort_order(self):
        reps = [CosetRep(2, 0, (1, 0)), CosetRep(-1), CosetRep(1, 0, (2,)), CosetRep.identity()]
        self.assertEqual(sorted(reps)[0], CosetRep(-1))
        self.assertEqual(sorted(reps)[-1], CosetRep(2, 0, (1, 0)))


class CanonicalizeTests(SimpleTestCase):
    p = 3

    def test_diag_one_p(self):
        rep, kappa = InductionService.canonicalize(Mat2.diagonal(1, 3), 3, 4)
        self.assertEqual(rep, CosetRep(-1))
        self.assertEqual(kappa.scale, 1)
        self.assertEqual([x.value for x in kappa.entries], [1, 0, 0, 1])

    def test_single_step(self):
        for lam in range(3):
            rep, kappa = InductionService.canonicalize(Mat2.upper(3, teich(lam, 3)), 3, 4)
            self.assertEqual(rep, CosetRep(1, 0, (lam,)))
            self.assertEqual([x.value for x in kappa.entries], [1, 0, 0, 1])
            self.assertEqual(kappa.scale, 0)

    def test_product_of_steps(self):
        lam, mu = 1, 2
        g = Mat2.upper(3, teich(mu, 3)) @ Mat2.upper(3, teich(lam, 3))
        rep, _ = InductionService.canonicalize(g, 3, 4)
        # c = p[λ] + [μ]
        self.assertEqual(rep, CosetRep(2, 0, (mu, lam)))

    def test_idempotent_on_representatives(self):
        ring = CoefficientRing.ramified(5, 2, 8)
        for rep in (CosetRep.identity(), CosetRep(1, 0, (3,)), CosetRep(3, 0, (1, 0, 4)), CosetRep(-1), CosetRep(0, -1, (2,))):
            found, kappa = InductionService.canonicalize(InductionService.matrix_of(rep, ring), 5, ring.padic_digits)
            self.assertEqual(found, rep)
            self.assertEqual([x.value for x in kappa.entries], [1, 0, 0, 1])

    def test_step_and_down_agree_with_matrices(self):
        ring = CoefficientRing.ramified(3, 2, 8)
        p = 3
        for rep in (CosetRep.identity(), CosetRep(1, 0, (2,)), CosetRep(2, 0, (2, 1))):
            g = InductionService.matrix_of(rep, ring)
            for lam in range(p):
                found, _ = InductionService.canonicalize(g @ Mat2.upper(p, teich(lam, p, 20)), p, 4)
                self.assertEqual(found, rep.step(lam))
            found, kappa = InductionService.canonicalize(g @ Mat2.diagonal(1, p), p, 4)
            expected, dropped = rep.down()
            self.assertEqual(found, expected)
            self.assertEqual(kappa.scale, 1)
            self.assertEqual(kappa.b.value, teich(dropped, p, 4).value)

    def test_swap_branch(self):
        # sol alt girdi birim: sütunlar yer değiştirir
        rep, kappa = InductionService.canonicalize(Mat2(0, 1, 1, 0), 3, 4)
        self.assertEqual(rep, CosetRep.identity())
        self.assertEqual([x.value for x in kappa.entries], [0, 1, 1, 0])

    def test_singular(self):
        with self.assertRaises(Singular):
            InductionService.canonicalize(Mat2(1, 2, 0, 0), 3, 4)
        with self.assertRaises(Singular):
            InductionService.canonicalize(Mat2(1, 2, 2, 4), 3, 4)

    def test_undecidable_bottom_row(self):
        g = Mat2(PadicInt(3, 3, 1), PadicInt(3, 3, 0), PadicInt(3, 3, 0), PadicInt(3, 3, 0))
        with self.assertRaises(PrecisionError):
            InductionService.canonicalize(g, 3, 2)


class InsertTermTests(SimpleTestCase):
    def setUp(self):
        self.p, self.r = 3, 7
        self.ring = CoefficientRing.ramified(3, 2, 8)
        self.empty = InductionElement.zero(self.ring, self.r)

    def test_cancellation(self):
        g = Mat2.upper(9, 4)
        v = HomogPoly.from_values(self.ring, range(8))
        E = InductionService.insert_term(self.empty, g, v)
        E = InductionService.insert_term(E, g, -v)
        self.assertTrue(E.is_zero())

    def test_central_factor_acts_trivially(self):
        y_r = HomogPoly.monomial(self.ring, self.r, self.r)
        E = InductionService.insert_term(self.empty, Mat2.diagonal(1, 3), y_r)
        self.assertEqual(E.terms, ((CosetRep(-1), y_r),))

    def test_representative_independence(self):
        rng = random.Random(31)
        reps = [CosetRep.identity(), CosetRep(1, 0, (1,)), CosetRep(2, 0, (2, 1))]
        for _ in range(12):
            rep = rng.choice(reps)
            g = InductionService.matrix_of(rep, self.ring, guard=8)
            kappa = random_k(rng, self.p)
            v = HomogPoly.from_values(self.ring, [rng.randrange(81) for _ in range(self.r + 1)])
            self.assertEqual(
                InductionService.insert_term(self.empty, g @ kappa, v),
                InductionService.insert_term(self.empty, g, PolyService.act(kappa, v)),
            )

    def test_upper_unipotent_rewrite(self):
        v = HomogPoly.from_values(self.ring, [1, 0, 0, 0, 0, 0, 0, 2])
        g = Mat2.upper(3, teich(1, 3))
        k0 = Mat2(1, 5, 0, 1)
        left = InductionService.insert_term(self.empty, g @ k0, v)
        right = InductionService.insert_term(self.empty, g, PolyService.act(k0, v))
        self.assertEqual(left, right)
        self.assertEqual(left.support(), [CosetRep(1, 0, (1,))])


class CongruenceTests(SimpleTestCase):
    def setUp(self):
        self.ring = CoefficientRing.ramified(3, 2, 8)
        self.r = 7

    def element(self, rng):
        E = InductionElement.zero(self.ring, self.r)
        for rep in (CosetRep.identity(), CosetRep(1, 0, (2,)), CosetRep(-1)):
            v = HomogPoly.from_values(self.ring, [rng.randrange(81) for _ in range(self.r + 1)])
            E = E + InductionElement.single(rep, v)
        return E

    def test_reflexive(self):
        E = self.element(random.Random(1))
        for M in range(1, 9):
            self.assertTrue(InductionService.equal_mod(E, E, M))

    def test_high_power_vanishes(self):
        # t = v(7 − 1) = 1, dolayısıyla p^{t+2} = 27 = π^6
        E = InductionElement.single(CosetRep(1, 0, (1,)), HomogPoly.monomial(self.ring, self.r, 0, 27))
        zero = InductionElement.zero(self.ring, self.r)
        self.assertTrue(InductionService.equal_mod(E, zero, 6))
        self.assertFalse(InductionService.equal_mod(E, zero, 7))
        difference = InductionService.first_difference(E, zero, 7)
        self.assertEqual(difference.rep, CosetRep(1, 0, (1,)))
        self.assertEqual(difference.index, 0)

    def test_difference_against_zero(self):
        rng = random.Random(2)
        zero = InductionElement.zero(self.ring, self.r)
        for _ in range(10):
            E1, E2 = self.element(rng), self.element(rng)
            E2 = E1 + (E2 - E1).scale(rng.choice((1, 3, 9, 27)))
            for M in (1, 2, 4, 6):
                self.assertEqual(
                    InductionService.equal_mod(E1, E2, M),
                    InductionService.equal_mod(E1 - E2, zero, M),
                )

    def test_modulus_above_precision(self):
        E = self.element(random.Random(3))
        with self.assertRaises(PrecisionError):
            InductionService.equal_mod(E, E, 9)


class CoefficientMapTests(SimpleTestCase):
    def setUp(self):
        self.ring = CoefficientRing.ramified(3, 2, 8)
        self.r = 7

    def test_reduce_mod_p_kills_p_multiples(self):
        v = HomogPoly.from_values(self.ring, [3, 6, 0, 9, 0, 3, 3, 0])
        E = InductionElement.single(CosetRep(1, 0, (1,)), v)
        self.assertTrue(InductionService.map_coefficients(E, Reduction.MOD_P).is_zero())
        self.assertFalse(InductionService.map_coefficients(E, Reduction.MOD_PI, divide_by_pi=2).is_zero())

    def test_commutes_with_insert_term(self):
        rng = random.Random(4)
        field = CoefficientRing.prime_field(3)
        for _ in range(6):
            g = InductionService.matrix_of(CosetRep(2, 0, (1, 2)), self.ring, guard=8) @ random_k(rng, 3)
            v = HomogPoly.from_values(self.ring, [rng.randrange(81) for _ in range(self.r + 1)])
            lifted = InductionService.insert_term(InductionElement.zero(self.ring, self.r), g, v)
            reduced = InductionService.insert_term(InductionElement.zero(field, self.r), g, PolyService.reduce_mod_pi(v))
            self.assertEqual(InductionService.map_coefficients(lifted, Reduction.MOD_PI), reduced)

    def test_exact_division_then_reduction(self):
        pi = self.ring.uniformizer()
        v = HomogPoly.monomial(self.ring, self.r, 1, pi * pi * pi)
        E = InductionElement.single(CosetRep.identity(), v)
        reduced = InductionService.map_coefficients(E, Reduction.MOD_PI, divide_by_pi=3)
        field = CoefficientRing.prime_field(3)
        self.assertEqual(reduced, InductionElement.single(CosetRep.identity(), HomogPoly.monomial(field, self.r, 1)))


class PsiTermwiseTests(SimpleTestCase):
    def setUp(self):
        self.field = CoefficientRing.prime_field(5)
        self.r = 21

    def test_x_r_minus_one_y(self):
        E = InductionElement.single(CosetRep.identity(), HomogPoly.monomial(self.field, self.r, 1))
        image = InductionService.apply_psi_termwise(E)
        self.assertEqual(image, InductionElement.single(CosetRep.identity(), HomogPoly.monomial(self.field, 3, 0)))

    def test_y_r_contributes_nothing(self):
        E = InductionElement.single(CosetRep(1, 0, (4,)), HomogPoly.monomial(self.field, self.r, self.r))
        self.assertTrue(InductionService.apply_psi_termwise(E).is_zero())

    def test_hypothesis(self):
        E = InductionElement.single(CosetRep.identity(), HomogPoly.monomial(self.field, 5, 0))
        with self.assertRaises(HypothesisError):
            InductionService.apply_psi_termwise(E)


class SerializerTests(SimpleTestCase):
    def test_term_round_trip_through_json(self):
        ring = CoefficientRing.ramified(3, 2, 6)
        E = InductionElement.single(CosetRep(2, 0, (2, 1)), HomogPoly.monomial(ring, 3, 1, 4))
        data = InductionElementSerializer(E).data
        self.assertEqual(data["terms"][0]["c_digits"], [1, 2])
        self.assertEqual(data["terms"][0]["poly"], [[0, 0], [4, 0], [0, 0], [0, 0]])
        rebuilt = element_from_terms(ring, 3, [dict(term) for term in data["terms"]])
        self.assertEqual(rebuilt, E)

    def test_rejects_large_digits(self):
        serializer = InductionTermSerializer(data={"m": 1, "c_digits": [3], "poly": [1]}, context={"p": 3})
        self.assertFalse(serializer.is_valid())
        self.assertIn("c_digits", serializer.errors)

    def test_element_serializer_is_output_only(self):
        serializer = InductionElementSerializer()
        self.assertTrue(all(field.read_only for field in serializer.fields.values()))
        incoming = InductionElementSerializer(data={"ring": {"kind": "fp"}, "degree": 3, "terms": [{"m": 1}]})
        self.assertTrue(incoming.is_valid())
        self.assertEqual(incoming.validated_data, {})
