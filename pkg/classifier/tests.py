import random

from django.test import SimpleTestCase
from rest_framework.test import APIClient

from config.models import SystemSetting
from core.exceptions import DomainError, NonSquareCentre, PrecisionError, UsageError
from padic.services import PadicService
from .models import ASpec, Variant
from .services import ClassifierService


def spec(p, e, unit, shift=1):
    return ASpec(p, e, tuple(unit), shift)


class TExponentTests(SimpleTestCase):
    def test_examples(self):
        self.assertEqual(ClassifierService.t_exponent(3, 9), 2)
        self.assertEqual(ClassifierService.t_exponent(5, 11), 2)
        self.assertEqual(ClassifierService.t_exponent(5, 4), 3)

    def test_range(self):
        for p in (3, 5, 7, 11):
            for k in range(2, 60):
                self.assertIn(ClassifierService.t_exponent(p, k), range(1, p))

    def test_rejects_even_prime_and_small_weight(self):
        with self.assertRaises(DomainError):
            ClassifierService.t_exponent(2, 5)
        with self.assertRaises(DomainError):
            ClassifierService.t_exponent(5, 1)


class ASpecTests(SimpleTestCase):
    def test_parse(self):
        a = ASpec.parse(3, 2, "4,3", 1)
        self.assertEqual(a.unit, (4, 3))
        # (4 + 3π)π = 9 + 4π
        self.assertEqual(a.element(10).coeffs, (9, 4))

    def test_parse_rejects_garbage(self):
        with self.assertRaises(UsageError):
            ASpec.parse(3, 2, "4,x", 1)
        with self.assertRaises(UsageError):
            ASpec.parse(3, 2, "", 1)

    def test_valuation_from_non_unit_digits(self):
        self.assertEqual(ASpec(3, 2, (3, 1), 0).valuation(8).value, 0.5)


class ClassifyTests(SimpleTestCase):
    def test_uniformizer_is_irreducible(self):
        result = ClassifierService.classify(3, 9, spec(3, 2, [1]))
        self.assertEqual(result.variant, Variant.IRREDUCIBLE)
        self.assertEqual(result.t, 2)
        self.assertEqual(result.diagnostics["v_a2_minus_kp"]["value"], "2")
        self.assertIsNotNone(result.note)

    def test_tuned_point_is_reducible(self):
        result = ClassifierService.classify(3, 9, spec(3, 2, [4, 3]))
        self.assertEqual(result.variant, Variant.REDUCIBLE)
        self.assertEqual(result.trace, 2)
        self.assertEqual(result.to_json()["variant"], "reducible")

    def test_exact_root(self):
        # a = 3π, a² = 45 = (k − 2)p
        result = ClassifierService.classify(5, 11, spec(5, 2, [3]))
        self.assertEqual((result.variant, result.trace), (Variant.REDUCIBLE, 0))
        self.assertEqual(ClassifierService.classify(5, 11, spec(5, 2, [1])).key(), (Variant.IRREDUCIBLE, 2, None))

    def test_non_exceptional_weights(self):
        rng = random.Random(3)
        for k in (4, 5, 6, 8, 10, 12):
            for _ in range(5):
                a = spec(5, 2, [rng.randrange(1, 5), rng.randrange(5)])
                result = ClassifierService.classify(5, k, a)
                self.assertEqual(result.variant, Variant.IRREDUCIBLE)
                self.assertEqual(result.t, ClassifierService.t_exponent(5, k))
                self.assertIsNone(result.note)

    def test_slope_one_rejected(self):
        with self.assertRaises(DomainError):
            ClassifierService.classify(3, 9, spec(3, 1, [1]))
        with self.assertRaises(DomainError):
            ClassifierService.classify(3, 9, spec(3, 2, [1], shift=0))

    def test_weight_congruent_to_two_mod_p(self):
        rng = random.Random(20)
        for _ in range(20):
            e, shift = rng.choice([(2, 1), (3, 1), (3, 2)])
            a = spec(5, e, [rng.randrange(1, 5)] + [rng.randrange(5) for _ in range(e - 1)], shift)
            self.assertEqual(ClassifierService.classify(5, 7, a).variant, Variant.IRREDUCIBLE)

    def test_precision_monotone(self):
        points = [(3, 9, spec(3, 2, [4, 3])), (3, 9, spec(3, 2, [1])), (5, 11, spec(5, 2, [2])), (5, 11, spec(5, 2, [3]))]
        for p, k, a in points:
            low = ClassifierService.classify(p, k, a, precision=10)
            for precision in (20, 40):
                self.assertEqual(ClassifierService.classify(p, k, a, precision=precision).key(), low.key())

    def test_near_tie_raises(self):
        # k − 3 = 2·3⁵; a = √487·π çok basamakla, a² − 487·3 sınırın altında sıfırlanır
        k = 3 + 2 * 3**5
        s = PadicService.sqrt_unit_times_p(k - 2, 3, 40).coeffs[1]
        a = spec(3, 2, [s])
        with SystemSetting.overrides({"PRECISION_RETRY_FACTOR": 1}):
            with self.assertRaises(PrecisionError) as caught:
                ClassifierService.classify(3, k, a, precision=4)
        self.assertEqual(caught.exception.suggested_precision, 8)
        self.assertEqual(ClassifierService.classify(3, k, a, precision=16).variant, Variant.REDUCIBLE)


class ExceptionalDiscTests(SimpleTestCase):
    def test_centres_and_radius(self):
        discs = ClassifierService.exceptional_discs(5, 11)
        self.assertEqual(discs.radius_exponent, 1)
        self.assertEqual(discs.centres[0].coeffs, (0, 3))
        self.assertEqual(ClassifierService.exceptional_discs(3, 9).radius_exponent, 2)

    def test_no_discs(self):
        self.assertIsNone(ClassifierService.exceptional_discs(5, 7))
        self.assertIsNone(ClassifierService.exceptional_discs(5, 3))
        self.assertIsNone(ClassifierService.exceptional_discs(5, 12))

    def test_non_square_centre(self):
        # 13 ≡ 3, mod 5 kare değil
        discs = ClassifierService.exceptional_discs(5, 15)
        self.assertFalse(discs.square_centre)
        with self.assertRaises(NonSquareCentre) as caught:
            ClassifierService.exceptional_discs(5, 15, require_centres=True)
        self.assertEqual(caught.exception.discs, discs)

    def test_disc_membership_matches_classification(self):
        for p, k in ((5, 11), (3, 9)):
            rng = random.Random(p * 1000 + k)
            discs = ClassifierService.exceptional_discs(p, k, precision=24)
            s = discs.centres[0].coeffs[1]
            for _ in range(200):
                if rng.random() < 0.3:
                    unit = [rng.randrange(1, p), rng.randrange(p), rng.randrange(p)]
                else:
                    j = rng.randrange(2, 8)
                    sign = rng.choice((1, -1))
                    unit = [sign * s] + [0] * (j - 2) + [rng.randrange(1, p), rng.randrange(p)]
                a = spec(p, 2, unit)
                reducible = ClassifierService.classify(p, k, a).variant == Variant.REDUCIBLE
                self.assertEqual(reducible, ClassifierService.in_exceptional_disc(discs, a.element(16)), a)

    def test_membership_for_other_ramification(self):
        discs = ClassifierService.exceptional_discs(5, 11, precision=24)
        # v(a) = 1/3 hiçbir zaman ±3π'ye yakın değil
        self.assertFalse(ClassifierService.in_exceptional_disc(discs, spec(5, 3, [2]).element(12)))

    def test_non_square_condition_form(self):
        discs = ClassifierService.exceptional_discs(5, 15)
        rng = random.Random(15)
        for _ in range(20):
            a = spec(5, 2, [rng.randrange(1, 5), rng.randrange(5)])
            reducible = ClassifierService.classify(5, 15, a).variant == Variant.REDUCIBLE
            self.assertEqual(reducible, ClassifierService.in_exceptional_disc(discs, a.element(12)))


class SweepTests(SimpleTestCase):
    def test_uniformizer_multiples(self):
        table = ClassifierService.sweep(5, 11, [spec(5, 2, [u]) for u in range(1, 5)])
        self.assertEqual([row.status for row in table.rows], ["irreducible", "reducible", "reducible", "irreducible"])
        self.assertEqual(table.summary, {"irreducible": 2, "reducible": 2, "error": 0})

    def test_empty_grid(self):
        table = ClassifierService.sweep(5, 11, [])
        self.assertEqual(table.rows, ())
        self.assertEqual(table.to_json()["summary"], {"irreducible": 0, "reducible": 0, "error": 0})

    def test_errors_are_rows(self):
        table = ClassifierService.sweep(3, 9, [spec(3, 2, [1]), spec(3, 1, [1])])
        self.assertEqual(table.rows[0].status, "irreducible")
        self.assertEqual(table.rows[1].error["error"], "DomainError")
        self.assertEqual(table.summary["error"], 1)


class ClassifierApiTests(SimpleTestCase):
    def setUp(self):
        self.client = APIClient()

    def test_classify(self):
        response = self.client.post(
            "/api/classify/", {"p": 3, "k": 9, "e": 2, "unit": [4, 3], "shift": 1}, format="json"
        )
        self.assertEqual(response.status_code, 200)
        self.assertEqual(response.json()["variant"], "reducible")
        self.assertEqual(response.json()["trace"], 2)

    def test_domain_error(self):
        response = self.client.post("/api/classify/", {"p": 3, "k": 9, "e": 1, "unit": [1], "shift": 1}, format="json")
        self.assertEqual(response.status_code, 422)
        self.assertEqual(response.json()["error"], "DomainError")

    def test_bad_request(self):
        response = self.client.post("/api/classify/", {"p": 3, "k": 9, "unit": []}, format="json")
        self.assertEqual(response.status_code, 400)

    def test_sweep(self):
        response = self.client.post(
            "/api/sweep/", {"p": 5, "k": 11, "e": 2, "units": [[1], [2], [3], [4]], "shift": 1}, format="json"
        )
        self.assertEqual(response.status_code, 200)
        self.assertEqual(response.json()["summary"]["reducible"], 2)
