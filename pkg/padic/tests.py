import random
from fractions import Fraction

from django.test import SimpleTestCase

from core.exceptions import DomainError, NonUnit, PrecisionError, RingMismatch
from .models import ExtValuation, Ordering, PadicInt, RamifiedElement
from .services import PadicService


def random_unit(rng: random.Random, p: int, e: int, precision: int) -> RamifiedElement:
    coeffs = [rng.randrange(p**4) for _ in range(e)]
    coeffs[0] = rng.randrange(1, p) + p * rng.randrange(p**3)
    return RamifiedElement.from_coefficients(p, e, precision, coeffs)


class ValIntTests(SimpleTestCase):
    def test_zero_is_infinite(self):
        v = PadicService.val_int(0, 3)
        self.assertTrue(v.is_infinite)
        self.assertTrue(v.exact)

    def test_values(self):
        self.assertEqual(PadicService.val_int(3, 3), ExtValuation.finite(1))
        self.assertEqual(PadicService.val_int(108, 3), ExtValuation.finite(3))
        self.assertEqual(PadicService.val_int(-18, 3), ExtValuation.finite(2))

    def test_rejects_even_prime(self):
        with self.assertRaises(DomainError):
            PadicService.val_int(4, 2)


class TeichmullerTests(SimpleTestCase):
    def test_fixed_points(self):
        self.assertEqual(PadicService.teichmuller(0, 5, 4).value, 0)
        self.assertEqual(PadicService.teichmuller(1, 5, 4).value, 1)

    def test_small_lifts(self):
        self.assertEqual(PadicService.teichmuller(2, 3, 2).value, 8)
        self.assertEqual(PadicService.teichmuller(2, 5, 2).value, 7)

    def test_lift_is_root_of_unity(self):
        for p in (3, 5, 7, 11):
            for lam in range(1, p):
                lift = PadicService.teichmuller(lam, p, 6)
                self.assertEqual(lift**p, lift)
                self.assertEqual((lift ** (p - 1)).value, 1)
                self.assertEqual(lift.value % p, lam)

    def test_negated_ratio_permutes_lifts(self):
        p, N = 7, 5
        lifts = {PadicService.teichmuller(mu, p, N).value for mu in range(p)}
        for lam in range(1, p):
            inverse = PadicService.teichmuller(lam, p, N).invert()
            image = {(-(PadicService.teichmuller(mu, p, N) * inverse)).value for mu in range(p)}
            self.assertEqual(image, lifts)

    def test_digits_reconstruct_value(self):
        p, count = 5, 4
        value = 3 + 4 * 5 + 2 * 25 + 1 * 125
        digits = PadicService.teichmuller_digits(value, p, count)
        total = sum(PadicService.teichmuller(d, p, count).value * p**j for j, d in enumerate(digits))
        self.assertEqual(total % p**count, value)


class RamifiedArithmeticTests(SimpleTestCase):
    def test_pi_squared_is_p(self):
        pi = RamifiedElement.uniformizer(3, 2, 10)
        self.assertEqual(PadicService.ram_arith(pi, pi, "mul").coeffs, (3, 0))

    def test_square_of_four_plus_three_pi(self):
        x = RamifiedElement.from_coefficients(3, 2, 12, [4, 3])
        self.assertEqual(PadicService.ram_arith(x, x, "mul").coeffs, (43, 24))

    def test_additive_identity(self):
        x = RamifiedElement.from_coefficients(3, 2, 12, [4, 3])
        zero = RamifiedElement.from_int(3, 2, 12, 0)
        self.assertEqual(PadicService.ram_arith(x, zero, "add"), x)

    def test_mismatched_rings(self):
        x = RamifiedElement.from_int(3, 2, 8, 1)
        y = RamifiedElement.from_int(3, 3, 8, 1)
        with self.assertRaises(RingMismatch):
            PadicService.ram_arith(x, y, "add")

    def test_precision_is_min_of_operands(self):
        x = RamifiedElement.from_int(5, 2, 8, 1)
        y = RamifiedElement.from_int(5, 2, 5, 2)
        self.assertEqual((x * y).precision, 5)

    def test_padic_int_agrees_with_unramified_element(self):
        a = PadicInt(5, 4, 123)
        b = PadicInt(5, 4, 77)
        x = RamifiedElement.from_int(5, 1, 4, 123)
        y = RamifiedElement.from_int(5, 1, 4, 77)
        self.assertEqual((a * b).value, (x * y).coeffs[0])
        self.assertEqual((a - b).value, (x - y).coeffs[0])


class ValuationTests(SimpleTestCase):
    def test_uniformizer(self):
        pi = RamifiedElement.uniformizer(3, 2, 10)
        self.assertEqual(PadicService.ram_valuation(pi), ExtValuation.finite(1, 2))

    def test_mixed_digits(self):
        x = RamifiedElement.from_coefficients(3, 2, 12, [108, 72])
        self.assertEqual(PadicService.ram_valuation(x), ExtValuation.finite(5, 2))

    def test_zero_is_inexact_bound(self):
        v = RamifiedElement.from_int(3, 2, 7, 0).valuation()
        self.assertFalse(v.exact)
        self.assertEqual(v.value, Fraction(7, 2))

    def test_raising_precision_keeps_exact_valuation(self):
        low = RamifiedElement.from_coefficients(3, 2, 6, [108, 72])
        high = RamifiedElement.from_coefficients(3, 2, 14, [108, 72])
        self.assertEqual(low.valuation(), high.valuation())
        self.assertEqual(high.with_precision(6), low)


class CompareValuationsTests(SimpleTestCase):
    def test_equal_exact(self):
        v = ExtValuation.finite(5, 2)
        self.assertEqual(PadicService.compare_valuations(v, v), Ordering.EQUAL)

    def test_exact_below_bound(self):
        self.assertEqual(
            PadicService.compare_valuations(ExtValuation.finite(1), ExtValuation.bound(3)),
            Ordering.LESS,
        )
        self.assertEqual(
            PadicService.compare_valuations(ExtValuation.bound(3), ExtValuation.finite(1)),
            Ordering.GREATER,
        )

    def test_bound_cannot_separate(self):
        with self.assertRaises(PrecisionError):
            PadicService.compare_valuations(ExtValuation.bound(2), ExtValuation.finite(5, 2))

    def test_two_bounds_refused(self):
        with self.assertRaises(PrecisionError):
            PadicService.compare_valuations(ExtValuation.bound(2), ExtValuation.bound(3))

    def test_infinity_is_greatest(self):
        self.assertEqual(
            PadicService.compare_valuations(ExtValuation.infinity(), ExtValuation.finite(100)),
            Ordering.GREATER,
        )

    def test_valuation_at_least(self):
        self.assertTrue(PadicService.valuation_at_least(ExtValuation.bound(3), 2))
        self.assertTrue(PadicService.valuation_at_least(ExtValuation.finite(5, 2), Fraction(5, 2)))
        self.assertFalse(PadicService.valuation_at_least(ExtValuation.finite(2), Fraction(5, 2)))
        with self.assertRaises(PrecisionError):
            PadicService.valuation_at_least(ExtValuation.bound(2), Fraction(5, 2))


class InvertAndResidueTests(SimpleTestCase):
    def test_invert_one(self):
        one = RamifiedElement.from_int(3, 2, 9, 1)
        self.assertEqual(PadicService.ram_invert_unit(one), one)

    def test_invert_unit_in_o2(self):
        x = RamifiedElement.from_coefficients(3, 2, 11, [8, 6])
        product = x * PadicService.ram_invert_unit(x)
        self.assertEqual(product, RamifiedElement.from_int(3, 2, 11, 1))

    def test_invert_two_mod_27(self):
        x = RamifiedElement.from_int(3, 1, 3, 2)
        self.assertEqual(PadicService.ram_invert_unit(x).coeffs, (14,))

    def test_invert_non_unit(self):
        with self.assertRaises(NonUnit):
            PadicService.ram_invert_unit(RamifiedElement.uniformizer(3, 2, 8))

    def test_invert_vanished(self):
        with self.assertRaises(PrecisionError):
            PadicService.ram_invert_unit(RamifiedElement.from_int(3, 2, 8, 0))

    def test_residue_of_uniformizer(self):
        self.assertEqual(PadicService.residue(RamifiedElement.uniformizer(5, 2, 6)), 0)

    def test_residue_of_quotient(self):
        x = RamifiedElement.from_coefficients(3, 2, 10, [-8, -4])
        y = RamifiedElement.from_coefficients(3, 2, 10, [8, 6])
        self.assertEqual(PadicService.residue(PadicService.ram_divide(x, y)), 2)

    def test_residue_of_one_plus_p(self):
        x = RamifiedElement.from_coefficients(7, 3, 9, [1 + 7 * 5, 2, 3])
        self.assertEqual(PadicService.residue(x), 1)

    def test_divide_shifts_out_valuation(self):
        p, e, P = 3, 2, 12
        a = RamifiedElement.from_coefficients(p, e, P, [0, 4, 3])
        quotient = PadicService.ram_divide(a * a, a)
        self.assertEqual(quotient, a.with_precision(quotient.precision))

    def test_divide_rejects_non_integral(self):
        pi = RamifiedElement.uniformizer(3, 2, 8)
        one = RamifiedElement.from_int(3, 2, 8, 1)
        with self.assertRaises(DomainError):
            PadicService.ram_divide(one, pi)


class ShiftAndEmbedTests(SimpleTestCase):
    def test_shift_round_trip(self):
        x = RamifiedElement.from_coefficients(5, 3, 9, [2, 1, 4])
        shifted = x.shift(4)
        self.assertEqual(shifted.precision, 13)
        self.assertEqual(shifted.shift(-4), x)

    def test_shift_down_needs_divisibility(self):
        with self.assertRaises(DomainError):
            RamifiedElement.from_int(5, 2, 6, 1).shift(-1)

    def test_embed_keeps_valuation(self):
        x = RamifiedElement.from_coefficients(3, 2, 10, [3, 2])
        embedded = x.embed(4)
        self.assertEqual(embedded.e, 4)
        self.assertEqual(embedded.valuation(), x.valuation())
        pi2 = RamifiedElement.uniformizer(3, 2, 10).embed(4)
        pi4 = RamifiedElement.uniformizer(3, 4, 20)
        self.assertEqual(pi2, pi4 * pi4)

    def test_sqrt_unit_times_p(self):
        root = PadicService.sqrt_unit_times_p(9, 5, 10)
        self.assertEqual(root * root, RamifiedElement.from_int(5, 2, 10, 45))
        root = PadicService.sqrt_unit_times_p(6, 5, 12)
        self.assertEqual(root * root, RamifiedElement.from_int(5, 2, 12, 30))

    def test_sqrt_of_non_residue(self):
        with self.assertRaises(DomainError):
            PadicService.sqrt_unit_times_p(2, 5, 8)


class RandomisedKernelTests(SimpleTestCase):
    """Küçük asallar ve dallanma için O_e üzerinde seed'li özellik kontrolleri."""

    CASES = 1000
    PRECISION = 24

    def setUp(self):
        self.rng = random.Random(20240611)

    def _sample(self):
        rng = self.rng
        p = rng.choice((3, 5, 7))
        e = rng.choice((1, 2, 3))
        x = random_unit(rng, p, e, self.PRECISION).shift(rng.randrange(6)).with_precision(self.PRECISION)
        y = random_unit(rng, p, e, self.PRECISION).shift(rng.randrange(6)).with_precision(self.PRECISION)
        return p, e, x, y

    def test_valuation_is_multiplicative(self):
        for _ in range(self.CASES):
            _, _, x, y = self._sample()
            self.assertEqual((x * y).valuation(), x.valuation() + y.valuation())

    def test_ultrametric_inequality(self):
        for _ in range(self.CASES):
            _, _, x, y = self._sample()
            vx, vy = x.valuation().value, y.valuation().value
            total = (x + y).valuation()
            if vx != vy:
                self.assertEqual(total, ExtValuation.finite(min(vx, vy).numerator, min(vx, vy).denominator))
            else:
                self.assertTrue(PadicService.valuation_at_least(total, min(vx, vy)))

    def test_residue_of_teichmuller(self):
        for _ in range(self.CASES):
            p = self.rng.choice((3, 5, 7, 11))
            e = self.rng.choice((1, 2, 3))
            lam = self.rng.randrange(p)
            lift = PadicService.teichmuller(lam, p, 8)
            element = RamifiedElement.from_int(p, e, 8 * e, lift.value)
            self.assertEqual(PadicService.residue(element), lam)

    def test_inverse(self):
        for _ in range(self.CASES):
            p = self.rng.choice((3, 5, 7))
            e = self.rng.choice((1, 2, 3))
            x = random_unit(self.rng, p, e, self.PRECISION)
            one = RamifiedElement.from_int(p, e, self.PRECISION, 1)
            self.assertEqual(x * PadicService.ram_invert_unit(x), one)
