import itertools
import random

from django.test import SimpleTestCase

from core.exceptions import HypothesisError, PrecisionError, RingMismatch
from padic.models import PadicInt
from .models import CoefficientRing, HomogPoly, Mat2
from .services import PolyService


def gl2(p: int):
    for a, b, c, d in itertools.product(range(p), repeat=4):
        if (a * d - b * c) % p:
            yield Mat2(a, b, c, d)


class BinomialRowTests(SimpleTestCase):
    def test_small_row(self):
        self.assertEqual(PolyService.binomial_row(7), (1, 7, 21, 35, 35, 21, 7, 1))

    def test_row_sums(self):
        for n in (0, 1, 10, 64):
            self.assertEqual(sum(PolyService.binomial_row(n)), 2**n)

    def test_outside_range_is_zero(self):
        self.assertEqual(PolyService.binomial(5, 7), 0)


class CoefficientRingTests(SimpleTestCase):
    def test_coerce_requires_precision(self):
        ring = CoefficientRing.integer_mod(5, 4)
        with self.assertRaises(PrecisionError):
            ring.coerce(PadicInt(5, 2, 7))
        self.assertEqual(ring.coerce(PadicInt(5, 6, 7)).coeffs, (7,))

    def test_teichmuller_in_ramified_ring(self):
        ring = CoefficientRing.ramified(3, 2, 6)
        self.assertEqual(ring.teichmuller(2).coeffs, (26, 0))

    def test_ring_mismatch(self):
        f = HomogPoly.monomial(CoefficientRing.integer_mod(3, 3), 2, 0)
        g = HomogPoly.monomial(CoefficientRing.integer_mod(3, 4), 2, 0)
        with self.assertRaises(RingMismatch):
            f + g


class ActionTests(SimpleTestCase):
    def setUp(self):
        self.ring = CoefficientRing.integer_mod(3, 3)
        self.r = 7

    def test_identity(self):
        f = HomogPoly.from_values(self.ring, range(1, 9))
        self.assertEqual(PolyService.act(Mat2.identity(), f), f)

    def test_diagonal_p(self):
        for i in range(self.r + 1):
            f = HomogPoly.monomial(self.ring, self.r, i)
            expected = HomogPoly.monomial(self.ring, self.r, i, 3 ** (self.r - i))
            self.assertEqual(PolyService.act(Mat2.diagonal(3, 1), f), expected)

    def test_first_congruence_shape(self):
        r = self.r
        f = HomogPoly.monomial(self.ring, r, r) - HomogPoly.monomial(self.ring, r, 1)
        image = PolyService.substitute_pair(
            f, HomogPoly.linear(self.ring, 1, 0), HomogPoly.linear(self.ring, -1, 3)
        )
        self.assertEqual(image, HomogPoly.monomial(self.ring, r, 1, 18))

    def test_binomial_tail_vanishes(self):
        r = self.r
        image = PolyService.substitute_pair(
            HomogPoly.monomial(self.ring, r, r),
            HomogPoly.linear(self.ring, 1, 0),
            HomogPoly.linear(self.ring, -1, 3),
        )
        self.assertEqual(image.to_json(), [26, 21, 0, 0, 0, 0, 0, 0])

    def test_non_invertible_substitution(self):
        r = self.r
        f = HomogPoly.monomial(self.ring, r, 1)
        image = PolyService.substitute_pair(f, HomogPoly.linear(self.ring, 3, 0), HomogPoly.linear(self.ring, 0, 1))
        self.assertEqual(image, HomogPoly.monomial(self.ring, r, 1, 3 ** (r - 1)))

    def test_substitute_identity_forms(self):
        f = HomogPoly.from_values(self.ring, [5, 0, 2, 9, 1, 0, 0, 4])
        x, y = HomogPoly.linear(self.ring, 1, 0), HomogPoly.linear(self.ring, 0, 1)
        self.assertEqual(PolyService.substitute_pair(f, x, y), f)

    def test_monoid_law(self):
        rng = random.Random(7)
        ring = CoefficientRing.ramified(5, 2, 8)
        for _ in range(25):
            m1 = Mat2(*(rng.randrange(125) for _ in range(4)))
            m2 = Mat2(*(rng.randrange(125) for _ in range(4)))
            f = HomogPoly.from_values(ring, [rng.randrange(625) for _ in range(6)])
            self.assertEqual(
                PolyService.act(m1, PolyService.act(m2, f)),
                PolyService.act(m1 @ m2, f),
            )

    def test_linearity(self):
        rng = random.Random(8)
        m = Mat2(2, 7, 3, 1)
        f = HomogPoly.from_values(self.ring, [rng.randrange(27) for _ in range(8)])
        g = HomogPoly.from_values(self.ring, [rng.randrange(27) for _ in range(8)])
        self.assertEqual(
            PolyService.act(m, f + g.scale(4)),
            PolyService.act(m, f) + PolyService.act(m, g).scale(4),
        )

    def test_reduction_commutes_with_action(self):
        rng = random.Random(9)
        for _ in range(20):
            m = Mat2(*(rng.randrange(27) for _ in range(4)))
            f = HomogPoly.from_values(self.ring, [rng.randrange(27) for _ in range(8)])
            self.assertEqual(
                PolyService.reduce_mod_pi(PolyService.act(m, f)),
                PolyService.act(m, PolyService.reduce_mod_pi(f)),
            )


class PsiTests(SimpleTestCase):
    def test_values_on_monomials(self):
        for p, r in ((3, 7), (3, 9), (5, 9), (5, 21), (7, 13)):
            field = CoefficientRing.prime_field(p)
            zero = HomogPoly.zero(field, p - 2)
            self.assertEqual(PolyService.psi(HomogPoly.monomial(field, r, r)), zero)
            self.assertEqual(PolyService.psi(HomogPoly.monomial(field, r, 0)), zero)
            self.assertEqual(
                PolyService.psi(HomogPoly.monomial(field, r, 1)),
                HomogPoly.monomial(field, p - 2, 0),
            )

    def test_hypothesis(self):
        field = CoefficientRing.prime_field(5)
        with self.assertRaises(HypothesisError):
            PolyService.psi(HomogPoly.monomial(field, 7, 0))

    def test_equivariance_exhaustive_p3(self):
        field = CoefficientRing.prime_field(3)
        r = 7
        for g in gl2(3):
            det = g.det() % 3
            for i in range(r + 1):
                f = HomogPoly.monomial(field, r, i)
                self.assertEqual(
                    PolyService.psi(PolyService.act(g, f)),
                    PolyService.act(g, PolyService.psi(f)).scale(det),
                )

    def test_equivariance_sampled(self):
        rng = random.Random(20240611)
        for p, r in ((5, 9), (7, 13)):
            field = CoefficientRing.prime_field(p)
            group = list(gl2(p))
            for _ in range(15):
                g = rng.choice(group)
                f = HomogPoly.from_values(field, [rng.randrange(p) for _ in range(r + 1)])
                self.assertEqual(
                    PolyService.psi(PolyService.act(g, f)),
                    PolyService.act(g, PolyService.psi(f)).scale(g.det() % p),
                )
