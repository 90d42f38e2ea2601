import random
from fractions import Fraction

from django.test import SimpleTestCase

from .exceptions import DomainError, PrecisionError
from .factoring import factor_over, root_enclosures, roots_in_field
from .fields import QQ_FIELD, FieldElement, FieldSpec, galois_conjugate
from .intervals import CertifiedReal
from .linalg import nullspace, rank
from .multivariate import MultiPolynomial
from .places import Place, abs_value, places_above, product_formula_terms, relevant_places
from .polynomials import Polynomial, rational_polynomial
from .quotient import QuotientRing
from .serializers import LaurentTailSerializer
from .series import LaurentTail, compose_series

Q2 = FieldSpec.quadratic(2)


def q(value):
    return FieldElement(Fraction(value))


class FieldElementTests(SimpleTestCase):
    def test_parse_and_render_quadratic(self):
        x = FieldElement.parse("3+2*sqrt(2)", Q2)
        self.assertEqual((x.a, x.b), (3, 2))
        self.assertEqual(str(x), "3+2*sqrt(2)")
        self.assertEqual(str(FieldElement.parse("-1/2*sqrt(2)", Q2)), "-1/2*sqrt(2)")

    def test_unit_coefficient_is_dropped(self):
        self.assertEqual(str(Q2.sqrt_d), "sqrt(2)")
        self.assertEqual(str(-Q2.sqrt_d), "-sqrt(2)")
        self.assertEqual(str(Q2.element(1, -1)), "1-sqrt(2)")
        self.assertEqual(FieldElement.parse(str(Q2.element(1, -1)), Q2), Q2.element(1, -1))

    def test_equality_respects_the_field(self):
        Q3 = FieldSpec.quadratic(3)
        self.assertNotEqual(Q2.element(1, 1), Q3.element(1, 1))
        self.assertEqual(Q2.element(5), Q3.element(5))
        self.assertEqual(Q2.element(5), q(5))

    def test_parse_rejects_other_radicand(self):
        with self.assertRaises(DomainError):
            FieldElement.parse("1+sqrt(3)", Q2)

    def test_arithmetic_is_exact(self):
        x = Q2.element(3, 2)
        y = Q2.element(3, -2)
        self.assertEqual(x * y, 1)
        self.assertEqual(x.inverse(), y)
        self.assertEqual((x / y) * y, x)
        self.assertEqual(x**-2 * x**2, 1)

    def test_galois_conjugate(self):
        self.assertEqual(galois_conjugate(Q2.element(3, 2)), Q2.element(3, -2))
        self.assertEqual(galois_conjugate(q(5)), q(5))
        self.assertEqual(galois_conjugate(Q2.element(0, Fraction(1, 2))), Q2.element(0, Fraction(-1, 2)))

    def test_field_validation(self):
        self.assertEqual(FieldSpec.parse("Q(sqrt(-1))").radicand, -1)
        with self.assertRaises(Exception):
            FieldSpec.quadratic(8)


class PlaceTests(SimpleTestCase):
    def test_abs_value_finite_places(self):
        two = places_above(QQ_FIELD, 2)[0]
        three = places_above(QQ_FIELD, 3)[0]
        self.assertEqual(abs_value(q(Fraction(1, 16)), two), 4)
        self.assertEqual(abs_value(q(7), three), 0)

    def test_abs_value_real_embedding(self):
        x = Q2.element(3, -2)
        value = abs_value(x, Place(None, 0, "", Q2))
        self.assertTrue(value.certainly_less(Fraction(-176, 100)))
        self.assertTrue(value.certainly_greater(Fraction(-177, 100)))

    def test_abs_value_of_zero(self):
        with self.assertRaises(DomainError):
            abs_value(q(0), places_above(QQ_FIELD, 2)[0])

    def test_splitting_types(self):
        self.assertEqual([str(v) for v in places_above(Q2, 7)], ["7:split0", "7:split1"])
        self.assertEqual([str(v) for v in places_above(Q2, 3)], ["3:inert"])
        self.assertEqual([str(v) for v in places_above(Q2, 2)], ["2:ram"])
        self.assertEqual(Place.parse("7:split1", Q2).index, 1)

    def test_relevant_places(self):
        f = rational_polynomial([1, 0, 1])
        self.assertEqual([str(v) for v in relevant_places(f, q(1))], ["inf:0"])
        f = rational_polynomial([0, "1/2", 1])
        self.assertEqual([str(v) for v in relevant_places(f, q("1/16"))], ["inf:0", "2"])
        f = rational_polynomial(["1/3", 0, 1])
        self.assertEqual([str(v) for v in relevant_places(f, q("1/2"))], ["inf:0", "2", "3"])

    def test_product_formula(self):
        rng = random.Random(5)
        for field in (QQ_FIELD, Q2):
            for _ in range(40):
                a = Fraction(rng.randint(-60, 60), rng.randint(1, 40))
                b = Fraction(rng.randint(-60, 60), rng.randint(1, 40)) if not field.is_rational else 0
                x = FieldElement(a, b, field)
                if not x:
                    continue
                finite, arch = product_formula_terms(x)
                total = arch
                for p, c in finite.items():
                    total = total + CertifiedReal.exact(p, 128).log() * c
                self.assertTrue(total.contains(0), f"product formula fails for {x}")

    def test_multiplicativity_at_split_places(self):
        rng = random.Random(11)
        for _ in range(30):
            x = Q2.element(rng.randint(1, 50), rng.randint(-50, 50))
            y = Q2.element(rng.randint(-50, 50), rng.randint(1, 50))
            for v in places_above(Q2, 7) + places_above(Q2, 2) + places_above(Q2, 3):
                self.assertEqual(abs_value(x * y, v), abs_value(x, v) + abs_value(y, v))


class SeriesTests(SimpleTestCase):
    def test_compose_identity_with_polynomial(self):
        s = LaurentTail.monomial(1, q(1), QQ_FIELD.zero)
        f = rational_polynomial([1, 0, 1])
        result = compose_series(s, f)
        self.assertTrue(result.is_exact)
        self.assertEqual(result.coefficients_down_to(0), [1, 0, 1])

    def test_compose_substitution(self):
        s = LaurentTail(1, [q(1), q(0), q("1/2")], None, QQ_FIELD.zero)
        result = compose_series(s, rational_polynomial([0, 0, 1]))
        self.assertEqual(result.coefficients_down_to(-3), [1, 0, 0, 0, Fraction(1, 2), 0])
        self.assertEqual(result.valid_to, -3)

    def test_compose_records_valid_order(self):
        s = LaurentTail(1, [q(1), q(0), q(1), q(0), q(0)], -3, QQ_FIELD.zero)
        result = compose_series(s, rational_polynomial([1, 0, 1]))
        self.assertEqual(result.valid_to, -7)
        self.assertEqual(result.coefficient(0), 1)
        self.assertEqual(result.coefficient(-2), 1)
        self.assertEqual(result.coefficient(-4), -1)
        self.assertEqual(result.coefficient(-6), 1)
        with self.assertRaises(PrecisionError):
            result.coefficient(-8)

    def test_products_commute_with_composition(self):
        rng = random.Random(3)
        zero = QQ_FIELD.zero
        for _ in range(10):
            s = LaurentTail(1, [q(rng.randint(1, 5))] + [q(rng.randint(-5, 5)) for _ in range(5)], -4, zero)
            t = LaurentTail(0, [q(rng.randint(1, 5))] + [q(rng.randint(-5, 5)) for _ in range(5)], -5, zero)
            f = rational_polynomial([rng.randint(-3, 3), rng.randint(-3, 3), 1])
            product = s * t
            self.assertEqual(product.top, 1)
            lhs = compose_series(product, f)
            rhs = compose_series(s, f) * compose_series(t, f)
            self.assertTrue(lhs.agrees_with(rhs))

    def test_serializer(self):
        s = LaurentTail(1, [q(1), q(0), q("1/2")], -2, QQ_FIELD.zero)
        data = LaurentTailSerializer(s).data
        self.assertEqual(data["top_exp"], 1)
        self.assertEqual(data["coeffs"], ["1", "0", "1/2", "0"])
        self.assertEqual(data["valid_order"], 4)


class PolynomialTests(SimpleTestCase):
    def test_division_and_gcd(self):
        f = rational_polynomial([-1, 0, 1])
        g = rational_polynomial([1, 1])
        quotient, remainder = divmod(f, g)
        self.assertEqual(quotient, rational_polynomial([-1, 1]))
        self.assertFalse(remainder)
        self.assertEqual(f.gcd(rational_polynomial([1, 2, 1])), g)

    def test_iterate_and_shift(self):
        f = rational_polynomial([1, 0, 1])
        self.assertEqual(f.iterate(2), rational_polynomial([2, 0, 2, 0, 1]))
        self.assertEqual(f.shift(1), rational_polynomial([2, 2, 1]))

    def test_factoring(self):
        f = rational_polynomial([-2, 0, 1])
        self.assertEqual(roots_in_field(f, QQ_FIELD), [])
        roots = sorted(str(r) for r, _ in roots_in_field(f.map_coeffs(lambda c: c.promote(Q2)), Q2))
        self.assertEqual(roots, ["-sqrt(2)", "sqrt(2)"])
        self.assertEqual(len(factor_over(rational_polynomial([0, -1, 0, 1]), QQ_FIELD)), 3)

    def test_complex_root_enclosures(self):
        boxes = root_enclosures(rational_polynomial([1, 0, 1]), 10)
        self.assertTrue(boxes)
        for (re_lo, re_hi), (im_lo, im_hi) in boxes:
            self.assertLessEqual(re_lo, 0)
            self.assertGreaterEqual(re_hi, 0)
            self.assertTrue(im_lo <= 1 <= im_hi or im_lo <= -1 <= im_hi)
            self.assertLess(im_hi - im_lo, 1)

    def test_quotient_ring(self):
        ring = QuotientRing(rational_polynomial([-2, 0, 1]))
        t = ring.generator
        self.assertEqual(t * t, 2)
        self.assertEqual((t + 1) * (t + 1).inverse(), 1)


class LinearAlgebraTests(SimpleTestCase):
    def test_nullspace(self):
        rows = [[q(1), q(2), q(3)], [q(2), q(4), q(6)]]
        basis = nullspace(rows, 3, QQ_FIELD.zero)
        self.assertEqual(len(basis), 2)
        for vector in basis:
            for row in rows:
                self.assertEqual(sum((a * b for a, b in zip(row, vector)), QQ_FIELD.zero), 0)
        self.assertEqual(rank(rows, 3, QQ_FIELD.zero), 1)

    def test_multivariate_divisibility(self):
        zero = QQ_FIELD.zero
        x = MultiPolynomial.variable(0, 2, zero)
        y = MultiPolynomial.variable(1, 2, zero)
        curve = y - (x * x + 1)
        image = (y * y + 1) - ((x * x + 1) ** 2 + 1)
        self.assertTrue(curve.divides(image))
        self.assertFalse(curve.divides(y - x))
