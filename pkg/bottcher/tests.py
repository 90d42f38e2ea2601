import random
from fractions import Fraction

from django.test import SimpleTestCase

from algebra.exceptions import ArgumentError, PreconditionError
from algebra.fields import QQ_FIELD, FieldElement
from algebra.intervals import CertifiedReal
from algebra.places import abs_value, archimedean_places, places_above

from .classify import MONOMIAL_TYPE, NONEXCEPTIONAL, chebyshev, chebyshev_identity_holds, classify_polynomial_type
from .escape import DiskCertifier, escape_radius
from .evaluation import evaluate_bottcher_arch
from .serializers import BottcherSeriesSerializer, EscapeRadiusSerializer, PolynomialTypeSerializer
from .series import compute_bottcher, leading_roots, semiconjugacy_residual, twist
from .systems import PolynomialSystem

INF = archimedean_places(QQ_FIELD)[0]
TWO = places_above(QQ_FIELD, 2)[0]


def system(*coeffs):
    return PolynomialSystem.from_coefficients(list(coeffs))


def q(value):
    return FieldElement(Fraction(value))


class BottcherSeriesTests(SimpleTestCase):
    def test_power_map_is_its_own_coordinate(self):
        for d in (2, 3, 4):
            result = compute_bottcher(system(*([0] * d + [1])), order=6)
            self.assertEqual(result.coefficients, [1, 0, 0, 0, 0, 0])

    def test_quadratic_series(self):
        result = compute_bottcher(system(1, 0, 1), order=5)
        self.assertEqual(result.coefficients, [1, 0, Fraction(1, 2), 0, Fraction(1, 8)])
        self.assertFalse(result.residual())

    def test_leading_coefficient_in_base_field(self):
        result = compute_bottcher(system(0, 0, 2), order=4)
        self.assertEqual(result.b1, 2)
        self.assertEqual(result.coefficients, [2, 0, 0, 0])

    def test_adjoined_leading_coefficient(self):
        f = system(1, 0, 0, 2)
        roots = leading_roots(f)
        self.assertEqual(len(roots), 1)
        self.assertTrue(roots[0].is_adjoined)
        result = compute_bottcher(f, order=4)
        self.assertEqual(result.b1**2, 2)
        self.assertTrue(result.verify())

    def test_order_too_small(self):
        with self.assertRaises(ArgumentError):
            compute_bottcher(system(1, 0, 1), order=1)

    def test_root_choice_twists_series(self):
        f = system(1, 1, 0, 1)
        first = compute_bottcher(f, order=6, root_choice=0)
        second = compute_bottcher(f, order=6, root_choice=1)
        self.assertEqual(first.b1, 1)
        self.assertEqual(second.b1, -1)
        self.assertTrue(twist(first, -1).agrees_with(second.series))
        again = compute_bottcher(f, order=6, root_choice=0)
        self.assertEqual(again.coefficients, first.coefficients)

    def test_random_monic_functional_equation(self):
        rng = random.Random(20)
        for _ in range(50):
            d = rng.randint(2, 4)
            coeffs = [rng.randint(-10, 10) for _ in range(d)] + [1]
            result = compute_bottcher(system(*coeffs), order=20)
            self.assertFalse(result.residual(), f"functional equation fails for {coeffs}")

    def test_semiconjugacy_by_f_itself(self):
        f = system(1, 0, 1)
        phi = compute_bottcher(f, order=16)
        self.assertEqual(semiconjugacy_residual(phi, phi, f.poly, 2), 1)

    def test_serializer(self):
        data = BottcherSeriesSerializer(compute_bottcher(system(1, 0, 1), order=4)).data
        self.assertEqual(data["b1"], "1")
        self.assertIsNone(data["modulus"])
        self.assertEqual(data["series"]["coeffs"], ["1", "0", "1/2", "0"])
        self.assertEqual(data["series"]["ring"], "Q")
        self.assertTrue(data["verified"])


class EscapeRadiusTests(SimpleTestCase):
    def test_finite_radius_of_power_map(self):
        self.assertEqual(escape_radius(system(0, 0, 1), TWO).log_bound, 0)

    def test_finite_radius_from_coefficients(self):
        escape = escape_radius(system(0, "1/2", 1), TWO)
        self.assertEqual(escape.log_bound, 1)
        self.assertTrue(escape.escapes(q("1/4")))
        self.assertFalse(escape.escapes(q("1/2")))
        data = EscapeRadiusSerializer(escape).data
        self.assertEqual(data["log_bound"], "1")
        self.assertEqual(data["place"], "2")

    def test_finite_escape_grows_exactly(self):
        f = system(0, "1/2", 1)
        escape = escape_radius(f, TWO)
        z = q("1/16")
        for _ in range(8):
            self.assertTrue(escape.escapes(z))
            self.assertEqual(abs_value(f(z), TWO), 2 * abs_value(z, TWO))
            z = f(z)

    def test_archimedean_radius(self):
        escape = escape_radius(system(1, 0, 1), INF)
        self.assertTrue(escape.bound.upper <= 2)
        self.assertTrue(escape.escapes(q(3)))
        self.assertFalse(escape.escapes(q(1)))

    def test_trapping_disk(self):
        f = system(0, "1/2", 1)
        disk = DiskCertifier(f, INF, 128).certify(q("1/16"))
        self.assertIsNotNone(disk)
        self.assertEqual(disk.center, 0)


class EvaluationTests(SimpleTestCase):
    def test_power_map_value_is_exact(self):
        result = evaluate_bottcher_arch(system(0, 0, 1), q(2), INF)
        self.assertEqual(result.exact, 2)
        self.assertEqual(result.shift, 1)
        self.assertTrue(result.log_modulus.contains(CertifiedReal.exact(2, 128).log()))
        self.assertTrue(result.value.real.contains(4))

    def test_bounded_orbit_is_rejected(self):
        with self.assertRaises(PreconditionError):
            evaluate_bottcher_arch(system(0, 0, 1), q("1/2"), INF)

    def test_value_radius(self):
        result = evaluate_bottcher_arch(system(1, 0, 1), q(1), INF)
        self.assertTrue(result.log_modulus.width_below(Fraction(1, 2**64)))
        self.assertTrue(result.log_modulus.certainly_greater(Fraction(4073, 10000)))
        self.assertTrue(result.log_modulus.certainly_less(Fraction(4074, 10000)))


class ClassificationTests(SimpleTestCase):
    def test_power_maps(self):
        self.assertEqual(classify_polynomial_type(system(0, 0, 0, 1)).kind, MONOMIAL_TYPE)
        shifted = PolynomialSystem(system(0, 0, 1).poly.shift(3) - 3)
        result = classify_polynomial_type(shifted)
        self.assertEqual(result.model, "power")
        self.assertEqual(result.center, -3)

    def test_chebyshev(self):
        result = classify_polynomial_type(system(-2, 0, 1))
        self.assertEqual(result.kind, MONOMIAL_TYPE)
        self.assertEqual(result.model, "chebyshev")
        self.assertTrue(result.identity_verified)
        cubic = classify_polynomial_type(PolynomialSystem(chebyshev(3, QQ_FIELD.zero, QQ_FIELD.one) * -1))
        self.assertEqual((cubic.model, cubic.sign), ("chebyshev", -1))

    def test_scaled_chebyshev(self):
        # 2z^2 - 1 is conjugate to z^2 - 2 by z -> 2z.
        self.assertEqual(classify_polynomial_type(system(-1, 0, 2)).model, "chebyshev")

    def test_nonexceptional(self):
        result = classify_polynomial_type(system(1, 0, 1))
        self.assertEqual(result.kind, NONEXCEPTIONAL)
        self.assertEqual(classify_polynomial_type(system(0, "1/2", 1)).kind, NONEXCEPTIONAL)
        data = PolynomialTypeSerializer(result).data
        self.assertEqual(data["kind"], "Nonexceptional")

    def test_chebyshev_identity(self):
        for d in range(2, 7):
            self.assertTrue(chebyshev_identity_holds(d, QQ_FIELD.zero, QQ_FIELD.one))
