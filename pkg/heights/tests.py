import random
from fractions import Fraction

from django.test import SimpleTestCase

from algebra.exceptions import PreconditionError
from algebra.fields import QQ_FIELD, FieldElement
from algebra.places import abs_value, archimedean_places, places_above
from bottcher.systems import PolynomialSystem

from .canonical import canonical_height
from .green import BOUNDED, ESCAPED_CERTIFIED, ESCAPED_EXACT, green_arch, green_nonarch, log_prime
from .naive import naive_height
from .orbits import (
    IN_T,
    NOT_IN_T,
    NOT_PREPERIODIC,
    PREPERIODIC,
    detect_preperiodic,
    in_T_d,
    liminf_diagnostic,
)
from .serializers import HeightValueSerializer, PreperiodicitySerializer

INF = archimedean_places(QQ_FIELD)[0]


def place(p):
    return places_above(QQ_FIELD, p)[0]


def system(*coeffs):
    return PolynomialSystem.from_coefficients(list(coeffs))


def q(value):
    return FieldElement(Fraction(value))


class GreenNonarchTests(SimpleTestCase):
    def test_example_pair_escapes_at_two(self):
        value = green_nonarch(system(0, "1/2", 1), q("1/16"), place(2))
        self.assertEqual(value.status, ESCAPED_EXACT)
        self.assertEqual(value.exact, 4)
        self.assertEqual(value.shift, 0)

    def test_power_map(self):
        value = green_nonarch(system(0, 0, 1), q("1/5"), place(5))
        self.assertEqual(value.status, ESCAPED_EXACT)
        self.assertEqual(value.exact, 1)

    def test_good_reduction_is_bounded(self):
        value = green_nonarch(system(1, 0, 1), q(1), place(3))
        self.assertEqual(value.status, BOUNDED)
        self.assertTrue(value.as_real(64).contains(0))

    def test_scaling_along_the_orbit(self):
        f = system(0, "1/2", 1)
        a = q("1/16")
        first = green_nonarch(f, a, place(2))
        second = green_nonarch(f, f(a), place(2))
        self.assertEqual(second.exact, 2 * first.exact)

    def test_random_values_match_exact_iteration(self):
        rng = random.Random(6)
        checked = 0
        for _ in range(100):
            d = rng.randint(2, 3)
            coeffs = [Fraction(rng.randint(-8, 8), rng.randint(1, 8)) for _ in range(d)]
            coeffs.append(Fraction(rng.choice([-1, 1]) * rng.randint(1, 8), rng.randint(1, 8)))
            f = system(*coeffs)
            a = q(Fraction(rng.randint(-8, 8), rng.randint(1, 8)))
            v = place(rng.choice([2, 3, 5]))
            value = green_nonarch(f, a, v, budget=5)
            if value.status == ESCAPED_EXACT:
                z = a
                for _ in range(value.shift):
                    z = f(z)
                lead = abs_value(f.leading, v) / (d - 1)
                for k in range(1, 3):
                    z = f(z)
                    c = (abs_value(z, v) + lead) / d ** (value.shift + k)
                    self.assertEqual(c, value.exact)
                checked += 1
            elif value.status == BOUNDED:
                disk = value.disk
                z = a
                for _ in range(6):
                    z = f(z)
                    self.assertTrue(z == disk.center or abs_value(z - disk.center, v) <= disk.radius)
                checked += 1
        self.assertGreater(checked, 30)


class GreenArchTests(SimpleTestCase):
    def test_power_map(self):
        value = green_arch(system(0, 0, 1), q(2), INF)
        self.assertEqual(value.status, ESCAPED_CERTIFIED)
        self.assertTrue(value.certified.contains(log_prime(2, 128)))

    def test_example_pair_is_trapped(self):
        value = green_arch(system(0, "1/2", 1), q("1/16"), INF)
        self.assertEqual(value.status, BOUNDED)
        self.assertEqual(value.disk.center, 0)

    def test_escaping_quadratic(self):
        value = green_arch(system(1, 0, 1), q(1), INF)
        self.assertEqual(value.status, ESCAPED_CERTIFIED)
        self.assertTrue(value.certified.certainly_greater(Fraction("0.4073")))
        self.assertTrue(value.certified.certainly_less(Fraction("0.4074")))

    def test_scaling_within_radii(self):
        f = system(1, 0, 1)
        first = green_arch(f, q(1), INF).certified
        second = green_arch(f, q(2), INF).certified
        self.assertTrue((second - first * 2).contains(0))


class CanonicalHeightTests(SimpleTestCase):
    def test_example_pairs_share_their_height(self):
        for f in (system(0, "1/2", 1), system(0, "3/8", 1)):
            height = canonical_height(f, q("1/16"))
            self.assertEqual(height.finite, {2: Fraction(4)})
            self.assertTrue(height.arch_is_zero)
            self.assertFalse(height.partial)
            self.assertTrue(height.value().certainly_greater(Fraction("2.772588")))
            self.assertTrue(height.value().certainly_less(Fraction("2.772590")))
            self.assertEqual(height.render(), "4*log(2)")

    def test_power_map_height_is_naive_height(self):
        height = canonical_height(system(0, 0, 1), q(2))
        self.assertEqual(height.finite, {})
        self.assertTrue(height.value().contains(log_prime(2, 128)))

    def test_iterate_invariance(self):
        f = system(0, "1/2", 1)
        self.assertEqual(canonical_height(f.iterate(2), q("1/16")).finite, {2: Fraction(4)})
        power = canonical_height(system(0, 0, 0, 0, 1), q(2))
        self.assertTrue(power.value().contains(log_prime(2, 128)))

    def test_height_transform(self):
        f = system(0, "1/2", 1)
        self.assertEqual(canonical_height(f, f(q("1/16"))).finite, {2: Fraction(8)})

    def test_difference_with_naive_height_is_bounded(self):
        f = system(1, 0, 1)
        rng = random.Random(50)
        for _ in range(50):
            a = q(rng.randint(-1000, 1000))
            difference = canonical_height(f, a).value() - naive_height(a)
            self.assertTrue(difference.certainly_less(1))
            self.assertTrue(difference.certainly_greater(-1))

    def test_serializer(self):
        data = HeightValueSerializer(canonical_height(system(0, "1/2", 1), q("1/16"))).data
        self.assertEqual(data["finite"], {"2": "4"})
        self.assertTrue(data["normalized"])
        self.assertEqual(data["undecided_places"], [])


class OrbitTests(SimpleTestCase):
    def test_cycle_is_preperiodic(self):
        verdict = detect_preperiodic(system(-1, 0, 1), q(0))
        self.assertEqual(verdict.status, PREPERIODIC)
        self.assertEqual((verdict.tail, verdict.period), (0, 2))
        data = PreperiodicitySerializer(verdict).data
        self.assertIsNone(data["witness"])

    def test_escape_is_not_preperiodic(self):
        verdict = detect_preperiodic(system(0, 0, 1), q(2))
        self.assertEqual(verdict.status, NOT_PREPERIODIC)
        self.assertEqual(verdict.witness, INF)

    def test_escaping_quadratic_is_in_T(self):
        verdict = in_T_d(system(1, 0, 1), q(1))
        self.assertEqual(verdict.status, IN_T)
        self.assertEqual(verdict.witness, INF)

    def test_example_pair_is_not_in_T(self):
        verdict = in_T_d(system(0, "1/2", 1), q("1/16"))
        self.assertEqual(verdict.status, NOT_IN_T)

    def test_preperiodic_point_is_rejected(self):
        with self.assertRaises(PreconditionError):
            in_T_d(system(-1, 0, 1), q(0))

    def test_monomial_type_is_rejected(self):
        with self.assertRaises(PreconditionError):
            in_T_d(system(0, 0, 1), q(3))


class LiminfTests(SimpleTestCase):
    def test_archimedean_place_dominates(self):
        rows = liminf_diagnostic(system(1, 0, 1), q(1), INF, n_max=6)
        self.assertTrue(rows[0].skipped)
        for row in rows[1:]:
            self.assertFalse(row.skipped)
            self.assertTrue(row.ratio.contains(1))

    def test_unit_place_gives_zero(self):
        rows = liminf_diagnostic(system(0, 0, 1), q(2), place(3), n_max=4)
        for row in rows:
            self.assertTrue(row.ratio.contains(0))

    def test_constant_ratio(self):
        rows = liminf_diagnostic(system(0, 0, 1), q("1/6"), place(2), n_max=4)
        self.assertEqual(len(rows), 5)
        for row in rows:
            self.assertTrue(row.ratio.certainly_greater(Fraction("0.3868")))
            self.assertTrue(row.ratio.certainly_less(Fraction("0.3869")))
