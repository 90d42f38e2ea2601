from fractions import Fraction

from django.test import SimpleTestCase

from algebra.exceptions import ArgumentError, PreconditionError
from algebra.fields import QQ_FIELD, FieldElement, FieldSpec
from algebra.polynomials import Polynomial
from algebra.quotient import QuotientRing
from bottcher.systems import PolynomialSystem
from heights.orbits import IN_T, NOT_IN_T
from pairs.dynamical import DynamicalPair

from .blocks import LIMITED, NONZERO, ZERO, BlockReport, merge_outlook
from .products import (
    BOUND_LIMITED,
    ROOT_OF_UNITY,
    TRANSCENDENTAL,
    bottcher_product_status,
    evaluate_bottcher_product,
)
from .relations import (
    ALGEBRAIC,
    CERTIFIED,
    NOT_ALGEBRAIC,
    height_linear_relations,
    height_product_algebraic,
    integral,
)
from .roots import candidate_orders, is_root_of_unity
from .serializers import TranscendenceVerdictSerializer


def system(*coeffs):
    return PolynomialSystem.from_coefficients(list(coeffs))


def q(value):
    return FieldElement(Fraction(value))


F = system(1, 0, 1)


def orbit_pairs():
    return [DynamicalPair.build(F, q(1)), DynamicalPair.build(F, q(2))]


def example_pairs():
    return [
        DynamicalPair.build(system(0, "1/2", 1), q("1/16")),
        DynamicalPair.build(system(0, "3/8", 1), q("1/16")),
    ]


class RootOfUnityTests(SimpleTestCase):
    def test_minus_one(self):
        result = is_root_of_unity(q(-1))
        self.assertTrue(result)
        self.assertEqual(result.order, 2)

    def test_minus_one_in_a_real_quadratic_field(self):
        self.assertEqual(is_root_of_unity(FieldSpec(2).element(-1, 0)).order, 2)

    def test_three(self):
        self.assertFalse(is_root_of_unity(q(3)))

    def test_gaussian_unit(self):
        self.assertEqual(is_root_of_unity(FieldSpec(-1).element(0, 1)).order, 4)

    def test_eisenstein_unit(self):
        K = FieldSpec(-3)
        self.assertEqual(is_root_of_unity(K.element(Fraction(-1, 2), Fraction(1, 2))).order, 3)
        self.assertEqual(is_root_of_unity(K.element(Fraction(1, 2), Fraction(1, 2))).order, 6)

    def test_fundamental_unit_is_not(self):
        self.assertFalse(is_root_of_unity(FieldSpec(2).element(1, 1)))

    def test_quotient_ring(self):
        ring = QuotientRing(Polynomial([q(1), q(0), q(1)], QQ_FIELD.zero))
        self.assertEqual(is_root_of_unity(ring.generator).order, 4)
        self.assertFalse(is_root_of_unity(ring.generator + 1))

    def test_zero(self):
        with self.assertRaises(ArgumentError):
            is_root_of_unity(q(0))

    def test_candidate_orders(self):
        self.assertEqual(candidate_orders(2), [1, 2, 3, 4, 6])


class BlockOutlookTests(SimpleTestCase):
    class Data:
        def __init__(self, blocks, bound_limited):
            self.blocks = blocks
            self.bound_limited = bound_limited

    def reports(self, *sums):
        return [BlockReport([j], [1], s) for j, s in enumerate(sums)]

    def test_all_zero(self):
        data = self.Data([[0], [1]], [(0, 1)])
        self.assertEqual(merge_outlook(data, self.reports(0, 0)), ZERO)

    def test_same_signs_cannot_cancel(self):
        data = self.Data([[0], [1]], [(0, 1)])
        self.assertEqual(merge_outlook(data, self.reports(2, 3)), NONZERO)

    def test_opposite_signs_might_cancel(self):
        data = self.Data([[0], [1]], [(0, 1)])
        self.assertEqual(merge_outlook(data, self.reports(2, -3)), LIMITED)

    def test_opposite_signs_in_certified_blocks(self):
        data = self.Data([[0], [1]], [])
        self.assertEqual(merge_outlook(data, self.reports(2, -3)), NONZERO)


class BottcherProductTests(SimpleTestCase):
    def test_root_of_unity(self):
        verdict = bottcher_product_status(orbit_pairs(), [2, -1])
        self.assertEqual(verdict.status, ROOT_OF_UNITY)
        self.assertEqual([b.sum for b in verdict.blocks], [0])
        self.assertEqual(verdict.blocks[0].vector, [1, 2])
        self.assertTrue(verdict.product.distance_to_one().certainly_less(Fraction(1, 10**10)))
        self.assertTrue(verdict.product.modulus.contains(1))

    def test_transcendental(self):
        verdict = bottcher_product_status(orbit_pairs(), [1, 1])
        self.assertEqual(verdict.status, TRANSCENDENTAL)
        self.assertEqual([b.sum for b in verdict.blocks], [3])

    def test_scaling_exponents(self):
        verdict = bottcher_product_status(orbit_pairs(), [-4, 2])
        self.assertEqual(verdict.status, ROOT_OF_UNITY)

    def test_empty_product(self):
        verdict = bottcher_product_status(orbit_pairs()[:1], [0])
        self.assertEqual(verdict.status, ROOT_OF_UNITY)
        self.assertEqual(verdict.blocks, [])
        self.assertTrue(verdict.product.modulus.contains(1))

    def test_bounded_pair_is_rejected(self):
        with self.assertRaises(PreconditionError):
            bottcher_product_status(example_pairs(), [1, 1])

    def test_exponent_count(self):
        with self.assertRaises(ArgumentError):
            bottcher_product_status(orbit_pairs(), [1])

    def test_modulus_follows_green_values(self):
        product = evaluate_bottcher_product(orbit_pairs(), [1, 0])
        self.assertTrue(product.modulus.log().certainly_greater(Fraction(4073, 10000)))
        self.assertTrue(product.modulus.log().certainly_less(Fraction(4074, 10000)))

    def test_serializer(self):
        data = TranscendenceVerdictSerializer(bottcher_product_status(orbit_pairs(), [2, -1])).data
        self.assertEqual(data["status"], ROOT_OF_UNITY)
        self.assertEqual(data["blocks"], [{"indices": [0, 1], "vector": [1, 2], "sum": "0"}])
        self.assertEqual(data["product"]["root_of_unity_order"], 1)


class HeightAlgebraicityTests(SimpleTestCase):
    def test_pairs_outside_T(self):
        verdict = height_product_algebraic(example_pairs(), [1, -1])
        self.assertEqual(verdict.status, ALGEBRAIC)
        self.assertEqual([m.status for m in verdict.memberships], [NOT_IN_T, NOT_IN_T])
        self.assertEqual(verdict.prime_exponents, {})

    def test_single_pair_in_T(self):
        verdict = height_product_algebraic(orbit_pairs()[:1], [1])
        self.assertEqual(verdict.status, NOT_ALGEBRAIC)
        self.assertEqual(verdict.memberships[0].status, IN_T)

    def test_orbit_block_on_the_hyperplane(self):
        verdict = height_product_algebraic(orbit_pairs(), [2, -1])
        self.assertEqual(verdict.status, ALGEBRAIC)
        self.assertEqual(verdict.blocks[0].vector, [1, 2])
        self.assertTrue(verdict.t_part.contains(0))

    def test_single_pair_outside_T_is_a_prime_power(self):
        verdict = height_product_algebraic(example_pairs()[:1], [3])
        self.assertEqual(verdict.status, ALGEBRAIC)
        self.assertEqual(verdict.prime_exponents, {2: 12})


class HeightRelationTests(SimpleTestCase):
    def test_finite_part_relation(self):
        result = height_linear_relations(example_pairs())
        self.assertEqual(result.status, CERTIFIED)
        self.assertEqual(result.relations, [[1, -1]])
        self.assertTrue(result.complete)

    def test_geometric_relation(self):
        result = height_linear_relations(orbit_pairs())
        self.assertEqual(result.relations, [[2, -1]])
        self.assertFalse(result.complete)

    def test_inequivalent_pairs(self):
        pairs = [DynamicalPair.build(F, q(1)), DynamicalPair.build(system(2, 0, 1), q(1))]
        result = height_linear_relations(pairs, bidegree=3)
        self.assertEqual(result.relations, [])
        self.assertIn(result.status, (CERTIFIED, BOUND_LIMITED))

    def test_integral(self):
        self.assertEqual(integral([Fraction(-1, 2), Fraction(1, 3)]), [3, -2])
