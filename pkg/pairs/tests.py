import json
import tempfile
from fractions import Fraction
from io import StringIO
from pathlib import Path

from django.core.management import call_command
from django.test import SimpleTestCase

from algebra.exceptions import ArgumentError, DomainError, PreconditionError
from algebra.fields import QQ_FIELD, FieldElement, FieldSpec
from algebra.multivariate import MultiPolynomial, parse_terms
from bottcher.systems import PolynomialSystem

from .dynamical import DynamicalPair, conjugate_pair, shift_pair
from .equivalence import (
    EQUIVALENT,
    HEIGHT_OBSTRUCTION,
    NOT_EQUIVALENT,
    equivalent,
    ratio,
    weakly_equivalent,
)
from .modular import Reduction, VectorLifter, kernel_mod, monomial_box, rational_reconstruction
from .semiconjugacy import semiconjugacy_search
from .serializers import (
    EquivalenceResultSerializer,
    GeometricDataSerializer,
    OrbitStructureSerializer,
    SemiconjugacySerializer,
)
from .structure import UnionFind, geometric_data, orbit_structure


def system(*coeffs, field=QQ_FIELD):
    return PolynomialSystem.from_coefficients(list(coeffs), field)


def q(value):
    return FieldElement(Fraction(value))


def curve(*rows):
    return parse_terms([list(row) for row in rows], 2)


F = system(1, 0, 1)
GRAPH = curve((0, 1, 1), (2, 0, -1), (0, 0, -1))
DIAGONAL = curve((0, 1, 1), (1, 0, -1))


class ModularTests(SimpleTestCase):
    def test_rational_reconstruction(self):
        m = 1000003
        self.assertEqual(rational_reconstruction(m - 1, m), Fraction(-1))
        n = 3 * pow(7, -1, m) % m
        self.assertEqual(rational_reconstruction(n, m), Fraction(3, 7))

    def test_reduction_rejects_denominator(self):
        with self.assertRaises(DomainError):
            Reduction(5)(q("1/5"))

    def test_kernel_of_a_line(self):
        reduction = Reduction(101)
        points = [(reduction(q(n)), reduction(q(n))) for n in range(8)]
        basis = kernel_mod(points, monomial_box((1, 1)), reduction.zero)
        self.assertEqual(basis, [[0, 100, 1, 0]])

    def test_lifter_needs_two_agreeing_primes(self):
        lifter = VectorLifter(QQ_FIELD)
        p1, p2 = 1000003, 1000033
        self.assertIsNone(lifter.add(p1, [[p1 - 1, 1]]))
        self.assertEqual(lifter.add(p2, [[p2 - 1, 1]]), [q(-1), q(1)])


class PairTests(SimpleTestCase):
    def test_preperiodic_point_is_rejected(self):
        with self.assertRaises(PreconditionError):
            DynamicalPair.build(system(-1, 0, 1), q(0))

    def test_exceptional_polynomial_is_rejected(self):
        with self.assertRaises(PreconditionError):
            DynamicalPair.build(system(-2, 0, 1), q(3))

    def test_shift_moves_along_the_orbit(self):
        pair = DynamicalPair.build(F, q(1))
        self.assertEqual(shift_pair(pair, 2).point, q(5))

    def test_conjugation_over_q_is_trivial(self):
        pair = DynamicalPair.build(F, q(1))
        self.assertIs(conjugate_pair(pair), pair)


class EquivalenceTests(SimpleTestCase):
    def setUp(self):
        self.p1 = DynamicalPair.build(F, q(1), "p1")
        self.p2 = DynamicalPair.build(F, q(2), "p2")

    def test_graph_certificate_and_height_ratio(self):
        result = equivalent(self.p1, self.p2)
        self.assertEqual(result.status, EQUIVALENT)
        self.assertEqual(result.certificate.curve, GRAPH)
        self.assertEqual(result.certificate.bidegree, (2, 1))
        self.assertEqual(result.ratio, Fraction(1, 2))
        self.assertTrue(result.height_ratio.contains(Fraction(1, 2)))
        self.assertTrue(result.height_ratio.width_below(Fraction(1, 10**8)))

    def test_certificate_is_invariant(self):
        certificate = equivalent(self.p1, self.p2).certificate
        X = MultiPolynomial.variable(0, 2, QQ_FIELD.zero)
        Y = MultiPolynomial.variable(1, 2, QQ_FIELD.zero)
        image = certificate.curve.substitute([F.poly(X), F.poly(Y)])
        self.assertEqual(image, certificate.cofactor * certificate.curve)
        self.assertEqual(certificate.orbit_checked, 160)

    def test_diagonal(self):
        result = equivalent(self.p1, self.p1)
        self.assertEqual(result.certificate.curve, DIAGONAL)
        self.assertEqual(result.ratio, 1)

    def test_transposed_order_inverts_the_ratio(self):
        result = equivalent(self.p2, self.p1)
        self.assertEqual(result.ratio, 2)
        forward = equivalent(self.p1, self.p2).certificate
        self.assertEqual(ratio(forward.transposed()), 2)

    def test_different_polynomials_up_to_bound(self):
        other = DynamicalPair.build(system(2, 0, 1), q(1))
        result = equivalent(self.p1, other, bidegree=4, height_screen=False)
        self.assertEqual(result.status, NOT_EQUIVALENT)
        self.assertTrue(result.bound_limited)
        self.assertEqual(result.bidegree_bound, 4)

    def test_different_degrees(self):
        cubic = DynamicalPair.build(system(1, 0, 0, 1), q(1))
        with self.assertRaises(PreconditionError):
            equivalent(self.p1, cubic)

    def test_underdetermined(self):
        with self.assertRaises(ArgumentError):
            equivalent(self.p1, self.p2, bidegree=6, orbit_len=20)

    def test_serializer(self):
        data = EquivalenceResultSerializer(equivalent(self.p1, self.p2)).data
        self.assertEqual(data["status"], EQUIVALENT)
        self.assertEqual(data["certificate"]["ratio"], "1/2")
        self.assertEqual(data["certificate"]["bidegree"], [2, 1])


class WeakEquivalenceTests(SimpleTestCase):
    def setUp(self):
        K = FieldSpec(2)
        f = system(0, "1/2", 1, field=K)
        self.small = DynamicalPair.build(f, K.element(3, -2))
        self.large = DynamicalPair.build(f, K.element(3, 2))

    def test_orbits_separate_at_a_real_place(self):
        result = equivalent(self.small, self.large)
        self.assertEqual(result.status, HEIGHT_OBSTRUCTION)
        self.assertEqual(result.reason, "place")

    def test_equivalent_after_conjugation(self):
        result = weakly_equivalent(self.small, self.large)
        self.assertTrue(result.is_equivalent)
        self.assertTrue(result.via_conjugation)
        self.assertEqual(result.ratio, 1)

    def test_pair_with_itself(self):
        result = weakly_equivalent(self.small, self.small)
        self.assertTrue(result.is_equivalent)
        self.assertFalse(result.via_conjugation)

    def test_over_q_reduces_to_equivalence(self):
        p1 = DynamicalPair.build(F, q(1))
        p2 = DynamicalPair.build(system(2, 0, 1), q(1))
        result = weakly_equivalent(p1, p2, bidegree=3)
        self.assertFalse(result.is_equivalent)
        self.assertFalse(result.via_conjugation)


class SemiconjugacyTests(SimpleTestCase):
    def test_power_map_and_chebyshev(self):
        self.assertIsNone(semiconjugacy_search(system(0, 0, 1), system(-2, 0, 1), deg_bound=4))

    def test_identity(self):
        result = semiconjugacy_search(F, F)
        self.assertEqual(result.k, 1)
        self.assertEqual(result.pi.degree, 1)
        self.assertEqual(result.pi(q(7)), q(7))

    def test_second_iterate(self):
        result = semiconjugacy_search(F, F.compose(F))
        self.assertEqual(result.k, 2)
        self.assertEqual(result.pi.degree, 1)
        self.assertEqual(result.pi(q(7)), q(7))

    def test_shifted_conjugate(self):
        g = system(3, -2, 1)
        result = semiconjugacy_search(F, g)
        self.assertEqual(result.k, 1)
        self.assertEqual(result.pi(q(0)), q(1))

    def test_serialized_linear_map(self):
        data = SemiconjugacySerializer(semiconjugacy_search(F, F.compose(F))).data
        self.assertEqual(data, {"k": 2, "pi": ["0", "1"], "rendered": "z"})


class SemiconjugacyCommandTests(SimpleTestCase):
    def run_job(self, systems):
        handle = tempfile.NamedTemporaryFile("w", suffix=".json", delete=False, encoding="utf-8")
        json.dump({"systems": systems}, handle)
        handle.close()
        self.addCleanup(Path(handle.name).unlink)
        out = StringIO()
        code = 0
        try:
            call_command("dynamics", "semiconjugacy", handle.name, comparison=True, stdout=out)
        except SystemExit as exc:
            code = exc.code
        return code, json.loads(out.getvalue())

    def test_shifted_conjugates(self):
        code, report = self.run_job({"f": [1, 0, 1], "g": [3, -2, 1]})
        self.assertEqual(code, 0)
        self.assertEqual(report["exit_code"], 0)
        results = {item["key"]: item["result"] for item in report["items"]}
        self.assertEqual(results["f->g"]["pi"], ["1", "1"])
        self.assertEqual(results["g->f"]["pi"], ["-1", "1"])

    def test_second_iterate_only_one_way(self):
        code, report = self.run_job({"f": [1, 0, 1], "ff": [2, 0, 2, 0, 1]})
        self.assertEqual(code, 2)
        items = {item["key"]: item for item in report["items"]}
        self.assertEqual(items["f->ff"]["result"], {"k": 2, "pi": ["0", "1"], "rendered": "z"})
        self.assertEqual(items["ff->f"]["status"], "undecided")
        self.assertIsNone(items["ff->f"]["result"])


class OrbitStructureTests(SimpleTestCase):
    def test_single_wandering_point(self):
        structure = orbit_structure([F], (q(1),))
        self.assertEqual((structure.tail, structure.period), (0, 1))
        self.assertEqual(structure.generators, [[]])

    def test_graph(self):
        structure = orbit_structure([F, F], (q(1), q(2)))
        self.assertEqual((structure.tail, structure.period), (0, 1))
        self.assertEqual(structure.generators, [[GRAPH]])

    def test_diagonal(self):
        structure = orbit_structure([F, F], (q(1), q(1)))
        self.assertEqual(structure.generators, [[DIAGONAL]])

    def test_tail(self):
        structure = orbit_structure([F, F], (q(-1), q(1)))
        self.assertEqual(structure.tail, 1)
        self.assertEqual(structure.generators, [[DIAGONAL]])

    def test_too_many_factors(self):
        with self.assertRaises(ArgumentError):
            orbit_structure([F] * 4, (q(1),) * 4)

    def test_underdetermined(self):
        with self.assertRaises(ArgumentError):
            orbit_structure([F, F], (q(1), q(2)), multidegree_bound=2, orbit_len=5)

    def test_serializer(self):
        data = OrbitStructureSerializer(orbit_structure([F, F], (q(1), q(2)))).data
        self.assertEqual(data["period"], 1)
        self.assertEqual(len(data["generators"][0]), 1)


class GeometricDataTests(SimpleTestCase):
    def setUp(self):
        self.p1 = DynamicalPair.build(F, q(1))
        self.p2 = DynamicalPair.build(F, q(2))

    def test_one_block(self):
        data = geometric_data([self.p1, self.p2])
        self.assertEqual(data.blocks, [[0, 1]])
        self.assertEqual(data.vectors, [[1, 2]])
        self.assertTrue(data.complete)

    def test_singleton_blocks(self):
        other = DynamicalPair.build(system(2, 0, 1), q(1))
        data = geometric_data([self.p1, other], bidegree=3)
        self.assertEqual(data.blocks, [[0], [1]])
        self.assertEqual(data.vectors, [[1], [1]])

    def test_copies(self):
        data = geometric_data([self.p1] * 3)
        self.assertEqual(data.vectors, [[1, 1, 1]])

    def test_shift_invariance(self):
        shifted = geometric_data([shift_pair(self.p1), shift_pair(self.p2)])
        self.assertEqual(shifted.blocks, [[0, 1]])
        self.assertEqual(shifted.vectors, [[1, 2]])

    def test_ratio_transitivity(self):
        p3 = shift_pair(self.p2)
        data = geometric_data([self.p1, self.p2, p3])
        self.assertEqual(data.vectors, [[1, 2, 4]])
        self.assertEqual(data.degree(2), 4)

    def test_serializer(self):
        data = GeometricDataSerializer(geometric_data([self.p1, self.p2])).data
        self.assertEqual(data["vectors"], [[1, 2]])
        self.assertEqual(data["results"][0]["pair"], [0, 1])


class UnionFindTests(SimpleTestCase):
    def test_blocks(self):
        classes = UnionFind(5)
        classes.union(0, 3)
        classes.union(3, 4)
        self.assertEqual(classes.blocks(), [[0, 3, 4], [1], [2]])
