import json
import tempfile
from fractions import Fraction
from io import StringIO
from pathlib import Path

from django.core.management import call_command
from django.test import SimpleTestCase

from algebra.exceptions import ArgumentError, PreconditionError
from algebra.fields import FieldElement
from algebra.multivariate import parse_terms
from algebra.polynomials import rational_polynomial

from .boundary import (
    NOT_NP,
    NOT_NS,
    NP,
    NS_UP_TO_BOUND,
    BoundaryMap,
    BoundaryPoint,
    boundary_map,
    critical_points,
    fixed_point_count_diagnostic,
    np_check,
    ns_check,
    periodic_points_at_infinity,
)
from .census import periodic_curve_census
from .endomorphisms import PlaneEndomorphism, extends_to_P2
from .germs import CURVE, NO_CURVE, germ_algebraicity_test, invariant_germ
from .homogeneity import HOMOGENEOUS, NOT_HOMOGENEOUS, homogeneity_detect
from .serializers import NPVerdictSerializer, PeriodicCurveReportSerializer


def q(value):
    return FieldElement(Fraction(value))


def plane(rows1, rows2):
    return PlaneEndomorphism.from_terms(rows1, rows2)


def poly(*rows):
    return parse_terms([list(row) for row in rows], 2)


def chart(num, den):
    return BoundaryMap.from_chart(rational_polynomial(num), rational_polynomial(den))


SQUARE = plane([[2, 0, 1]], [[0, 2, 1]])
ROTATION = plane([[2, 0, 1], [0, 2, -1]], [[1, 1, 2]])
PERTURBED = plane([[2, 0, 1], [0, 2, -1]], [[1, 1, 2], [0, 0, 1]])
SHIFTED = plane([[2, 0, 1], [0, 2, -1], [0, 0, 1]], [[1, 1, 2]])
DOUBLING = chart([0, 2], [1, 0, -1])


def record(records, coordinate=None, modulus_degree=1, period=1):
    return next(
        r
        for r in records
        if r.period == period
        and r.point.degree == modulus_degree
        and (coordinate is None or r.point.coordinate == coordinate)
    )


class EndomorphismTests(SimpleTestCase):
    def test_extension(self):
        self.assertTrue(extends_to_P2(SQUARE))
        self.assertTrue(extends_to_P2(ROTATION))
        self.assertFalse(extends_to_P2(plane([[1, 1, 1]], [[2, 0, 1]])))

    def test_degree_and_dominance(self):
        with self.assertRaises(PreconditionError):
            plane([[1, 0, 1]], [[0, 1, 1]])
        with self.assertRaises(PreconditionError):
            plane([[2, 0, 1]], [[2, 0, 1]])

    def test_iterate(self):
        self.assertEqual(ROTATION.iterate(2).degree, 4)
        self.assertEqual(SQUARE.iterate(3)(q(2), q(3)), (q(256), q(6561)))

    def test_boundary_map_needs_extension(self):
        with self.assertRaises(PreconditionError):
            boundary_map(plane([[1, 1, 1]], [[2, 0, 1]]))

    def test_chart_map_in_lowest_terms(self):
        with self.assertRaises(PreconditionError):
            chart([0, 1, 1], [0, 1])


class BoundaryTests(SimpleTestCase):
    def test_fixed_points_of_the_doubling_map(self):
        records = periodic_points_at_infinity(boundary_map(ROTATION), 1)
        self.assertEqual(sum(r.point.degree for r in records), 3)
        origin = record(records, q(0))
        self.assertEqual(origin.multiplier, 2)
        pair = record(records, modulus_degree=2)
        self.assertEqual(pair.point.modulus, rational_polynomial([1, 0, 1]))
        self.assertTrue(pair.superattracting)

    def test_image_of_a_pole_is_infinity(self):
        self.assertTrue(DOUBLING.image(BoundaryPoint(0, q(1))).is_infinity)

    def test_chain_rule_along_a_two_cycle(self):
        records = periodic_points_at_infinity(DOUBLING, 2)
        cycle = record(records, modulus_degree=2, period=2)
        self.assertEqual(cycle.point.modulus, rational_polynomial([-3, 0, 1]))
        self.assertEqual(cycle.multiplier, 4)
        self.assertEqual(DOUBLING.iterate(2).local_derivative(cycle.point), 4)
        self.assertTrue(cycle.enclosures)

    def test_counts_for_squaring(self):
        rows = fixed_point_count_diagnostic(chart([0, 0, 1], [1]), 4)
        self.assertEqual([row.count for row in rows], [3, 5, 9, 17])
        self.assertEqual([row.expected for row in rows], [3, 5, 9, 17])
        self.assertEqual(rows[0].ratio, Fraction(3, 2))

    def test_counts_for_the_doubling_map(self):
        rows = fixed_point_count_diagnostic(boundary_map(ROTATION), 2)
        self.assertEqual([row.count for row in rows], [3, 5])

    def test_tangent_fixed_point_counts_once(self):
        rows = fixed_point_count_diagnostic(chart(["1/4", 0, 1], [1]), 1)
        self.assertEqual(rows[0].count, 2)
        self.assertEqual(rows[0].expected, 3)

    def test_critical_points_are_the_superattracting_cycles(self):
        fbar = chart([-1, 0, 1], [1])
        critical = critical_points(fbar).points
        records = periodic_points_at_infinity(fbar, 3)
        self.assertTrue(any(r.superattracting for r in records))
        for r in records:
            cycle = fbar.orbit(r.point, r.period - 1)
            self.assertEqual(r.superattracting, any(c in cycle for c in critical))


class ClassificationTests(SimpleTestCase):
    def test_squaring_is_not_ns(self):
        verdict = ns_check(chart([0, 0, 1], [1]), 6)
        self.assertEqual(verdict.status, NOT_NS)
        self.assertEqual(verdict.period, 1)

    def test_basilica_is_not_ns(self):
        verdict = ns_check(chart([-1, 0, 1], [1]), 6)
        self.assertEqual(verdict.status, NOT_NS)
        self.assertEqual(verdict.witness.coordinate, q(0))
        self.assertEqual(verdict.period, 2)
        self.assertEqual([p.coordinate for p in verdict.cycle], [q(0), q(-1)])

    def test_escaping_critical_orbits(self):
        verdict = ns_check(chart([1, 0, 1], [0, 1]), 6)
        self.assertEqual(verdict.status, NS_UP_TO_BOUND)
        self.assertEqual(verdict.n_max, 6)

    def test_squaring_has_two_exceptional_points(self):
        verdict = np_check(chart([0, 0, 1], [1]))
        self.assertEqual(verdict.status, NOT_NP)
        self.assertEqual(verdict.size, 2)
        self.assertTrue(any(p.is_infinity for p in verdict.exceptional))

    def test_perturbed_squaring_is_np(self):
        self.assertEqual(np_check(chart(["1/1000", 0, 1], [1, 0, "1/1000"])).status, NP)
        self.assertEqual(np_check(chart([1, 0, 1], [0, 1])).status, NP)

    def test_doubling_map_has_exceptional_pair(self):
        verdict = np_check(DOUBLING)
        self.assertEqual(verdict.status, NOT_NP)
        self.assertEqual(verdict.size, 2)
        self.assertEqual(verdict.exceptional[0].modulus, rational_polynomial([1, 0, 1]))
        data = NPVerdictSerializer(verdict).data
        self.assertEqual(data["size"], 2)
        self.assertIn("t^2", data["exceptional"][0]["modulus"])


def fixed_record(f, coordinate):
    return record(periodic_points_at_infinity(boundary_map(f), 1), q(coordinate))


class GermTests(SimpleTestCase):
    def test_superattracting_point_is_rejected(self):
        f = plane([[2, 0, 1]], [[0, 2, 1], [1, 0, 1]])
        with self.assertRaises(PreconditionError):
            invariant_germ(f, fixed_record(f, 0), 10)

    def test_invariant_line(self):
        germ = invariant_germ(ROTATION, fixed_record(ROTATION, 0), 10)
        self.assertEqual(germ.order, 10)
        self.assertTrue(germ.residue().is_zero())
        self.assertTrue(germ.is_linear())
        verdict = germ_algebraicity_test(germ)
        self.assertEqual(verdict.status, CURVE)
        self.assertEqual(verdict.curve, poly((0, 1, 1)))
        self.assertEqual(verdict.cofactor, poly((1, 0, 2)))
        self.assertEqual(verdict.branch_order, 11)

    def test_perturbation_keeping_the_axis(self):
        germ = invariant_germ(SHIFTED, fixed_record(SHIFTED, 0), 10)
        self.assertTrue(germ.is_linear())
        self.assertEqual(germ_algebraicity_test(germ).curve, poly((0, 1, 1)))

    def test_diagonal(self):
        germ = invariant_germ(SQUARE, fixed_record(SQUARE, 1), 10)
        verdict = germ_algebraicity_test(germ)
        self.assertEqual(verdict.curve, poly((1, 0, 1), (0, 1, -1)))

    def test_perturbed_germ_is_not_algebraic(self):
        germ = invariant_germ(PERTURBED, fixed_record(PERTURBED, 0), 12)
        self.assertTrue(germ.residue().is_zero())
        self.assertFalse(germ.is_linear())
        self.assertEqual(germ.coefficients[1], q("-1/2"))
        verdict = germ_algebraicity_test(germ, 2, 12)
        self.assertEqual(verdict.status, NO_CURVE)
        self.assertFalse(verdict.transcendental)
        self.assertTrue(germ_algebraicity_test(germ, 2, 12, assume_ns=True).transcendental)

    def test_short_jet(self):
        germ = invariant_germ(ROTATION, fixed_record(ROTATION, 0), 10)
        with self.assertRaises(ArgumentError):
            germ_algebraicity_test(germ, 2, 5)


class CensusTests(SimpleTestCase):
    def test_rotation_census(self):
        report = periodic_curve_census(ROTATION, n_max=2)
        self.assertIn(poly((0, 1, 1)), [found.curve for found in report.curves])
        self.assertEqual(sorted(found.period for found in report.curves), [1, 2])
        self.assertTrue(report.excluded)
        self.assertFalse(report.unmatched)
        data = PeriodicCurveReportSerializer(report).data
        self.assertEqual(len(data["curves"]), 2)

    def test_non_real_boundary_points_serialize_with_boxes(self):
        data = PeriodicCurveReportSerializer(periodic_curve_census(ROTATION, n_max=1)).data
        excluded = next(item for item in data["excluded"] if item["point"]["modulus"] == "t^2 + (1)")
        self.assertTrue(excluded["superattracting"])
        for box in excluded["enclosures"]:
            im_lo, im_hi = (Fraction(end) for end in box["im"])
            self.assertTrue(im_lo <= 1 <= im_hi or im_lo <= -1 <= im_hi)

    def test_curves_of_a_homogeneous_map_are_lines_through_the_center(self):
        for found in periodic_curve_census(ROTATION, n_max=2).curves:
            self.assertEqual(found.curve.total_degree, 1)
            self.assertFalse(found.curve.coefficient((0, 0)))

    def test_census_needs_extension(self):
        with self.assertRaises(PreconditionError):
            periodic_curve_census(plane([[1, 1, 1]], [[2, 0, 1]]), n_max=1)


class CensusCommandTests(SimpleTestCase):
    def test_rotation_census_report(self):
        handle = tempfile.NamedTemporaryFile("w", suffix=".json", delete=False, encoding="utf-8")
        json.dump({"systems": {"rotation": {"f1": [[2, 0, "1"], [0, 2, "-1"]], "f2": [[1, 1, "2"]]}}}, handle)
        handle.close()
        self.addCleanup(Path(handle.name).unlink)
        out = StringIO()
        call_command("dynamics", "plane-census", handle.name, nmax=2, comparison=True, stdout=out)
        report = json.loads(out.getvalue())
        self.assertEqual(report["exit_code"], 0)
        census = report["items"][0]["result"]
        self.assertEqual(sorted(curve["period"] for curve in census["curves"]), [1, 2])
        self.assertTrue(all(point["enclosures"] for point in census["excluded"] if point["point"]["degree"] > 1))


class HomogeneityTests(SimpleTestCase):
    def test_homogeneous_at_origin(self):
        verdict = homogeneity_detect(ROTATION)
        self.assertEqual(verdict.status, HOMOGENEOUS)
        self.assertEqual(verdict.origin, (q(0), q(0)))

    def test_translated_center(self):
        f = plane(
            [[2, 0, 1], [0, 2, -1], [1, 0, -2], [0, 1, 4], [0, 0, -2]],
            [[1, 1, 2], [1, 0, -4], [0, 1, -2], [0, 0, 6]],
        )
        verdict = homogeneity_detect(f)
        self.assertTrue(verdict.is_homogeneous)
        self.assertEqual(verdict.origin, (q(1), q(2)))
        self.assertEqual(f(*verdict.origin), verdict.origin)
        back = verdict.translated.translate((q(-1), q(-2)))
        self.assertEqual((back.f1, back.f2), (f.f1, f.f2))

    def test_not_homogeneous(self):
        verdict = homogeneity_detect(plane([[2, 0, 1], [0, 1, 1]], [[0, 2, 1], [1, 0, 1]]))
        self.assertEqual(verdict.status, NOT_HOMOGENEOUS)
