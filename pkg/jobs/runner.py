"""
Execution of validated jobs.

A job expands into independent items (one per system, pair, pair of pairs
or plane map, depending on the command). Items run on a thread pool and the
report lists them in the order they were planned, whatever order they
finish in.
"""

import logging
import time
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Callable, Dict, List, Optional

from algebra.conf import get_budget
from algebra.exceptions import DynamicsError, UndecidedError
from algebra.places import archimedean_places, relevant_places
from bottcher.classify import classify_polynomial_type
from bottcher.evaluation import evaluate_bottcher_arch
from bottcher.serializers import BottcherSeriesSerializer, BottcherValueSerializer, PolynomialTypeSerializer
from bottcher.series import compute_bottcher
from dynamicsBase import __version__
from heights.canonical import canonical_height
from heights.green import UNDECIDED as GREEN_UNDECIDED
from heights.green import green
from heights.orbits import UNDECIDED as ORBIT_UNDECIDED
from heights.orbits import detect_preperiodic, liminf_diagnostic
from heights.serializers import (
    GreenValueSerializer,
    HeightValueSerializer,
    LiminfRowSerializer,
    PreperiodicitySerializer,
)
from pairs.dynamical import DynamicalPair
from pairs.equivalence import NOT_EQUIVALENT, equivalent, weakly_equivalent
from pairs.semiconjugacy import semiconjugacy_search
from pairs.serializers import EquivalenceResultSerializer, GeometricDataSerializer, SemiconjugacySerializer
from pairs.structure import geometric_data
from plane.boundary import (
    boundary_map,
    fixed_point_count_diagnostic,
    np_check,
    ns_check,
    periodic_points_at_infinity,
)
from plane.census import periodic_curve_census
from plane.germs import germ_algebraicity_test, invariant_germ
from plane.homogeneity import homogeneity_detect
from plane.serializers import (
    AlgebraicityVerdictSerializer,
    BoundaryPeriodicPointSerializer,
    FixedPointCountSerializer,
    GermSeriesSerializer,
    HomogeneityVerdictSerializer,
    NPVerdictSerializer,
    NSVerdictSerializer,
    PeriodicCurveReportSerializer,
)
from transcendence.products import BOUND_LIMITED, bottcher_product_status
from transcendence.relations import height_linear_relations, height_product_algebraic
from transcendence.serializers import (
    HeightAlgebraicitySerializer,
    LinearRelationsSerializer,
    TranscendenceVerdictSerializer,
)

logger = logging.getLogger(__name__)

OK = "ok"
UNDECIDED = "undecided"
ERROR = "error"


def exit_code(statuses):
    """
    1 if any item errored, else 2 if any is undecided, else 0.
    """
    statuses = set(statuses)
    if ERROR in statuses:
        return 1
    return 2 if UNDECIDED in statuses else 0


@dataclass
class Outcome:
    """
    What one item produced.

    Attributes:
        result: JSON-ready data.
        undecided (bool): The result is Undecided or BoundLimited.
        warnings (list[str]): Messages for the report.
    """

    result: Any
    undecided: bool = False
    warnings: List[str] = field(default_factory=list)


@dataclass
class Item:
    key: str
    task: Callable[[], Outcome]


@dataclass
class ItemReport:
    key: str
    status: str
    result: Any = None
    error: Optional[Dict] = None
    warnings: List[str] = field(default_factory=list)


@dataclass
class Report:
    """
    Attributes:
        command (str): The command that ran.
        config (dict): The canonical configuration echo.
        items (list[ItemReport]): Results in planning order.
        warnings (list[str]): Every item warning, prefixed by its key.
        exit_code (int): 0, 1 or 2.
        timing (dict | None): Wall-clock seconds; omitted in comparison mode.
        version (str): Toolkit version.
    """

    command: str
    config: Dict
    items: List[ItemReport] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)
    exit_code: int = 0
    timing: Optional[Dict] = None
    version: str = __version__


def _pair_key(pair, index):
    return pair.label or f"{pair.system}#{index}"


class JobRunner:
    """
    Plans and runs the items of one job.

    Budgets come from the job's params, which the command-line flags have
    already merged in; anything left unset falls back to settings.DYNAMICS.
    """

    def __init__(self, job):
        self.job = job
        params = job.params
        self.precision = params.get("precision_bits")
        self.budget = params.get("iter_budget")
        self.bidegree = params.get("bidegree")
        self.orbit_len = params.get("orbit_len")
        self.n_max = params.get("nmax")
        self.jet_order = params.get("jet_order")
        self.e_max = params.get("e_max")

    # Planning

    def plan(self):
        planners = {
            "bottcher": self._plan_bottcher,
            "classify": self._plan_per_system(self.classify),
            "green": self._plan_per_pair(self.green),
            "height": self._plan_per_pair(self.height),
            "equiv": self._plan_equiv,
            "semiconjugacy": self._plan_semiconjugacy,
            "geomdata": self._plan_single(self.geomdata),
            "transcend-bottcher": self._plan_single(self.transcend_bottcher),
            "height-algebraic": self._plan_single(self.height_algebraic),
            "height-relations": self._plan_single(self.height_relations),
            "plane-analyze": self._plan_per_plane(self.plane_analyze),
            "plane-germs": self._plan_per_plane(self.plane_germs),
            "plane-census": self._plan_per_plane(self.plane_census),
            "plane-homogeneity": self._plan_per_plane(self.plane_homogeneity),
            "diagnostics": self._plan_diagnostics,
        }
        return planners[self.job.command]()

    def _plan_per_system(self, task):
        def plan():
            return [Item(name, lambda s=system: task(s)) for name, system in sorted(self.job.systems.items())]

        return plan

    def _plan_per_pair(self, task):
        def plan():
            return [Item(_pair_key(p, i), lambda p=p: task(p)) for i, p in enumerate(self.job.pairs)]

        return plan

    def _plan_per_plane(self, task):
        def plan():
            return [Item(name, lambda f=f: task(f)) for name, f in sorted(self.job.planes.items())]

        return plan

    def _plan_single(self, task):
        def plan():
            return [Item(self.job.command, task)]

        return plan

    def _plan_bottcher(self):
        values = [
            Item(f"phi({_pair_key(p, i)})", lambda p=p: self.bottcher_value(p)) for i, p in enumerate(self.job.pairs)
        ]
        return self._plan_per_system(self.bottcher)() + values

    def _plan_equiv(self):
        pairs = self.job.pairs
        return [
            Item(f"{_pair_key(pairs[s], s)}~{_pair_key(pairs[t], t)}", lambda s=s, t=t: self.equiv(s, t))
            for s, t in combinations(range(len(pairs)), 2)
        ]

    def _plan_semiconjugacy(self):
        names = sorted(self.job.systems)
        return [
            Item(f"{s}->{t}", lambda s=s, t=t: self.semiconjugacy(s, t)) for s in names for t in names if s != t
        ]

    def _plan_diagnostics(self):
        return self._plan_per_pair(self.pair_diagnostics)() + self._plan_per_plane(self.fixed_point_counts)()

    # Helpers

    def system(self, spec):
        return self.job.systems[spec.system]

    def dynamical_pair(self, spec):
        return DynamicalPair.build(self.system(spec), spec.point, spec.label, budget=self.budget)

    def dynamical_pairs(self):
        return [self.dynamical_pair(spec) for spec in self.job.pairs]

    @property
    def exponents(self):
        exponents = self.job.params.get("exponents")
        return exponents if exponents is not None else [1] * len(self.job.pairs)

    # Univariate items

    def bottcher(self, f):
        order = self.job.params.get("order")
        series = compute_bottcher(f, order, self.job.params.get("root_choice", 0))
        return Outcome(BottcherSeriesSerializer(series).data)

    def bottcher_value(self, spec):
        f = self.system(spec)
        place = self.job.place or archimedean_places(f.field)[0]
        value = evaluate_bottcher_arch(
            f, spec.point, place, self.precision, self.budget, self.job.params.get("root_choice", 0)
        )
        return Outcome(BottcherValueSerializer(value).data)

    def classify(self, f):
        return Outcome(PolynomialTypeSerializer(classify_polynomial_type(f)).data)

    def green(self, spec):
        f = self.system(spec)
        a = spec.point.promote(f.field)
        places = [self.job.place] if self.job.place else relevant_places(f.poly, a)
        values = [green(f, a, v, self.precision, self.budget) for v in places]
        undecided = [str(value.place) for value in values if value.status == GREEN_UNDECIDED]
        warnings = [f"Green value undecided at {v}" for v in undecided]
        return Outcome(GreenValueSerializer(values, many=True).data, bool(undecided), warnings)

    def height(self, spec):
        height = canonical_height(self.system(spec), spec.point, self.precision, self.budget)
        warnings = [f"height is partial; undecided at {v}" for v in height.undecided_places]
        return Outcome(HeightValueSerializer(height).data, height.partial, warnings)

    def pair_diagnostics(self, spec):
        f = self.system(spec)
        place = self.job.place or archimedean_places(f.field)[0]
        verdict = detect_preperiodic(f, spec.point, self.budget, self.precision)
        rows = liminf_diagnostic(f, spec.point, place, self.n_max, self.precision)
        data = {
            "preperiodicity": PreperiodicitySerializer(verdict).data,
            "place": str(place),
            "liminf": LiminfRowSerializer(rows, many=True).data,
        }
        undecided = verdict.status == ORBIT_UNDECIDED
        return Outcome(data, undecided, ["preperiodicity undecided"] if undecided else [])

    # Pairs and transcendence

    def equiv(self, s, t):
        test = weakly_equivalent if self.job.params.get("weak") else equivalent
        specs = self.job.pairs
        result = test(
            self.dynamical_pair(specs[s]),
            self.dynamical_pair(specs[t]),
            self.bidegree,
            self.orbit_len,
            self.job.params.get("height_screen", True),
            self.precision,
            self.budget,
        )
        limited = result.status == NOT_EQUIVALENT
        warnings = [f"no curve up to bidegree {result.bidegree_bound}; verdict is bound-limited"] if limited else []
        return Outcome(EquivalenceResultSerializer(result).data, limited, warnings)

    def semiconjugacy(self, source, target):
        systems = self.job.systems
        found = semiconjugacy_search(
            systems[source], systems[target], self.bidegree, self.job.params.get("iterate_bound")
        )
        if found is None:
            return Outcome(None, True, [f"no semiconjugacy from {source} to {target} within the search bounds"])
        return Outcome(SemiconjugacySerializer(found).data)

    def geomdata(self):
        data = geometric_data(
            self.dynamical_pairs(),
            self.bidegree,
            self.orbit_len,
            self.job.params.get("height_screen", True),
            self.precision,
            self.budget,
            self.job.params.get("weak", False),
        )
        warnings = [f"pairs {s} and {t} may merge under larger bounds" for s, t in data.bound_limited]
        return Outcome(GeometricDataSerializer(data).data, bool(data.bound_limited), warnings)

    def transcend_bottcher(self):
        verdict = bottcher_product_status(
            self.dynamical_pairs(),
            self.exponents,
            self.job.place,
            self.bidegree,
            self.orbit_len,
            self.precision,
            self.budget,
        )
        limited = verdict.status == BOUND_LIMITED
        return Outcome(TranscendenceVerdictSerializer(verdict).data, limited, ["verdict is bound-limited"] if limited else [])

    def height_algebraic(self):
        verdict = height_product_algebraic(
            self.dynamical_pairs(), self.exponents, self.bidegree, self.orbit_len, self.precision, self.budget
        )
        limited = verdict.status == BOUND_LIMITED
        return Outcome(HeightAlgebraicitySerializer(verdict).data, limited, ["verdict is bound-limited"] if limited else [])

    def height_relations(self):
        relations = height_linear_relations(
            self.dynamical_pairs(), self.bidegree, self.orbit_len, self.precision, self.budget
        )
        limited = relations.status == BOUND_LIMITED
        return Outcome(LinearRelationsSerializer(relations).data, limited, ["relations are bound-limited"] if limited else [])

    # Plane items

    def plane_analyze(self, f):
        fbar = boundary_map(f)
        n_max = get_budget("NMAX", self.n_max)
        data = {
            "map": f.render(),
            "boundary_map": fbar.render(),
            "periodic_points": BoundaryPeriodicPointSerializer(periodic_points_at_infinity(fbar, n_max), many=True).data,
            "ns": NSVerdictSerializer(ns_check(fbar, n_max)).data,
            "np": NPVerdictSerializer(np_check(fbar)).data,
        }
        return Outcome(data)

    def plane_germs(self, f):
        assume_ns = self.job.params.get("assume_ns", False)
        germs = []
        for base in periodic_points_at_infinity(boundary_map(f), self.n_max):
            if base.superattracting:
                continue
            germ = invariant_germ(f, base, self.jet_order)
            verdict = germ_algebraicity_test(germ, self.e_max, self.jet_order, assume_ns)
            germs.append(
                {"germ": GermSeriesSerializer(germ).data, "algebraicity": AlgebraicityVerdictSerializer(verdict).data}
            )
        return Outcome(germs)

    def plane_census(self, f):
        report = periodic_curve_census(f, self.n_max, self.e_max, self.jet_order, self.job.params.get("assume_ns", False))
        warnings = [report.limitation] if report.excluded else []
        return Outcome(PeriodicCurveReportSerializer(report).data, warnings=warnings)

    def plane_homogeneity(self, f):
        return Outcome(HomogeneityVerdictSerializer(homogeneity_detect(f)).data)

    def fixed_point_counts(self, f):
        rows = fixed_point_count_diagnostic(boundary_map(f), self.n_max)
        return Outcome(FixedPointCountSerializer(rows, many=True).data)

    # Execution

    def _execute(self, item):
        try:
            outcome = item.task()
        except UndecidedError as exc:
            logger.warning("%s undecided: %s", item.key, exc.message)
            return ItemReport(item.key, UNDECIDED, error=exc.as_dict(), warnings=[exc.message])
        except DynamicsError as exc:
            logger.exception("%s failed", item.key)
            return ItemReport(item.key, ERROR, error=exc.as_dict())
        except Exception as exc:
            logger.exception("%s failed", item.key)
            return ItemReport(item.key, ERROR, error={"kind": type(exc).__name__, "message": str(exc)})
        status = UNDECIDED if outcome.undecided else OK
        return ItemReport(item.key, status, outcome.result, warnings=outcome.warnings)

    def run(self, max_workers=None, comparison=None):
        """
        Run every item and reduce the results in planning order.

        :param max_workers: Thread pool size; MAX_WORKERS by default.
        :param comparison: Omit timings; COMPARISON_MODE by default.
        :return: Report
        """
        started = time.perf_counter()
        items = self.plan()
        results: List[Optional[ItemReport]] = [None] * len(items)
        with ThreadPoolExecutor(max_workers=get_budget("MAX_WORKERS", max_workers)) as executor:
            futures = {executor.submit(self._execute, item): index for index, item in enumerate(items)}
            for future in as_completed(futures):
                results[futures[future]] = future.result()
        report = Report(self.job.command, self.job.canonical(), results)
        report.warnings = [f"{r.key}: {message}" for r in results for message in r.warnings]
        report.exit_code = exit_code(r.status for r in results)
        if not get_budget("COMPARISON_MODE", comparison):
            report.timing = {"seconds": round(time.perf_counter() - started, 6)}
        logger.info("%s: %s items, exit code %s", self.job.command, len(results), report.exit_code)
        return report


def run(job, max_workers=None, comparison=None):
    return JobRunner(job).run(max_workers, comparison)
