"""
The boundary map f̄ on the line at infinity H_∞ = P^1 and its dynamics.

A boundary point is stored exactly: a root lying in K is a FieldElement,
any other root is the class of t in K[t]/(m) for the irreducible factor m
it comes from, so one record stands for the Galois orbit of the roots of
m. Points are normalized to chart 0 (t = y/x) unless they are [0 : 1],
which is s = 0 in chart 1 (s = x/y).
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import log10
from typing import Any, List, Optional

from algebra.conf import get_budget
from algebra.exceptions import ArgumentError, CertificateError, PreconditionError
from algebra.factoring import factor_over, root_enclosures
from algebra.fields import QQ_FIELD
from algebra.polynomials import Polynomial
from algebra.quotient import QuotientRing

from .endomorphisms import extends_to_P2
from .forms import binary_variables, chart_polynomial, form_from_chart, vanishes_at_infinity

logger = logging.getLogger(__name__)

NS_UP_TO_BOUND = "NSUpToBound"
NOT_NS = "NotNS"
NP = "NP"
NOT_NP = "NotNP"


@dataclass(frozen=True)
class BoundaryPoint:
    """
    Attributes:
        chart (int): 0 for t = y/x, 1 for s = x/y.
        coordinate: The chart coordinate, a FieldElement or a
            QuotientRingElement.
        modulus (Polynomial | None): The irreducible factor whose roots this
            record stands for; None for a point defined over K.
    """

    chart: int
    coordinate: Any
    modulus: Any = None

    @property
    def one(self):
        return self.coordinate * 0 + 1

    @property
    def zero(self):
        return self.coordinate * 0

    @property
    def is_infinity(self):
        return self.chart == 1

    @property
    def degree(self):
        """
        Number of conjugate points the record stands for.
        """
        return self.modulus.degree if self.modulus is not None else 1

    def homogeneous(self):
        if self.chart == 0:
            return self.one, self.coordinate
        return self.coordinate, self.one

    def __str__(self):
        if self.is_infinity:
            return "t = oo"
        if self.modulus is None:
            return f"t = {self.coordinate}"
        return f"t = {self.coordinate} mod {self.modulus.render('t')}"


def normalize(X, Y, modulus=None):
    if X:
        return BoundaryPoint(0, Y / X, modulus)
    if not Y:
        raise CertificateError("the boundary map has an indeterminacy point")
    return BoundaryPoint(1, X / Y, modulus)


class BoundaryMap:
    """
    f̄ = [F_1 : F_2], a self-map of P^1 given by binary forms of degree d.

    Attributes:
        F1 (MultiPolynomial): The X-coordinate form.
        F2 (MultiPolynomial): The Y-coordinate form.
        field (FieldSpec): Field of the coefficients.
    """

    def __init__(self, F1, F2, field=QQ_FIELD):
        if F1.total_degree != F2.total_degree:
            raise ArgumentError("boundary forms must have equal degree")
        self.F1 = F1
        self.F2 = F2
        self.field = field
        self._iterates = {1: self}

    @classmethod
    def from_chart(cls, num, den, field=QQ_FIELD):
        """
        The map t -> num(t) / den(t) written with binary forms.

        :raises PreconditionError: When num and den share a root.
        """
        d = max(num.degree, den.degree)
        if d < 2:
            raise ArgumentError(f"boundary maps need degree >= 2, got {d}")
        if num.gcd(den).degree > 0:
            raise PreconditionError(f"({num}) / ({den}) is not in lowest terms")
        return cls(form_from_chart(den, d), form_from_chart(num, d), field)

    @property
    def degree(self):
        return self.F1.total_degree

    @property
    def forms(self):
        return self.F1, self.F2

    def iterate(self, n):
        """
        The forms of f̄^n, cached.
        """
        if n < 1:
            raise ArgumentError("iterates start at n = 1")
        for k in range(max(self._iterates) + 1, n + 1):
            previous = self._iterates[k - 1]
            polys = [previous.F1, previous.F2]
            self._iterates[k] = BoundaryMap(self.F1.substitute(polys), self.F2.substitute(polys), self.field)
        return self._iterates[n]

    def period_form(self, n):
        """
        X G_2 - Y G_1 for f̄^n = [G_1 : G_2]; its roots are Fix(f̄^n).
        """
        X, Y = binary_variables(self.field.zero)
        G = self.iterate(n)
        return X * G.F2 - Y * G.F1

    def image(self, point):
        X, Y = point.homogeneous()
        return normalize(self.F1(X, Y), self.F2(X, Y), point.modulus)

    def orbit(self, point, n):
        points = [point]
        for _ in range(n):
            points.append(self.image(points[-1]))
        return points

    def exact_period(self, point, bound):
        """
        The least k <= bound with f̄^k(point) = point, or None.
        """
        current = point
        for k in range(1, bound + 1):
            current = self.image(current)
            if current == point:
                return k
        return None

    def roots(self, form):
        """
        The zeros of a binary form, one record per irreducible factor.
        """
        if not form:
            raise ArgumentError("the zero form vanishes everywhere")
        zero = self.field.zero
        poly = chart_polynomial(form, 0, zero)
        points = []
        if poly.degree >= 1:
            for factor, _ in factor_over(poly, self.field):
                if factor.degree == 1:
                    points.append(BoundaryPoint(0, -factor[0]))
                else:
                    points.append(BoundaryPoint(0, QuotientRing(factor, self.field).generator, factor))
        if vanishes_at_infinity(form):
            points.append(BoundaryPoint(1, zero))
        return points

    def local_derivative(self, point):
        """
        Derivative of f̄ at `point`, from its chart to the chart of its image.
        """
        target = self.image(point)
        num = chart_polynomial(self.forms[1 - target.chart], point.chart, self.field.zero)
        den = chart_polynomial(self.forms[target.chart], point.chart, self.field.zero)
        z = point.coordinate
        D = den(z)
        return (num.derivative()(z) * D - num(z) * den.derivative()(z)) / (D * D)

    def cycle_multiplier(self, point, period):
        """
        (f̄^period)'(point) by the chain rule along the cycle.
        """
        multiplier = point.one
        for p in self.orbit(point, period - 1):
            multiplier = self.local_derivative(p) * multiplier
        return multiplier

    def render(self):
        num = chart_polynomial(self.F2, 0, self.field.zero)
        den = chart_polynomial(self.F1, 0, self.field.zero)
        return f"t -> ({num.render('t')}) / ({den.render('t')})"

    def __str__(self):
        return self.render()


def boundary_map(f):
    """
    f̄ for a PlaneEndomorphism that extends to P^2.

    :raises PreconditionError: When the top forms share a root.
    """
    if not extends_to_P2(f):
        raise PreconditionError(f"{f} does not extend to an endomorphism of P^2")
    F1, F2 = f.top_forms()
    return BoundaryMap(F1, F2, f.field)


@dataclass
class BoundaryPeriodicPoint:
    """
    Attributes:
        point (BoundaryPoint): One point of the cycle (with its conjugates).
        period (int): Exact period n.
        multiplier: (f̄^n)' at the point, in the point's field.
    """

    point: BoundaryPoint
    period: int
    multiplier: Any

    @property
    def superattracting(self):
        return not self.multiplier

    @cached_property
    def enclosures(self):
        """
        Isolating boxes of the conjugates, for display; empty when the point
        lies in K or K is quadratic.
        """
        modulus = self.point.modulus
        if modulus is None or not modulus.leading.field.is_rational:
            return []
        digits = max(10, int(get_budget("PRECISION_BITS") * log10(2)))
        return root_enclosures(modulus, digits)


def periodic_points_at_infinity(fbar, n_max=None):
    """
    Boundary points of exact period n <= n_max with their multipliers.

    :param fbar: A BoundaryMap.
    :param n_max: Largest period; defaults to the NMAX budget.
    :return: List of BoundaryPeriodicPoint ordered by period.
    """
    n_max = get_budget("NMAX", n_max)
    if n_max < 1:
        raise ArgumentError("n_max must be at least 1")
    found = []
    for n in range(1, n_max + 1):
        for point in fbar.roots(fbar.period_form(n)):
            if fbar.exact_period(point, n) != n:
                continue
            found.append(BoundaryPeriodicPoint(point, n, fbar.cycle_multiplier(point, n)))
        logger.debug("%s boundary records of period <= %s for %s", len(found), n, fbar)
    return found


@dataclass(frozen=True)
class FixedPointCount:
    n: int
    count: int
    expected: int
    ratio: Fraction


def fixed_point_count_diagnostic(fbar, n_max=None):
    """
    Distinct points of Fix(f̄^n) over the algebraic closure, against d^n + 1.
    """
    n_max = get_budget("NMAX", n_max)
    d = fbar.degree
    rows = []
    for n in range(1, n_max + 1):
        form = fbar.period_form(n)
        poly = chart_polynomial(form, 0, fbar.field.zero)
        finite = poly.squarefree_part().degree if poly.degree >= 1 else 0
        count = finite + (1 if vanishes_at_infinity(form) else 0)
        rows.append(FixedPointCount(n, count, d**n + 1, Fraction(count, d**n)))
    return rows


@dataclass
class CriticalPoints:
    """
    Attributes:
        form (MultiPolynomial): The Jacobian form of degree 2d - 2.
        points (list[BoundaryPoint]): Its zeros, one record per factor.
    """

    form: Any
    points: List[BoundaryPoint] = field(default_factory=list)


def critical_points(fbar):
    F1, F2 = fbar.forms
    jacobian = F1.partial(0) * F2.partial(1) - F1.partial(1) * F2.partial(0)
    if not jacobian:
        raise CertificateError(f"{fbar} has a vanishing Jacobian form")
    return CriticalPoints(jacobian, fbar.roots(jacobian))


@dataclass
class NSVerdict:
    """
    Attributes:
        status (str): NSUpToBound or NotNS.
        n_max (int): Largest period examined.
        witness (BoundaryPoint | None): A periodic critical point.
        period (int | None): Its period.
        cycle (list[BoundaryPoint]): The witness cycle.
    """

    status: str
    n_max: int
    witness: Optional[BoundaryPoint] = None
    period: Optional[int] = None
    cycle: List[BoundaryPoint] = field(default_factory=list)


def ns_check(fbar, n_max=None):
    """
    Some (f̄^n)' vanishes at a periodic point exactly when a critical point
    of f̄ is periodic, so only the critical orbits are followed.
    """
    n_max = get_budget("NMAX", n_max)
    for point in critical_points(fbar).points:
        period = fbar.exact_period(point, n_max)
        if period is not None:
            logger.debug("critical point %s has period %s", point, period)
            return NSVerdict(NOT_NS, n_max, point, period, fbar.orbit(point, period - 1))
    return NSVerdict(NS_UP_TO_BOUND, n_max)


@dataclass
class NPVerdict:
    """
    Attributes:
        status (str): NP or NotNP.
        exceptional (list[BoundaryPoint]): Records of the exceptional set.
    """

    status: str
    exceptional: List[BoundaryPoint] = field(default_factory=list)

    @property
    def size(self):
        return sum(point.degree for point in self.exceptional)


def _totally_ramified(second, point):
    """
    Whether the fiber of f̄^2 over `point` is `point` alone, with full
    multiplicity.
    """
    X, Y = point.homogeneous()
    fiber = second.F2 * X - second.F1 * Y
    zero = point.zero
    chart = chart_polynomial(fiber, point.chart, zero)
    d2 = second.degree
    if chart.degree != d2:
        return False
    z = Polynomial.variable(zero, point.one)
    return chart == (z - point.coordinate) ** d2 * chart.leading


def np_check(fbar):
    """
    Exceptional points are the critical points x with f̄^{-2}(x) = {x}; the
    decision is complete.
    """
    second = fbar.iterate(2)
    exceptional = [
        point
        for point in critical_points(fbar).points
        if fbar.exact_period(point, 2) is not None and _totally_ramified(second, point)
    ]
    if exceptional:
        logger.debug("exceptional set of %s: %s", fbar, ", ".join(map(str, exceptional)))
        return NPVerdict(NOT_NP, exceptional)
    return NPVerdict(NP)
