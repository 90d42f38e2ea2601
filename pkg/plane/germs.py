"""
Invariant formal curves at boundary periodic points and their algebraicity.

At a boundary point o = [1 : t0 : 0] the chart is u = y/x - t0, w = 1/x, so
H_∞ = {w = 0}; at o = [0 : 1 : 0] it is u = x/y, w = 1/y. In these
coordinates f^n (n the period of o) has the germ

    A(u, w) = F_num(chart) / F_den(chart) - t0,    B(u, w) = w^D / F_den(chart)

with D = deg f^n, and the invariant curve transverse to H_∞ is u = s(w)
with A(s(w), w) = s(B(s(w), w)). B has order D >= 2 in w, so the w^k
coefficient of the equation reads λ c_k = (terms in c_1 .. c_{k-1}).
"""

import logging
from dataclasses import dataclass
from typing import Any, Optional

from algebra.conf import get_budget
from algebra.exceptions import ArgumentError, CertificateError, PreconditionError
from algebra.linalg import nullspace
from algebra.multivariate import MultiPolynomial
from algebra.series import PowerSeries, evaluate_bivariate

logger = logging.getLogger(__name__)

CURVE = "Curve"
NO_CURVE = "NoCurveUpToDegree"


def _chart_forms(f, point):
    """
    (F_num, F_den) of the homogenized f in the chart (u, w) at `point`.
    """
    zero, one = point.zero, point.one
    u = MultiPolynomial.variable(0, 2, zero)
    w = MultiPolynomial.variable(1, 2, zero)
    moved = u + point.coordinate
    unit = MultiPolynomial.constant(one, 2, zero)
    values = [unit, moved, w] if point.chart == 0 else [moved, unit, w]
    F1, F2, _ = f.homogenized()
    forms = (F1.substitute(values), F2.substitute(values))
    return forms[1 - point.chart], forms[point.chart]


@dataclass
class GermSeries:
    """
    u = s(w) = c_1 w + c_2 w^2 + ... + c_N w^N at a boundary periodic point.

    Attributes:
        endomorphism (PlaneEndomorphism): f^n, whose germ is invariant.
        base (BoundaryPeriodicPoint): The point o and its period n.
        series (PowerSeries): s(w) modulo w^(N+1).
        numerator (MultiPolynomial): F_num in the chart (u, w).
        denominator (MultiPolynomial): F_den in the chart (u, w).
    """

    endomorphism: Any
    base: Any
    series: PowerSeries
    numerator: MultiPolynomial
    denominator: MultiPolynomial

    @property
    def point(self):
        return self.base.point

    @property
    def order(self):
        return self.series.order - 1

    @property
    def coefficients(self):
        return self.series.coeffs[1:]

    @property
    def multiplier(self):
        return self.base.multiplier

    def is_linear(self):
        return not any(self.series.coeffs[2:])

    def sides(self, series=None):
        """
        A(s(w), w) and s(B(s(w), w)) as power series.
        """
        s = series if series is not None else self.series
        zero = self.point.zero
        w = PowerSeries([zero, self.point.one], s.order, zero)
        inverse = evaluate_bivariate(self.denominator.terms, s, w).reciprocal()
        left = evaluate_bivariate(self.numerator.terms, s, w) * inverse - self.point.coordinate
        right = s.compose((w**self.endomorphism.degree) * inverse)
        return left, right

    def residue(self):
        left, right = self.sides()
        return left - right

    def __str__(self):
        return f"u = {self.series} at {self.point}"


def invariant_germ(f, o, order=None):
    """
    The f^n-invariant formal curve at o, transverse to H_∞.

    Args:
        f (PlaneEndomorphism): The map.
        o (BoundaryPeriodicPoint): A boundary point of period n.
        order (int): N; coefficients c_1 .. c_N are computed.

    Returns:
        GermSeries with zero functional-equation residue modulo w^(N+1).

    Raises:
        PreconditionError: If the multiplier of o vanishes.
    """
    order = get_budget("JET_ORDER", order)
    if order < 1:
        raise ArgumentError("germ order must be at least 1")
    if o.superattracting:
        raise PreconditionError(f"boundary point {o.point} is superattracting", period=o.period)
    fn = f.iterate(o.period)
    numerator, denominator = _chart_forms(fn, o.point)
    zero = o.point.zero
    germ = GermSeries(fn, o, PowerSeries([], order + 1, zero), numerator, denominator)
    coeffs = [zero] * (order + 1)
    for k in range(1, order + 1):
        left, right = germ.sides(PowerSeries(coeffs, order + 1, zero))
        coeffs[k] = (right[k] - left[k]) / o.multiplier
    germ.series = PowerSeries(coeffs, order + 1, zero)
    if not germ.residue().is_zero():
        raise CertificateError(f"germ at {o.point} fails its functional equation")
    logger.debug("germ at %s reached order %s", o.point, order)
    return germ


@dataclass
class AlgebraicityVerdict:
    """
    Attributes:
        status (str): Curve or NoCurveUpToDegree.
        curve (MultiPolynomial | None): P(x, y) whose branch at o is the germ.
        cofactor (MultiPolynomial | None): R with P∘f^n = R P.
        period (int): n.
        e_max (int): Largest curve degree tried.
        jet_order (int): Germ coefficients matched by the linear solve.
        branch_order (int): Order to which P vanishes along the germ.
        transcendental (bool): Set when NoCurveUpToDegree(2) was found
            under an asserted NS boundary map, so no algebraic curve at all
            carries the germ.
    """

    status: str
    curve: Optional[MultiPolynomial] = None
    cofactor: Optional[MultiPolynomial] = None
    period: int = 1
    e_max: int = 2
    jet_order: int = 0
    branch_order: int = 0
    transcendental: bool = False

    @property
    def found(self):
        return self.status == CURVE


def _monomials(degree):
    return [(a, total - a) for total in range(degree + 1) for a in range(total, -1, -1)]


def _branch_columns(germ, degree):
    """
    Per monomial x^a y^b, the series of X^a Y^b Z^(degree-a-b) along the germ.
    """
    point = germ.point
    zero, one = point.zero, point.one
    size = germ.series.order
    w = PowerSeries([zero, one], size, zero)
    moved = germ.series + point.coordinate
    columns = []
    for a, b in _monomials(degree):
        power = b if point.chart == 0 else a
        columns.append((moved**power) * (w ** (degree - a - b)))
    return columns


def _verify(curve, germ):
    fn = germ.endomorphism
    cofactor, remainder = curve.substitute([fn.f1, fn.f2]).divmod_single(curve)
    if remainder:
        logger.debug("curve %s matches the jet but is not invariant", curve)
        return None
    return cofactor


def germ_algebraicity_test(germ, e_max=None, jet_order=None, assume_ns=False):
    """
    Look for a curve of degree <= e_max carrying the germ.

    :param jet_order: Coefficients matched; defaults to the germ's order.
    :param assume_ns: The boundary map is asserted NS for every period, so a
        miss at degree 2 certifies the germ is not algebraic.
    :return: AlgebraicityVerdict
    :raises ArgumentError: When the jet is too short for e_max.
    """
    e_max = get_budget("E_MAX", e_max)
    jet_order = jet_order if jet_order is not None else germ.order
    needed = (e_max + 1) * (e_max + 2) // 2 + 2
    if jet_order < needed or jet_order > germ.order:
        raise ArgumentError(
            f"jet order {jet_order} must lie between {needed} and the germ order {germ.order}", e_max=e_max
        )
    zero = germ.point.zero
    period = germ.base.period
    for degree in range(1, e_max + 1):
        monomials = _monomials(degree)
        columns = _branch_columns(germ, degree)
        rows = [[column[k] for column in columns] for k in range(jet_order + 1)]
        for vector in nullspace(rows, len(monomials), zero):
            curve = MultiPolynomial(dict(zip(monomials, vector)), 2, zero).content_normalized()
            if curve.total_degree < 1:
                continue
            cofactor = _verify(curve, germ)
            if cofactor is None:
                continue
            along = PowerSeries([], germ.series.order, zero)
            for column, c in zip(columns, vector):
                along = along + column * c
            branch_order = along.valuation()
            logger.debug("germ at %s lies on %s", germ.point, curve)
            return AlgebraicityVerdict(CURVE, curve, cofactor, period, e_max, jet_order, branch_order)
    transcendental = assume_ns and e_max >= 2
    if not transcendental:
        logger.warning("no curve of degree <= %s carries the germ at %s", e_max, germ.point)
    return AlgebraicityVerdict(NO_CURVE, period=period, e_max=e_max, jet_order=jet_order, transcendental=transcendental)
