"""
Census of periodic curves through boundary periodic points.

Every boundary periodic point with nonzero multiplier carries one invariant
germ; the census asks each germ for a curve of low degree. Curves all of
whose branches at infinity sit at superattracting boundary points are out
of reach and are reported as excluded points instead.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, List

from algebra.conf import get_budget

from .boundary import boundary_map, periodic_points_at_infinity
from .germs import germ_algebraicity_test, invariant_germ

logger = logging.getLogger(__name__)

LIMITATION = "curves through superattracting boundary points are not enumerated"


@dataclass
class FoundCurve:
    """
    Attributes:
        curve (MultiPolynomial): P(x, y).
        cofactor (MultiPolynomial): R with P∘f^period = R P.
        period (int): Period of the boundary point the curve was found at.
        base (BoundaryPeriodicPoint): That boundary point.
    """

    curve: Any
    cofactor: Any
    period: int
    base: Any


@dataclass
class PeriodicCurveReport:
    curves: List[FoundCurve] = field(default_factory=list)
    unmatched: List[Any] = field(default_factory=list)
    excluded: List[Any] = field(default_factory=list)
    transcendental: bool = False
    n_max: int = 0
    e_max: int = 2
    jet_order: int = 0
    limitation: str = LIMITATION


def periodic_curve_census(f, n_max=None, e_max=None, jet_order=None, assume_ns=False):
    """
    Periodic curves of degree <= e_max found from boundary germs.

    Args:
        f (PlaneEndomorphism): A map extending to P^2.
        n_max (int): Largest boundary period.
        e_max (int): Largest curve degree.
        jet_order (int): Germ order, also the number of matched coefficients.
        assume_ns (bool): Unmatched germs are certified transcendental.

    Returns:
        PeriodicCurveReport
    """
    n_max = get_budget("NMAX", n_max)
    e_max = get_budget("E_MAX", e_max)
    jet_order = get_budget("JET_ORDER", jet_order)
    fbar = boundary_map(f)
    report = PeriodicCurveReport(n_max=n_max, e_max=e_max, jet_order=jet_order, transcendental=assume_ns and e_max >= 2)
    for base in periodic_points_at_infinity(fbar, n_max):
        if base.superattracting:
            report.excluded.append(base)
            continue
        germ = invariant_germ(f, base, jet_order)
        verdict = germ_algebraicity_test(germ, e_max, jet_order, assume_ns)
        if not verdict.found:
            report.unmatched.append(base)
            continue
        if any(found.curve == verdict.curve for found in report.curves):
            continue
        report.curves.append(FoundCurve(verdict.curve, verdict.cofactor, verdict.period, base))
    logger.debug(
        "census of %s: %s curves, %s unmatched germs, %s excluded points",
        f,
        len(report.curves),
        len(report.unmatched),
        len(report.excluded),
    )
    return report
