"""
Equivalence of dynamical pairs certified by invariant curves.

(f, a) ~ (g, b) when the (f x g)-orbit of (a, b) lies on a curve. A curve
P(x, y) = 0 is certified by two exact facts: P(a, b) = 0 and
P(f(x), g(y)) = R(x, y) P(x, y). Together they give P(f^n(a), g^n(b)) = 0
for every n. Candidate curves come from interpolating the orbit modulo
large primes.

Orientation: the projection to the first pair's coordinate has degree
deg_y P on the curve, so d((f,a)/(g,b)) = deg_y P / deg_x P.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, List, Optional

from algebra.conf import get_budget
from algebra.exceptions import ArgumentError, CertificateError, PreconditionError
from algebra.multivariate import MultiPolynomial
from heights.canonical import canonical_height

from .dynamical import DynamicalPair, common_field, conjugate_pair
from .interpolation import ModularOrbit
from .modular import monomial_box

logger = logging.getLogger(__name__)

EQUIVALENT = "Equivalent"
NOT_EQUIVALENT = "NotEquivalentUpToBound"
HEIGHT_OBSTRUCTION = "HeightRatioObstruction"

# Spare rows over the number of unknowns in each modular solve.
EXTRA_ROWS = 16


@dataclass
class EquivalenceCertificate:
    """
    An invariant curve through the orbit of (a, b).

    Attributes:
        curve (MultiPolynomial): P(x, y).
        cofactor (MultiPolynomial): R(x, y) with P(f(x), g(y)) = R P.
        orbit_checked (int): Orbit points where P was checked modulo a prime
            not used for the lift.
        primes (list[int]): Primes the lift was computed with.
    """

    curve: MultiPolynomial
    cofactor: MultiPolynomial
    orbit_checked: int
    primes: List[int] = field(default_factory=list)

    @property
    def bidegree(self):
        return self.curve.degree_in(0), self.curve.degree_in(1)

    def transposed(self):
        def swap(poly):
            return MultiPolynomial({(e[1], e[0]): c for e, c in poly.terms.items()}, 2, poly.zero)

        return EquivalenceCertificate(swap(self.curve), swap(self.cofactor), self.orbit_checked, self.primes)


def ratio(certificate):
    """
    d((f,a)/(g,b)) = deg_y P / deg_x P in lowest terms.
    """
    deg_x, deg_y = certificate.bidegree
    if deg_x <= 0 or deg_y <= 0:
        raise CertificateError(f"{certificate.curve} is not a curve between two infinite orbits")
    return Fraction(deg_y, deg_x)


@dataclass
class EquivalenceResult:
    """
    Attributes:
        status (str): Equivalent, NotEquivalentUpToBound or
            HeightRatioObstruction.
        certificate (EquivalenceCertificate | None): Present when equivalent.
        reason (str): "place" or "ratio" for height obstructions.
        place (Place | None): Where the per-place screen found a mismatch.
        height_ratio (CertifiedReal | None): Enclosure of h_f(a) / h_g(b).
        bidegree_bound (int): Largest degree tried in each variable.
        orbit_len (int): Orbit length used for interpolation.
        via_conjugation (bool): Set by weakly_equivalent when the certificate
            relates p1 to the Galois conjugate of p2.
    """

    status: str
    certificate: Optional[EquivalenceCertificate] = None
    reason: str = ""
    place: Any = None
    height_ratio: Any = None
    bidegree_bound: int = 0
    orbit_len: int = 0
    via_conjugation: bool = False

    @property
    def is_equivalent(self):
        return self.status == EQUIVALENT

    @property
    def bound_limited(self):
        return self.status == NOT_EQUIVALENT

    @property
    def ratio(self):
        return ratio(self.certificate) if self.certificate else None


def bidegrees(bound):
    boxes = [(dx, dy) for dx in range(1, bound + 1) for dy in range(1, bound + 1)]
    return sorted(boxes, key=lambda box: (box[0] + box[1], max(box), box[1]))


def _align(p1, p2):
    K = common_field(p1, p2)
    promote = lambda p: DynamicalPair(p.system.promote(K), p.point.promote(K), p.label, p.preperiodicity)
    return promote(p1), promote(p2), K


def _green_map(height):
    return {g.place: g for g in height.greens}


def screen_heights(p1, p2, bound, precision=None, budget=None):
    """
    Non-equivalence certified by canonical heights, or None.

    Returns a HeightRatioObstruction result when one pair escapes at a place
    where the other is certified bounded, or when h_f(a) / h_g(b) avoids
    every i/j with 1 <= i, j <= bound. Also returns the ratio enclosure.
    """
    h1 = canonical_height(p1.system, p1.point, precision, budget)
    h2 = canonical_height(p2.system, p2.point, precision, budget)
    greens1, greens2 = _green_map(h1), _green_map(h2)
    for v in list(greens1) + [v for v in greens2 if v not in greens1]:
        g1, g2 = greens1.get(v), greens2.get(v)
        bounded1 = g1 is None or g1.bounded
        bounded2 = g2 is None or g2.bounded
        escaped1 = g1 is not None and g1.escaped
        escaped2 = g2 is not None and g2.escaped
        if (bounded1 and escaped2) or (escaped1 and bounded2):
            logger.debug("local heights of %s and %s disagree at %s", p1, p2, v)
            return EquivalenceResult(HEIGHT_OBSTRUCTION, reason="place", place=v), None
    if h1.partial or h2.partial or not (h1.is_certified_positive and h2.is_certified_positive):
        return None, None
    quotient = h1.value() / h2.value()
    candidates = {Fraction(i, j) for i in range(1, bound + 1) for j in range(1, bound + 1)}
    if not any(quotient.contains(c) for c in candidates):
        return EquivalenceResult(HEIGHT_OBSTRUCTION, reason="ratio", height_ratio=quotient), quotient
    return None, quotient


def find_curve(p1, p2, dx, dy, orbit):
    """
    A certified invariant curve of bidegree at most (dx, dy), or None.
    """
    monomials = monomial_box((dx, dy))
    rows = list(range(min(orbit.length // 2, len(monomials) + EXTRA_ROWS)))
    X = MultiPolynomial.variable(0, 2, orbit.field.zero)
    Y = MultiPolynomial.variable(1, 2, orbit.field.zero)
    image = [p1.system.poly(X), p2.system.poly(Y)]
    for curve in orbit.lift_kernel(monomials, rows):
        if curve.degree_in(0) < 1 or curve.degree_in(1) < 1:
            continue
        if not orbit.vanishes_exactly(curve):
            continue
        cofactor, remainder = curve.substitute(image).divmod_single(curve)
        if remainder:
            logger.debug("curve %s is not invariant", curve)
            continue
        check_index = len(orbit.used_primes)
        if not orbit.vanishes_mod(curve, check_index, range(orbit.length)):
            raise CertificateError(f"invariant curve {curve} misses a reduced orbit point")
        return EquivalenceCertificate(curve, cofactor, orbit.length, orbit.used_primes[:check_index])
    return None


def equivalent(p1, p2, bidegree=None, orbit_len=None, height_screen=True, precision=None, budget=None):
    """
    Decide p1 ~ p2 up to the bidegree bound.

    Args:
        p1 (DynamicalPair): First pair, the x coordinate.
        p2 (DynamicalPair): Second pair, the y coordinate.
        bidegree (int): Largest degree in x and in y.
        orbit_len (int): Orbit points used; the invariance check extends
            vanishing to the whole orbit.
        height_screen (bool): Try the height obstructions first.

    Returns:
        EquivalenceResult

    Raises:
        PreconditionError: If the degrees differ.
        ArgumentError: If orbit_len is below the number of unknowns.
    """
    bound = get_budget("BIDEGREE", bidegree)
    orbit_len = get_budget("ORBIT_LEN", orbit_len)
    if p1.degree != p2.degree:
        raise PreconditionError(f"degrees {p1.degree} and {p2.degree} differ")
    unknowns = (bound + 1) ** 2
    if orbit_len < unknowns:
        raise ArgumentError(
            f"orbit length {orbit_len} cannot determine {unknowns} unknowns", bidegree=bound
        )
    p1, p2, K = _align(p1, p2)
    quotient = None
    if height_screen:
        obstruction, quotient = screen_heights(p1, p2, bound, precision, budget)
        if obstruction is not None:
            obstruction.bidegree_bound, obstruction.orbit_len = bound, orbit_len
            return obstruction
    orbit = ModularOrbit([p1.system, p2.system], (p1.point, p2.point), K, 2 * orbit_len)
    for dx, dy in bidegrees(bound):
        certificate = find_curve(p1, p2, dx, dy, orbit)
        if certificate is not None:
            logger.debug("%s ~ %s through %s", p1, p2, certificate.curve)
            return EquivalenceResult(EQUIVALENT, certificate, height_ratio=quotient, bidegree_bound=bound, orbit_len=orbit_len)
    logger.warning("no invariant curve for %s and %s up to bidegree (%s, %s)", p1, p2, bound, bound)
    return EquivalenceResult(NOT_EQUIVALENT, height_ratio=quotient, bidegree_bound=bound, orbit_len=orbit_len)


def weakly_equivalent(p1, p2, bidegree=None, orbit_len=None, height_screen=True, precision=None, budget=None):
    """
    p1 ~ p2 or p1 ~ sigma(p2) for the nontrivial automorphism sigma.
    """
    p1, p2, K = _align(p1, p2)
    direct = equivalent(p1, p2, bidegree, orbit_len, height_screen, precision, budget)
    if direct.is_equivalent or K.is_rational:
        return direct
    twisted = equivalent(p1, conjugate_pair(p2), bidegree, orbit_len, height_screen, precision, budget)
    if twisted.is_equivalent:
        twisted.via_conjugation = True
        return twisted
    return direct if direct.bound_limited else twisted
