"""
Escape regions and trapping disks of a polynomial at a place.

At a finite place the escape radius comes in closed form from coefficient
valuations, and |f(z)|_v = |a_d|_v |z|_v^d holds exactly beyond it. At an
archimedean place B = max(1, 2*sum|a_i|/|a_d|, (2/|a_d|)^(1/(d-1))) gives
|f(z)| >= |a_d||z|^d / 2 and |f(z)| > |z| for |z| > B, so that
|log|f(z)| - d log|z| - log|a_d|| <= log 2 there.

Boundedness is certified by a disk D(c, r) mapped into itself and
containing an orbit point. Centers are drawn from 0 and the critical and
fixed points of f lying in the base field.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional

from algebra.conf import get_budget
from algebra.exceptions import DomainError
from algebra.factoring import roots_in_field
from algebra.intervals import CertifiedReal, interval_context
from algebra.places import abs_value

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EscapeRadius:
    """
    The escape bound B_v of f at v.

    Attributes:
        place (Place): The place v.
        log_bound (Fraction | None): At a finite place, log B_v / log p.
        bound (CertifiedReal | None): At an archimedean place, an upper
            bound for B_v (a degenerate interval).
    """

    place: Any
    log_bound: Optional[Fraction] = None
    bound: Optional[CertifiedReal] = None

    def escapes(self, x):
        """
        True when the exact point x lies in the escape region.
        """
        if not self.place.is_archimedean:
            return bool(x) and abs_value(x, self.place) > self.log_bound
        return self.escapes_interval(self.place.embed(x, self.bound.precision))

    def escapes_interval(self, z):
        """
        True when the interval (or complex box) z lies certainly beyond B.
        """
        return (abs(z) > self.bound.value) is True

    def as_dict(self):
        if self.log_bound is not None:
            return {"place": str(self.place), "log_bound": str(self.log_bound)}
        return {"place": str(self.place), "bound": self.bound.as_dict()}


def escape_radius(f, v, precision=None):
    """
    The escape radius of f at v.

    :param f: A PolynomialSystem of degree d >= 2.
    :param v: A place of f's field.
    :param precision: Bits for the archimedean bound.
    :return: An EscapeRadius.
    """
    d = f.degree
    lead = f.leading
    if not v.is_archimedean:
        candidates = [-abs_value(lead, v) / (d - 1)]
        for i, c in enumerate(f.coeffs[:-1]):
            if c:
                candidates.append(abs_value(c / lead, v) / (d - i))
        return EscapeRadius(v, log_bound=max(candidates))
    precision = get_budget("PRECISION_BITS", precision)
    ctx = interval_context(precision)
    lead_abs = abs(v.embed(lead, precision))
    total = ctx.mpf(0)
    for c in f.coeffs[:-1]:
        if c:
            total = total + abs(v.embed(c, precision))
    ratio = 2 * total / lead_abs
    root = 2 / lead_abs if d == 2 else ctx.exp(ctx.ln(2 / lead_abs) / (d - 1))
    upper = ctx.mpf(1)
    for value in (ratio.b, root.b):
        if (value > upper) is True:
            upper = value
    return EscapeRadius(v, bound=CertifiedReal(upper, precision))


def embedded_polynomial(f, v, precision):
    """
    Interval evaluator z -> f(z) at the embedding v.
    """
    coeffs = [v.embed(c, precision) for c in f.coeffs]

    def evaluate(z):
        result = coeffs[-1]
        for c in reversed(coeffs[:-1]):
            result = result * z + c
        return result

    return evaluate


def candidate_centers(f):
    """
    0, then the critical and fixed points of f lying in its base field.
    """
    centers = [f.field.zero]
    fixed = f.poly - f.poly.variable(f.field.zero, f.field.one)
    for poly in (f.poly.derivative(), fixed):
        if poly.degree >= 1:
            for root, _ in roots_in_field(poly, f.field):
                if root not in centers:
                    centers.append(root)
    return centers


@dataclass(frozen=True)
class TrappingDisk:
    """
    A disk D(center, r) with f(D) inside D.

    Attributes:
        center (FieldElement): The exact center.
        radius: log r / log p at finite places, an upper radius (mpf
            interval) at archimedean places.
        place (Place): Where the disk lives.
    """

    center: Any
    radius: Any
    place: Any

    def as_dict(self):
        return {"center": str(self.center), "radius": str(self.radius), "place": str(self.place)}


class DiskCertifier:
    """
    Searches for invariant disks around the candidate centers of f at v.

    Taylor coefficients at each center are computed once; `certify` is then
    called with successive orbit points.
    """

    def __init__(self, f, v, precision=None, escape=None):
        self.f = f
        self.place = v
        self.precision = get_budget("PRECISION_BITS", precision)
        self.escape = escape or escape_radius(f, v, self.precision)
        self.expansions = []
        for c in candidate_centers(f):
            taylor = f.poly.shift(c)
            self.expansions.append((c, taylor[0] - c, list(taylor.coeffs[1:])))
        if v.is_archimedean:
            self.embedded = [
                (
                    v.embed(c, self.precision),
                    c,
                    v.embed(drift, self.precision),
                    [v.embed(t, self.precision) for t in taylor],
                )
                for c, drift, taylor in self.expansions
            ]

    def _nonarch_disk_ok(self, drift, taylor, rho):
        v = self.place
        if drift and abs_value(drift, v) > rho:
            return False
        for k, t in enumerate(taylor, start=1):
            if t and abs_value(t, v) + k * rho > rho:
                return False
        return True

    def certify(self, x):
        """
        An invariant disk containing the exact point x, or None.
        """
        if self.place.is_archimedean:
            return self.certify_interval(self.place.embed(x, self.precision))
        v = self.place
        for c, drift, taylor in self.expansions:
            radii = []
            if x != c:
                radii.append(abs_value(x - c, v))
            radii.append(self.escape.log_bound)
            for rho in radii:
                if x != c and abs_value(x - c, v) > rho:
                    continue
                if self._nonarch_disk_ok(drift, taylor, rho):
                    logger.debug("invariant disk D(%s, p^%s) certified at %s", c, rho, v)
                    return TrappingDisk(c, rho, v)
        return None

    def certify_interval(self, z):
        """
        A trapping disk containing the enclosure z, or None.
        """
        ctx = interval_context(self.precision)
        for center, c, drift, taylor in self.embedded:
            distance = abs(z - center).b
            radii = [distance * (2**j) for j in range(4)] + [self.escape.bound.value]
            for r in radii:
                if (r > 0) is not True or (abs(z - center) <= r) is not True:
                    continue
                image = abs(drift) + sum((abs(t) * r ** (k + 1) for k, t in enumerate(taylor)), ctx.mpf(0))
                if (image < r) is True:
                    logger.debug("trapping disk D(%s, %s) certified at %s", c, ctx.nstr(r, 10), self.place)
                    return TrappingDisk(c, ctx.nstr(r.b, 15), self.place)
        return None


def require_field(f, x):
    if x.field != f.field and not x.field.is_rational:
        raise DomainError(f"{x} does not lie in {f.field}")
    return x.promote(f.field)


@dataclass
class OrbitScan:
    """
    Outcome of following an orbit at an archimedean place.

    Attributes:
        escaped_at (int | None): First index certainly in the escape region.
        point: Enclosure of the orbit point where the scan stopped.
        disk (TrappingDisk | None): A trapping disk containing that point.
        steps (int): Number of iterates examined.
    """

    escaped_at: Optional[int]
    point: Any
    disk: Optional[TrappingDisk]
    steps: int

    @property
    def escaped(self):
        return self.escaped_at is not None

    @property
    def bounded(self):
        return self.disk is not None


def scan_arch_orbit(f, a, v, precision=None, budget=None, escape=None):
    """
    Iterate the enclosure of a at v until it escapes or is trapped.

    :param budget: Maximum number of applications of f.
    :return: An OrbitScan; neither escaped nor bounded means undecided.
    """
    precision = get_budget("PRECISION_BITS", precision)
    budget = get_budget("ITER_BUDGET", budget)
    escape = escape or escape_radius(f, v, precision)
    certifier = DiskCertifier(f, v, precision, escape)
    evaluate = embedded_polynomial(f, v, precision)
    z = v.embed(a, precision)
    for n in range(budget + 1):
        if escape.escapes_interval(z):
            logger.debug("orbit of %s escapes at %s after %s steps", a, v, n)
            return OrbitScan(n, z, None, n)
        disk = certifier.certify_interval(z)
        if disk is not None:
            return OrbitScan(None, z, disk, n)
        if n < budget:
            z = evaluate(z)
    logger.warning("orbit of %s under %s undecided at %s after %s steps", a, f, v, budget)
    return OrbitScan(None, z, None, budget)
