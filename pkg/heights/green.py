"""
Green functions g_{f,v}(a) = lim d^-n log max(1, |f^n(a)|_v).

At a finite place the value is decided exactly: once an iterate z_m passes
the escape radius, |f(z)|_v = |a_d|_v |z|_v^d gives
g = d^-m (log|z_m|_v + log|a_d|_v / (d-1)), a rational multiple of log p.
At an archimedean place the escaped value is the telescoped Böttcher
modulus. Boundedness is only ever certified through an invariant disk.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional

from algebra.conf import get_budget
from algebra.intervals import CertifiedReal
from algebra.places import abs_value
from bottcher.escape import DiskCertifier, escape_radius, require_field, scan_arch_orbit
from bottcher.evaluation import escaped_log_modulus

logger = logging.getLogger(__name__)

ESCAPED_EXACT = "EscapedExact"
ESCAPED_CERTIFIED = "EscapedCertified"
BOUNDED = "BoundedCertified"
UNDECIDED = "UndecidedWithinBudget"


def log_prime(p, precision):
    return CertifiedReal.exact(p, precision).log()


@dataclass
class GreenValue:
    """
    g_{f,v}(a) at one place.

    Attributes:
        place (Place): The place v.
        status (str): EscapedExact, EscapedCertified, BoundedCertified or
            UndecidedWithinBudget.
        exact (Fraction | None): c with g = c log p (EscapedExact).
        certified (CertifiedReal | None): The enclosure (EscapedCertified).
        shift (int | None): Index m of the first escaped iterate.
        disk (TrappingDisk | None): The invariant disk (BoundedCertified).
        steps (int): Iterates examined.
        obstruction (str): Why an undecided value stopped.
    """

    place: Any
    status: str
    exact: Optional[Fraction] = None
    certified: Optional[CertifiedReal] = None
    shift: Optional[int] = None
    disk: Any = None
    steps: int = 0
    obstruction: str = ""

    @property
    def decided(self):
        return self.status != UNDECIDED

    @property
    def escaped(self):
        return self.status in (ESCAPED_EXACT, ESCAPED_CERTIFIED)

    @property
    def bounded(self):
        return self.status == BOUNDED

    def as_real(self, precision=None):
        """
        The value as a CertifiedReal; None when undecided.
        """
        precision = get_budget("PRECISION_BITS", precision)
        if self.status == ESCAPED_EXACT:
            return log_prime(self.place.prime, precision) * self.exact
        if self.status == ESCAPED_CERTIFIED:
            return self.certified
        if self.status == BOUNDED:
            return CertifiedReal.zero(precision)
        return None


def green_nonarch(f, a, v, budget=None, bit_cap=None):
    """
    g_{f,v}(a) at a finite place by exact iteration.

    Args:
        f (PolynomialSystem): The polynomial.
        a (FieldElement): The point.
        v (Place): A finite place of f's field.
        budget (int): Maximum number of applications of f.
        bit_cap (int): Largest coefficient size tolerated in the exact orbit.

    Returns:
        GreenValue
    """
    budget = get_budget("ITER_BUDGET", budget)
    bit_cap = get_budget("HEIGHT_BIT_CAP", bit_cap)
    a = require_field(f, a)
    d = f.degree
    escape = escape_radius(f, v)
    certifier = DiskCertifier(f, v, escape=escape)
    lead_term = abs_value(f.leading, v) / (d - 1)
    z = a
    for m in range(budget + 1):
        if escape.escapes(z):
            c = (abs_value(z, v) + lead_term) / d**m
            logger.debug("orbit of %s escapes at %s after %s steps", a, v, m)
            return GreenValue(v, ESCAPED_EXACT, exact=c, shift=m, steps=m)
        disk = certifier.certify(z)
        if disk is not None:
            return GreenValue(v, BOUNDED, disk=disk, steps=m)
        if m == budget:
            break
        z = f(z)
        if z.bit_size() > bit_cap:
            logger.warning("orbit of %s at %s exceeded %s bits after %s steps", a, v, bit_cap, m + 1)
            return GreenValue(v, UNDECIDED, steps=m + 1, obstruction="height bit cap")
    logger.warning("Green value of %s at %s undecided after %s steps", a, v, budget)
    return GreenValue(v, UNDECIDED, steps=budget, obstruction="iteration budget")


def green_arch(f, a, v, precision=None, budget=None):
    """
    g_{f,v}(a) at an archimedean place.

    The escaped value carries the geometric tail of the telescoped product;
    a trapping disk around the orbit certifies g = 0.
    """
    precision = get_budget("PRECISION_BITS", precision)
    a = require_field(f, a)
    escape = escape_radius(f, v, precision)
    scan = scan_arch_orbit(f, a, v, precision, budget, escape)
    if scan.bounded:
        return GreenValue(v, BOUNDED, disk=scan.disk, steps=scan.steps)
    if not scan.escaped:
        return GreenValue(v, UNDECIDED, steps=scan.steps, obstruction="iteration budget")
    _, _, log_modulus = escaped_log_modulus(f, scan, v, precision)
    return GreenValue(
        v,
        ESCAPED_CERTIFIED,
        certified=CertifiedReal(log_modulus, precision),
        shift=scan.escaped_at,
        steps=scan.steps,
    )


def green(f, a, v, precision=None, budget=None):
    """
    Dispatch to green_arch or green_nonarch by the kind of place.
    """
    if v.is_archimedean:
        return green_arch(f, a, v, precision, budget)
    return green_nonarch(f, a, v, budget)
