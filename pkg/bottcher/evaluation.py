"""
Certified evaluation of Böttcher coordinates at archimedean places.

Once an orbit point w = f^m(a) lies in the escape region,
phi(w) = b_1 w prod_{n>=0} F(f^n(w))^(1/d^(n+1)) with F = f / (a_d z^d),
and every factor stays within 1/2 of 1, so principal branches apply. The
value at a itself is only determined up to a d^m-th root of unity, so the
result reports phi(f^m(a)) together with the shift m and the canonical
log|phi(a)| = d^-m log|phi(f^m(a))|.
"""

import logging
import math
from dataclasses import dataclass
from typing import Any, Optional

from algebra.conf import get_budget
from algebra.exceptions import PreconditionError, UndecidedError
from algebra.intervals import CertifiedComplex, CertifiedReal, interval_context

from .escape import embedded_polynomial, escape_radius, require_field, scan_arch_orbit
from .series import leading_roots

logger = logging.getLogger(__name__)


@dataclass
class BottcherValue:
    """
    An enclosure of phi_f at an escaping orbit point.

    Attributes:
        place (Place): The archimedean embedding.
        shift (int): m, the first escaped iterate; value encloses phi(f^m(a)).
        value (CertifiedComplex | None): The enclosure; None when b_1 was
            adjoined and its embedding is not canonical.
        log_modulus (CertifiedReal): log|phi(a)|, independent of branches.
        exact: phi(a) as an exact element when phi is a monomial map.
    """

    place: Any
    shift: int
    value: Optional[CertifiedComplex]
    log_modulus: CertifiedReal
    exact: Any = None


def tail_terms(d, precision):
    """
    Number of product factors after which the tail is below 2^(-precision/2).
    """
    return math.ceil((precision / 2 + 4) / math.log2(d)) + 1


def telescoped_log(f, w, embedding, precision):
    """
    Sum over n >= 0 of d^-(n+1) Log F(f^n(w)) for w in the escape region.

    :return: (sum, tail) where tail is the symmetric interval bounding the
        omitted factors.
    """
    ctx = interval_context(precision)
    d = f.degree
    evaluate = embedded_polynomial(f, embedding, precision)
    lead = embedding.embed(f.leading, precision)
    total = ctx.mpc(0) if embedding.is_complex else ctx.mpf(0)
    weight = 1
    for _ in range(tail_terms(d, precision)):
        image = evaluate(w)
        weight *= d
        total = total + ctx.ln(image / (lead * w**d)) / weight
        w = image
    tail = ctx.ln2 / (weight * (d - 1))
    return total, ctx.mpf((-tail.b, tail.b))


def escaped_log_modulus(f, scan, embedding, precision):
    """
    log|phi(a)| = g(a) from an orbit scan that escaped at step m.
    """
    ctx = interval_context(precision)
    total, tail = telescoped_log(f, scan.point, embedding, precision)
    lead = embedding.embed(f.leading, precision)
    log_abs_lead = ctx.ln(abs(lead)) / (f.degree - 1)
    return total, tail, (log_abs_lead + ctx.ln(abs(scan.point)) + total.real + tail) / f.degree**scan.escaped_at


def _embedded_leading_root(f, v, precision, root_choice):
    root = leading_roots(f)[root_choice]
    if not root.is_adjoined:
        return root.value, v.embed(root.value, precision)
    ctx = interval_context(precision)
    lead = v.embed(f.leading, precision)
    if not v.is_complex and (lead > 0) is True:
        return None, ctx.exp(ctx.ln(lead) / (f.degree - 1))
    return None, None


def evaluate_bottcher_arch(f, a, embedding, precision=None, budget=None, root_choice=0):
    """
    Enclose phi_f at the orbit of a at an archimedean embedding.

    Args:
        f (PolynomialSystem): The polynomial.
        a (FieldElement): The point.
        embedding (Place): An archimedean place of f's field.
        precision (int): Working precision in bits.
        budget (int): Iterations allowed to reach the escape region.
        root_choice (int): Which b_1 to use, as in compute_bottcher.

    Returns:
        BottcherValue

    Raises:
        PreconditionError: If the orbit is certified bounded.
        UndecidedError: If the orbit does not escape within the budget.
    """
    precision = get_budget("PRECISION_BITS", precision)
    a = require_field(f, a)
    escape = escape_radius(f, embedding, precision)
    scan = scan_arch_orbit(f, a, embedding, precision, budget, escape)
    if scan.bounded:
        raise PreconditionError(
            f"orbit of {a} is bounded at {embedding}", disk=scan.disk.as_dict()
        )
    if not scan.escaped:
        raise UndecidedError(
            f"orbit of {a} did not escape at {embedding}", obstruction="iteration budget", steps=scan.steps
        )
    ctx = interval_context(precision)
    m = scan.escaped_at
    total, tail, log_modulus = escaped_log_modulus(f, scan, embedding, precision)
    exact_root, b1 = _embedded_leading_root(f, embedding, precision, root_choice)
    value = None
    if b1 is not None:
        if embedding.is_complex:
            product = ctx.exp(total + ctx.mpc(tail, tail))
        else:
            product = ctx.exp(total + tail)
        value = CertifiedComplex(b1 * scan.point * product, precision)
    exact = None
    if exact_root is not None and not any(f.coeffs[:-1]):
        exact = exact_root * a
    logger.debug("Böttcher value of %s at %s computed with shift %s", a, embedding, m)
    return BottcherValue(embedding, m, value, CertifiedReal(log_modulus, precision), exact)
