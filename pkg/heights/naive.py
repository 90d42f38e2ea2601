"""
Naive local and global heights of field elements.
"""

from fractions import Fraction

from algebra.conf import get_budget
from algebra.intervals import CertifiedReal, interval_context
from algebra.places import abs_value, archimedean_places, places_above, prime_divisors

from .green import log_prime


def log_plus(value):
    """
    max(0, value) for a CertifiedReal, keeping the enclosure when the sign is
    not decided.
    """
    if value.is_positive():
        return value
    if (value.upper > 0) is not True:
        return CertifiedReal.zero(value.precision)
    ctx = interval_context(value.precision)
    return CertifiedReal(ctx.mpf((0, value.upper)), value.precision)


def local_naive_height(x, v, precision=None):
    """
    g_v(x) = log max(1, |x|_v).

    :return: A Fraction c (meaning c log p) at a finite place, a CertifiedReal
        at an archimedean place.
    """
    if v.is_archimedean:
        precision = get_budget("PRECISION_BITS", precision)
        if not x:
            return CertifiedReal.zero(precision)
        return log_plus(abs_value(x, v, precision))
    if not x:
        return Fraction(0)
    return max(Fraction(0), abs_value(x, v))


def naive_height(x, precision=None):
    """
    h(x) = [K:Q]^-1 sum_v n_v log max(1, |x|_v) as a CertifiedReal.

    Only primes dividing the denominator of x can contribute at finite places.
    """
    precision = get_budget("PRECISION_BITS", precision)
    field = x.field
    total = CertifiedReal.zero(precision)
    if not x:
        return total
    for v in archimedean_places(field):
        total = total + local_naive_height(x, v, precision) * v.local_degree
    for p in sorted(prime_divisors(x.integral_form()[2])):
        for v in places_above(field, p):
            c = local_naive_height(x, v)
            if c:
                total = total + log_prime(p, precision) * (c * v.local_degree)
    return total * Fraction(1, field.degree)
