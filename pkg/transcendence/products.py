"""
Root of unity or transcendental: products of Böttcher coordinates.

For pairs (f_i, a_i) escaping at an archimedean place, the product
prod phi_{f_i}(a_i)^{n_i} is either a root of unity or transcendental, and
it is a root of unity exactly when sum n_s d_s vanishes on every block of
the geometric data. The decision is exact; the numeric product is only a
cross-check.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, List, Optional

from algebra.conf import get_budget
from algebra.exceptions import ArgumentError, PreconditionError, UndecidedError
from algebra.intervals import CertifiedComplex, CertifiedReal, interval_context
from algebra.places import archimedean_places
from bottcher.evaluation import evaluate_bottcher_arch
from heights.green import green_arch
from pairs.dynamical import common_field
from pairs.structure import geometric_data

from .blocks import LIMITED, NONZERO, ZERO, block_reports, merge_outlook

logger = logging.getLogger(__name__)

ROOT_OF_UNITY = "RootOfUnity"
TRANSCENDENTAL = "TranscendentalCertified"
BOUND_LIMITED = "BoundLimited"

CRITERION = "prod phi(a_i)^n_i is a root of unity iff sum n_s d_s = 0 on every block"

# Numeric cross-check: |P^k - 1| below 2^-40 for some k up to MAX_ORDER.
TOLERANCE = Fraction(1, 2**40)
MAX_ORDER = 12


@dataclass
class BottcherProduct:
    """
    A numeric evaluation of prod phi(a_i)^{n_i}.

    Attributes:
        place (Place): The archimedean place used.
        modulus (CertifiedReal): |product| = exp(sum n_i g(a_i)).
        shift (int): M with power = product^(d^M); phi is single-valued on
            the M-th iterates, which all lie in the escape region.
        power (CertifiedComplex | None): prod phi(f^M(a_i))^{n_i}, when every
            a_i with n_i != 0 escapes and b_1 embeds canonically.
    """

    place: Any
    modulus: CertifiedReal
    shift: int = 0
    power: Optional[CertifiedComplex] = None

    def distance_to_one(self, k=1):
        if self.power is None:
            return None
        ctx = self.power.ctx
        return CertifiedReal(abs(_integer_power(self.power.value, k, ctx) - 1), self.power.precision)

    def root_of_unity_order(self, max_order=MAX_ORDER, tolerance=TOLERANCE):
        """
        Least k <= max_order with |power^k - 1| certainly below tolerance.
        """
        if self.power is None:
            return None
        for k in range(1, max_order + 1):
            if self.distance_to_one(k).certainly_less(tolerance):
                return k
        return None


def _integer_power(z, n, ctx):
    base = z if n >= 0 else ctx.mpc(1) / z
    result = ctx.mpc(1)
    for _ in range(abs(n)):
        result = result * base
    return result


def escaping_greens(pairs, place, precision=None, budget=None):
    """
    Green values of every pair at `place`; each must certainly escape.

    :raises PreconditionError: When a pair is bounded at the place.
    :raises UndecidedError: When the budget runs out first.
    """
    greens = []
    for pair in pairs:
        K = place.field
        value = green_arch(pair.system.promote(K), pair.point.promote(K), place, precision, budget)
        if value.bounded:
            raise PreconditionError(f"{pair} does not escape at {place}")
        if not value.escaped:
            raise UndecidedError(f"{pair} did not escape at {place}", obstruction=value.obstruction)
        greens.append(value)
    return greens


def _resolve_place(pairs, place):
    if place is None or isinstance(place, int):
        return archimedean_places(common_field(*pairs))[place or 0]
    return place


def evaluate_bottcher_product(pairs, exponents, place=None, precision=None, budget=None):
    """
    Evaluate prod phi_{f_i}(a_i)^{n_i} at an archimedean place.

    The modulus is always returned. The complex value is returned as the
    d^M-th power of the product, where M is the largest escape shift;
    every pair must then share the degree d.
    """
    if len(pairs) != len(exponents):
        raise ArgumentError("one exponent is needed per pair")
    precision = get_budget("PRECISION_BITS", precision)
    v = _resolve_place(pairs, place)
    K = v.field
    log_total = CertifiedReal.zero(precision)
    escaping = True
    shift = 0
    for pair, n in zip(pairs, exponents):
        value = green_arch(pair.system.promote(K), pair.point.promote(K), v, precision, budget)
        if not value.decided:
            raise UndecidedError(f"{pair} is undecided at {v}", obstruction=value.obstruction)
        log_total = log_total + value.as_real(precision) * n
        if n:
            escaping = escaping and value.escaped
            if value.escaped:
                shift = max(shift, value.shift)
    product = BottcherProduct(v, log_total.exp(), shift)
    if not escaping or len({pair.degree for pair in pairs}) > 1:
        return product
    ctx = interval_context(precision)
    power = ctx.mpc(1)
    for pair, n in zip(pairs, exponents):
        if not n:
            continue
        system = pair.system.promote(K)
        point = pair.point.promote(K)
        for _ in range(shift):
            point = system(point)
        value = evaluate_bottcher_arch(system, point, v, precision, budget)
        if value.value is None or value.shift:
            logger.debug("no canonical Böttcher value for %s at %s", pair, v)
            return product
        power = power * _integer_power(value.value.value, n, ctx)
    product.power = CertifiedComplex(power, precision)
    return product


@dataclass
class TranscendenceVerdict:
    """
    Attributes:
        status (str): RootOfUnity, TranscendentalCertified or BoundLimited.
        blocks (list[BlockReport]): Block sums over the pairs with n_i != 0.
        product (BottcherProduct | None): The numeric cross-check.
        bound_limited (list[tuple]): Query indices of tests that stopped at
            the bounds between different blocks.
        criterion (str): The decision rule applied.
    """

    status: str
    blocks: List = field(default_factory=list)
    product: Optional[BottcherProduct] = None
    bound_limited: List = field(default_factory=list)
    criterion: str = CRITERION


def bottcher_product_status(
    pairs, exponents, place=None, bidegree=None, orbit_len=None, precision=None, budget=None
):
    """
    Decide whether prod phi_{f_i}(a_i)^{n_i} is a root of unity.

    Args:
        pairs (list[DynamicalPair]): Pairs of a common degree.
        exponents (list[int]): n_1, ..., n_r.
        place (Place | int | None): Archimedean place of the common field,
            or its index; the first one by default.
        bidegree (int): Curve bidegree bound for the equivalence tests.
        orbit_len (int): Orbit length for the equivalence tests.

    Returns:
        TranscendenceVerdict

    Raises:
        PreconditionError: If the degrees differ or a pair does not escape.
    """
    if len(pairs) != len(exponents):
        raise ArgumentError("one exponent is needed per pair")
    if len({pair.degree for pair in pairs}) > 1:
        raise PreconditionError("the pairs do not share one degree")
    if not pairs:
        return TranscendenceVerdict(ROOT_OF_UNITY)
    v = _resolve_place(pairs, place)
    escaping_greens(pairs, v, precision, budget)
    active = [i for i, n in enumerate(exponents) if n]
    if not active:
        product = evaluate_bottcher_product(pairs, exponents, v, precision, budget)
        return TranscendenceVerdict(ROOT_OF_UNITY, product=product)
    data = geometric_data([pairs[i] for i in active], bidegree, orbit_len, True, precision, budget)
    reports = block_reports(data, exponents, active)
    status = {ZERO: ROOT_OF_UNITY, NONZERO: TRANSCENDENTAL, LIMITED: BOUND_LIMITED}[merge_outlook(data, reports)]
    limited = [(active[s], active[t]) for s, t in data.bound_limited]
    product = evaluate_bottcher_product(pairs, exponents, v, precision, budget)
    if status == ROOT_OF_UNITY and product.power is not None and product.root_of_unity_order() is None:
        logger.warning("numeric product at %s is not within %s of a root of unity", v, TOLERANCE)
    if status == BOUND_LIMITED:
        logger.warning("Böttcher product verdict is bound-limited at %s pairs", len(limited))
    return TranscendenceVerdict(status, reports, product, limited)
