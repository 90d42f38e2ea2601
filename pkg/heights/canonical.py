"""
Canonical heights assembled from per-place Green values.

The finite part is kept symbolically as {p: c_p}, meaning sum c_p log p; the
archimedean part is a certified enclosure. Both carry the 1/[K:Q]
normalization, so heights over Q and over quadratic fields are comparable.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List

from algebra.conf import get_budget
from algebra.intervals import CertifiedReal
from algebra.places import relevant_places

from .green import green, log_prime

logger = logging.getLogger(__name__)


@dataclass
class HeightValue:
    """
    h_f(a) = sum_p c_p log p + (archimedean part).

    Attributes:
        finite (dict): prime -> Fraction c_p, nonzero entries only.
        arch (CertifiedReal): Weighted sum of the archimedean Green values.
        greens (list): The GreenValue of every relevant place.
        undecided_places (list): Places whose Green value stayed undecided;
            a nonempty list marks the height as partial.
        precision (int): Bits used for the archimedean part.
    """

    finite: Dict[int, Fraction]
    arch: CertifiedReal
    greens: List = field(default_factory=list)
    undecided_places: List = field(default_factory=list)
    precision: int = 128
    normalized: bool = True

    @property
    def partial(self):
        return bool(self.undecided_places)

    @property
    def is_zero(self):
        """
        Every relevant place is certified bounded.
        """
        return not self.partial and all(g.bounded for g in self.greens)

    @property
    def is_certified_positive(self):
        return any(g.escaped for g in self.greens)

    @property
    def arch_is_zero(self):
        return all(g.bounded for g in self.greens if g.place.is_archimedean)

    def value(self):
        """
        The total as a CertifiedReal (lower bound only when partial).
        """
        total = self.arch
        for p, c in self.finite.items():
            total = total + log_prime(p, self.precision) * c
        return total

    def finite_vector(self, primes):
        return [self.finite.get(p, Fraction(0)) for p in primes]

    def render(self):
        pieces = [f"{c}*log({p})" for p, c in sorted(self.finite.items())]
        if not self.arch_is_zero:
            pieces.append(f"({self.arch})")
        return " + ".join(pieces) or "0"


def canonical_height(f, a, precision=None, budget=None):
    """
    The canonical height of a under f.

    Args:
        f (PolynomialSystem): The polynomial, degree d >= 2.
        a (FieldElement): The point.
        precision (int): Bits for archimedean enclosures.
        budget (int): Iterations allowed per place.

    Returns:
        HeightValue: partial when some place stayed undecided; omitted
        places have good reduction and contribute exactly 0.
    """
    precision = get_budget("PRECISION_BITS", precision)
    K = f.field.join(a.field)
    f = f.promote(K)
    a = a.promote(K)
    finite = {}
    arch = CertifiedReal.zero(precision)
    greens = []
    undecided = []
    for v in relevant_places(f.poly, a):
        value = green(f, a, v, precision, budget)
        greens.append(value)
        weight = Fraction(v.local_degree, K.degree)
        if not value.decided:
            undecided.append(v)
        elif v.is_archimedean:
            arch = arch + value.as_real(precision) * weight
        elif value.escaped:
            finite[v.prime] = finite.get(v.prime, Fraction(0)) + value.exact * weight
    finite = {p: c for p, c in sorted(finite.items()) if c}
    if undecided:
        logger.warning("height of %s under %s is partial; undecided at %s", a, f, ", ".join(map(str, undecided)))
    return HeightValue(finite, arch, greens, undecided, precision)
