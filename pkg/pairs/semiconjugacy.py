"""
Polynomial semiconjugacies g∘π = π∘f^k.
"""

import logging
from dataclasses import dataclass

from algebra.conf import get_budget
from algebra.factoring import roots_in_field
from algebra.polynomials import Polynomial

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Semiconjugacy:
    """
    g∘π = π∘f^k, verified by exact composition.

    π may have degree 1.
    """

    k: int
    pi: Polynomial

    def __str__(self):
        return f"k = {self.k}, pi = {self.pi}"


def _leading_candidates(top, g_lead, D, m, field):
    """
    Leading coefficients c with g_lead * c^D = c * top^m.
    """
    target = top**m / g_lead
    if D == 1:
        return [field.one] if target == 1 else []
    equation = Polynomial([-target] + [field.zero] * (D - 2) + [field.one], field.zero)
    return [root for root, _ in roots_in_field(equation, field) if root]


def _solve_lower(g, fk, m, lead, field):
    """
    Determine c_{m-1}, ..., c_0 from the coefficients of z^{mD-1}, ..., z^{mD-m}.

    Each of these coefficients is affine in the next unknown, with slope
    D * g_lead * lead^(D-1).
    """
    D = g.degree
    slope = lead ** (D - 1) * g.leading * D
    coeffs = [field.zero] * m + [lead]
    for j in range(1, m + 1):
        pi = Polynomial(coeffs, field.zero)
        residual = g.poly(pi) - pi(fk)
        coeffs[m - j] = -residual[m * D - j] / slope
    return Polynomial(coeffs, field.zero)


def semiconjugacy_search(f, g, deg_bound=None, iterate_bound=None):
    """
    The first (k, π) with g∘π = π∘f^k, degrees ascending in k then deg π.

    :param deg_bound: Largest degree of π tried.
    :param iterate_bound: Largest k tried.
    :return: A Semiconjugacy, or None when no polynomial π exists in range.
    """
    deg_bound = get_budget("BIDEGREE", deg_bound)
    iterate_bound = get_budget("ITERATE_BOUND", iterate_bound)
    field = f.field.join(g.field)
    f, g = f.promote(field), g.promote(field)
    D = g.degree
    for k in range(1, iterate_bound + 1):
        if D != f.degree**k:
            continue
        fk = f.poly.iterate(k)
        for m in range(1, deg_bound + 1):
            for lead in _leading_candidates(fk.leading, g.leading, D, m, field):
                pi = _solve_lower(g, fk, m, lead, field)
                if g.poly(pi) == pi(fk):
                    logger.debug("semiconjugacy %s found for k = %s", pi, k)
                    return Semiconjugacy(k, pi)
    return None
