"""
Monomial-type detection for polynomials in characteristic zero.

A polynomial is of monomial type when it is affinely conjugate to z^d or to
+-C_d, the monic centered Chebyshev polynomial with C_d(z + 1/z) = z^d + z^-d.
After centering, only a scaling z -> lambda z remains; alpha = 1/lambda
satisfies alpha^2 = r with r = -c_(d-2) / (d a_d), and the parity of C_d
means every comparison needs either alpha itself (d even, where alpha is
forced into the base field) or only powers of r (d odd).
"""

import logging
from dataclasses import dataclass
from typing import Any, Optional

from algebra.polynomials import Polynomial
from algebra.series import LaurentTail

logger = logging.getLogger(__name__)

MONOMIAL_TYPE = "MonomialType"
NONEXCEPTIONAL = "Nonexceptional"


@dataclass
class PolynomialType:
    """
    Classification of a polynomial.

    Attributes:
        kind (str): "MonomialType" or "Nonexceptional".
        model (str): "power", "chebyshev" or "" for the matched normal form.
        sign (int): epsilon in +-C_d for Chebyshev matches.
        center: The translation beta used to center f.
        scaling: alpha (d even) or alpha^2 (d odd) for Chebyshev matches.
        identity_verified (bool): C_d(z + 1/z) = z^d + z^-d checked exactly.
    """

    kind: str
    model: str = ""
    sign: int = 1
    center: Any = None
    scaling: Optional[Any] = None
    identity_verified: bool = False

    @property
    def is_monomial_type(self):
        return self.kind == MONOMIAL_TYPE


def chebyshev(d, zero, one):
    """
    The monic centered Chebyshev polynomial C_d.
    """
    z = Polynomial.variable(zero, one)
    previous, current = Polynomial.constant(one * 2, zero), z
    if d == 0:
        return previous
    for _ in range(d - 1):
        previous, current = current, z * current - previous
    return current


def chebyshev_identity_holds(d, zero, one):
    """
    Exact check of C_d(z + 1/z) = z^d + z^-d with Laurent arithmetic.
    """
    pi = LaurentTail(1, [one, zero, one], None, zero)
    lhs = LaurentTail(0, [], None, zero)
    power = LaurentTail.monomial(0, one, zero)
    for c in chebyshev(d, zero, one).coeffs:
        lhs = lhs + power.scale(c)
        power = power * pi
    rhs = LaurentTail.monomial(d, one, zero) + LaurentTail.monomial(-d, one, zero)
    return lhs.agrees_with(rhs)


def centered(f):
    """
    Conjugate f by z -> z + beta so that the z^(d-1) coefficient vanishes.

    :return: (beta, centered polynomial).
    """
    d = f.degree
    beta = -f.poly[d - 1] / (f.leading * d)
    return beta, f.poly.shift(beta) - beta


def _chebyshev_match(g, d):
    lead = g.leading
    r = -g[d - 2] / (lead * d)
    if not r:
        return None
    t = chebyshev(d, g.zero, g.zero + 1)
    if d % 2 == 0:
        for sign in (1, -1):
            alpha = (g.zero + sign) / (lead * r ** ((d - 2) // 2))
            if alpha * alpha != r:
                continue
            if all(g[k] * alpha ** (k - 1) == t[k] * sign for k in range(d + 1)):
                return sign, alpha
        return None
    check = lead * r ** ((d - 1) // 2)
    if check not in (1, -1):
        return None
    sign = 1 if check == 1 else -1
    for k in range(d + 1):
        if k % 2 == 0:
            if g[k]:
                return None
        elif g[k] * r ** ((k - 1) // 2) != t[k] * sign:
            return None
    return sign, r


def classify_polynomial_type(f):
    """
    Decide whether f is of monomial type.

    Args:
        f (PolynomialSystem): A polynomial of degree d >= 2.

    Returns:
        PolynomialType: MonomialType with the matched model, or Nonexceptional.
    """
    d = f.degree
    beta, g = centered(f)
    if not any(g.coeffs[:-1]):
        logger.debug("%s is conjugate to a power map", f)
        return PolynomialType(MONOMIAL_TYPE, "power", 1, beta)
    match = _chebyshev_match(g, d)
    if match is None:
        return PolynomialType(NONEXCEPTIONAL, center=beta)
    sign, scaling = match
    verified = chebyshev_identity_holds(d, f.field.zero, f.field.one)
    logger.debug("%s is conjugate to %sC_%s", f, "-" if sign < 0 else "", d)
    return PolynomialType(MONOMIAL_TYPE, "chebyshev", sign, beta, scaling, verified)
