"""
Factorization over Q and Q(sqrt(D)) through sympy.

Polynomials cross into sympy as expressions in a private symbol and come
back as Polynomials over the same FieldSpec. Only the factor extraction the
supported fields need is exposed.
"""

import sympy

from .exceptions import DomainError
from .fields import FieldElement
from .polynomials import Polynomial

_T = sympy.Symbol("_t")


def to_sympy_expr(poly, symbol=_T):
    return sum((c.to_sympy() * symbol**k for k, c in enumerate(poly.coeffs)), sympy.Integer(0))


def from_sympy_expr(expr, field, symbol=_T):
    """
    Convert a univariate sympy expression with coefficients in `field`.
    """
    poly = sympy.Poly(sympy.expand(expr), symbol)
    coeffs = [FieldElement.from_sympy(c, field) for c in reversed(poly.all_coeffs())]
    return Polynomial(coeffs, field.zero)


def factor_over(poly, field):
    """
    Monic irreducible factors with multiplicities.

    :param poly: A nonconstant Polynomial over `field` (or over Q).
    :param field: Q or a quadratic field; factors are taken over it.
    :return: List of (monic Polynomial, multiplicity), sorted by degree then text.
    """
    if poly.degree < 1:
        raise DomainError("cannot factor a constant polynomial")
    expr = to_sympy_expr(poly)
    if field.is_rational:
        _, factors = sympy.factor_list(expr, _T)
    else:
        _, factors = sympy.factor_list(expr, _T, extension=field.sympy_generator())
    out = []
    for factor, multiplicity in factors:
        converted = from_sympy_expr(factor, field)
        if converted.degree >= 1:
            out.append((converted.monic(), multiplicity))
    out.sort(key=lambda item: (item[0].degree, item[0].render("t")))
    return out


def irreducible_factors(poly, field):
    return [factor for factor, _ in factor_over(poly, field)]


def roots_in_field(poly, field):
    """
    The roots of `poly` lying in `field`, with multiplicities.
    """
    return [(-factor[0], m) for factor, m in factor_over(poly, field) if factor.degree == 1]


def squarefree_decomposition(poly, field):
    """
    Distinct irreducible factors, ignoring multiplicity.
    """
    return irreducible_factors(poly, field)


def root_enclosures(poly, precision_digits=20):
    """
    Isolating boxes of all complex roots of a polynomial over Q.

    :return: List of ((re_lo, re_hi), (im_lo, im_hi)) rational pairs.
    """
    expr = to_sympy_expr(poly)
    sym_poly = sympy.Poly(expr, _T, domain=sympy.QQ)
    eps = sympy.Rational(1, 10**precision_digits)
    real, complex_ = sym_poly.intervals(all=True, eps=eps)
    boxes = []
    for (lo, hi), _ in real:
        boxes.append(((lo, hi), (sympy.Integer(0), sympy.Integer(0))))
    # Complex boxes come back as their lower-left and upper-right corners.
    for (lower, upper), _ in complex_:
        boxes.append(((sympy.re(lower), sympy.re(upper)), (sympy.im(lower), sympy.im(upper))))
    return boxes
