"""
Binary forms in (X, Y) and their charts on the projective line.

Chart 0 is t = Y/X, chart 1 is s = X/Y; a form G gives the chart
polynomials G(1, t) and G(s, 1).
"""

from algebra.multivariate import MultiPolynomial
from algebra.polynomials import Polynomial


def chart_polynomial(form, chart, zero):
    """
    G(1, z) when chart is 0, G(z, 1) when chart is 1.
    """
    coeffs = {}
    for e, c in form.terms.items():
        k = e[1 - chart]
        coeffs[k] = coeffs[k] + c if k in coeffs else c
    top = max(coeffs, default=-1)
    return Polynomial([coeffs.get(k, zero) for k in range(top + 1)], zero)


def form_from_chart(poly, degree):
    """
    The binary form X^degree * poly(Y/X).
    """
    return MultiPolynomial({(degree - k, k): c for k, c in enumerate(poly.coeffs)}, 2, poly.zero)


def vanishes_at_infinity(form):
    """
    Whether [0 : 1] is a root, i.e. the Y^deg coefficient is zero.
    """
    degree = form.total_degree
    return degree > 0 and not form.coefficient((0, degree))


def binary_variables(zero):
    return MultiPolynomial.variable(0, 2, zero), MultiPolynomial.variable(1, 2, zero)
