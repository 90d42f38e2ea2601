"""
Böttcher coordinates as truncated Laurent series.

A degree-d polynomial f has a unique series phi = b_1 z + b_0 + b_{-1} z^{-1}
+ ... with phi∘f = phi^d once the leading coefficient b_1 (a root of
t^(d-1) = a_d) is fixed. Writing phi = b_1 z B(z) with B = 1 + sum beta_k z^-k
turns the functional equation into F(z) B(f(z)) = B(z)^d with
F = f / (a_d z^d), which only involves the base field; each beta_k is the
order z^-k residual divided by d.
"""

import logging
from dataclasses import dataclass
from typing import Any

from algebra.conf import get_budget
from algebra.exceptions import ArgumentError, CertificateError
from algebra.factoring import factor_over
from algebra.polynomials import Polynomial
from algebra.quotient import QuotientRing
from algebra.series import LaurentTail, compose_series

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LeadingRoot:
    """
    A choice of b_1 with b_1^(d-1) = a_d.

    Attributes:
        value: The root, a FieldElement or the generator of `ring`.
        ring: The base FieldSpec when the root is in the base field, otherwise
            the QuotientRing K[t]/(m) adjoining it.
        modulus (Polynomial | None): m(t) when the root was adjoined.
    """

    value: Any
    ring: Any
    modulus: Any = None

    @property
    def is_adjoined(self):
        return self.modulus is not None

    def lift(self, x):
        """
        Map a base field element into the coefficient ring of the root.
        """
        return self.ring.element(x) if self.is_adjoined else x

    @property
    def zero(self):
        return self.ring.zero


def _rational_sort_key(root):
    if root.field.is_rational:
        return (0, abs(root.a), root.a < 0, str(root))
    return (1, abs(root.norm()), root.a < 0, str(root))


def leading_roots(f):
    """
    All available choices of b_1, in the deterministic preference order.

    Roots lying in the base field come first (smallest absolute value,
    positive preferred); then one adjoined root per irreducible factor of
    t^(d-1) - a_d of degree >= 2, in lexicographic order of the factors.
    """
    d = f.degree
    K = f.field
    equation = Polynomial([-f.leading] + [K.zero] * (d - 2) + [K.one], K.zero)
    if d == 2:
        return [LeadingRoot(f.leading, K)]
    factors = factor_over(equation, K)
    roots = sorted((-factor[0] for factor, _ in factors if factor.degree == 1), key=_rational_sort_key)
    choices = [LeadingRoot(root, K) for root in roots]
    for factor, _ in factors:
        if factor.degree >= 2:
            ring = QuotientRing(factor, K)
            choices.append(LeadingRoot(ring.generator, ring, factor))
    return choices


@dataclass
class BottcherSeries:
    """
    The Böttcher coordinate of `system` to a fixed number of coefficients.

    Attributes:
        system (PolynomialSystem): The polynomial f.
        root (LeadingRoot): The chosen b_1.
        series (LaurentTail): phi with top exponent 1 over the root's ring.
        betas (list): beta_1, ..., beta_{N-1} in the base field.
        order (int): Number of retained coefficients N.
    """

    system: Any
    root: LeadingRoot
    series: LaurentTail
    betas: list
    order: int

    @property
    def b1(self):
        return self.root.value

    @property
    def ring(self):
        return self.root.ring

    @property
    def coefficients(self):
        return list(self.series.coefficients_down_to(2 - self.order))

    def residual(self):
        """
        compose_series(phi, f) - phi^d down to the common valid order.
        """
        lhs = compose_series(self.series, self.system.poly.map_coeffs(self.root.lift, self.root.zero))
        rhs = self.series ** self.system.degree
        return lhs - rhs

    def verify(self):
        """
        True when phi∘f and phi^d agree exactly to the recorded order.
        """
        lifted = self.system.poly.map_coeffs(self.root.lift, self.root.zero)
        return compose_series(self.series, lifted).agrees_with(self.series ** self.system.degree)


def _normalized_quotient(f):
    """
    F(z) = f(z) / (a_d z^d) as an exact LaurentTail 1 + ... + (a_0/a_d) z^-d.
    """
    lead = f.leading
    coeffs = [c / lead for c in reversed(f.coeffs)]
    return LaurentTail(0, coeffs, None, f.field.zero)


def solve_betas(f, order):
    """
    beta_1, ..., beta_{order-1} of B = 1 + sum beta_k z^-k.
    """
    d = f.degree
    zero = f.field.zero
    F = _normalized_quotient(f)
    betas = []
    for k in range(1, order):
        B = LaurentTail(0, [f.field.one] + betas + [zero], -k, zero)
        image = F * compose_series(B, f.poly)
        residual = image.coefficient(-k) - (B**d).coefficient(-k)
        betas.append(residual / d)
    return betas


def compute_bottcher(f, order=None, root_choice=0):
    """
    The Böttcher coordinate of f to `order` coefficients.

    Args:
        f (PolynomialSystem): The polynomial, of degree d >= 2.
        order (int): Number of coefficients N >= 2 (z^1 down to z^(2-N)).
        root_choice (int): Index into leading_roots(f).

    Returns:
        BottcherSeries: phi with phi∘f = phi^d verified exactly.

    Raises:
        ArgumentError: If N < 2 or root_choice is out of range.
        CertificateError: If the functional equation fails to verify.
    """
    order = get_budget("BOTTCHER_ORDER", order)
    if order < 2:
        raise ArgumentError(f"Böttcher order must be at least 2, got {order}")
    choices = leading_roots(f)
    if not 0 <= root_choice < len(choices):
        raise ArgumentError(f"root_choice {root_choice} out of range; {len(choices)} choices available")
    root = choices[root_choice]
    betas = solve_betas(f, order)
    coeffs = [root.value] + [root.value * root.lift(beta) for beta in betas]
    series = LaurentTail(1, coeffs, 2 - order, root.zero)
    result = BottcherSeries(f, root, series, betas, order)
    if not result.verify():
        raise CertificateError(f"Böttcher series of {f} failed the functional equation")
    logger.debug("Böttcher series of %s computed to %s coefficients over %s", f, order, root.ring)
    return result


def twist(result, mu):
    """
    mu * phi, the series obtained from another (d-1)-th root b_1 * mu.
    """
    return LaurentTail(1, [mu * c for c in result.series.coeffs], result.series.valid_to, result.series.zero)


def semiconjugacy_residual(phi_f, phi_g, pi, exponent):
    """
    Compare phi_g∘pi with phi_f^exponent.

    Returns the ratio of leading coefficients when the two series agree up to
    that constant factor, otherwise None.
    """
    lhs = compose_series(phi_g.series, pi.map_coeffs(phi_g.root.lift, phi_g.root.zero))
    rhs = phi_f.series**exponent
    if not lhs or not rhs:
        return None
    factor = lhs.leading / rhs.leading
    return factor if lhs.agrees_with(rhs.scale(factor)) else None
