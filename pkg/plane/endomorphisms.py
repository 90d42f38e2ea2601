"""
Dominant polynomial endomorphisms f = (f_1, f_2) of the affine plane.
"""

import logging
from dataclasses import dataclass
from typing import Any

from algebra.exceptions import ArgumentError, PreconditionError
from algebra.fields import QQ_FIELD
from algebra.multivariate import MultiPolynomial, parse_terms

from .forms import chart_polynomial

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PlaneEndomorphism:
    """
    Attributes:
        f1 (MultiPolynomial): First coordinate, in (x, y).
        f2 (MultiPolynomial): Second coordinate, in (x, y).
        field (FieldSpec): Q or the quadratic field of the coefficients.
        label (str): Name used in reports.
    """

    f1: MultiPolynomial
    f2: MultiPolynomial
    field: Any = QQ_FIELD
    label: str = ""

    @classmethod
    def build(cls, f1, f2, field=QQ_FIELD, label=""):
        """
        Validate degree and dominance.

        :raises ArgumentError: When a coordinate is not bivariate.
        :raises PreconditionError: When deg_1(f) < 2 or the Jacobian vanishes.
        """
        if f1.nvars != 2 or f2.nvars != 2:
            raise ArgumentError("plane endomorphisms need polynomials in x and y")
        f = cls(f1, f2, field, label)
        if f.degree < 2:
            raise PreconditionError(f"{f} has algebraic degree {f.degree} < 2")
        if not f.jacobian():
            raise PreconditionError(f"{f} is not dominant: its Jacobian vanishes")
        return f

    @classmethod
    def from_terms(cls, rows1, rows2, field=QQ_FIELD, label=""):
        """
        Read [[i, j, "c"], ...] rows for each coordinate.
        """
        return cls.build(parse_terms(rows1, 2, field), parse_terms(rows2, 2, field), field, label)

    @property
    def zero(self):
        return self.field.zero

    @property
    def degree(self):
        return max(self.f1.total_degree, self.f2.total_degree)

    @property
    def coordinates(self):
        return self.f1, self.f2

    def jacobian(self):
        return self.f1.partial(0) * self.f2.partial(1) - self.f1.partial(1) * self.f2.partial(0)

    def top_forms(self):
        d = self.degree
        return self.f1.homogeneous_part(d), self.f2.homogeneous_part(d)

    def __call__(self, x, y):
        return self.f1(x, y), self.f2(x, y)

    def compose(self, inner):
        """
        self∘inner.
        """
        polys = [inner.f1, inner.f2]
        return PlaneEndomorphism(self.f1.substitute(polys), self.f2.substitute(polys), self.field.join(inner.field), self.label)

    def iterate(self, n):
        if n < 1:
            raise ArgumentError("iterates start at n = 1")
        result = self
        for _ in range(n - 1):
            result = self.compose(result)
        return result

    def translate(self, origin):
        """
        The map v -> f(v + o) - o, which is f in coordinates centered at o.
        """
        ox, oy = origin
        X = MultiPolynomial.variable(0, 2, self.zero) + ox
        Y = MultiPolynomial.variable(1, 2, self.zero) + oy
        return PlaneEndomorphism(self.f1.substitute([X, Y]) - ox, self.f2.substitute([X, Y]) - oy, self.field, self.label)

    def homogenized(self):
        """
        [F_1 : F_2 : Z^d], the extension to P^2 in coordinates (X, Y, Z).
        """
        d = self.degree
        Z = MultiPolynomial.variable(2, 3, self.zero)
        return self.f1.homogenize(d), self.f2.homogenize(d), Z**d

    def render(self):
        return f"({self.f1.render()}, {self.f2.render()})"

    def __str__(self):
        return self.label or self.render()


def extends_to_P2(f):
    """
    Whether the top-degree forms have no common zero on the line at infinity.

    Two binary forms share a projective root exactly when their resultant
    vanishes: either both lose their y^d term (common root [0 : 1]) or
    their charts at x = 1 have a nonconstant gcd.
    """
    F1, F2 = f.top_forms()
    if not F1 or not F2:
        return False
    d = f.degree
    if not F1.coefficient((0, d)) and not F2.coefficient((0, d)):
        return False
    common = chart_polynomial(F1, 0, f.zero).gcd(chart_polynomial(F2, 0, f.zero))
    extends = common.degree <= 0
    logger.debug("%s %s to P^2", f, "extends" if extends else "does not extend")
    return extends
