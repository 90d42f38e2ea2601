"""
Polynomial dynamical systems on the affine line.
"""

from algebra.exceptions import ArgumentError
from algebra.fields import QQ_FIELD, FieldElement, galois_conjugate
from algebra.polynomials import Polynomial


class PolynomialSystem:
    """
    A polynomial self-map f(z) = a_d z^d + ... + a_0 of degree d >= 2.

    Attributes:
        poly (Polynomial): The polynomial over `field`.
        field (FieldSpec): Q or the quadratic field holding every coefficient.
        name (str): Optional label used in reports.
    """

    def __init__(self, poly, field=None, name=""):
        if field is None:
            field = QQ_FIELD
            for c in poly.coeffs:
                field = field.join(c.field)
        poly = poly.map_coeffs(lambda c: c.promote(field), field.zero)
        if poly.degree < 2:
            raise ArgumentError(f"a dynamical system needs degree >= 2, got {poly.degree}")
        self.poly = poly
        self.field = field
        self.name = name

    @classmethod
    def from_coefficients(cls, coeffs, field=QQ_FIELD, name=""):
        """
        Build from ascending coefficients given as strings, ints or Fractions.
        """
        elements = [
            FieldElement.parse(c, field) if isinstance(c, str) else FieldElement(c, 0, field)
            for c in coeffs
        ]
        return cls(Polynomial(elements, field.zero), field, name)

    @property
    def degree(self):
        return self.poly.degree

    @property
    def leading(self):
        return self.poly.leading

    @property
    def coeffs(self):
        return self.poly.coeffs

    def __getitem__(self, k):
        return self.poly[k]

    def __call__(self, x):
        return self.poly(x)

    def __eq__(self, other):
        return isinstance(other, PolynomialSystem) and self.poly == other.poly

    def __hash__(self):
        return hash(self.poly)

    def iterate(self, n):
        if n < 1:
            raise ArgumentError("iterates start at n = 1")
        return PolynomialSystem(self.poly.iterate(n), self.field, f"{self.name}^{n}" if self.name else "")

    def compose(self, other):
        """
        The system self∘other.
        """
        field = self.field.join(other.field)
        return PolynomialSystem(self.poly.compose(other.poly), field)

    def orbit(self, a, length):
        """
        The exact points a, f(a), ..., f^(length-1)(a).
        """
        points = [a]
        for _ in range(length - 1):
            points.append(self.poly(points[-1]))
        return points

    def conjugate(self):
        """
        Apply the Galois conjugation to every coefficient.
        """
        return PolynomialSystem(self.poly.map_coeffs(galois_conjugate, self.field.zero), self.field, self.name)

    def promote(self, field):
        return PolynomialSystem(self.poly, self.field.join(field), self.name)

    def critical_points_polynomial(self):
        return self.poly.derivative()

    def serialize(self):
        return [str(c) for c in self.poly.coeffs]

    def __str__(self):
        return self.poly.render("z")

    def __repr__(self):
        return f"PolynomialSystem({self})"
