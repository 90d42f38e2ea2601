"""
Quotient rings K[t]/(m(t)) used to adjoin algebraic numbers exactly.

When m is irreducible the ring is a field and every nonzero element is
invertible; inversion runs the extended Euclidean algorithm on residues.
"""

from fractions import Fraction
from functools import cached_property

from .exceptions import ArgumentError, DomainError
from .fields import FieldElement
from .polynomials import Polynomial


class QuotientRing:
    """
    The ring K[t]/(m) for a monic modulus m of degree at least 1.

    Attributes:
        modulus (Polynomial): The monic modulus m(t).
        field (FieldSpec): The base field K.
    """

    def __init__(self, modulus, field=None):
        if modulus.degree < 1:
            raise ArgumentError("quotient modulus must have degree >= 1")
        if modulus.leading != 1:
            modulus = modulus.monic()
        self.modulus = modulus
        self.field = field if field is not None else modulus.leading.field

    def __eq__(self, other):
        return isinstance(other, QuotientRing) and self.modulus == other.modulus

    def __hash__(self):
        return hash(self.modulus)

    @property
    def degree(self):
        return self.modulus.degree

    def element(self, residue):
        if not isinstance(residue, Polynomial):
            residue = Polynomial([self.field.zero + residue], self.field.zero)
        return QuotientRingElement(residue % self.modulus, self)

    @cached_property
    def zero(self):
        return self.element(0)

    @cached_property
    def one(self):
        return self.element(1)

    @cached_property
    def generator(self):
        """
        The class of t, a root of the modulus.
        """
        return self.element(Polynomial.variable(self.field.zero, self.field.one))

    def __str__(self):
        return f"{self.field}[t]/({self.modulus.render('t')})"


class QuotientRingElement:
    """
    A canonical residue (degree < deg m) in a QuotientRing.
    """

    __slots__ = ("residue", "ring")

    def __init__(self, residue, ring):
        self.residue = residue
        self.ring = ring

    def _coerce(self, other):
        if isinstance(other, QuotientRingElement):
            if other.ring != self.ring:
                raise DomainError("elements of different quotient rings")
            return other
        if isinstance(other, (int, Fraction, FieldElement)):
            return self.ring.element(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return QuotientRingElement(self.residue + other.residue, self.ring)

    __radd__ = __add__

    def __neg__(self):
        return QuotientRingElement(-self.residue, self.ring)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return QuotientRingElement(self.residue - other.residue, self.ring)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return QuotientRingElement((self.residue * other.residue) % self.ring.modulus, self.ring)

    __rmul__ = __mul__

    def inverse(self):
        s, _, g = self.residue.gcdex(self.ring.modulus)
        if not g or g.degree != 0:
            raise ZeroDivisionError(f"{self} is not invertible in {self.ring}")
        return QuotientRingElement(s % self.ring.modulus, self.ring)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, exponent):
        if not isinstance(exponent, int):
            return NotImplemented
        base = self if exponent >= 0 else self.inverse()
        result = self.ring.one
        for bit in bin(abs(exponent))[2:]:
            result = result * result
            if bit == "1":
                result = result * base
        return result

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except DomainError:
            return False
        if other is None:
            return NotImplemented
        return self.residue == other.residue

    def __hash__(self):
        if self.residue.degree <= 0:
            return hash(self.residue[0])
        return hash(self.residue.coeffs)

    def __bool__(self):
        return bool(self.residue)

    @property
    def field(self):
        return self.ring.field

    def as_field_element(self):
        """
        The element as a FieldElement when it is a constant residue.
        """
        if self.residue.degree > 0:
            raise DomainError(f"{self} does not lie in {self.ring.field}")
        return self.residue[0]

    def coefficients(self):
        return [self.residue[k] for k in range(self.ring.degree)]

    def __str__(self):
        return self.residue.render("t")

    def __repr__(self):
        return f"QuotientRingElement({self}, {self.ring})"
