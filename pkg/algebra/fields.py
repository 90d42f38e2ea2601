"""
Exact arithmetic in Q and in quadratic fields Q(sqrt(D)).

Contents:
    FieldSpec: the base field, either Q or Q(sqrt(D)) with D squarefree.
    FieldElement: an immutable element a + b*sqrt(D) with rational a, b.
    galois_conjugate: the nontrivial automorphism of a quadratic field.
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Optional

import sympy
from sympy.ntheory.factor_ import core
from sympy.parsing.sympy_parser import parse_expr, standard_transformations

from .exceptions import ArgumentError, DomainError

_SQRT_TOKEN = re.compile(r"sqrt\(\s*(-?\d+)\s*\)")
_ALLOWED = re.compile(r"^[0-9+\-*/() _r]*$")
_FIELD_TEXT = re.compile(r"^Q(?:\(\s*sqrt\(\s*(-?\d+)\s*\)\s*\))?$")


def to_fraction(value):
    """
    Convert ints, Fractions and sympy rationals to a Fraction.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, sympy.Rational):
        return Fraction(int(value.p), int(value.q))
    if isinstance(value, str):
        return Fraction(value)
    raise DomainError(f"cannot read {value!r} as an exact rational")


@dataclass(frozen=True)
class FieldSpec:
    """
    The coefficient field of a computation.

    Attributes:
        radicand (int | None): None for Q, otherwise the squarefree D of Q(sqrt(D)).
    """

    radicand: Optional[int] = None

    def __post_init__(self):
        D = self.radicand
        if D is None:
            return
        if D in (0, 1) or core(abs(D)) != abs(D):
            raise ArgumentError(f"D = {D} is not a squarefree integer other than 0, 1")

    @classmethod
    def rational(cls):
        return cls(None)

    @classmethod
    def quadratic(cls, D):
        return cls(int(D))

    @classmethod
    def parse(cls, text):
        """
        Read "Q" or "Q(sqrt(D))".
        """
        match = _FIELD_TEXT.match(text.strip())
        if not match:
            raise ArgumentError(f"unrecognized field {text!r}")
        return cls(int(match.group(1))) if match.group(1) else cls.rational()

    @property
    def is_rational(self):
        return self.radicand is None

    @property
    def degree(self):
        return 1 if self.radicand is None else 2

    @property
    def is_real(self):
        return self.radicand is None or self.radicand > 0

    @property
    def discriminant(self):
        D = self.radicand
        if D is None:
            return 1
        return D if D % 4 == 1 else 4 * D

    def element(self, a, b=0):
        return FieldElement(a, b, self)

    @cached_property
    def zero(self):
        return FieldElement(0, 0, self)

    @cached_property
    def one(self):
        return FieldElement(1, 0, self)

    @cached_property
    def sqrt_d(self):
        if self.is_rational:
            raise DomainError("Q has no sqrt(D) generator")
        return FieldElement(0, 1, self)

    def join(self, other):
        """
        Smallest supported field containing both fields.
        """
        if self == other or other.is_rational:
            return self
        if self.is_rational:
            return other
        raise DomainError(f"cannot combine {self} and {other}")

    def sympy_domain(self):
        if self.is_rational:
            return sympy.QQ
        return sympy.QQ.algebraic_field(sympy.sqrt(self.radicand))

    def sympy_generator(self):
        return sympy.Integer(0) if self.is_rational else sympy.sqrt(self.radicand)

    def __str__(self):
        return "Q" if self.is_rational else f"Q(sqrt({self.radicand}))"


QQ_FIELD = FieldSpec.rational()


class FieldElement:
    """
    An exact element a + b*sqrt(D) of a supported field.

    Instances are immutable. Arithmetic with ints and Fractions coerces them
    into the field; arithmetic between Q and Q(sqrt(D)) lands in Q(sqrt(D)).
    """

    __slots__ = ("a", "b", "field")

    def __init__(self, a, b=0, field=QQ_FIELD):
        a = to_fraction(a)
        b = to_fraction(b)
        if field.is_rational and b:
            raise DomainError("nonzero sqrt part in Q")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "field", field)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    @classmethod
    def parse(cls, text, field=QQ_FIELD):
        """
        Read "p/q" or "a+b*sqrt(D)" losslessly.

        :param text: The serialized scalar.
        :param field: The field the scalar must belong to.
        :return: The parsed FieldElement.
        """
        text = text.strip()
        radicands = {int(value) for value in _SQRT_TOKEN.findall(text)}
        if radicands and radicands != {field.radicand}:
            raise DomainError(f"{text!r} does not belong to {field}")
        body = _SQRT_TOKEN.sub("_r", text)
        if not body or not _ALLOWED.match(body):
            raise ArgumentError(f"malformed exact scalar {text!r}")
        r = sympy.Symbol("_r")
        try:
            expr = parse_expr(
                body,
                local_dict={"_r": r},
                transformations=standard_transformations,
                evaluate=True,
            )
            poly = sympy.Poly(expr, r, domain=sympy.QQ)
        except (sympy.SympifyError, SyntaxError, TypeError, sympy.PolynomialError) as exc:
            raise ArgumentError(f"malformed exact scalar {text!r}") from exc
        if field.is_rational:
            if poly.degree() > 0:
                raise DomainError(f"{text!r} is not rational")
            return cls(to_fraction(poly.coeff_monomial(1)), 0, field)
        poly = poly.rem(sympy.Poly(r**2 - field.radicand, r, domain=sympy.QQ))
        return cls(
            to_fraction(poly.coeff_monomial(1)), to_fraction(poly.coeff_monomial(r)), field
        )

    @classmethod
    def from_sympy(cls, expr, field):
        """
        Convert a sympy number of the field (e.g. from factor_list) back.
        """
        expr = sympy.expand(sympy.sympify(expr))
        if field.is_rational:
            if not expr.is_Rational:
                raise DomainError(f"{expr} is not rational")
            return cls(to_fraction(expr), 0, field)
        gen = field.sympy_generator()
        b = sympy.nsimplify(expr.coeff(gen)) if expr.has(gen) else sympy.Integer(0)
        a = sympy.expand(expr - b * gen)
        if not (a.is_Rational and b.is_Rational):
            raise DomainError(f"{expr} is not in {field}")
        return cls(to_fraction(a), to_fraction(b), field)

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            field = self.field.join(other.field)
            return self._into(field), other._into(field)
        if isinstance(other, (int, Fraction)):
            return self, FieldElement(other, 0, self.field)
        return None

    def _into(self, field):
        if field == self.field:
            return self
        return FieldElement(self.a, self.b, field)

    def promote(self, field):
        """
        The same value viewed in a larger supported field.
        """
        self.field.join(field)
        return self._into(self.field.join(field))

    def __add__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        x, y = pair
        return FieldElement(x.a + y.a, x.b + y.b, x.field)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(-self.a, -self.b, self.field)

    def __sub__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        x, y = pair
        return FieldElement(x.a - y.a, x.b - y.b, x.field)

    def __rsub__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        x, y = pair
        return FieldElement(y.a - x.a, y.b - x.b, x.field)

    def __mul__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        x, y = pair
        if not x.b and not y.b:
            return FieldElement(x.a * y.a, 0, x.field)
        D = x.field.radicand
        return FieldElement(x.a * y.a + D * x.b * y.b, x.a * y.b + x.b * y.a, x.field)

    __rmul__ = __mul__

    def inverse(self):
        if not self:
            raise ZeroDivisionError("inverse of zero in " + str(self.field))
        if not self.b:
            return FieldElement(1 / self.a, 0, self.field)
        n = self.norm()
        return FieldElement(self.a / n, -self.b / n, self.field)

    def __truediv__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        x, y = pair
        return x * y.inverse()

    def __rtruediv__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        x, y = pair
        return y * x.inverse()

    def __pow__(self, exponent):
        if not isinstance(exponent, int):
            return NotImplemented
        base = self if exponent >= 0 else self.inverse()
        result = self.field.one
        for bit in bin(abs(exponent))[2:]:
            result = result * result
            if bit == "1":
                result = result * base
        return result

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            # Rationals compare across fields; irrational elements only within one.
            return self.a == other.a and self.b == other.b and (not self.b or self.field == other.field)
        if isinstance(other, (int, Fraction)):
            return not self.b and self.a == other
        return NotImplemented

    def __hash__(self):
        return hash(self.a) if not self.b else hash((self.a, self.b))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    @property
    def is_rational(self):
        return not self.b

    def norm(self):
        if self.field.is_rational:
            return self.a
        return self.a * self.a - self.field.radicand * self.b * self.b

    def trace(self):
        return self.a * self.field.degree

    def conjugate(self):
        return FieldElement(self.a, -self.b, self.field)

    def bit_size(self):
        """
        Largest bit length among the numerators and denominators of a and b.
        """
        return max(
            abs(self.a.numerator).bit_length(),
            self.a.denominator.bit_length(),
            abs(self.b.numerator).bit_length(),
            self.b.denominator.bit_length(),
        )

    def integral_form(self):
        """
        Integers (A, B, den) with self = (A + B*sqrt(D)) / den and den > 0.
        """
        den = sympy.ilcm(self.a.denominator, self.b.denominator)
        return int(self.a * den), int(self.b * den), int(den)

    def to_sympy(self):
        return sympy.Rational(self.a.numerator, self.a.denominator) + sympy.Rational(
            self.b.numerator, self.b.denominator
        ) * self.field.sympy_generator()

    def __str__(self):
        a_text = _fraction_text(self.a)
        if not self.b:
            return a_text
        D = self.field.radicand
        b_text = "" if abs(self.b) == 1 else _fraction_text(abs(self.b)) + "*"
        if not self.a:
            sign = "-" if self.b < 0 else ""
            return f"{sign}{b_text}sqrt({D})"
        sign = "-" if self.b < 0 else "+"
        return f"{a_text}{sign}{b_text}sqrt({D})"

    def __repr__(self):
        return f"FieldElement({self}, {self.field})"


def _fraction_text(value):
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def galois_conjugate(x):
    """
    Apply a + b*sqrt(D) -> a - b*sqrt(D); the identity on Q.
    """
    return x.conjugate()
