"""
Dense univariate polynomials over any exact ring of this project.

Coefficients may be FieldElements, QuotientRingElements or plain Fractions;
the polynomial only relies on ring operations (and division by the leading
coefficient for divmod and gcd).
"""

from fractions import Fraction

from .exceptions import DomainError
from .fields import QQ_FIELD, FieldElement, to_fraction


class Polynomial:
    """
    An immutable polynomial a_0 + a_1 z + ... + a_d z^d.

    Attributes:
        coeffs (tuple): Ascending coefficients, trailing zeros removed.
        zero: The zero of the coefficient ring, kept so that empty
            polynomials still know their ring.
    """

    __slots__ = ("coeffs", "zero")

    def __init__(self, coeffs, zero):
        coeffs = list(coeffs)
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        self.coeffs = tuple(coeffs)
        self.zero = zero

    @classmethod
    def over(cls, coeffs, field=QQ_FIELD):
        """
        Build a polynomial over a FieldSpec from ints, Fractions or elements.
        """
        elements = [
            c.promote(field) if isinstance(c, FieldElement) else FieldElement(c, 0, field)
            for c in coeffs
        ]
        return cls(elements, field.zero)

    @classmethod
    def variable(cls, zero, one):
        return cls([zero, one], zero)

    @classmethod
    def constant(cls, value, zero):
        return cls([value], zero)

    @property
    def one(self):
        return self.zero + 1

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def leading(self):
        if not self.coeffs:
            raise DomainError("the zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __getitem__(self, index):
        if 0 <= index < len(self.coeffs):
            return self.coeffs[index]
        return self.zero

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        if not self.coeffs:
            return other == 0
        return self.degree == 0 and self.coeffs[0] == other

    def __hash__(self):
        return hash(self.coeffs)

    def __call__(self, x):
        """
        Horner evaluation; x may be anything the coefficients act on.
        """
        if not self.coeffs:
            return self.zero * x if isinstance(x, Polynomial) else self.zero
        result = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            result = result * x + c
        if isinstance(x, Polynomial) and not isinstance(result, Polynomial):
            return Polynomial([result], x.zero)
        return result

    def _lift(self, other):
        if isinstance(other, Polynomial):
            return other
        return Polynomial([self.zero + other], self.zero)

    def __add__(self, other):
        if not isinstance(other, Polynomial) and not _is_scalar(other):
            return NotImplemented
        other = self._lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial([self[i] + other[i] for i in range(n)], self.zero)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial([-c for c in self.coeffs], self.zero)

    def __sub__(self, other):
        if not isinstance(other, Polynomial) and not _is_scalar(other):
            return NotImplemented
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            if not self.coeffs or not other.coeffs:
                return Polynomial([], self.zero)
            out = [self.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if not a:
                    continue
                for j, b in enumerate(other.coeffs):
                    out[i + j] = out[i + j] + a * b
            return Polynomial(out, self.zero)
        if not _is_scalar(other):
            return NotImplemented
        return Polynomial([c * other for c in self.coeffs], self.zero)

    __rmul__ = __mul__

    def __pow__(self, exponent):
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        result = Polynomial([self.one], self.zero)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def compose(self, inner):
        """
        Return self(inner(z)).
        """
        return self(inner)

    def iterate(self, n):
        """
        Return the n-th compositional iterate.
        """
        result = Polynomial.variable(self.zero, self.one)
        for _ in range(n):
            result = self.compose(result)
        return result

    def shift(self, c):
        """
        Return self(z + c).
        """
        return self.compose(Polynomial([self.zero + c, self.one], self.zero))

    def derivative(self):
        return Polynomial(
            [c * k for k, c in enumerate(self.coeffs)][1:], self.zero
        )

    def map_coeffs(self, fn, zero=None):
        return Polynomial([fn(c) for c in self.coeffs], zero if zero is not None else fn(self.zero))

    def monic(self):
        return self * (self.one / self.leading)

    def __divmod__(self, other):
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        remainder = list(self.coeffs)
        inverse_lead = self.one / other.leading
        quotient = [self.zero] * max(len(remainder) - other.degree, 1)
        while len(remainder) - 1 >= other.degree and remainder:
            shift = len(remainder) - 1 - other.degree
            factor = remainder[-1] * inverse_lead
            quotient[shift] = factor
            for k, c in enumerate(other.coeffs):
                remainder[shift + k] = remainder[shift + k] - factor * c
            remainder.pop()
            while remainder and not remainder[-1]:
                remainder.pop()
        return Polynomial(quotient, self.zero), Polynomial(remainder, self.zero)

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def gcd(self, other):
        """
        Monic greatest common divisor (zero if both are zero).
        """
        a, b = self, other
        while b:
            a, b = b, a % b
        return a.monic() if a else a

    def gcdex(self, other):
        """
        Return (s, t, g) with s*self + t*other = g = gcd(self, other), g monic.
        """
        one = Polynomial([self.one], self.zero)
        nil = Polynomial([], self.zero)
        r0, r1, s0, s1, t0, t1 = self, other, one, nil, nil, one
        while r1:
            q, r = divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
            t0, t1 = t1, t0 - q * t1
        if not r0:
            return s0, t0, r0
        scale = self.one / r0.leading
        return s0 * scale, t0 * scale, r0 * scale

    def squarefree_part(self):
        if self.degree <= 0:
            return self
        return self // self.gcd(self.derivative())

    def __str__(self):
        return self.render("z")

    def render(self, var="z"):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            monomial = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            text = str(c)
            if monomial and text == "1":
                terms.append(monomial)
            elif monomial and text == "-1":
                terms.append("-" + monomial)
            elif monomial:
                terms.append(f"({text})*{monomial}")
            else:
                terms.append(f"({text})" if k < self.degree else text)
        return " + ".join(terms)

    def __repr__(self):
        return f"Polynomial({self})"


def _is_scalar(value):
    return isinstance(value, (int, Fraction)) or hasattr(value, "inverse")


def rational_polynomial(coeffs):
    """
    Shorthand for a polynomial over Q from ascending int/str/Fraction coefficients.
    """
    return Polynomial.over([to_fraction(c) for c in coeffs], QQ_FIELD)
