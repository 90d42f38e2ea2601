"""
Sparse multivariate polynomials with exact coefficients.

Terms are stored as {exponent tuple: coefficient}. The class backs the
bivariate curve equations of the pairs app and the plane endomorphisms.
"""

from fractions import Fraction

from .exceptions import ArgumentError, DomainError
from .fields import QQ_FIELD, FieldElement
from .polynomials import Polynomial


class MultiPolynomial:
    """
    A polynomial in `nvars` variables.

    Attributes:
        terms (dict): Nonzero coefficients keyed by exponent tuples.
        nvars (int): Number of variables.
        zero: Zero of the coefficient ring.
    """

    __slots__ = ("terms", "nvars", "zero")

    def __init__(self, terms, nvars, zero):
        self.terms = {tuple(e): c for e, c in terms.items() if c}
        self.nvars = nvars
        self.zero = zero

    @classmethod
    def over(cls, terms, nvars, field=QQ_FIELD):
        """
        Build from {exponents: int | Fraction | str | FieldElement}.
        """
        converted = {}
        for exps, c in terms.items():
            if isinstance(c, str):
                c = FieldElement.parse(c, field)
            elif not isinstance(c, FieldElement):
                c = FieldElement(c, 0, field)
            converted[tuple(exps)] = c.promote(field)
        return cls(converted, nvars, field.zero)

    @classmethod
    def variable(cls, index, nvars, zero):
        exps = [0] * nvars
        exps[index] = 1
        return cls({tuple(exps): zero + 1}, nvars, zero)

    @classmethod
    def constant(cls, value, nvars, zero):
        return cls({(0,) * nvars: zero + value}, nvars, zero)

    @property
    def one(self):
        return self.zero + 1

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, MultiPolynomial):
            return self.terms == other.terms
        return self == self._lift(other)

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def _lift(self, other):
        if isinstance(other, MultiPolynomial):
            if other.nvars != self.nvars:
                raise DomainError("polynomials in different numbers of variables")
            return other
        return MultiPolynomial.constant(other, self.nvars, self.zero)

    def __add__(self, other):
        other = self._lift(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms[e] + c if e in terms else c
        return MultiPolynomial(terms, self.nvars, self.zero)

    __radd__ = __add__

    def __neg__(self):
        return MultiPolynomial({e: -c for e, c in self.terms.items()}, self.nvars, self.zero)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, MultiPolynomial):
            return MultiPolynomial({e: c * other for e, c in self.terms.items()}, self.nvars, self.zero)
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                product = c1 * c2
                terms[e] = terms[e] + product if e in terms else product
        return MultiPolynomial(terms, self.nvars, self.zero)

    __rmul__ = __mul__

    def __pow__(self, exponent):
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        result = MultiPolynomial.constant(1, self.nvars, self.zero)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    @property
    def total_degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, index):
        return max((e[index] for e in self.terms), default=-1)

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), self.zero)

    def homogeneous_part(self, degree):
        return MultiPolynomial(
            {e: c for e, c in self.terms.items() if sum(e) == degree}, self.nvars, self.zero
        )

    def map_coeffs(self, fn, zero=None):
        return MultiPolynomial(
            {e: fn(c) for e, c in self.terms.items()},
            self.nvars,
            zero if zero is not None else fn(self.zero),
        )

    def __call__(self, *values):
        """
        Evaluate at `values`, which may be scalars, Polynomials, series or
        MultiPolynomials; powers are cached per variable.
        """
        if len(values) != self.nvars:
            raise ArgumentError(f"expected {self.nvars} values, got {len(values)}")
        powers = [dict() for _ in values]
        result = None
        for e, c in self.terms.items():
            term = None
            for i, k in enumerate(e):
                if not k:
                    continue
                if k not in powers[i]:
                    powers[i][k] = values[i] ** k
                term = powers[i][k] if term is None else term * powers[i][k]
            term = c if term is None else term * c
            result = term if result is None else result + term
        if result is None:
            return self.zero
        return result

    def substitute(self, polys):
        """
        Compose with a list of MultiPolynomials (one per variable).
        """
        if not polys:
            raise ArgumentError("substitution needs at least one polynomial")
        out = self(*polys)
        if not isinstance(out, MultiPolynomial):
            out = MultiPolynomial.constant(out, polys[0].nvars, polys[0].zero)
        return out

    def partial(self, index):
        terms = {}
        for e, c in self.terms.items():
            if e[index]:
                lowered = list(e)
                lowered[index] -= 1
                terms[tuple(lowered)] = c * e[index]
        return MultiPolynomial(terms, self.nvars, self.zero)

    def leading_term(self):
        """
        Lexicographically largest exponent and its coefficient.
        """
        e = max(self.terms)
        return e, self.terms[e]

    def divmod_single(self, divisor):
        """
        Lex-order division by one polynomial; the remainder is zero exactly
        when `divisor` divides `self`.
        """
        if not divisor:
            raise ZeroDivisionError("division by the zero polynomial")
        lead_exp, lead_coeff = divisor.leading_term()
        inverse = self.one / lead_coeff
        quotient = {}
        remainder = {}
        current = MultiPolynomial(self.terms, self.nvars, self.zero)
        while current:
            e, c = current.leading_term()
            if all(a >= b for a, b in zip(e, lead_exp)):
                shift = tuple(a - b for a, b in zip(e, lead_exp))
                factor = c * inverse
                quotient[shift] = factor
                current = current - MultiPolynomial({shift: factor}, self.nvars, self.zero) * divisor
            else:
                remainder[e] = c
                current = MultiPolynomial(
                    {k: v for k, v in current.terms.items() if k != e}, self.nvars, self.zero
                )
        return (
            MultiPolynomial(quotient, self.nvars, self.zero),
            MultiPolynomial(remainder, self.nvars, self.zero),
        )

    def divides(self, other):
        return not other.divmod_single(self)[1]

    def as_univariate(self, index):
        """
        View a polynomial involving only variable `index` as a Polynomial.
        """
        coeffs = [self.zero] * (self.degree_in(index) + 1)
        for e, c in self.terms.items():
            if any(k for i, k in enumerate(e) if i != index):
                raise DomainError("polynomial involves other variables")
            coeffs[e[index]] = c
        return Polynomial(coeffs, self.zero)

    def dehomogenize(self, index):
        """
        Set variable `index` to 1 and drop it.
        """
        terms = {}
        for e, c in self.terms.items():
            reduced = e[:index] + e[index + 1 :]
            terms[reduced] = terms[reduced] + c if reduced in terms else c
        return MultiPolynomial(terms, self.nvars - 1, self.zero)

    def homogenize(self, degree=None):
        """
        Append a new last variable making every term of total degree `degree`.
        """
        degree = self.total_degree if degree is None else degree
        return MultiPolynomial(
            {e + (degree - sum(e),): c for e, c in self.terms.items()}, self.nvars + 1, self.zero
        )

    def content_normalized(self):
        """
        Scale so that the lex-leading coefficient is 1.
        """
        if not self.terms:
            return self
        return self * (self.one / self.leading_term()[1])

    def render(self, names=None):
        names = names or ("x", "y", "z", "w")[: self.nvars]
        if not self.terms:
            return "0"
        pieces = []
        for e in sorted(self.terms, key=lambda exps: (-sum(exps), tuple(-k for k in exps))):
            c = self.terms[e]
            monomial = "*".join(
                names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(e) if k
            )
            text = str(c)
            if not monomial:
                pieces.append(text)
            elif text == "1":
                pieces.append(monomial)
            elif text == "-1":
                pieces.append("-" + monomial)
            else:
                pieces.append(f"({text})*{monomial}")
        return " + ".join(pieces)

    def serialize(self):
        """
        [[i, j, ..., "c"], ...] in a canonical order.
        """
        return [list(e) + [str(self.terms[e])] for e in sorted(self.terms)]

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"MultiPolynomial({self})"


def parse_terms(rows, nvars, field=QQ_FIELD):
    """
    Read [[i, j, "c"], ...] rows into a MultiPolynomial.
    """
    terms = {}
    for row in rows:
        if len(row) != nvars + 1:
            raise ArgumentError(f"term {row!r} needs {nvars} exponents and a coefficient")
        exps = tuple(int(k) for k in row[:nvars])
        if any(k < 0 for k in exps):
            raise ArgumentError(f"negative exponent in {row!r}")
        coeff = row[nvars]
        value = FieldElement.parse(str(coeff), field) if not isinstance(coeff, (int, Fraction)) else FieldElement(coeff, 0, field)
        terms[exps] = terms[exps] + value if exps in terms else value
    return MultiPolynomial(terms, nvars, field.zero)
