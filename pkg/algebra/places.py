"""
Places of Q and of quadratic fields, with normalized absolute values.

A finite place above p reports logarithms exactly: abs_value returns the
rational c with log|x|_v = c * log p, under the normalization |p|_v = 1/p.
Archimedean places return certified enclosures of log|x|_v.

Contents:
    Place: an archimedean embedding or a prime with its splitting datum.
    archimedean_places, places_above, abs_value, relevant_places.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import sympy
from sympy.ntheory import legendre_symbol, multiplicity
from sympy.ntheory.residue_ntheory import sqrt_mod

from .exceptions import ArgumentError, DomainError
from .fields import FieldSpec
from .intervals import CertifiedReal, interval_context, rational_interval

logger = logging.getLogger(__name__)

SPLIT = "split"
INERT = "inert"
RAMIFIED = "ram"


@dataclass(frozen=True)
class Place:
    """
    A place of a supported field.

    Attributes:
        field (FieldSpec): The field the place belongs to.
        prime (int | None): None for archimedean places.
        index (int): Embedding index, or which root of D mod p for split primes.
        splitting (str): "split", "inert", "ram", or "" for Q and archimedean places.
    """

    prime: Optional[int]
    index: int
    splitting: str
    field: FieldSpec

    @property
    def is_archimedean(self):
        return self.prime is None

    @property
    def is_complex(self):
        return self.is_archimedean and not self.field.is_real

    @property
    def local_degree(self):
        if self.is_archimedean:
            return 2 if self.is_complex else 1
        return 1 if self.splitting in ("", SPLIT) else 2

    @property
    def ramification(self):
        return 2 if self.splitting == RAMIFIED else 1

    def __str__(self):
        if self.is_archimedean:
            return f"inf:{self.index}"
        if not self.splitting:
            return str(self.prime)
        if self.splitting == SPLIT:
            return f"{self.prime}:split{self.index}"
        return f"{self.prime}:{self.splitting}"

    @classmethod
    def parse(cls, text, field):
        """
        Read "inf:k", "p", "p:split0", "p:split1", "p:inert" or "p:ram".
        """
        text = text.strip()
        if text in ("inf", "oo"):
            text = "inf:0"
        head, _, tail = text.partition(":")
        if head == "inf":
            place = cls(None, int(tail or 0), "", field)
            if place not in archimedean_places(field):
                raise ArgumentError(f"{text} is not an embedding of {field}")
            return place
        try:
            p = int(head)
        except ValueError as exc:
            raise ArgumentError(f"unrecognized place {text!r}") from exc
        for place in places_above(field, p):
            if str(place) == text or (not tail and len(places_above(field, p)) == 1):
                return place
        raise ArgumentError(f"{text} is not a place of {field}")

    def sign(self):
        """
        Image of sqrt(D) is sign * sqrt(D) at a real embedding.
        """
        return 1 if self.index == 0 else -1

    def embed(self, x, precision):
        """
        Enclosure of the image of x: ivmpf at real places, ivmpc at complex ones.
        """
        ctx = interval_context(precision)
        a = rational_interval(x.a, ctx)
        if not x.b:
            return ctx.mpc(a, 0) if self.is_complex else a
        root = ctx.sqrt(ctx.mpf(abs(self.field.radicand)))
        b = rational_interval(x.b, ctx)
        if self.is_complex:
            return ctx.mpc(a, b * root)
        return a + self.sign() * b * root


def archimedean_places(field):
    if field.is_rational or not field.is_real:
        return [Place(None, 0, "", field)]
    return [Place(None, 0, "", field), Place(None, 1, "", field)]


def splitting_type(field, p):
    D = field.radicand
    if D is None:
        return ""
    if p == 2:
        if D % 4 in (2, 3):
            return RAMIFIED
        return SPLIT if D % 8 == 1 else INERT
    if D % p == 0:
        return RAMIFIED
    return SPLIT if legendre_symbol(D % p, p) == 1 else INERT


def places_above(field, p):
    if not sympy.isprime(p):
        raise ArgumentError(f"{p} is not prime")
    kind = splitting_type(field, p)
    if kind == SPLIT:
        return [Place(p, 0, SPLIT, field), Place(p, 1, SPLIT, field)]
    return [Place(p, 0, kind, field)]


def _valuation(n, p):
    return multiplicity(p, abs(n)) if n else None


def _split_root(D, p, index, precision):
    """
    A p-adic square root of D modulo p**precision on the branch `index`.
    """
    modulus = p ** (precision + (1 if p == 2 else 0))
    roots = sorted(sqrt_mod(D % modulus, modulus, all_roots=True))
    if p == 2:
        wanted = 1 if index == 0 else 3
        root = next(r for r in roots if r % 4 == wanted)
    else:
        base = sorted({r % p for r in roots})[index]
        root = next(r for r in roots if r % p == base)
    return root % p**precision


def finite_valuation(x, v):
    """
    The valuation w(x) normalized by w(p) = 1, as a Fraction.
    """
    if not x:
        raise DomainError("valuation of zero")
    p = v.prime
    if not x.b:
        return Fraction(_valuation(x.a.numerator, p) - _valuation(x.a.denominator, p))
    if v.splitting != SPLIT:
        n = x.norm()
        return Fraction(_valuation(n.numerator, p) - _valuation(n.denominator, p), 2)
    A, B, den = x.integral_form()
    D = v.field.radicand
    bound = _valuation(A * A - D * B * B, p) + 1
    root = _split_root(D, p, v.index, bound)
    value = (A + B * root) % p**bound
    w = bound if value == 0 else _valuation(value, p)
    return Fraction(w - _valuation(den, p))


def abs_value(x, v, precision=128):
    """
    Logarithm of the normalized absolute value |x|_v.

    Args:
        x (FieldElement): A nonzero element of v's field (or of Q).
        v (Place): The place.
        precision (int): Bits for archimedean enclosures.

    Returns:
        Fraction c with log|x|_v = c*log p at finite places; a CertifiedReal
        enclosing log|x|_v at archimedean places.
    """
    if not x:
        raise DomainError("log|0|_v is -infinity")
    if x.field != v.field:
        x = x.promote(v.field)
    if not v.is_archimedean:
        return -finite_valuation(x, v)
    if v.is_complex:
        return CertifiedReal.exact(x.norm(), precision).log() * Fraction(1, 2)
    while True:
        value = CertifiedReal(abs(v.embed(x, precision)), precision)
        if value.is_positive():
            return value.log()
        precision *= 2
        logger.debug("raising precision to %s bits to separate %s from 0", precision, x)


def prime_divisors(*integers):
    primes = set()
    for n in integers:
        n = abs(int(n))
        if n > 1:
            primes.update(sympy.primefactors(n))
    return primes


def relevant_places(f, a):
    """
    Places outside of which g_{f,v}(a) provably vanishes.

    Good reduction at p (integral coefficients, unit leading coefficient and
    integral a) keeps the orbit in the closed unit disk, so only archimedean
    places and primes dividing denominators, the leading coefficient or the
    discriminant can carry a nonzero Green value.

    :param f: The polynomial (a Polynomial over the field, degree >= 2).
    :param a: The base point.
    :return: The sorted list of relevant places.
    """
    field = a.field
    for c in f.coeffs:
        field = field.join(c.field)
    integers = [field.discriminant]
    for c in list(f.coeffs) + [a]:
        integers.append(c.integral_form()[2])
    lead = f.leading.promote(field).norm()
    integers.extend([lead.numerator, lead.denominator])
    places = list(archimedean_places(field))
    for p in sorted(prime_divisors(*integers)):
        places.extend(places_above(field, p))
    return places


def product_formula_terms(x, precision=128):
    """
    Exact finite part and certified archimedean part of sum_v n_v log|x|_v.

    :return: (dict prime -> Fraction, CertifiedReal); the finite part is the
        total coefficient of each log p and the sum of both parts is 0.
    """
    A, B, den = x.integral_form()
    norm = x.norm()
    primes = prime_divisors(den, norm.numerator, norm.denominator, A or 1, B or 1)
    finite = {}
    for p in sorted(primes):
        total = sum(
            (place.local_degree * abs_value(x, place) for place in places_above(x.field, p)),
            Fraction(0),
        )
        if total:
            finite[p] = total
    arch = CertifiedReal.zero(precision)
    for place in archimedean_places(x.field):
        arch = arch + abs_value(x, place, precision) * place.local_degree
    return finite, arch
