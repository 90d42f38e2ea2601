"""
Reduction modulo large primes and lifting back to exact coefficients.

Orbit points grow in height exponentially, so interpolation problems are
solved in F_p. A quadratic field K = Q(sqrt(D)) is reduced at primes where
D is a square, through both roots of D; the two images determine a + b*sqrt(D)
modulo p. Kernel vectors are lifted by CRT across primes followed by
rational reconstruction, and every lift is verified exactly by the caller.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
from math import gcd

import sympy
from sympy.ntheory import sqrt_mod
from sympy.ntheory.modular import crt

from algebra.exceptions import DomainError
from algebra.linalg import nullspace

logger = logging.getLogger(__name__)

PRIME_CEILING = 2**61


@dataclass(frozen=True)
class Reduction:
    """
    The ring map K -> F_p with sqrt(D) -> root.

    Attributes:
        prime (int): The prime p.
        root (int): Image of sqrt(D); 0 over Q.
    """

    prime: int
    root: int = 0

    @cached_property
    def residue_field(self):
        return sympy.GF(self.prime)

    @property
    def zero(self):
        return self.residue_field.zero

    def scalar(self, value):
        F = self.residue_field
        value = Fraction(value)
        if value.denominator % self.prime == 0:
            raise DomainError(f"{value} is not integral at {self.prime}")
        return F(value.numerator) / F(value.denominator)

    def __call__(self, x):
        if isinstance(x, (int, Fraction)):
            return self.scalar(x)
        image = self.scalar(x.a)
        if x.b:
            image = image + self.scalar(x.b) * self.residue_field(self.root)
        return image

    def polynomial(self, poly):
        """
        Horner evaluator of the reduced polynomial.
        """
        coeffs = [self(c) for c in poly.coeffs]

        def evaluate(z):
            result = coeffs[-1]
            for c in reversed(coeffs[:-1]):
                result = result * z + c
            return result

        return evaluate


def interpolation_primes(field, skip=0):
    """
    Yield large primes p usable for `field`: D must be a nonzero square mod p.
    """
    p = PRIME_CEILING
    while True:
        p = sympy.prevprime(p)
        if not field.is_rational and sympy.legendre_symbol(field.radicand % p, p) != 1:
            continue
        if skip:
            skip -= 1
            continue
        yield p


def reductions_at(field, p):
    """
    One reduction over Q; the two conjugate reductions over Q(sqrt(D)).
    """
    if field.is_rational:
        return [Reduction(p)]
    root = sqrt_mod(field.radicand % p, p)
    return [Reduction(p, root), Reduction(p, p - root)]


def rational_reconstruction(n, m):
    """
    The fraction r/t with r = n*t mod m and |r|, |t| < sqrt(m/2), or None.
    """
    r, old_r = n % m, m
    t, old_t = 1, 0
    while 2 * r * r >= m:
        quotient = old_r // r
        old_r, r = r, old_r - quotient * r
        old_t, t = t, old_t - quotient * t
    if t == 0 or 2 * t * t >= m or gcd(r, t) != 1:
        return None
    return Fraction(r, t)


def monomial_box(bounds):
    """
    Exponent tuples e with e[i] <= bounds[i], ordered so the highest power
    of the last variable comes last.
    """
    return sorted(product(*(range(b + 1) for b in bounds)), key=lambda e: tuple(reversed(e)))


def evaluation_rows(points, monomials):
    rows = []
    for point in points:
        powers = []
        for coordinate, top in zip(point, map(max, zip(*monomials))):
            column = [coordinate * 0 + 1]
            for _ in range(top):
                column.append(column[-1] * coordinate)
            powers.append(column)
        row = []
        for e in monomials:
            value = powers[0][e[0]]
            for i in range(1, len(e)):
                value = value * powers[i][e[i]]
            row.append(value)
        rows.append(row)
    return rows


def kernel_mod(points, monomials, zero):
    """
    Canonical (reduced echelon) basis of the polynomials with the given
    monomials vanishing at the reduced points.
    """
    basis = nullspace(evaluation_rows(points, monomials), len(monomials), zero)
    return [[int(c) for c in vector] for vector in basis]


class VectorLifter:
    """
    Accumulates reductions of one exact vector across primes and lifts it.

    For quadratic fields each prime contributes the images under both roots.
    A lift is accepted once two successive reconstructions agree.
    """

    def __init__(self, field):
        self.field = field
        self.moduli = []
        self.a_parts = []
        self.b_parts = []
        self.previous = None

    def add(self, p, images, roots=None):
        """
        :param images: One vector of ints mod p per reduction at p.
        :param roots: The sqrt(D) images matching `images` (quadratic only).
        :return: The lifted vector of FieldElements once stable, else None.
        """
        if self.field.is_rational:
            a_part, b_part = images[0], [0] * len(images[0])
        else:
            u, w = images
            half = pow(2, -1, p)
            inverse_root = pow(2 * roots[0], -1, p)
            a_part = [(x + y) * half % p for x, y in zip(u, w)]
            b_part = [(x - y) * inverse_root % p for x, y in zip(u, w)]
        self.moduli.append(p)
        self.a_parts.append(a_part)
        self.b_parts.append(b_part)
        lifted = self._reconstruct()
        if lifted is not None and lifted == self.previous:
            return lifted
        self.previous = lifted
        return None

    def _reconstruct(self):
        modulus = 1
        for p in self.moduli:
            modulus *= p
        vector = []
        for k in range(len(self.a_parts[0])):
            parts = []
            for table in (self.a_parts, self.b_parts):
                value = crt(self.moduli, [row[k] for row in table])[0]
                fraction = rational_reconstruction(int(value), modulus)
                if fraction is None:
                    return None
                parts.append(fraction)
            vector.append(self.field.element(*parts))
        return vector
