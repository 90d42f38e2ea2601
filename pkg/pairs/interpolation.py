"""
Vanishing polynomials of product orbits, found modulo primes and lifted.
"""

import logging

from algebra.exceptions import DomainError
from algebra.multivariate import MultiPolynomial

from .modular import VectorLifter, interpolation_primes, kernel_mod, reductions_at

logger = logging.getLogger(__name__)

MAX_PRIMES = 8


class ModularOrbit:
    """
    The orbit of `point` under f_1 x ... x f_r, reduced at large primes.

    Reduced orbits are computed lazily per prime and cached; primes where a
    coefficient or coordinate is not integral are skipped.

    Attributes:
        systems (list[PolynomialSystem]): One polynomial per coordinate.
        point (tuple[FieldElement]): The starting point.
        field (FieldSpec): Field containing every coefficient and coordinate.
        length (int): Number of orbit points kept per prime.
    """

    def __init__(self, systems, point, field, length):
        self.systems = [s.promote(field) for s in systems]
        self.point = tuple(x.promote(field) for x in point)
        self.field = field
        self.length = length
        self._primes = interpolation_primes(field)
        self._cache = {}
        self._order = []

    @property
    def nvars(self):
        return len(self.systems)

    @property
    def used_primes(self):
        return list(self._order)

    def _reduce(self, p):
        orbits = []
        for reduction in reductions_at(self.field, p):
            maps = [reduction.polynomial(s.poly) for s in self.systems]
            x = [reduction(c) for c in self.point]
            points = []
            for _ in range(self.length):
                points.append(tuple(x))
                x = [f(c) for f, c in zip(maps, x)]
            orbits.append((reduction, points))
        return orbits

    def prime(self, index):
        """
        The index-th usable prime and its reduced orbits.
        """
        while len(self._order) <= index:
            p = next(self._primes)
            try:
                self._cache[p] = self._reduce(p)
            except DomainError:
                continue
            self._order.append(p)
        p = self._order[index]
        return p, self._cache[p]

    def kernels(self, index, monomials, indices):
        """
        Kernel bases at the index-th prime, one per reduction.
        """
        p, orbits = self.prime(index)
        return p, [
            (reduction, kernel_mod([points[n] for n in indices], monomials, reduction.zero))
            for reduction, points in orbits
        ]

    def vanishes_mod(self, poly, index, indices):
        """
        Whether `poly` vanishes at the reduced orbit points `indices`.
        """
        _, orbits = self.prime(index)
        for reduction, points in orbits:
            reduced = poly.map_coeffs(reduction, reduction.zero)
            for n in indices:
                if reduced(*points[n]):
                    return False
        return True

    def vanishes_exactly(self, poly):
        return not poly(*self.point)

    def lift_kernel(self, monomials, indices):
        """
        Exact polynomials whose reductions span the kernel at every prime tried.

        :return: A list of MultiPolynomials (empty when the kernel at the
            first prime was accidental or no lift stabilized).
        """
        p, first = self.kernels(0, monomials, indices)
        dimension = len(first[0][1])
        if not dimension or any(len(basis) != dimension for _, basis in first):
            return []
        lifters = [VectorLifter(self.field) for _ in range(dimension)]
        lifted = [None] * dimension
        for index in range(MAX_PRIMES):
            if index:
                p, first = self.kernels(index, monomials, indices)
            sizes = {len(basis) for _, basis in first}
            if sizes == {0}:
                logger.debug("kernel at the first prime was accidental for %s monomials", len(monomials))
                return []
            if sizes != {dimension}:
                continue
            roots = [reduction.root for reduction, _ in first]
            for i, lifter in enumerate(lifters):
                if lifted[i] is None:
                    lifted[i] = lifter.add(p, [basis[i] for _, basis in first], roots)
            if all(vector is not None for vector in lifted):
                logger.debug("kernel of dimension %s lifted with %s primes", dimension, index + 1)
                break
        else:
            logger.warning("no stable lift within %s primes", MAX_PRIMES)
        return [
            normalize(MultiPolynomial(dict(zip(monomials, vector)), self.nvars, self.field.zero))
            for vector in lifted
            if vector is not None
        ]


def normalize(poly):
    """
    Scale so the term with the highest power of the last variable is monic.
    """
    if not poly:
        return poly
    top = max(poly.terms, key=lambda e: tuple(reversed(e)))
    return poly * (poly.one / poly.terms[top])