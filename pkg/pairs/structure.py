"""
Orbit closures of product maps and the geometric data of a family of pairs.

orbit_structure splits the orbit of a point under f_1 x ... x f_r into a
tail and a periodic part and returns generators for the polynomials of
bounded multidegree vanishing on each periodic class. geometric_data
partitions pairs into equivalence classes and recovers, per class, the
degree vector (d_s) up to scaling from the pairwise ratios.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from itertools import combinations, product
from math import gcd, lcm
from typing import Dict, List, Tuple

from algebra.conf import get_budget
from algebra.exceptions import ArgumentError, CertificateError
from algebra.linalg import rank
from algebra.multivariate import MultiPolynomial

from .equivalence import EQUIVALENT, NOT_EQUIVALENT, equivalent, weakly_equivalent
from .interpolation import ModularOrbit
from .modular import kernel_mod, monomial_box

logger = logging.getLogger(__name__)

# Orbit points examined for the tail, and the largest period tried.
TAIL_WINDOW = 16
MAX_PERIOD = 4
MAX_FACTORS = 3


@dataclass
class OrbitStructure:
    """
    Attributes:
        tail (int): t_F, the number of orbit points outside the periodic part.
        period (int): p_F, the number of periodic components.
        generators (list[list[MultiPolynomial]]): For each residue class
            i mod period, polynomials vanishing on f^n(x) for n >= tail,
            n = i (mod period).
        multidegree_bound (int): Largest exponent allowed per variable.
    """

    tail: int
    period: int
    generators: List[List] = field(default_factory=list)
    multidegree_bound: int = 0


def _boxes(nvars, bound):
    """
    Multidegree boxes in increasing total size.
    """
    boxes = [box for box in product(range(bound + 1), repeat=nvars) if any(box)]
    return sorted(boxes, key=lambda box: (sum(box), max(box), tuple(reversed(box))))


def _multiples(generators, monomials, zero):
    """
    Coefficient rows of m * g for each generator g (an exponent -> coefficient
    dict) and each monomial m keeping m * g inside `monomials`.
    """
    index = {e: i for i, e in enumerate(monomials)}
    rows = []
    for terms in generators:
        for shift in monomials:
            moved = {tuple(a + b for a, b in zip(e, shift)): c for e, c in terms.items()}
            if all(e in index for e in moved):
                row = [zero] * len(monomials)
                for e, c in moved.items():
                    row[index[e]] = c
                rows.append(row)
    return rows


def _new_generators(earlier, candidates, monomials, zero):
    """
    The candidates (exponent -> coefficient dicts) that are not combinations
    of multiples of `earlier` or of candidates already accepted.
    """
    span = _multiples(earlier, monomials, zero)
    current = rank(span, len(monomials), zero)
    accepted = []
    for terms in candidates:
        row = [terms.get(e, zero) for e in monomials]
        if rank(span + [row], len(monomials), zero) > current:
            span.append(row)
            current += 1
            accepted.append(terms)
    return accepted


def _generator_boxes(orbit, indices, bound):
    """
    Boxes contributing new generators at the first prime, and how many each.
    """
    _, orbits = orbit.prime(0)
    reduction, points = orbits[0]
    F = reduction.residue_field
    rows = [points[n] for n in indices]
    found, counts = [], {}
    for box in _boxes(orbit.nvars, bound):
        monomials = monomial_box(box)
        if len(rows) < len(monomials):
            raise ArgumentError(f"{len(rows)} orbit points cannot determine {len(monomials)} unknowns")
        basis = [{e: F(c) for e, c in zip(monomials, vector)} for vector in kernel_mod(rows, monomials, reduction.zero)]
        fresh = _new_generators(found, basis, monomials, F.zero)
        if fresh:
            counts[box] = len(fresh)
            found.extend(fresh)
    return counts


def _class_generators(orbit, indices, bound):
    """
    Exact generators of one residue class, lifted box by box.
    """
    generators = []
    zero = orbit.field.zero
    for box in _generator_boxes(orbit, indices, bound):
        monomials = monomial_box(box)
        lifted = orbit.lift_kernel(monomials, indices)
        fresh = _new_generators([g.terms for g in generators], [p.terms for p in lifted], monomials, zero)
        generators.extend(MultiPolynomial(terms, orbit.nvars, zero) for terms in fresh)
    return generators


def orbit_structure(systems, point, multidegree_bound=2, orbit_len=None):
    """
    Tail, period and vanishing ideals of the orbit of `point` under
    f_1 x ... x f_r.

    Args:
        systems (list[PolynomialSystem]): r <= 3 polynomials.
        point (tuple[FieldElement]): The starting point.
        multidegree_bound (int): Largest exponent per variable.
        orbit_len (int): Minimum number of orbit points computed.

    Returns:
        OrbitStructure
    """
    if not systems or len(systems) > MAX_FACTORS:
        raise ArgumentError(f"orbit_structure handles 1 to {MAX_FACTORS} factors")
    if len(point) != len(systems):
        raise ArgumentError("the point needs one coordinate per factor")
    orbit_len = get_budget("ORBIT_LEN", orbit_len)
    unknowns = (multidegree_bound + 1) ** len(systems)
    if orbit_len < unknowns:
        raise ArgumentError(f"orbit length {orbit_len} cannot determine {unknowns} unknowns")
    K = reduce(lambda a, b: a.join(b), [s.field for s in systems] + [x.field for x in point])
    per_class = unknowns + 8
    length = max(orbit_len, TAIL_WINDOW + MAX_PERIOD * per_class)
    orbit = ModularOrbit(systems, point, K, length)

    def class_indices(period, residue):
        start = TAIL_WINDOW + (residue - TAIL_WINDOW) % period
        return list(range(start, length, period))[:per_class]

    sizes = {}
    for period in range(1, MAX_PERIOD + 1):
        sizes[period] = [
            sum(_generator_boxes(orbit, class_indices(period, i), multidegree_bound).values())
            for i in range(period)
        ]
    best = max(min(s) for s in sizes.values())
    period = next(p for p in sizes if min(sizes[p]) == best)

    generators = []
    for residue in range(period):
        generators.append(_class_generators(orbit, class_indices(period, residue), multidegree_bound))

    tail = 0
    for n in range(TAIL_WINDOW - 1, -1, -1):
        if not all(orbit.vanishes_mod(g, 0, [n]) for g in generators[n % period]):
            tail = n + 1
            break
    check_index = len(orbit.used_primes)
    for residue, polys in enumerate(generators):
        members = [n for n in range(tail, length) if n % period == residue]
        if not all(orbit.vanishes_mod(g, check_index, members) for g in polys):
            raise CertificateError(f"generators of class {residue} miss a reduced orbit point")
    logger.debug("orbit of %s has tail %s and period %s", point, tail, period)
    return OrbitStructure(tail, period, generators, multidegree_bound)


class UnionFind:
    """
    Disjoint sets over 0..n-1 with path compression and union by rank.
    """

    def __init__(self, n):
        self.parent = list(range(n))
        self.rank = [0] * n

    def find(self, x):
        root = self.parent[x]
        if self.parent[root] != root:
            root = self.parent[x] = self.find(root)
        return root

    def union(self, x, y):
        x, y = self.find(x), self.find(y)
        if x == y:
            return
        if self.rank[x] < self.rank[y]:
            x, y = y, x
        elif self.rank[x] == self.rank[y]:
            self.rank[x] += 1
        self.parent[y] = x

    def blocks(self):
        groups = {}
        for x in range(len(self.parent)):
            groups.setdefault(self.find(x), []).append(x)
        return sorted(groups.values())


@dataclass
class GeometricData:
    """
    Attributes:
        blocks (list[list[int]]): The partition J_1, ..., J_m (0-based).
        vectors (list[list[int]]): Per block, (d_s) in lowest positive terms.
        results (dict): (s, t) -> EquivalenceResult for s < t.
        bound_limited (list[tuple]): Pairs (s, t) in different blocks whose
            test was NotEquivalentUpToBound.
    """

    blocks: List[List[int]]
    vectors: List[List[int]]
    results: Dict[Tuple[int, int], object] = field(default_factory=dict)
    bound_limited: List[Tuple[int, int]] = field(default_factory=list)

    def block_of(self, s):
        return next(j for j, block in enumerate(self.blocks) if s in block)

    def degree(self, s):
        j = self.block_of(s)
        return self.vectors[j][self.blocks[j].index(s)]

    @property
    def complete(self):
        return not self.bound_limited


def block_vector(block, results):
    """
    Integers d_s with d_s / d_t = d((f_s,a_s)/(f_t,a_t)) across the block.
    """
    values = {block[0]: Fraction(1)}
    frontier = [block[0]]
    while frontier:
        s = frontier.pop()
        for t in block:
            if t in values:
                continue
            key = (min(s, t), max(s, t))
            result = results.get(key)
            if result is None or not result.is_equivalent:
                continue
            r = result.ratio if s < t else 1 / result.ratio
            values[t] = values[s] / r
            frontier.append(t)
    for (s, t), result in results.items():
        if s in values and t in values and result.is_equivalent:
            if values[s] / values[t] != result.ratio:
                raise CertificateError(
                    f"ratios violate transitivity between pairs {s} and {t}",
                    expected=values[s] / values[t],
                    certified=result.ratio,
                )
    scale = reduce(lcm, (v.denominator for v in values.values()), 1)
    integers = [int(values[s] * scale) for s in block]
    common = reduce(gcd, integers)
    return [n // common for n in integers]


def geometric_data(pairs, bidegree=None, orbit_len=None, height_screen=True, precision=None, budget=None, weak=False):
    """
    Partition `pairs` into equivalence classes with their degree vectors.

    :param pairs: DynamicalPairs of a common degree.
    :param weak: Partition by weak equivalence instead.
    :return: GeometricData; bound_limited lists the tests that might merge
        blocks with larger bounds.
    """
    test = weakly_equivalent if weak else equivalent
    n = len(pairs)
    results = {}
    classes = UnionFind(n)
    for s, t in combinations(range(n), 2):
        result = test(pairs[s], pairs[t], bidegree, orbit_len, height_screen, precision, budget)
        results[(s, t)] = result
        if result.status == EQUIVALENT:
            classes.union(s, t)
    blocks = classes.blocks()
    vectors = [block_vector(block, results) for block in blocks]
    limited = [
        key
        for key, result in results.items()
        if result.status == NOT_EQUIVALENT and classes.find(key[0]) != classes.find(key[1])
    ]
    if limited:
        logger.warning("geometric data is bound-limited at %s pairs", len(limited))
    return GeometricData(blocks, vectors, results, limited)
