"""
Algebraicity of products of canonical heights, and Q-linear relations among
canonical heights.

Pairs escaping at some archimedean place (the set T) contribute through the
geometric data of their weak-equivalence classes. The other pairs have
purely finite heights sum c_p log p, and since the log p are linearly
independent over Q their relations come from exact linear algebra.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Dict, List, Optional

from algebra.conf import get_budget
from algebra.intervals import CertifiedReal
from algebra.linalg import nullspace
from heights.canonical import canonical_height
from heights.orbits import IN_T, in_T_d
from pairs.structure import geometric_data

from .blocks import LIMITED, NONZERO, ZERO, block_reports, merge_outlook
from .products import BOUND_LIMITED

logger = logging.getLogger(__name__)

ALGEBRAIC = "Algebraic"
NOT_ALGEBRAIC = "NotAlgebraic"
CERTIFIED = "Certified"


@dataclass
class HeightAlgebraicity:
    """
    Attributes:
        status (str): Algebraic, NotAlgebraic or BoundLimited.
        memberships (list[TdMembership]): in_T_d for every pair.
        blocks (list[BlockReport]): Weak-equivalence blocks of T with their
            hyperplane sums.
        prime_exponents (dict): p -> e_p with prod over pairs outside T of
            H^{n_i} = prod p^{e_p}; this is the product itself when Algebraic.
        t_part (CertifiedReal | None): sum over T of n_i h_i, which contains 0
            when Algebraic.
        blockers (list): Undecided pair indices, or bound-limited index pairs.
    """

    status: str
    memberships: List = field(default_factory=list)
    blocks: List = field(default_factory=list)
    prime_exponents: Dict[int, Fraction] = field(default_factory=dict)
    t_part: Optional[CertifiedReal] = None
    blockers: List = field(default_factory=list)


@dataclass
class LinearRelations:
    """
    Attributes:
        status (str): Certified or BoundLimited.
        relations (list[list[int]]): Integer vectors r with sum r_i h_i = 0.
        memberships (list[TdMembership]): in_T_d for every pair.
        complete (bool): Whether the relations span all of them; only claimed
            when no pair lies in T.
        blockers (list): As in HeightAlgebraicity.
    """

    status: str
    relations: List[List[int]] = field(default_factory=list)
    memberships: List = field(default_factory=list)
    complete: bool = False
    blockers: List = field(default_factory=list)


def integral(vector):
    """
    The positive rational multiple of `vector` in lowest integer terms whose
    first nonzero entry is positive.
    """
    values = [Fraction(x) for x in vector]
    scale = reduce(lcm, (x.denominator for x in values), 1)
    integers = [int(x * scale) for x in values]
    common = reduce(gcd, integers, 0) or 1
    lead = next((x for x in integers if x), 1)
    sign = 1 if lead > 0 else -1
    return [sign * x // common for x in integers]


def _memberships(pairs, precision, budget):
    memberships = [in_T_d(pair.system, pair.point, budget, precision) for pair in pairs]
    undecided = [i for i, m in enumerate(memberships) if not m.decided]
    if undecided:
        logger.warning("T membership undecided for pairs %s", undecided)
    return memberships, undecided


def height_product_algebraic(pairs, exponents, bidegree=None, orbit_len=None, precision=None, budget=None):
    """
    Decide whether prod H_{f_i}(a_i)^{n_i} is algebraic, H = exp(h).

    The T-pairs of each weak-equivalence block define a projective point
    (d_s); the product is algebraic exactly when every point lies on the
    hyperplane sum n_s z_s = 0.
    """
    precision = get_budget("PRECISION_BITS", precision)
    memberships, undecided = _memberships(pairs, precision, budget)
    if undecided:
        return HeightAlgebraicity(BOUND_LIMITED, memberships, blockers=undecided)
    in_t = [i for i, m in enumerate(memberships) if m.status == IN_T]
    active = [i for i in in_t if exponents[i]]
    reports, outlook, limited = [], ZERO, []
    if active:
        data = geometric_data([pairs[i] for i in active], bidegree, orbit_len, True, precision, budget, weak=True)
        reports = block_reports(data, exponents, active)
        outlook = merge_outlook(data, reports)
        limited = [(active[s], active[t]) for s, t in data.bound_limited]
    status = {ZERO: ALGEBRAIC, NONZERO: NOT_ALGEBRAIC, LIMITED: BOUND_LIMITED}[outlook]
    exponents_of_primes = {}
    t_part = CertifiedReal.zero(precision)
    for i, (pair, n) in enumerate(zip(pairs, exponents)):
        if not n:
            continue
        height = canonical_height(pair.system, pair.point, precision, budget)
        if i in in_t:
            t_part = t_part + height.value() * n
            continue
        for p, c in height.finite.items():
            exponents_of_primes[p] = exponents_of_primes.get(p, Fraction(0)) + n * c
    exponents_of_primes = {p: e for p, e in sorted(exponents_of_primes.items()) if e}
    if status == ALGEBRAIC and not t_part.contains(0):
        logger.warning("T part %s of an algebraic height product does not contain 0", t_part)
    return HeightAlgebraicity(status, memberships, reports, exponents_of_primes, t_part, limited)


def _geometric_relations(block, vector, n):
    """
    d_first h_s - d_s h_first = 0 for every other member s of a block.
    """
    relations = []
    for s, d in zip(block[1:], vector[1:]):
        row = [0] * n
        row[s] = vector[0]
        row[block[0]] = -d
        relations.append(integral(row))
    return relations


def height_linear_relations(pairs, bidegree=None, orbit_len=None, precision=None, budget=None):
    """
    A basis of certified Q-linear relations among h_{f_i}(a_i).

    :return: LinearRelations; T-pairs only relate within their blocks, and
        pairs outside T relate through their finite-part vectors (c_p).
    """
    precision = get_budget("PRECISION_BITS", precision)
    n = len(pairs)
    memberships, undecided = _memberships(pairs, precision, budget)
    if undecided:
        return LinearRelations(BOUND_LIMITED, memberships=memberships, blockers=undecided)
    in_t = [i for i, m in enumerate(memberships) if m.status == IN_T]
    finite_only = [i for i in range(n) if i not in in_t]
    relations, limited = [], []
    if len(in_t) > 1:
        data = geometric_data([pairs[i] for i in in_t], bidegree, orbit_len, True, precision, budget, weak=True)
        for block, vector in zip(data.blocks, data.vectors):
            relations.extend(_geometric_relations([in_t[s] for s in block], vector, n))
        limited = [(in_t[s], in_t[t]) for s, t in data.bound_limited]
    if finite_only:
        heights = [canonical_height(pairs[i].system, pairs[i].point, precision, budget) for i in finite_only]
        primes = sorted({p for h in heights for p in h.finite})
        matrix = [[h.finite.get(p, Fraction(0)) for h in heights] for p in primes]
        for kernel in nullspace(matrix, len(heights), Fraction(0)):
            row = [Fraction(0)] * n
            for i, c in zip(finite_only, kernel):
                row[i] = c
            relations.append(integral(row))
    status = BOUND_LIMITED if limited else CERTIFIED
    if limited:
        logger.warning("height relations among T pairs are bound-limited at %s pairs", len(limited))
    return LinearRelations(status, relations, memberships, complete=not in_t, blockers=limited)
