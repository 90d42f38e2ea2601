"""
Detection of a point o at which f is homogeneous.

Translating o to the origin turns the degree d - 1 part of f into
f_{d-1} + (o . grad) f_d, so a homogeneity center solves a linear system
over K. Such a center is unique, hence Galois invariant, so no extension of
K is ever needed. Every solution is checked by exact translation.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, List, Optional

from algebra.exceptions import PreconditionError
from algebra.factoring import roots_in_field
from algebra.linalg import nullspace, rank, solve
from algebra.polynomials import Polynomial

logger = logging.getLogger(__name__)

HOMOGENEOUS = "Homogeneous"
NOT_HOMOGENEOUS = "NotHomogeneous"


@dataclass
class HomogeneityVerdict:
    """
    Attributes:
        status (str): Homogeneous or NotHomogeneous.
        origin (tuple | None): o = (o_1, o_2).
        translated (PlaneEndomorphism | None): f in coordinates centered at o.
        candidates (list[tuple]): Centers that were tested.
    """

    status: str
    origin: Optional[tuple] = None
    translated: Any = None
    candidates: List[tuple] = field(default_factory=list)

    @property
    def is_homogeneous(self):
        return self.status == HOMOGENEOUS


def _linear_conditions(f):
    d = f.degree
    rows, rhs = [], []
    for poly in f.coordinates:
        top, lower = poly.homogeneous_part(d), poly.homogeneous_part(d - 1)
        dx, dy = top.partial(0), top.partial(1)
        for a in range(d):
            e = (a, d - 1 - a)
            rows.append([dx.coefficient(e), dy.coefficient(e)])
            rhs.append(-lower.coefficient(e))
    return rows, rhs


def _fixed_on_line(f, base, direction):
    """
    Points base + λ direction fixed by f, λ in K.
    """
    zero, one = f.zero, f.field.one
    lam = Polynomial.variable(zero, one)
    ox = lam * direction[0] + base[0]
    oy = lam * direction[1] + base[1]
    gaps = [f.f1(ox, oy) - ox, f.f2(ox, oy) - oy]
    common = gaps[0].gcd(gaps[1])
    if not common:
        raise PreconditionError(f"{f} fixes a whole line of candidate centers")
    if common.degree < 1:
        return []
    return [
        (base[0] + root * direction[0], base[1] + root * direction[1])
        for root, _ in roots_in_field(common, f.field)
    ]


def candidate_centers(f):
    rows, rhs = _linear_conditions(f)
    zero = f.zero
    solution = solve(rows, rhs, zero)
    if solution is None:
        return []
    if rank(rows, 2, zero) == 2:
        return [tuple(solution)]
    directions = nullspace(rows, 2, zero)
    if len(directions) > 1:
        raise PreconditionError(f"{f} has no top-degree gradient")
    return _fixed_on_line(f, solution, directions[0])


def _is_homogeneous(g, d):
    return all(sum(e) == d for poly in g.coordinates for e in poly.terms)


def homogeneity_detect(f):
    """
    Homogeneous(o) when f(v + o) - o is a pair of degree-d forms.
    """
    d = f.degree
    candidates = candidate_centers(f)
    for origin in candidates:
        translated = f.translate(origin)
        if _is_homogeneous(translated, d):
            logger.debug("%s is homogeneous at (%s, %s)", f, *origin)
            return HomogeneityVerdict(HOMOGENEOUS, origin, translated, candidates)
    return HomogeneityVerdict(NOT_HOMOGENEOUS, candidates=candidates)
