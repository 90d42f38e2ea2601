"""
Orbit questions answered with Green values: preperiodicity, membership in
T_d (escape at some archimedean embedding) and the liminf diagnostic of
local against global naive heights.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, List, Optional

from algebra.conf import get_budget
from algebra.exceptions import PreconditionError
from algebra.intervals import CertifiedReal
from algebra.places import archimedean_places, relevant_places
from bottcher.classify import classify_polynomial_type

from .green import green, green_arch, log_prime
from .naive import local_naive_height, naive_height

logger = logging.getLogger(__name__)

PREPERIODIC = "Preperiodic"
NOT_PREPERIODIC = "NotPreperiodic"
UNDECIDED = "Undecided"

IN_T = "Yes"
NOT_IN_T = "NoCertified"

# Preperiodic orbits have small height; the first exact pass stops early.
QUICK_BIT_CAP = 8192


@dataclass
class Preperiodicity:
    """
    Attributes:
        status (str): Preperiodic, NotPreperiodic or Undecided.
        tail (int | None): Index of the first periodic iterate.
        period (int | None): Exact period when repetition was observed.
        witness (Place | None): A place where the orbit escapes.
    """

    status: str
    tail: Optional[int] = None
    period: Optional[int] = None
    witness: Any = None

    @property
    def is_preperiodic(self):
        return self.status == PREPERIODIC


def find_cycle(f, a, steps, bit_cap):
    """
    (tail, period) when the exact orbit of a repeats within `steps`.
    """
    seen = {a: 0}
    z = a
    for n in range(1, steps + 1):
        z = f(z)
        if z in seen:
            return seen[z], n - seen[z]
        if z.bit_size() > bit_cap:
            return None
        seen[z] = n
    return None


def detect_preperiodic(f, a, budget=None, precision=None):
    """
    Decide preperiodicity of a under f.

    Exact repetition proves preperiodicity; escape at one place proves the
    opposite. When every relevant place is certified bounded, the canonical
    height vanishes and a is preperiodic; the cycle is then searched with a
    longer exact iteration.
    """
    budget = get_budget("ITER_BUDGET", budget)
    bit_cap = get_budget("HEIGHT_BIT_CAP")
    a = a.promote(f.field)
    cycle = find_cycle(f, a, budget, min(bit_cap, QUICK_BIT_CAP))
    if cycle is not None:
        return Preperiodicity(PREPERIODIC, *cycle)
    greens = []
    for v in relevant_places(f.poly, a):
        value = green(f, a, v, precision, budget)
        if value.escaped:
            return Preperiodicity(NOT_PREPERIODIC, witness=v)
        greens.append(value)
    if all(g.bounded for g in greens):
        cycle = find_cycle(f, a, 8 * budget, bit_cap)
        if cycle is not None:
            return Preperiodicity(PREPERIODIC, *cycle)
        logger.warning("%s is bounded everywhere under %s but no repetition was seen", a, f)
        return Preperiodicity(PREPERIODIC)
    return Preperiodicity(UNDECIDED)


@dataclass
class TdMembership:
    """
    Attributes:
        status (str): "Yes", "NoCertified" or "Undecided".
        witness (Place | None): An archimedean place where the orbit escapes.
        greens (list): Green values at the archimedean places examined.
    """

    status: str
    witness: Any = None
    greens: List = field(default_factory=list)

    @property
    def decided(self):
        return self.status != UNDECIDED


def in_T_d(f, a, budget=None, precision=None):
    """
    Whether (f, a) escapes at some archimedean embedding.

    :raises PreconditionError: If f is of monomial type or a is preperiodic.
    """
    kind = classify_polynomial_type(f)
    if kind.is_monomial_type:
        raise PreconditionError(f"{f} is of monomial type", model=kind.model)
    a = a.promote(f.field)
    verdict = detect_preperiodic(f, a, budget, precision)
    if verdict.is_preperiodic:
        raise PreconditionError(
            f"{a} is preperiodic under {f}", tail=verdict.tail, period=verdict.period
        )
    greens = []
    for v in archimedean_places(f.field):
        value = green_arch(f, a, v, precision, budget)
        greens.append(value)
        if value.escaped:
            return TdMembership(IN_T, v, greens)
    if all(g.bounded for g in greens):
        return TdMembership(NOT_IN_T, None, greens)
    return TdMembership(UNDECIDED, None, greens)


@dataclass
class LiminfRow:
    n: int
    ratio: Optional[CertifiedReal]
    skipped: bool = False


def liminf_diagnostic(f, a, v, n_max=None, precision=None):
    """
    The ratios g_v(f^n(a)) / h(f^n(a)) for n = 0, ..., n_max.

    Indices where h(f^n(a)) is not certified positive are skipped with a
    flag. The sequence stops early when iterates outgrow HEIGHT_BIT_CAP.
    """
    n_max = get_budget("NMAX", n_max)
    precision = get_budget("PRECISION_BITS", precision)
    bit_cap = get_budget("HEIGHT_BIT_CAP")
    x = a.promote(f.field)
    rows = []
    for n in range(n_max + 1):
        if n:
            x = f(x)
        if x.bit_size() > bit_cap:
            logger.warning("liminf diagnostic stopped at n = %s: iterate exceeds %s bits", n, bit_cap)
            break
        h = naive_height(x, precision)
        if not h.is_positive():
            rows.append(LiminfRow(n, None, skipped=True))
            continue
        local = local_naive_height(x, v, precision)
        if not v.is_archimedean:
            local = log_prime(v.prime, precision) * local
        rows.append(LiminfRow(n, local / h))
    return rows
