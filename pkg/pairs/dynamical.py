"""
Dynamical pairs (f, a) and the operations that move them around.
"""

import logging
from dataclasses import dataclass, field
from typing import Any

from algebra.exceptions import ArgumentError, PreconditionError
from bottcher.classify import NONEXCEPTIONAL, classify_polynomial_type
from bottcher.systems import PolynomialSystem
from heights.orbits import detect_preperiodic

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DynamicalPair:
    """
    A polynomial f with a point a that is not preperiodic.

    Attributes:
        system (PolynomialSystem): The nonexceptional polynomial.
        point (FieldElement): The point, promoted into f's field.
        label (str): Name used in reports.
        preperiodicity (Preperiodicity | None): The detector's verdict, kept
            when the pair was checked on construction.
    """

    system: PolynomialSystem
    point: Any
    label: str = ""
    preperiodicity: Any = field(default=None, compare=False, hash=False)

    @classmethod
    def build(cls, system, point, label="", check=True, budget=None):
        """
        Validate membership in DP_d and return the pair.

        :raises PreconditionError: When f is exceptional or a is preperiodic.
        """
        point = point.promote(system.field)
        system = system.promote(point.field)
        if not check:
            return cls(system, point, label)
        kind = classify_polynomial_type(system)
        if kind.kind != NONEXCEPTIONAL:
            raise PreconditionError(f"{system} is {kind.kind}", model=kind.model)
        verdict = detect_preperiodic(system, point, budget)
        if verdict.is_preperiodic:
            raise PreconditionError(
                f"{point} is preperiodic under {system}", tail=verdict.tail, period=verdict.period
            )
        return cls(system, point, label, verdict)

    @property
    def field(self):
        return self.system.field

    @property
    def degree(self):
        return self.system.degree

    def __str__(self):
        return self.label or f"({self.system}, {self.point})"


def conjugate_pair(pair):
    """
    The Galois image (sigma(f), sigma(a)); the identity over Q.
    """
    if pair.field.is_rational:
        return pair
    label = f"sigma({pair.label})" if pair.label else ""
    return DynamicalPair(pair.system.conjugate(), pair.point.conjugate(), label, pair.preperiodicity)


def shift_pair(pair, k=1):
    """
    (f, f^k(a)); equivalence classes and degree vectors do not change.
    """
    if k < 0:
        raise ArgumentError("shifts must be non-negative")
    point = pair.point
    for _ in range(k):
        point = pair.system(point)
    label = f"{pair.label}+{k}" if pair.label else ""
    return DynamicalPair(pair.system, point, label, pair.preperiodicity)


def common_field(*pairs):
    K = pairs[0].field
    for pair in pairs[1:]:
        K = K.join(pair.field)
    return K
