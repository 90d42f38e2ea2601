"""
Exact root-of-unity tests in the supported fields and quotient fields.
"""

from dataclasses import dataclass
from typing import Optional

from sympy import totient

from algebra.exceptions import ArgumentError
from algebra.quotient import QuotientRingElement


@dataclass(frozen=True)
class RootOfUnityTest:
    is_root: bool
    order: Optional[int] = None

    def __bool__(self):
        return self.is_root


def candidate_orders(degree):
    """
    Orders k of roots of unity that fit in a field of the given degree over Q,
    i.e. those with phi(k) dividing it, in increasing order.
    """
    return [k for k in range(1, 2 * degree * degree + 3) if degree % int(totient(k)) == 0]


def _absolute_degree(x):
    if isinstance(x, QuotientRingElement):
        return x.ring.degree * x.field.degree
    return x.field.degree


def is_root_of_unity(x):
    """
    Decide whether x^k = 1 for some k >= 1, and find the least such k.

    :param x: A nonzero FieldElement or QuotientRingElement over an
        irreducible modulus.
    :return: RootOfUnityTest
    """
    if not x:
        raise ArgumentError("0 is not a root of unity candidate")
    power, reached = x, 1
    for k in candidate_orders(_absolute_degree(x)):
        power = power * x ** (k - reached)
        reached = k
        if power == 1:
            return RootOfUnityTest(True, k)
    return RootOfUnityTest(False)
