"""
Certified real and complex enclosures on top of mpmath interval arithmetic.

Each working precision gets its own interval context so that concurrent
computations at different precisions never share a mutable `prec`.
"""

from fractions import Fraction
from functools import lru_cache

from mpmath.ctx_iv import MPIntervalContext

from .exceptions import PrecisionError


@lru_cache(maxsize=None)
def interval_context(precision):
    """
    Interval context fixed at `precision` bits; never mutate its precision.
    """
    ctx = MPIntervalContext()
    ctx.prec = int(precision)
    return ctx


def rational_interval(value, ctx):
    """
    Enclosure of an exact rational (ints and Fractions).
    """
    value = Fraction(value)
    if value.denominator == 1:
        return ctx.mpf(value.numerator)
    return ctx.mpf(value.numerator) / ctx.mpf(value.denominator)


def split_plusminus(x, ctx, digits=30):
    """
    Midpoint and radius strings of a real interval.
    """
    text = ctx.nstr(x, digits, mode="plusminus")
    mid, _, rad = text.partition("+-")
    return mid.strip(), (rad.strip() or "0")


class CertifiedReal:
    """
    A real number known to lie in an interval [mid - rad, mid + rad].

    Attributes:
        value: The mpmath interval (ivmpf) enclosing the number.
        precision (int): Working precision in bits.
    """

    __slots__ = ("value", "precision")

    def __init__(self, value, precision):
        ctx = interval_context(precision)
        self.value = ctx.convert(value)
        self.precision = precision

    @classmethod
    def exact(cls, value, precision):
        ctx = interval_context(precision)
        return cls(rational_interval(value, ctx), precision)

    @classmethod
    def zero(cls, precision):
        return cls.exact(0, precision)

    @property
    def ctx(self):
        return interval_context(self.precision)

    def _other(self, other):
        if isinstance(other, CertifiedReal):
            return other.value
        if isinstance(other, (int, Fraction)):
            return rational_interval(other, self.ctx)
        return None

    def __add__(self, other):
        value = self._other(other)
        if value is None:
            return NotImplemented
        return CertifiedReal(self.value + value, self.precision)

    __radd__ = __add__

    def __sub__(self, other):
        value = self._other(other)
        if value is None:
            return NotImplemented
        return CertifiedReal(self.value - value, self.precision)

    def __rsub__(self, other):
        value = self._other(other)
        if value is None:
            return NotImplemented
        return CertifiedReal(value - self.value, self.precision)

    def __neg__(self):
        return CertifiedReal(-self.value, self.precision)

    def __mul__(self, other):
        value = self._other(other)
        if value is None:
            return NotImplemented
        return CertifiedReal(self.value * value, self.precision)

    __rmul__ = __mul__

    def __truediv__(self, other):
        value = self._other(other)
        if value is None:
            return NotImplemented
        if 0 in value:
            raise PrecisionError("division by an interval containing zero")
        return CertifiedReal(self.value / value, self.precision)

    def __rtruediv__(self, other):
        value = self._other(other)
        if value is None:
            return NotImplemented
        if 0 in self.value:
            raise PrecisionError("division by an interval containing zero")
        return CertifiedReal(value / self.value, self.precision)

    def widen(self, radius):
        """
        Enlarge the enclosure by +-radius (a CertifiedReal or rational).
        """
        bound = abs(self._other(radius)).b
        ctx = self.ctx
        return CertifiedReal(self.value + ctx.mpf((-bound, bound)), self.precision)

    def exp(self):
        return CertifiedReal(self.ctx.exp(self.value), self.precision)

    def log(self):
        if not self.is_positive():
            raise PrecisionError("logarithm of an interval not certified positive")
        return CertifiedReal(self.ctx.ln(self.value), self.precision)

    def is_positive(self):
        return (self.value > 0) is True

    def is_negative(self):
        return (self.value < 0) is True

    def excludes_zero(self):
        return self.is_positive() or self.is_negative()

    def certainly_greater(self, other):
        return (self.value > self._other(other)) is True

    def certainly_less(self, other):
        return (self.value < self._other(other)) is True

    def contains(self, other):
        value = self._other(other)
        return (self.value.a <= value.a) is True and (value.b <= self.value.b) is True

    def contains_rational(self, q):
        return self.contains(Fraction(q))

    @property
    def lower(self):
        return self.value.a

    @property
    def upper(self):
        return self.value.b

    @property
    def width(self):
        return CertifiedReal(self.value.delta, self.precision)

    def width_below(self, bound):
        return (self.value.delta < rational_interval(Fraction(bound), self.ctx)) is True

    def as_dict(self):
        mid, rad = split_plusminus(self.value, self.ctx)
        return {"mid": mid, "rad": rad}

    def __str__(self):
        return self.ctx.nstr(self.value, 20, mode="plusminus")

    def __repr__(self):
        return f"CertifiedReal({self})"


class CertifiedComplex:
    """
    A complex number enclosed in a rectangle (mpmath ivmpc).
    """

    __slots__ = ("value", "precision")

    def __init__(self, value, precision):
        ctx = interval_context(precision)
        self.value = value if isinstance(value, ctx.mpc) else ctx.mpc(value)
        self.precision = precision

    @property
    def ctx(self):
        return interval_context(self.precision)

    @property
    def real(self):
        return CertifiedReal(self.value.real, self.precision)

    @property
    def imag(self):
        return CertifiedReal(self.value.imag, self.precision)

    def modulus(self):
        return CertifiedReal(abs(self.value), self.precision)

    def log_modulus(self):
        return self.modulus().log()

    def __mul__(self, other):
        value = other.value if isinstance(other, CertifiedComplex) else other
        return CertifiedComplex(self.value * value, self.precision)

    def as_dict(self):
        re_mid, re_rad = split_plusminus(self.value.real, self.ctx)
        im_mid, im_rad = split_plusminus(self.value.imag, self.ctx)
        return {"re": {"mid": re_mid, "rad": re_rad}, "im": {"mid": im_mid, "rad": im_rad}}

    def __str__(self):
        return f"({self.real} + ({self.imag})*i)"


def certify_sign(compute, precision, attempts=4):
    """
    Re-run `compute(precision)` with doubled precision until the resulting
    CertifiedReal excludes zero.

    :param compute: Callable returning a CertifiedReal for a given precision.
    :param precision: Starting precision in bits.
    :param attempts: Number of doublings allowed.
    :return: The first enclosure that excludes zero.
    """
    for _ in range(attempts):
        value = compute(precision)
        if value.excludes_zero():
            return value
        precision *= 2
    raise PrecisionError("sign could not be certified", precision=precision)
