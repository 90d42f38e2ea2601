"""
Truncated series with exact coefficients.

LaurentTail holds c_e z^e + c_{e-1} z^{e-1} + ... and records the lowest
exponent whose coefficient is known; operations never report coefficients
below what their inputs support. PowerSeries holds c_0 + c_1 w + ... modulo
w^order and serves the invariant-germ recursion.
"""

from .exceptions import ArgumentError, PrecisionError

_EXACT = None


class LaurentTail:
    """
    A Laurent series in z^{-1} truncated below `valid_to`.

    Attributes:
        top (int): Exponent of the first retained coefficient.
        coeffs (tuple): Coefficients of z^top, z^(top-1), ... .
        valid_to (int | None): Lowest exponent whose coefficient is known;
            None when the series is exact (all omitted coefficients are 0).
        zero: Zero of the coefficient ring.
    """

    __slots__ = ("top", "coeffs", "valid_to", "zero")

    def __init__(self, top, coeffs, valid_to, zero):
        coeffs = list(coeffs)
        if valid_to is not _EXACT:
            keep = top - valid_to + 1
            if keep < len(coeffs):
                coeffs = coeffs[: max(keep, 0)]
            else:
                coeffs = coeffs + [zero] * (keep - len(coeffs))
        while coeffs and not coeffs[0]:
            coeffs.pop(0)
            top -= 1
        if valid_to is _EXACT:
            while coeffs and not coeffs[-1]:
                coeffs.pop()
        if not coeffs:
            top = (valid_to - 1) if valid_to is not _EXACT else 0
        self.top = top
        self.coeffs = tuple(coeffs)
        self.valid_to = valid_to
        self.zero = zero

    @classmethod
    def from_polynomial(cls, poly):
        return cls(poly.degree, reversed(poly.coeffs), _EXACT, poly.zero)

    @classmethod
    def monomial(cls, exponent, coeff, zero):
        return cls(exponent, [coeff], _EXACT, zero)

    @property
    def is_exact(self):
        return self.valid_to is _EXACT

    @property
    def low(self):
        """
        Exponent of the last retained coefficient.
        """
        return self.top - len(self.coeffs) + 1

    @property
    def order(self):
        """
        Number of retained coefficients from z^top down to the valid order.
        """
        return len(self.coeffs)

    @property
    def leading(self):
        return self.coeffs[0] if self.coeffs else self.zero

    def __bool__(self):
        return bool(self.coeffs)

    def coefficient(self, k):
        if k > self.top:
            return self.zero
        if k >= self.low and self.coeffs:
            return self.coeffs[self.top - k]
        if self.is_exact or k >= self.valid_to:
            return self.zero
        raise PrecisionError(f"coefficient of z^{k} is beyond the valid order {self.valid_to}")

    def __add__(self, other):
        if not isinstance(other, LaurentTail):
            other = LaurentTail.monomial(0, self.zero + other, self.zero)
        valid = _max_valid(self.valid_to, other.valid_to)
        top = max(self.top, other.top)
        bottom = valid if valid is not _EXACT else min(self.low, other.low)
        coeffs = [self.coefficient(k) + other.coefficient(k) for k in range(top, bottom - 1, -1)]
        return LaurentTail(top, coeffs, valid, self.zero)

    __radd__ = __add__

    def __neg__(self):
        return LaurentTail(self.top, [-c for c in self.coeffs], self.valid_to, self.zero)

    def __sub__(self, other):
        return self + (-other if isinstance(other, LaurentTail) else -other)

    def scale(self, c):
        return LaurentTail(self.top, [c * x for x in self.coeffs], self.valid_to, self.zero)

    def shift(self, k):
        """
        Multiply by z^k.
        """
        valid = self.valid_to + k if not self.is_exact else _EXACT
        return LaurentTail(self.top + k, self.coeffs, valid, self.zero)

    def __mul__(self, other):
        if not isinstance(other, LaurentTail):
            return self.scale(other)
        candidates = []
        if not self.is_exact:
            candidates.append(self.valid_to + other.top)
        if not other.is_exact:
            candidates.append(other.valid_to + self.top)
        valid = max(candidates) if candidates else _EXACT
        if not self.coeffs or not other.coeffs:
            return LaurentTail(self.top + other.top, [], valid, self.zero)
        top = self.top + other.top
        bottom = valid if valid is not _EXACT else self.low + other.low
        out = []
        for k in range(top, bottom - 1, -1):
            total = self.zero
            for i in range(max(self.low, k - other.top), min(self.top, k - other.low) + 1):
                a = self.coeffs[self.top - i]
                if a:
                    total = total + a * other.coeffs[other.top - (k - i)]
            out.append(total)
        return LaurentTail(top, out, valid, self.zero)

    __rmul__ = __mul__

    def __pow__(self, exponent):
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        result = LaurentTail.monomial(0, self.zero + 1, self.zero)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def reciprocal(self, down_to=None):
        """
        1/self, valid to the order the input supports (or `down_to` if exact).
        """
        if not self.coeffs:
            raise PrecisionError("reciprocal of a series with no known nonzero coefficient")
        top = -self.top
        if self.is_exact:
            if down_to is None:
                raise ArgumentError("exact reciprocal needs an explicit truncation")
            valid = down_to
        else:
            valid = top - self.order + 1
            if down_to is not None:
                valid = max(valid, down_to)
        length = top - valid + 1
        if length <= 0:
            return LaurentTail(top, [], valid, self.zero)
        inverse_lead = (self.zero + 1) / self.coeffs[0]
        g = [inverse_lead]
        for k in range(1, length):
            total = self.zero
            for j in range(1, min(k, len(self.coeffs) - 1) + 1):
                total = total + self.coeffs[j] * g[k - j]
            g.append(-total * inverse_lead)
        return LaurentTail(top, g, valid, self.zero)

    def truncate(self, valid_to):
        if not self.is_exact and valid_to < self.valid_to:
            raise PrecisionError(f"cannot extend validity below {self.valid_to}")
        return LaurentTail(self.top, self.coeffs, valid_to, self.zero)

    def agrees_with(self, other):
        """
        True when both series coincide down to the larger valid order.
        """
        floors = [s.valid_to for s in (self, other) if not s.is_exact]
        bottom = max(floors) if floors else min(self.low, other.low)
        top = max(self.top, other.top)
        return all(self.coefficient(k) == other.coefficient(k) for k in range(top, bottom - 1, -1))

    def coefficients_down_to(self, bottom):
        return [self.coefficient(k) for k in range(self.top, bottom - 1, -1)]

    def __str__(self):
        terms = [f"({c})*z^{self.top - i}" for i, c in enumerate(self.coeffs) if c]
        tail = "" if self.is_exact else f" + O(z^{self.valid_to - 1})"
        return (" + ".join(terms) or "0") + tail

    def __repr__(self):
        return f"LaurentTail({self})"


def _max_valid(a, b):
    if a is _EXACT:
        return b
    if b is _EXACT:
        return a
    return max(a, b)


def compose_series(s, f, down_to=None):
    """
    Return s(f(z)) truncated to the lowest provably valid order.

    Args:
        s (LaurentTail): Series whose top exponent is at most 1.
        f (Polynomial): Polynomial of degree d >= 1.
        down_to (int): Truncation for exact s with negative exponents.

    Returns:
        LaurentTail: s∘f with its valid order recorded.

    Raises:
        PrecisionError: If no coefficient of the result would be valid.
    """
    d = f.degree
    if d < 1:
        raise ArgumentError("compose_series needs a polynomial of degree >= 1")
    if s.top > 1:
        raise ArgumentError("compose_series expects a top exponent of at most 1")
    zero = s.zero
    if s.is_exact:
        valid = _EXACT if s.low >= 0 else (down_to if down_to is not None else d * (s.low - 1) + 1)
    else:
        valid = d * (s.valid_to - 1) + 1
    result_top = d * s.top if s.coeffs else d
    if valid is not _EXACT and valid > result_top:
        raise PrecisionError("truncation leaves no valid coefficient", valid_order=valid)
    f_series = LaurentTail.from_polynomial(f)
    total = LaurentTail(0, [], valid if valid is not _EXACT else _EXACT, zero)
    power = LaurentTail.monomial(0, zero + 1, zero)
    for k in range(0, max(s.top, -1) + 1):
        c = s.coefficient(k)
        if c:
            total = total + power.scale(c)
        power = power * f_series
    negative = [k for k in range(-1, s.low - 1, -1)] if s.coeffs else []
    if negative and valid is not _EXACT:
        inverse = f_series.reciprocal(down_to=valid)
        power = inverse
        for k in negative:
            c = s.coefficient(k)
            if c:
                total = total + power.truncate(max(valid, power.valid_to)).scale(c)
            if k - 1 >= s.low:
                power = power * inverse
    if valid is not _EXACT:
        total = total.truncate(valid)
    return total


class PowerSeries:
    """
    c_0 + c_1 w + ... known modulo w^order.
    """

    __slots__ = ("coeffs", "order", "zero")

    def __init__(self, coeffs, order, zero):
        coeffs = list(coeffs)[:order]
        coeffs += [zero] * (order - len(coeffs))
        self.coeffs = coeffs
        self.order = order
        self.zero = zero

    @classmethod
    def from_polynomial(cls, poly, order):
        return cls([poly[k] for k in range(order)], order, poly.zero)

    def __getitem__(self, k):
        return self.coeffs[k] if 0 <= k < self.order else self.zero

    def __add__(self, other):
        if not isinstance(other, PowerSeries):
            coeffs = list(self.coeffs)
            coeffs[0] = coeffs[0] + other
            return PowerSeries(coeffs, self.order, self.zero)
        order = min(self.order, other.order)
        return PowerSeries([self[k] + other[k] for k in range(order)], order, self.zero)

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries([-c for c in self.coeffs], self.order, self.zero)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, PowerSeries):
            return PowerSeries([c * other for c in self.coeffs], self.order, self.zero)
        order = min(self.order, other.order)
        out = [self.zero] * order
        for i in range(order):
            a = self.coeffs[i]
            if not a:
                continue
            for j in range(order - i):
                out[i + j] = out[i + j] + a * other.coeffs[j]
        return PowerSeries(out, order, self.zero)

    __rmul__ = __mul__

    def __pow__(self, exponent):
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        result = PowerSeries([self.zero + 1], self.order, self.zero)
        for _ in range(exponent):
            result = result * self
        return result

    def reciprocal(self):
        if not self.coeffs[0]:
            raise PrecisionError("power series with zero constant term is not invertible")
        inverse = (self.zero + 1) / self.coeffs[0]
        g = [inverse]
        for k in range(1, self.order):
            total = self.zero
            for j in range(1, k + 1):
                total = total + self.coeffs[j] * g[k - j]
            g.append(-total * inverse)
        return PowerSeries(g, self.order, self.zero)

    def __truediv__(self, other):
        if not isinstance(other, PowerSeries):
            return self * ((self.zero + 1) / other)
        return self * other.reciprocal()

    def compose(self, inner):
        """
        self(inner(w)); inner must have zero constant term.
        """
        if inner[0]:
            raise ArgumentError("inner series must vanish at w = 0")
        order = min(self.order, inner.order)
        result = PowerSeries([], order, self.zero)
        for c in reversed(self.coeffs[:order]):
            result = result * inner + c
        return result

    def valuation(self):
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        return self.order

    def is_zero(self):
        return not any(self.coeffs)

    def __str__(self):
        terms = [f"({c})*w^{k}" for k, c in enumerate(self.coeffs) if c]
        return (" + ".join(terms) or "0") + f" + O(w^{self.order})"


def evaluate_bivariate(coefficients, u_series, w_series):
    """
    Evaluate sum c_ij u^i w^j at power series, with {(i, j): c_ij}.
    """
    order = min(u_series.order, w_series.order)
    zero = u_series.zero
    by_u = {}
    for (i, j), c in coefficients.items():
        by_u.setdefault(i, {})[j] = c
    result = PowerSeries([], order, zero)
    w_powers = [PowerSeries([zero + 1], order, zero)]
    top = max((i for i in by_u), default=0)
    max_j = max((j for row in by_u.values() for j in row), default=0)
    for _ in range(max_j):
        w_powers.append(w_powers[-1] * w_series)
    for i in range(top, -1, -1):
        row = PowerSeries([], order, zero)
        for j, c in by_u.get(i, {}).items():
            row = row + w_powers[j] * c
        result = result * u_series + row
    return result
