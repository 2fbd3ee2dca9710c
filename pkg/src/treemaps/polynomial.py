"""Exact integer, rational and univariate polynomial arithmetic.

Everything here works over :class:`fractions.Fraction` and Python's
arbitrary-precision ``int``; there is no floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Mapping, Sequence


@lru_cache(maxsize=None)
def factorial(m: int) -> int:
    if m < 0:
        raise ValueError(f"factorial of negative integer {m}")
    result = 1
    for t in range(2, m + 1):
        result *= t
    return result


def double_factorial(m: int) -> int:
    """``m!! = m (m-2) (m-4) ...`` with ``(-1)!! = 0!! = 1``."""
    if m < -1:
        raise ValueError(f"double factorial undefined for {m}")
    result = 1
    while m > 1:
        result *= m
        m -= 2
    return result


def reciprocal_factorial(m: int) -> Fraction:
    """``1/m!``, taken to be exactly zero for negative ``m``.

    Closed forms below divide by factorials whose argument can go
    negative; those terms vanish.
    """
    if m < 0:
        return Fraction(0)
    return Fraction(1, factorial(m))


def binomial_int(n: int, k: int) -> int:
    """Binomial coefficient, extended by the falling-factorial formula.

    Zero when ``k < 0`` or ``0 <= n < k``. For negative ``n`` the usual
    generalisation ``n (n-1) ... (n-k+1) / k!`` is used.
    """
    if k < 0:
        return 0
    if 0 <= n < k:
        return 0
    num = 1
    for t in range(k):
        num *= n - t
    return num // factorial(k)


def _coerce(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    raise TypeError(f"cannot use {type(c).__name__} as an exact coefficient")


class Polynomial:
    """Univariate polynomial with exact rational coefficients.

    Coefficients are stored in ascending degree with trailing zeros
    stripped, so two polynomials are equal iff their coefficient tuples
    are equal. The zero polynomial has an empty coefficient tuple and
    degree ``-1``.

    >>> x = Polynomial.x()
    >>> (x + 1) * (x - 1)
    Polynomial([-1, 0, 1])
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_coerce(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self._coeffs = tuple(cs)

    @classmethod
    def x(cls) -> "Polynomial":
        return cls([0, 1])

    @classmethod
    def constant(cls, c) -> "Polynomial":
        return cls([c])

    @classmethod
    def from_dict(cls, coeffs: Mapping[int, object]) -> "Polynomial":
        if not coeffs:
            return cls()
        if min(coeffs) < 0:
            raise ValueError("negative exponent")
        cs = [Fraction(0)] * (max(coeffs) + 1)
        for e, c in coeffs.items():
            cs[e] += _coerce(c)
        return cls(cs)

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._coeffs

    @property
    def degree(self) -> int:
        return len(self._coeffs) - 1

    def coeff(self, e: int) -> Fraction:
        if 0 <= e < len(self._coeffs):
            return self._coeffs[e]
        return Fraction(0)

    def is_zero(self) -> bool:
        return not self._coeffs

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self._coeffs)

    def to_dict(self) -> dict[int, Fraction]:
        """Nonzero coefficients keyed by exponent, ascending."""
        return {e: c for e, c in enumerate(self._coeffs) if c != 0}

    def int_coeffs(self) -> dict[int, int]:
        if not self.is_integral():
            raise ValueError(f"{self!r} has non-integral coefficients")
        return {e: int(c) for e, c in self.to_dict().items()}

    # arithmetic

    def _wrap(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            return other
        return Polynomial([_coerce(other)])

    def __add__(self, other) -> "Polynomial":
        try:
            other = self._wrap(other)
        except TypeError:
            return NotImplemented
        a, b = self._coeffs, other._coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Polynomial(out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(-c for c in self._coeffs)

    def __sub__(self, other) -> "Polynomial":
        try:
            other = self._wrap(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        return self._wrap(other) - self

    def __mul__(self, other) -> "Polynomial":
        try:
            other = self._wrap(other)
        except TypeError:
            return NotImplemented
        a, b = self._coeffs, other._coeffs
        if not a or not b:
            return Polynomial()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca == 0:
                continue
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
        return Polynomial(out)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Polynomial":
        c = _coerce(other)
        if c == 0:
            raise ZeroDivisionError("polynomial division by zero")
        return Polynomial(a / c for a in self._coeffs)

    def __pow__(self, e: int) -> "Polynomial":
        if e < 0:
            raise ValueError("negative power")
        result = Polynomial([1])
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __call__(self, value):
        acc = Fraction(0) if not isinstance(value, Polynomial) else Polynomial()
        for c in reversed(self._coeffs):
            acc = acc * value + c
        return acc

    def shift(self, c) -> "Polynomial":
        """Return ``p(x + c)``."""
        return self(Polynomial([c, 1]))

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self._coeffs == other._coeffs
        try:
            return self._coeffs == Polynomial([_coerce(other)])._coeffs
        except TypeError:
            return NotImplemented

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __repr__(self) -> str:
        def fmt(c: Fraction) -> str:
            return str(c.numerator) if c.denominator == 1 else f"Fraction({c.numerator}, {c.denominator})"

        return f"Polynomial([{', '.join(fmt(c) for c in self._coeffs)}])"

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        terms = []
        for e in range(len(self._coeffs) - 1, -1, -1):
            c = self._coeffs[e]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                mono = "x" if e == 1 else f"x^{e}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            terms.append((sign, body))
        first_sign, first_body = terms[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def rising_factorial(base: Polynomial, m: int) -> Polynomial:
    """``base (base + 1) ... (base + m - 1)``; the empty product for ``m == 0``."""
    if m < 0:
        raise ValueError("rising factorial length must be non-negative")
    result = Polynomial([1])
    for t in range(m):
        result = result * (base + t)
    return result


def binomial_poly(k: int) -> Polynomial:
    """``C(x, k) = x (x-1) ... (x-k+1) / k!`` as a polynomial in ``x``."""
    if k < 0:
        raise ValueError("binomial_poly needs k >= 0")
    x = Polynomial.x()
    return rising_factorial(x - (k - 1), k) / factorial(k)


def interpolate(points: Sequence[tuple[int, object]]) -> Polynomial:
    """Unique polynomial of degree ``< len(points)`` through ``points``.

    Newton divided differences over the rationals.
    """
    if not points:
        raise ValueError("need at least one point")
    xs = [int(a) for a, _ in points]
    if len(set(xs)) != len(xs):
        raise ValueError("duplicate abscissas")
    table = [_coerce(b) for _, b in points]
    coefs = [table[0]]
    for level in range(1, len(xs)):
        table = [
            (table[i + 1] - table[i]) / (xs[i + level] - xs[i])
            for i in range(len(table) - 1)
        ]
        coefs.append(table[0])
    result = Polynomial()
    basis = Polynomial([1])
    x = Polynomial.x()
    for c, a in zip(coefs, xs):
        result = result + basis * c
        basis = basis * (x - a)
    return result
