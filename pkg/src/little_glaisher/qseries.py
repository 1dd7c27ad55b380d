"""Exact power series in ``q`` truncated after ``q**N``.

Coefficients are Python integers, so nothing overflows.  Generic products are
schoolbook; the structured factors that make up the product sides
(``1 - q**a``, geometric blocks) are applied in linear time each.
"""

from __future__ import annotations

import os
from typing import NamedTuple, Sequence

ORDER_ENV = "LITTLE_GLAISHER_ORDER"
DEFAULT_ORDER = 200


def default_order() -> int:
    value = os.environ.get(ORDER_ENV)
    if value is None:
        return DEFAULT_ORDER
    try:
        order = int(value)
    except ValueError:
        raise ValueError(f"{ORDER_ENV} must be an integer, got {value!r}") from None
    if order < 0:
        raise ValueError(f"{ORDER_ENV} must be nonnegative, got {order}")
    return order


class TruncatedSeries:
    """Coefficients of ``q**0 .. q**N``; arithmetic is exact mod ``q**(N+1)``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[int], order: int | None = None):
        coeffs = list(coeffs)
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise ValueError("truncation order must be nonnegative")
        coeffs = coeffs[: order + 1]
        coeffs += [0] * (order + 1 - len(coeffs))
        self.coeffs = tuple(coeffs)

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        return cls([1], order)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int) -> int:
        return self.coeffs[n]

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def _same_order(self, other: "TruncatedSeries") -> None:
        if self.order != other.order:
            raise ValueError(f"truncation orders differ: {self.order} vs {other.order}")

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._same_order(other)
        return TruncatedSeries([a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._same_order(other)
        return TruncatedSeries([a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries([-a for a in self.coeffs])

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._same_order(other)
        n = self.order
        out = [0] * (n + 1)
        b = other.coeffs
        for i, a in enumerate(self.coeffs):
            if a:
                for j in range(n + 1 - i):
                    out[i + j] += a * b[j]
        return TruncatedSeries(out)

    def reciprocal(self) -> "TruncatedSeries":
        """Inverse of a series whose constant term is 1 or -1."""
        c0 = self.coeffs[0]
        if c0 not in (1, -1):
            raise ValueError(f"reciprocal needs constant term +-1, got {c0}")
        a = self.coeffs
        inv = [0] * len(a)
        inv[0] = c0
        for n in range(1, len(a)):
            s = 0
            for i in range(1, n + 1):
                if a[i]:
                    s += a[i] * inv[n - i]
            inv[n] = -s * c0
        return TruncatedSeries(inv)

    def __truediv__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self * other.reciprocal()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        terms = [f"{c}*q^{n}" for n, c in enumerate(self.coeffs) if c]
        return f"TruncatedSeries({' + '.join(terms) or '0'}; O(q^{self.order + 1}))"

    # linear-time structured factors; these return new series

    def times_binomial(self, shift: int, c: int) -> "TruncatedSeries":
        """Multiply by ``1 + c*q**shift``."""
        out = list(self.coeffs)
        for n in range(len(out) - 1, shift - 1, -1):
            out[n] += c * out[n - shift]
        return TruncatedSeries(out)

    def times_geometric_block(self, step: int, length: int) -> "TruncatedSeries":
        """Multiply by ``1 + q**step + ... + q**((length-1)*step)``."""
        old = self.coeffs
        out = [0] * len(old)
        span = length * step
        for n in range(len(old)):
            s = old[n]
            if n >= step:
                s += out[n - step]
            if n >= span:
                s -= old[n - span]
            out[n] = s
        return TruncatedSeries(out)


def pochhammer(a: int, order: int) -> TruncatedSeries:
    """``(q**a; q**a)_inf = prod_{i >= 1} (1 - q**(a*i))`` truncated."""
    if a < 1:
        raise ValueError(f"a must be positive, got {a}")
    s = TruncatedSeries.one(order)
    for shift in range(a, order + 1, a):
        s = s.times_binomial(shift, -1)
    return s


def regular_product_side(k: int, l: int, order: int) -> TruncatedSeries:
    """``prod_{k not | i} (1 + q**i + ... + q**((l-1)*i))``; counts k,l-regular partitions."""
    if k < 1 or l < 1:
        raise ValueError("k and l must be positive")
    s = TruncatedSeries.one(order)
    if l == 1:
        return s
    for i in range(1, order + 1):
        if i % k:
            s = s.times_geometric_block(i, l)
    return s


def eta_quotient_side(k: int, l: int, order: int) -> TruncatedSeries:
    """``(q^k;q^k)(q^l;q^l) / ((q;q)(q^{kl};q^{kl}))`` by reciprocal and multiplication."""
    if k < 1 or l < 1:
        raise ValueError("k and l must be positive")
    numerator = pochhammer(k, order) * pochhammer(l, order)
    denominator = pochhammer(1, order) * pochhammer(k * l, order)
    return numerator * denominator.reciprocal()


class GlaisherForms(NamedTuple):
    """The three sides of Glaisher's identity for one ``k``."""

    lhs: TruncatedSeries      # prod_{k not | i} 1/(1 - q**i)
    eta: TruncatedSeries      # (q^k;q^k) / (q;q)
    rhs: TruncatedSeries      # prod_i (1 + q**i + ... + q**((k-1)*i))


def glaisher_series(k: int, order: int) -> GlaisherForms:
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    lhs = TruncatedSeries.one(order)
    for i in range(1, order + 1):
        if i % k:
            lhs = lhs.times_geometric_block(i, order // i + 1)
    eta = pochhammer(k, order) * pochhammer(1, order).reciprocal()
    rhs = TruncatedSeries.one(order)
    for i in range(1, order + 1):
        rhs = rhs.times_geometric_block(i, k)
    return GlaisherForms(lhs, eta, rhs)
