"""Mixed-radix numeration for a factorisation ``d = d_1 * ... * d_t``.

Digit positions are weighted by the prefix products ``P_j = d_1 * ... *
d_{j-1}`` (``P_1 = 1``).  Indices ``j`` below are 1-based throughout, as in
the usual statement of the decomposition.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence


@dataclass(frozen=True)
class FactorList:
    factors: tuple[int, ...]

    def __init__(self, factors: Iterable[int]):
        factors = tuple(factors)
        for d in factors:
            if not isinstance(d, int) or d < 1:
                raise ValueError(f"factors must be positive integers, got {d!r}")
        object.__setattr__(self, "factors", factors)

    @property
    def t(self) -> int:
        return len(self.factors)

    @property
    def product(self) -> int:
        return math.prod(self.factors)

    @property
    def prefix_products(self) -> tuple[int, ...]:
        """``(P_1, ..., P_{t+1})`` with ``P_1 = 1`` and ``P_{t+1} = d``."""
        out = [1]
        for d in self.factors:
            out.append(out[-1] * d)
        return tuple(out)

    def prefix(self, j: int) -> int:
        return math.prod(self.factors[: j - 1])

    def __iter__(self):
        return iter(self.factors)

    def __len__(self) -> int:
        return len(self.factors)

    def __str__(self) -> str:
        return ",".join(map(str, self.factors))


def compose_digits(betas: Sequence[int], f: FactorList) -> int:
    """``sum_j beta_j * P_j`` for digits ``0 <= beta_j < d_j``."""
    if len(betas) != f.t:
        raise ValueError(f"expected {f.t} digits, got {len(betas)}")
    total, place = 0, 1
    for beta, d in zip(betas, f.factors):
        if not 0 <= beta < d:
            raise ValueError(f"digit {beta} out of range for radix {d}")
        total += beta * place
        place *= d
    return total


def decompose_digits(r: int, f: FactorList) -> tuple[int, ...]:
    """Inverse of :func:`compose_digits` by repeated Euclidean division."""
    if not 0 <= r < f.product:
        raise ValueError(f"{r} is outside 0..{f.product - 1}")
    digits = []
    for d in f.factors:
        r, beta = divmod(r, d)
        digits.append(beta)
    return tuple(digits)


def factor_form(i: int, f: FactorList) -> tuple[int, int]:
    """Write ``i`` (not divisible by ``d``) as ``gamma * P_j`` with ``d_j`` not dividing ``gamma``.

    Returns ``(j, gamma)``.  Factors equal to 1 never receive an integer.
    """
    d = f.product
    if d == 1:
        raise ValueError("factor form needs a factor list with product > 1")
    if i < 1:
        raise ValueError(f"{i} is not a positive integer")
    if i % d == 0:
        raise ValueError(f"{i} is divisible by {d}")
    gamma = i
    for j, dj in enumerate(f.factors, start=1):
        if gamma % dj:
            return j, gamma
        gamma //= dj
    raise AssertionError("unreachable: i is not divisible by the full product")


def unfactor_form(j: int, gamma: int, f: FactorList) -> int:
    if not 1 <= j <= f.t:
        raise ValueError(f"index {j} outside 1..{f.t}")
    if gamma < 1:
        raise ValueError(f"gamma must be positive, got {gamma}")
    if gamma % f.factors[j - 1] == 0:
        raise ValueError(f"{gamma} is divisible by d_{j} = {f.factors[j - 1]}")
    return gamma * f.prefix(j)
