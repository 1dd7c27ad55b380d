"""Bijection between k,l-regular and l,k-regular partitions.

The map factors ``k = k_1 ... k_r`` and ``l = l_1 ... l_s`` so that every pair
``(k_u, l_v)`` is either equal or coprime, splits a k,l-regular partition into
an ``r x s`` grid of ``k_u,l_v``-regular partitions (``psi_forward``), turns
each cell into an ``l_v,k_u``-regular partition with Glaisher maps, and glues
the transposed grid back together (``psi_inverse`` on the ``(l, k)`` side).

Grid cells are stored *descaled*: cell ``(u, v)`` of a grid with row factors
``k`` and column factors ``l`` contributes its parts multiplied by
``K_u * L_v`` (the prefix products) to the glued partition.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .glaisher import _forward_table, _inverse_table
from .mixed_radix import FactorList, decompose_digits, factor_form
from .partitions import (
    NotRegularError,
    Partition,
    check_kl_regular,
    format_partition,
    is_kl_regular,
    regular_partitions,
)

STRATEGIES = ("optimal", "prime")


class FactorizationError(ValueError):
    pass


@dataclass(frozen=True)
class CompatibleFactorization:
    k_factors: FactorList
    l_factors: FactorList

    @property
    def k(self) -> int:
        return self.k_factors.product

    @property
    def l(self) -> int:
        return self.l_factors.product

    def swapped(self) -> "CompatibleFactorization":
        return CompatibleFactorization(self.l_factors, self.k_factors)

    def __str__(self) -> str:
        return f"{self.k_factors}/{self.l_factors}"


def _as_factor_list(f: FactorList | Iterable[int]) -> FactorList:
    return f if isinstance(f, FactorList) else FactorList(f)


def validate_factorization(kf, lf, k: int, l: int) -> CompatibleFactorization:
    """Check products and that each pair ``(k_u, l_v)`` is equal or coprime."""
    kf, lf = _as_factor_list(kf), _as_factor_list(lf)
    if kf.product != k:
        raise FactorizationError(f"factors {kf} multiply to {kf.product}, not k = {k}")
    if lf.product != l:
        raise FactorizationError(f"factors {lf} multiply to {lf.product}, not l = {l}")
    for ku in kf:
        for lv in lf:
            if ku != lv and math.gcd(ku, lv) != 1:
                raise FactorizationError(
                    f"factors {ku} and {lv} are neither equal nor coprime")
    return CompatibleFactorization(kf, lf)


def prime_factors(n: int) -> list[int]:
    """Prime factors of ``n`` with multiplicity, ascending."""
    if n < 1:
        raise ValueError(f"expected a positive integer, got {n}")
    out, p = [], 2
    while p * p <= n:
        while n % p == 0:
            out.append(p)
            n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def prime_factorization(k: int, l: int) -> CompatibleFactorization:
    return validate_factorization(prime_factors(k), prime_factors(l), k, l)


def optimal_factorization(k: int, l: int) -> CompatibleFactorization:
    """Fewest-factor compatible factorisation.

    A prime ``p`` dividing both ``k = ...p**a...`` and ``l = ...p**b...``
    contributes ``p**gcd(a, b)`` repeated ``a/gcd`` times to ``k`` and
    ``b/gcd`` times to ``l``.  Primes private to one side are collected into
    a single trailing factor, dropped when it equals 1.
    """
    ek, el = _exponents(k), _exponents(l)
    kf: list[int] = []
    lf: list[int] = []
    rest_k = rest_l = 1
    for p in sorted(set(ek) | set(el)):
        a, b = ek.get(p, 0), el.get(p, 0)
        if a and b:
            g = math.gcd(a, b)
            kf += [p**g] * (a // g)
            lf += [p**g] * (b // g)
        elif a:
            rest_k *= p**a
        else:
            rest_l *= p**b
    if rest_k > 1:
        kf.append(rest_k)
    if rest_l > 1:
        lf.append(rest_l)
    return validate_factorization(kf, lf, k, l)


def _exponents(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    for p in prime_factors(n):
        out[p] = out.get(p, 0) + 1
    return out


def parse_factors(text: str) -> tuple[list[int], list[int]]:
    """``"2,2/2,3"`` -> ``([2, 2], [2, 3])``; either side may be empty."""
    try:
        left, right = text.split("/")
        side = lambda s: [int(x) for x in s.split(",") if x.strip()]  # noqa: E731
        return side(left), side(right)
    except ValueError:
        raise FactorizationError(f"factors must look like '2,2/2,3', got {text!r}") from None


def resolve_factorization(k: int, l: int, strategy: str = "optimal",
                          factors: CompatibleFactorization | tuple | str | None = None
                          ) -> CompatibleFactorization:
    if factors is not None:
        if isinstance(factors, CompatibleFactorization):
            return validate_factorization(factors.k_factors, factors.l_factors, k, l)
        if isinstance(factors, str):
            factors = parse_factors(factors)
        kf, lf = factors
        return validate_factorization(kf, lf, k, l)
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}; expected one of {STRATEGIES}")
    if k == l:
        # a single cell k,k -> k,k makes the whole map the identity; longer
        # factor lists would swap digit positions with part positions
        one = [k] if k > 1 else []
        return validate_factorization(one, one, k, l)
    if strategy == "optimal":
        return optimal_factorization(k, l)
    if strategy == "prime":
        return prime_factorization(k, l)
    raise ValueError(f"unknown strategy {strategy!r}; expected one of {STRATEGIES}")


# -- grids -------------------------------------------------------------------

@dataclass(frozen=True)
class PartitionGrid:
    """``len(row_factors) x len(col_factors)`` array of descaled partitions.

    Cell ``(a, b)`` must be ``row_a, col_b``-regular.  A grid produced by
    ``psi_forward`` for ``(k, l)`` has the k-factors as rows; after the
    middle step the rows are the l-factors.
    """

    entries: tuple[tuple[Partition, ...], ...]
    row_factors: FactorList
    col_factors: FactorList

    def entry(self, a: int, b: int) -> Partition:
        """1-based access."""
        return self.entries[a - 1][b - 1]

    @property
    def k(self) -> int:
        return self.row_factors.product

    @property
    def l(self) -> int:
        return self.col_factors.product

    def cell_scale(self, a: int, b: int) -> int:
        return self.row_factors.prefix(a) * self.col_factors.prefix(b)

    def scaled_entries(self) -> tuple[tuple[Partition, ...], ...]:
        """Cells with parts multiplied back by ``R_a * C_b``."""
        return tuple(
            tuple(cell.scaled(self.cell_scale(a, b)) for b, cell in enumerate(row, start=1))
            for a, row in enumerate(self.entries, start=1))

    def weighted_weight(self) -> int:
        return sum(self.cell_scale(a, b) * cell.weight
                   for a, row in enumerate(self.entries, start=1)
                   for b, cell in enumerate(row, start=1))

    def check(self) -> None:
        for a, row in enumerate(self.entries, start=1):
            for b, cell in enumerate(row, start=1):
                ra, cb = self.row_factors.factors[a - 1], self.col_factors.factors[b - 1]
                if not is_kl_regular(cell, ra, cb):
                    raise NotRegularError(
                        f"grid cell ({a},{b}) = {format_partition(cell)} is not {ra},{cb}-regular")

    def transposed(self) -> "PartitionGrid":
        cols = tuple(tuple(row[b] for row in self.entries)
                     for b in range(len(self.col_factors)))
        return PartitionGrid(cols, self.col_factors, self.row_factors)


def _split(freq, kf: FactorList, lf: FactorList) -> list[list[dict[int, int]]]:
    cells: list[list[dict[int, int]]] = [[{} for _ in lf.factors] for _ in kf.factors]
    for part, mult in freq.items():
        u, gamma = factor_form(part, kf)
        row = cells[u - 1]
        for v, beta in enumerate(decompose_digits(mult, lf)):
            if beta:
                row[v][gamma] = beta
    return cells


def _join(cells, rf: FactorList, cf: FactorList) -> dict[int, int]:
    table: dict[int, int] = {}
    col_prefix = cf.prefix_products
    for a, row in enumerate(cells):
        scale = rf.prefix(a + 1)
        for b, cell in enumerate(row):
            place = col_prefix[b]
            for gamma, eta in cell.items():
                part = gamma * scale
                table[part] = table.get(part, 0) + eta * place
    return table


def psi_forward(lam: Partition, cf: CompatibleFactorization) -> PartitionGrid:
    """Split a k,l-regular partition into the grid of ``k_u,l_v``-regular cells."""
    check_kl_regular(lam, cf.k, cf.l)
    cells = _split(lam.freq, cf.k_factors, cf.l_factors)
    grid = PartitionGrid(
        tuple(tuple(Partition._trusted(c) for c in row) for row in cells),
        cf.k_factors, cf.l_factors)
    assert grid.weighted_weight() == lam.weight, "weight identity violated"
    return grid


def psi_inverse(grid: PartitionGrid) -> Partition:
    """Glue a grid back into a ``k,l``-regular partition (rows = k-factors)."""
    grid.check()
    return Partition._trusted(
        _join([[cell.freq for cell in row] for row in grid.entries],
              grid.row_factors, grid.col_factors))


# -- coprime case and composed map ----------------------------------------------

def _coprime_table(freq, k: int, l: int) -> dict[int, int]:
    if not freq:
        return {}
    if k == l:
        return dict(freq)
    # R_{k,l} is {empty} when k or l is 1, so a nonempty cell always has k, l >= 2
    return _forward_table(_inverse_table(freq, l), k)


def coprime_map(p: Partition, k: int, l: int) -> Partition:
    """``Phi_k o Phi_l^{-1}`` from k,l-regular to l,k-regular partitions, ``gcd(k, l) = 1``."""
    if math.gcd(k, l) != 1:
        raise ValueError(f"coprime map needs gcd(k, l) = 1, got k={k}, l={l}")
    check_kl_regular(p, k, l)
    return Partition._trusted(_coprime_table(p.freq, k, l))


def middle_step(grid: PartitionGrid) -> PartitionGrid:
    """Map each ``k_u,l_v`` cell to an ``l_v,k_u`` cell and transpose the grid."""
    rows = grid.row_factors.factors
    cols = grid.col_factors.factors
    out = tuple(
        tuple(Partition._trusted(_coprime_table(grid.entries[u][v].freq, rows[u], cols[v]))
              for u in range(len(rows)))
        for v in range(len(cols)))
    return PartitionGrid(out, grid.col_factors, grid.row_factors)


@dataclass(frozen=True)
class MapSteps:
    source: Partition
    factorization: CompatibleFactorization
    source_grid: PartitionGrid
    image_grid: PartitionGrid
    image: Partition


def little_glaisher_steps(lam: Partition, k: int, l: int, strategy: str = "optimal",
                          factors=None) -> MapSteps:
    cf = resolve_factorization(k, l, strategy, factors)
    src = psi_forward(lam, cf)
    img = middle_step(src)
    return MapSteps(lam, cf, src, img, psi_inverse(img))


def little_glaisher_map(lam: Partition, k: int, l: int, strategy: str = "optimal",
                        factors=None) -> Partition:
    """Weight-preserving bijection from k,l-regular to l,k-regular partitions."""
    cf = resolve_factorization(k, l, strategy, factors)
    check_kl_regular(lam, k, l)
    return _map_table(lam.freq, cf)


def _map_table(freq, cf: CompatibleFactorization) -> Partition:
    kf, lf = cf.k_factors, cf.l_factors
    cells = _split(freq, kf, lf)
    ks, ls = kf.factors, lf.factors
    moved = [[_coprime_table(cells[u][v], ks[u], ls[v]) for u in range(len(ks))]
             for v in range(len(ls))]
    return Partition._trusted(_join(moved, lf, kf))


def little_glaisher_inverse(mu: Partition, k: int, l: int, strategy: str = "optimal",
                            factors=None) -> Partition:
    """Inverse of :func:`little_glaisher_map` for the same ``k, l`` and factorisation."""
    cf = resolve_factorization(k, l, strategy, factors)
    check_kl_regular(mu, l, k)
    return _map_table(mu.freq, cf.swapped())


# -- the k = 2 construction -------------------------------------------------------

def two_adic_split(l: int) -> tuple[int, int]:
    """``l = 2**p * o`` with ``o`` odd; returns ``(p, o)``."""
    if l < 1:
        raise ValueError(f"l must be positive, got {l}")
    p = 0
    while l % 2 == 0:
        l //= 2
        p += 1
    return p, l


@dataclass(frozen=True)
class K2Steps:
    """Intermediate partitions of the k = 2 construction, in scaled form.

    ``lambda_parts[j]`` holds odd multiples of ``2**j`` (0-based ``j``); the
    last entry is the one sent through the Glaisher maps.
    """

    source: Partition
    p: int
    o: int
    lambda_parts: tuple[Partition, ...]
    mu_parts: tuple[Partition, ...]
    image: Partition


def k2_special_steps(lam: Partition, l: int) -> K2Steps:
    check_kl_regular(lam, 2, l)
    p, o = two_adic_split(l)
    top = 2**p
    pieces: list[dict[int, int]] = [{} for _ in range(p + 1)]
    for part, mult in lam.items():
        high, low = divmod(mult, top)
        for j in range(p):
            if (low >> j) & 1:
                pieces[j][part << j] = 1
        if high:
            pieces[p][part * top] = high
    lambda_parts = tuple(Partition._trusted(x) for x in pieces)

    # descale the last piece, apply Phi_o^{-1} then Phi_2, rescale
    nu = {part // top: mult for part, mult in pieces[p].items()}
    if nu:
        # nonempty only when o > 1
        moved = _forward_table(_inverse_table(nu, o), 2)
    else:
        moved = {}
    mu_last = Partition._trusted({part * top: mult for part, mult in moved.items()})
    mu_parts = lambda_parts[:p] + (mu_last,)

    image: dict[int, int] = {}
    for piece in mu_parts:
        for part, mult in piece.items():
            image[part] = image.get(part, 0) + mult
    return K2Steps(lam, p, o, lambda_parts, mu_parts, Partition._trusted(image))


def k2_special_map(lam: Partition, l: int) -> Partition:
    """Odd parts occurring fewer than ``l`` times -> distinct parts not divisible by ``l``."""
    return k2_special_steps(lam, l).image


def k2_factorization(l: int) -> CompatibleFactorization:
    """``2`` against ``[2] * p + [o]`` (``o`` dropped when 1)."""
    p, o = two_adic_split(l)
    lf = [2] * p + ([o] if o > 1 else [])
    return validate_factorization([2], lf, 2, l)


# -- order dependence -------------------------------------------------------------

@dataclass(frozen=True)
class OrderReport:
    k: int
    l: int
    n_max: int
    orderings: tuple[CompatibleFactorization, ...]
    checked: int
    differences: tuple[tuple[Partition, tuple[Partition, ...]], ...]

    @property
    def coincide(self) -> bool:
        return not self.differences


def order_dependence_report(k: int, l: int, n_max: int, limit: int = 20) -> OrderReport:
    """Run the map under every distinct ordering of the prime factor lists.

    Records inputs whose images differ between orderings (at most ``limit``
    of them); nothing is asserted.
    """
    kperms = sorted(set(itertools.permutations(prime_factors(k))))
    lperms = sorted(set(itertools.permutations(prime_factors(l))))
    orderings = tuple(validate_factorization(a, b, k, l) for a in kperms for b in lperms)
    diffs = []
    checked = 0
    for n in range(n_max + 1):
        for lam in regular_partitions(n, k, l):
            checked += 1
            images = tuple(_map_table(lam.freq, cf) for cf in orderings)
            if len(set(images)) > 1 and len(diffs) < limit:
                diffs.append((lam, images))
    return OrderReport(k, l, n_max, orderings, checked, tuple(diffs))


def image_sets(k: int, l: int, n: int, cf: CompatibleFactorization
               ) -> tuple[list[Partition], list[Partition]]:
    """R_{k,l}(n) and its image list under the map (helper for sweeps)."""
    src = regular_partitions(n, k, l)
    return src, [_map_table(lam.freq, cf) for lam in src]


def verify_bijection(k: int, l: int, n: int, strategy: str = "optimal",
                     factors: Sequence | None = None) -> list[str]:
    """Exhaustive check on R_{k,l}(n); returns a list of failure messages."""
    cf = resolve_factorization(k, l, strategy, factors)
    src, images = image_sets(k, l, n, cf)
    target = regular_partitions(n, l, k)
    problems = []
    if len(src) != len(target):
        problems.append(f"|R_{k},{l}({n})| = {len(src)} but |R_{l},{k}({n})| = {len(target)}")
    if len(set(images)) != len(images):
        problems.append(f"map is not injective on R_{k},{l}({n})")
    target_set = set(target)
    for lam, mu in zip(src, images):
        if mu not in target_set:
            problems.append(f"{format_partition(lam)} -> {format_partition(mu)} "
                            f"is not an {l},{k}-regular partition of {n}")
            break
        if _map_table(mu.freq, cf.swapped()) != lam:
            problems.append(f"inverse fails on {format_partition(lam)}")
            break
    return problems
