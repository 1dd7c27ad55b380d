"""Glaisher's bijection between k-regular partitions and partitions whose
multiplicities are all below k.

Two equivalent forward constructions are provided.  The iterative one keeps
merging ``k`` copies of a part ``i`` into one part ``i*k`` and records each
merge; the direct one writes every multiplicity in base ``k`` and places
digit ``h`` of ``f_i`` on the part ``i * k**h``.
"""

from __future__ import annotations

import json
import random
from dataclasses import asdict, dataclass
from typing import Callable, Sequence

from .partitions import NotRegularError, Partition, format_partition

OrderPolicy = Callable[[Sequence[int]], int]


@dataclass(frozen=True)
class MergeStep:
    t: int
    part: int
    k: int
    part_before: int
    part_after: int
    merged_before: int
    merged_after: int

    @property
    def merged_part(self) -> int:
        return self.part * self.k


@dataclass(frozen=True)
class MergeTrace:
    k: int
    steps: tuple[MergeStep, ...]

    def __len__(self) -> int:
        return len(self.steps)

    def to_jsonl(self) -> str:
        return "\n".join(json.dumps(asdict(step), sort_keys=True) for step in self.steps)

    def replay(self, start: Partition) -> list[Partition]:
        """Partitions after 0, 1, ..., T merges, checking each recorded step."""
        table = dict(start.freq)
        states = [start]
        for step in self.steps:
            i, j = step.part, step.merged_part
            if table.get(i, 0) != step.part_before or table.get(j, 0) != step.merged_before:
                raise ValueError(f"trace step {step.t} does not match the partition")
            table[i] = step.part_before - self.k
            table[j] = step.merged_before + 1
            if table[i] == 0:
                del table[i]
            states.append(Partition._trusted(table))
        return states


def smallest_first(mergeable: Sequence[int]) -> int:
    return min(mergeable)


def largest_first(mergeable: Sequence[int]) -> int:
    return max(mergeable)


def random_policy(rng: random.Random) -> OrderPolicy:
    def choose(mergeable: Sequence[int]) -> int:
        return rng.choice(sorted(mergeable))
    return choose


def _check_k(k: int) -> None:
    if not isinstance(k, int) or k < 2:
        raise ValueError(f"Glaisher map needs k >= 2, got {k}")


def _check_k_regular(p: Partition, k: int) -> None:
    bad = [part for part in p.support if part % k == 0]
    if bad:
        raise NotRegularError(f"{format_partition(p)} has parts divisible by {k}: {bad}")


def phi_forward_iterative(p: Partition, k: int, order_policy: OrderPolicy = smallest_first
                          ) -> tuple[Partition, MergeTrace]:
    """Merge ``k`` equal parts into one until every multiplicity is below ``k``."""
    _check_k(k)
    _check_k_regular(p, k)
    table = dict(p.freq)
    steps = []
    t = 0
    while True:
        mergeable = [part for part, mult in table.items() if mult >= k]
        if not mergeable:
            break
        i = order_policy(mergeable)
        if table.get(i, 0) < k:
            raise ValueError(f"order policy chose non-mergeable part {i}")
        j = i * k
        t += 1
        before_i, before_j = table[i], table.get(j, 0)
        table[i] = before_i - k
        table[j] = before_j + 1
        if table[i] == 0:
            del table[i]
        steps.append(MergeStep(t, i, k, before_i, before_i - k, before_j, before_j + 1))
    return Partition._trusted(table), MergeTrace(k, tuple(steps))


def base_digits(value: int, base: int) -> list[int]:
    """Little-endian digits of a nonnegative integer; ``[]`` for zero."""
    digits = []
    while value:
        value, d = divmod(value, base)
        digits.append(d)
    return digits


def phi_forward_direct(p: Partition, k: int) -> Partition:
    """Place digit ``h`` of each multiplicity ``f_i`` (base ``k``) on ``i*k**h``."""
    _check_k(k)
    _check_k_regular(p, k)
    return Partition._trusted(_forward_table(p.freq, k))


def _forward_table(freq, k: int) -> dict[int, int]:
    table: dict[int, int] = {}
    for part, mult in freq.items():
        scale = part
        while mult:
            mult, d = divmod(mult, k)
            if d:
                table[scale] = d
            scale *= k
    return table


def phi_inverse(p: Partition, k: int) -> Partition:
    """Split each part ``i*k**h`` (``k`` not dividing ``i``) into ``k**h`` copies of ``i``."""
    _check_k(k)
    bad = [part for part, mult in p.items() if mult >= k]
    if bad:
        raise NotRegularError(
            f"{format_partition(p)} has parts occurring at least {k} times: {bad}")
    return Partition._trusted(_inverse_table(p.freq, k))


def _inverse_table(freq, k: int) -> dict[int, int]:
    table: dict[int, int] = {}
    for part, mult in freq.items():
        base, power = part, 1
        while base % k == 0:
            base //= k
            power *= k
        table[base] = table.get(base, 0) + mult * power
    return table


def conserved_sums(p: Partition, k: int) -> dict[int, int]:
    """``S_i = sum_h f_{i k^h} k^h`` for every ``i`` not divisible by ``k``.

    Each merge leaves all of these unchanged; the table is the same as the
    one computed by :func:`phi_inverse` but without its domain check.
    """
    return _inverse_table(p.freq, k)


def termination_bound(p: Partition, k: int) -> int:
    """Upper bound on the number of merges: ``floor(num_parts / (k - 1))``."""
    _check_k(k)
    return p.num_parts // (k - 1)
