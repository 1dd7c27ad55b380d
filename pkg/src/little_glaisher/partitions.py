"""Partition and over-partition values, regularity tests and enumerators.

A partition is stored as a frequency table ``part -> multiplicity`` in
canonical form: parts and multiplicities are positive and zero entries are
never kept, so equality is plain structural equality.

Text form is a whitespace separated list of ``part^mult`` tokens, ``mult``
defaulting to 1 (``"1^2 3^5 5^3"``).  Over-lined parts of an over-partition
carry a trailing ``~`` (``"3 5~"``).  The empty partition prints as ``∅``.
"""

from __future__ import annotations

import json
import re
from types import MappingProxyType
from typing import Callable, Iterable, Iterator, Mapping

EMPTY = "∅"
_EMPTY_TOKENS = {"", EMPTY, "()"}
_TOKEN = re.compile(r"^(-?\d+)(~)?(?:\^(-?\d+))?$")


class NotRegularError(ValueError):
    """Input partition lies outside the domain of a map."""


class Partition:
    """Immutable integer partition held as a canonical frequency table."""

    __slots__ = ("_freq", "_hash")

    def __init__(self, freq: Mapping[int, int] | None = None):
        table: dict[int, int] = {}
        if freq:
            for part, mult in sorted(freq.items()):
                if not isinstance(part, int) or not isinstance(mult, int):
                    raise TypeError("parts and multiplicities must be integers")
                if part < 1:
                    raise ValueError(f"parts must be positive, got {part}")
                if mult < 0:
                    raise ValueError(f"negative multiplicity {mult} for part {part}")
                if mult:
                    table[part] = mult
        self._freq = table
        self._hash: int | None = None

    @classmethod
    def _trusted(cls, table: dict[int, int]) -> "Partition":
        # caller guarantees positive keys and values; only sorting is done here
        obj = cls.__new__(cls)
        obj._freq = dict(sorted(table.items()))
        obj._hash = None
        return obj

    @classmethod
    def from_parts(cls, parts: Iterable[int]) -> "Partition":
        table: dict[int, int] = {}
        for part in parts:
            table[part] = table.get(part, 0) + 1
        return cls(table)

    @property
    def freq(self) -> Mapping[int, int]:
        return MappingProxyType(self._freq)

    def multiplicity(self, part: int) -> int:
        return self._freq.get(part, 0)

    @property
    def support(self) -> tuple[int, ...]:
        """Distinct parts in ascending order."""
        return tuple(self._freq)

    @property
    def parts(self) -> tuple[int, ...]:
        """The parts as a non-increasing sequence."""
        out: list[int] = []
        for part in reversed(self._freq):
            out.extend([part] * self._freq[part])
        return tuple(out)

    @property
    def num_parts(self) -> int:
        return sum(self._freq.values())

    @property
    def weight(self) -> int:
        return sum(part * mult for part, mult in self._freq.items())

    def items(self):
        return self._freq.items()

    def scaled(self, factor: int) -> "Partition":
        """Multiply every part by ``factor``."""
        return Partition._trusted({part * factor: m for part, m in self._freq.items()})

    def __add__(self, other: "Partition") -> "Partition":
        table = dict(self._freq)
        for part, mult in other._freq.items():
            table[part] = table.get(part, 0) + mult
        return Partition._trusted(table)

    def __bool__(self) -> bool:
        return bool(self._freq)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Partition):
            return NotImplemented
        return self._freq == other._freq

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._freq.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"Partition({self._freq!r})"

    def __str__(self) -> str:
        return format_partition(self)

    def to_json(self) -> list[list[int]]:
        return [[part, mult] for part, mult in self._freq.items()]


class OverPartition:
    """Partition in which each integer may also occur once over-lined."""

    __slots__ = ("plain", "overlined")

    def __init__(self, plain: Partition | Mapping[int, int] | None = None,
                 overlined: Iterable[int] = ()):
        self.plain = plain if isinstance(plain, Partition) else Partition(plain)
        over = frozenset(overlined)
        if any(not isinstance(i, int) or i < 1 for i in over):
            raise ValueError("over-lined parts must be positive integers")
        self.overlined = over

    def multiplicity(self, part: int, overlined: bool = False) -> int:
        if overlined:
            return 1 if part in self.overlined else 0
        return self.plain.multiplicity(part)

    @property
    def weight(self) -> int:
        return self.plain.weight + sum(self.overlined)

    @property
    def num_parts(self) -> int:
        return self.plain.num_parts + len(self.overlined)

    @property
    def max_part(self) -> int:
        return max([*self.plain.support, *self.overlined], default=0)

    def sort_key(self) -> tuple[tuple[int, int], ...]:
        """Non-increasing sequence of (part, is_overlined); an over-lined
        part sorts just above a plain part of the same size."""
        seq = [(i, 1) for i in self.overlined]
        seq += [(i, 0) for i in self.plain.parts]
        return tuple(sorted(seq, reverse=True))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OverPartition):
            return NotImplemented
        return self.plain == other.plain and self.overlined == other.overlined

    def __hash__(self) -> int:
        return hash((self.plain, self.overlined))

    def __repr__(self) -> str:
        return f"OverPartition({dict(self.plain.freq)!r}, overlined={sorted(self.overlined)!r})"

    def __str__(self) -> str:
        return format_overpartition(self)


def weight(p: Partition | OverPartition) -> int:
    return p.weight


def is_k_regular(p: Partition, k: int) -> bool:
    """No part divisible by ``k`` (partition-theoretic regularity)."""
    return all(part % k for part in p.support)


def is_kl_regular(p: Partition, k: int, l: int) -> bool:
    """No part divisible by ``k`` and every multiplicity below ``l``.

    For ``k == 1`` or ``l == 1`` only the empty partition qualifies.
    """
    if k < 1 or l < 1:
        raise ValueError("k and l must be positive")
    return all(part % k and mult < l for part, mult in p.items())


def check_kl_regular(p: Partition, k: int, l: int) -> None:
    if not is_kl_regular(p, k, l):
        raise NotRegularError(f"{format_partition(p)} is not {k},{l}-regular")


# -- enumeration -------------------------------------------------------------

def _generate(n: int, max_part: int, part_ok: Callable[[int], bool],
              max_mult: int | None, acc: dict[int, int]) -> Iterator[dict[int, int]]:
    # descending-lex: largest part first, and for it the highest multiplicity first
    if n == 0:
        yield acc
        return
    for part in range(min(n, max_part), 0, -1):
        if not part_ok(part):
            continue
        top = n // part
        if max_mult is not None:
            top = min(top, max_mult)
        for mult in range(top, 0, -1):
            acc[part] = mult
            yield from _generate(n - part * mult, part - 1, part_ok, max_mult, acc)
        acc.pop(part, None)


def _all_parts(_: int) -> bool:
    return True


def enumerate_partitions(n: int, predicate: Callable[[Partition], bool] | None = None
                         ) -> list[Partition]:
    """Every partition of ``n`` accepted by ``predicate``.

    Order is descending-lexicographic on the non-increasing part list, so
    ``[10] > [9, 1] > [8, 2] > [8, 1, 1] > ...``.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    out = []
    for table in _generate(n, n, _all_parts, None, {}):
        p = Partition._trusted(table)
        if predicate is None or predicate(p):
            out.append(p)
    return out


def regular_partitions(n: int, k: int, l: int) -> list[Partition]:
    """The k,l-regular partitions of ``n``, generated directly.

    Same elements and order as ``enumerate_partitions(n, is_kl_regular)``.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if k < 1 or l < 1:
        raise ValueError("k and l must be positive")
    if l == 1 or k == 1:
        return [Partition()] if n == 0 else []
    return [Partition._trusted(t)
            for t in _generate(n, n, lambda i: i % k != 0, l - 1, {})]


def _generate_over(n: int, max_part: int, over_ok: Callable[[int], bool],
                   plain: dict[int, int], over: list[int]) -> Iterator[OverPartition]:
    if n == 0:
        yield OverPartition(Partition._trusted(plain), over)
        return
    for part in range(min(n, max_part), 0, -1):
        # over-lined copy first (it sorts above the plain part of equal size)
        choices = [1, 0] if over_ok(part) else [0]
        for o in choices:
            rest = n - o * part
            if rest < 0:
                continue
            if o:
                over.append(part)
            for mult in range(rest // part, -1, -1):
                if o == 0 and mult == 0:
                    continue
                if mult:
                    plain[part] = mult
                yield from _generate_over(rest - mult * part, part - 1, over_ok, plain, over)
                plain.pop(part, None)
            if o:
                over.pop()


def enumerate_overpartitions(n: int, predicate: Callable[[OverPartition], bool] | None = None
                             ) -> list[OverPartition]:
    """Every over-partition of ``n`` accepted by ``predicate``.

    Ordered descending-lexicographically on :meth:`OverPartition.sort_key`.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    return [op for op in _generate_over(n, n, _all_parts, {}, [])
            if predicate is None or predicate(op)]


# -- text form ---------------------------------------------------------------

def _format_table(items: Iterable[tuple[int, int]]) -> str:
    return " ".join(str(part) if mult == 1 else f"{part}^{mult}" for part, mult in items)


def format_partition(p: Partition) -> str:
    """Ascending parts, ``^mult`` only when the multiplicity exceeds one."""
    return _format_table(p.items()) if p else EMPTY


def format_overpartition(op: OverPartition) -> str:
    tokens = []
    for part in sorted(set(op.plain.support) | op.overlined):
        mult = op.plain.multiplicity(part)
        if mult:
            tokens.append(str(part) if mult == 1 else f"{part}^{mult}")
        if part in op.overlined:
            tokens.append(f"{part}~")
    return " ".join(tokens) if tokens else EMPTY


def _parse_tokens(text: str) -> tuple[dict[int, int], list[int]]:
    plain: dict[int, int] = {}
    over: list[int] = []
    if text.strip() in _EMPTY_TOKENS:
        return plain, over
    for token in text.split():
        m = _TOKEN.match(token)
        if not m:
            raise ValueError(f"malformed partition token {token!r}")
        part = int(m.group(1))
        mult = int(m.group(3)) if m.group(3) is not None else 1
        if part < 1:
            raise ValueError(f"parts must be positive, got {part}")
        if mult < 1:
            raise ValueError(f"multiplicity must be positive in {token!r}")
        if m.group(2):
            if mult != 1 or part in over:
                raise ValueError(f"over-lined part {part} may occur at most once")
            over.append(part)
        else:
            plain[part] = plain.get(part, 0) + mult
    return plain, over


def parse_partition(text: str) -> Partition:
    """Parse ``part^mult`` text, or a JSON list of ``[part, mult]`` pairs."""
    stripped = text.strip()
    if stripped.startswith("["):
        try:
            pairs = json.loads(stripped)
            table: dict[int, int] = {}
            for part, mult in pairs:
                if mult < 1:
                    raise ValueError(f"multiplicity must be positive, got {mult}")
                table[part] = table.get(part, 0) + mult
        except (TypeError, json.JSONDecodeError) as exc:
            raise ValueError(f"malformed JSON partition: {exc}") from None
        return Partition(table)
    plain, over = _parse_tokens(stripped)
    if over:
        raise ValueError("over-lined parts are not allowed in an ordinary partition")
    return Partition(plain)


def parse_overpartition(text: str) -> OverPartition:
    plain, over = _parse_tokens(text)
    return OverPartition(plain, over)
