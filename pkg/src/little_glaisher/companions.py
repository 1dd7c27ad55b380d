"""Frequency-window conditions of Schur type and equinumerosity harnesses.

Every condition is data: a :class:`ConstraintFamily` is a list of
:class:`FrequencyTerm` offsets from a base index ``i``, a bound, and an
:class:`IndexFilter` saying which ``i`` it applies to.  Terms whose index
falls below 1 contribute 0.

Families indexed by a multiple (``f_{5i-1} + ...``) are written against the
base ``j = 5i``, with the filter ``j = 0 mod 5``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterator, Sequence

from .partitions import (
    OverPartition,
    Partition,
    format_overpartition,
    format_partition,
    regular_partitions,
)


@dataclass(frozen=True)
class FrequencyTerm:
    offset: int
    overlined: bool = False

    def __str__(self) -> str:
        idx = "i" if self.offset == 0 else f"i{self.offset:+d}"
        return f"f[{idx}{'~' if self.overlined else ''}]"


def P(offset: int) -> FrequencyTerm:
    return FrequencyTerm(offset, False)


def O(offset: int) -> FrequencyTerm:  # noqa: E743
    return FrequencyTerm(offset, True)


@dataclass(frozen=True)
class IndexFilter:
    """``i = r (mod modulus)`` for ``r`` in ``residues``, ``start <= i <= stop``."""

    modulus: int = 1
    residues: tuple[int, ...] = (0,)
    start: int = 1
    stop: int | None = None

    def admits(self, i: int) -> bool:
        if i < self.start or (self.stop is not None and i > self.stop):
            return False
        return i % self.modulus in self.residues


@dataclass(frozen=True)
class ConstraintFamily:
    name: str
    terms: tuple[FrequencyTerm, ...]
    bound: int
    index: IndexFilter = field(default_factory=IndexFilter)

    def value(self, op: OverPartition, i: int) -> int:
        total = 0
        for term in self.terms:
            j = i + term.offset
            if j >= 1:
                total += op.multiplicity(j, term.overlined)
        return total

    def bases(self, max_part: int) -> range:
        # beyond max_part - min_offset every term is zero
        lo = self.index.start
        hi = max_part - min(t.offset for t in self.terms)
        if self.index.stop is not None:
            hi = min(hi, self.index.stop)
        return range(lo, hi + 1)

    def violations(self, op: OverPartition) -> list[int]:
        return [i for i in self.bases(op.max_part)
                if self.index.admits(i) and self.value(op, i) > self.bound]

    def holds(self, op: OverPartition) -> bool:
        return not self.violations(op)


def _family(name, terms, bound, modulus=1, residues=(0,), start=1, stop=None):
    return ConstraintFamily(name, tuple(terms), bound,
                            IndexFilter(modulus, tuple(residues), start, stop))


def _window(lo: int, hi: int, over: bool = True) -> list[FrequencyTerm]:
    out = []
    for x in range(lo, hi + 1):
        out.append(P(x))
        if over:
            out.append(O(x))
    return out


SCHUR = (
    _family("schur-window", [P(0), P(1), P(2)], 1),
    _family("schur-triple", [P(0), P(1), P(2), P(3)], 1, modulus=3, residues=(0,), start=3),
)

ALLADI = (
    _family("alladi-ban-1", [O(0)], 0, start=1, stop=1),
    _family("alladi-ban-even", [O(0)], 0, modulus=2, residues=(0,)),
    _family("alladi-4ndiv", _window(0, 3), 1, modulus=4, residues=(1, 2, 3)),
    _family("alladi-4div", _window(0, 3) + [P(4)], 1, modulus=4, residues=(0,)),
    _family("alladi-odd", [O(0)] + _window(1, 4), 1, modulus=2, residues=(1,)),
)

# families shared by the two mod-5 theorems, transcribed term by term
_AAB_COMMON = (
    _family("ban-1-2", [O(0)], 0, start=1, stop=2),
    _family("r23", _window(0, 4), 1, modulus=5, residues=(2, 3)),
    _family("r14", [P(0), O(-1), O(0), P(1), O(1), P(2), O(2), P(3), O(3), P(4)], 1,
            modulus=5, residues=(1, 4)),
    _family("r0", [P(0), P(1), O(0), O(1), P(2), O(2), P(3), O(3), P(4), O(4), P(5)], 1,
            modulus=5, residues=(0,)),
    _family("r124", [O(0)] + _window(1, 5), 1, modulus=5, residues=(1, 2, 4)),
)

AAB = _AAB_COMMON + (
    _family("r03", [O(0), O(1), P(2), O(2), P(3), O(3), P(4), O(4), P(5), P(6), O(5)], 1,
            modulus=5, residues=(0, 3)),
)

COMPANION = _AAB_COMMON + (
    _family("r3", [O(0), O(1), P(2), O(2), P(3), O(3), P(4), P(5), P(6), O(5)], 1,
            modulus=5, residues=(3,)),
    _family("r0-late", [O(0), O(1), P(2), O(2), P(3), O(3), P(4), O(4), P(6), O(5)], 1,
            modulus=5, residues=(0,)),
    # j = 5i below
    _family("pair-a", [P(-1), O(3), O(7)], 2, modulus=5, residues=(0,), start=5),
    _family("pair-b", [P(-2), O(3), O(7)], 2, modulus=5, residues=(0,), start=5),
    _family("pair-c", [P(-4), O(0), P(5)], 2, modulus=5, residues=(0,), start=10),
)


def satisfies(op: OverPartition, families: Sequence[ConstraintFamily]) -> bool:
    return all(fam.holds(op) for fam in families)


def schur_check(p: Partition) -> bool:
    return satisfies(OverPartition(p), SCHUR)


def alladi_check(op: OverPartition) -> bool:
    return satisfies(op, ALLADI)


def companion_check(op: OverPartition) -> bool:
    return satisfies(op, COMPANION)


@dataclass(frozen=True)
class AABPair:
    mu: OverPartition
    nu: Partition

    @property
    def weight(self) -> int:
        return self.mu.weight + self.nu.weight

    def __str__(self) -> str:
        return f"({format_overpartition(self.mu)} | {format_partition(self.nu)})"


def aab_nu_bound(mu: OverPartition) -> int:
    """Smallest admissible part of ``nu`` for a given ``mu``."""
    return 20 + 10 * mu.num_parts - (1 if mu.plain.multiplicity(1) else 0)


def aab_nu_ok(nu: Partition, bound: int) -> bool:
    return all(part % 5 == 0 and part >= bound for part in nu.support)


def aab_pair_check(pair: AABPair) -> bool:
    return satisfies(pair.mu, AAB) and aab_nu_ok(pair.nu, aab_nu_bound(pair.mu))


# -- pruned generation ---------------------------------------------------------

class _Index:
    """For each (flag, family) the term offsets carrying that flag."""

    def __init__(self, families: Sequence[ConstraintFamily]):
        self.families = families
        self.by_flag = {
            flag: [(fam, [t.offset for t in fam.terms if t.overlined == flag])
                   for fam in families]
            for flag in (False, True)
        }

    def over_banned(self, v: int) -> bool:
        return any(fam.bound == 0 and fam.index.admits(v - offsets[0])
                   for fam, offsets in self.by_flag[True]
                   if offsets and len(fam.terms) == 1)

    def ok_after_setting(self, v: int, flags: Sequence[bool], plain: dict, over: set) -> bool:
        """Check every instance touching index ``v`` with what is known so far.

        Unset (smaller) indices count as 0, which can only under-estimate a
        sum, so a violation here is final.
        """
        op_get = lambda j, o: (1 if j in over else 0) if o else plain.get(j, 0)  # noqa: E731
        for flag in flags:
            for fam, offsets in self.by_flag[flag]:
                for off in offsets:
                    i = v - off
                    if not fam.index.admits(i):
                        continue
                    total = 0
                    for term in fam.terms:
                        j = i + term.offset
                        if j >= 1:
                            total += op_get(j, term.overlined)
                    if total > fam.bound:
                        return False
        return True


def constrained_overpartitions(n: int, families: Sequence[ConstraintFamily],
                               allow_overlined: bool = True) -> Iterator[OverPartition]:
    """Over-partitions of ``n`` satisfying every family, by backtracking.

    Yields in the same order as :func:`enumerate_overpartitions`.
    """
    idx = _Index(families)
    plain: dict[int, int] = {}
    over: set[int] = set()

    def rec(rest: int, top: int) -> Iterator[OverPartition]:
        if rest == 0:
            yield OverPartition(Partition._trusted(plain), over)
            return
        for v in range(min(rest, top), 0, -1):
            choices = (1, 0) if allow_overlined and not idx.over_banned(v) else (0,)
            for o in choices:
                r = rest - o * v
                if r < 0:
                    continue
                if o:
                    over.add(v)
                for m in range(r // v, -1, -1):
                    if m == 0 and o == 0:
                        continue
                    if m:
                        plain[v] = m
                    flags = [f for f, on in ((False, m), (True, o)) if on]
                    if idx.ok_after_setting(v, flags, plain, over):
                        yield from rec(r - m * v, v - 1)
                    plain.pop(v, None)
                if o:
                    over.discard(v)

    yield from rec(n, n)


def schur_partitions(n: int) -> list[Partition]:
    return [op.plain for op in constrained_overpartitions(n, SCHUR, allow_overlined=False)]


def alladi_overpartitions(n: int) -> list[OverPartition]:
    return list(constrained_overpartitions(n, ALLADI))


def companion_overpartitions(n: int) -> list[OverPartition]:
    return list(constrained_overpartitions(n, COMPANION))


def _nu_partitions(total: int, bound: int) -> list[Partition]:
    """Partitions of ``total`` into multiples of 5 that are all >= ``bound``."""
    if total % 5:
        return []
    low = max(1, -(-bound // 5))
    out = []

    def rec(rest: int, top: int, acc: dict[int, int]):
        if rest == 0:
            out.append(Partition._trusted({5 * x: m for x, m in acc.items()}))
            return
        for x in range(min(rest, top), low - 1, -1):
            for m in range(rest // x, 0, -1):
                acc[x] = m
                rec(rest - m * x, x - 1, acc)
            acc.pop(x, None)

    rec(total // 5, total // 5, {})
    return out


def aab_pairs(n: int) -> list[AABPair]:
    out = []
    for w in range(n + 1):
        for mu in constrained_overpartitions(w, AAB):
            for nu in _nu_partitions(n - w, aab_nu_bound(mu)):
                out.append(AABPair(mu, nu))
    return out


def count_constrained(n: int, checker: Callable[[OverPartition], bool]) -> int:
    """Brute force: over-partitions of ``n`` accepted by ``checker``."""
    from .partitions import enumerate_overpartitions

    return len(enumerate_overpartitions(n, checker))


# -- harness ---------------------------------------------------------------------

VARIANTS = {
    "schur": (3, schur_partitions),
    "alladi": (4, alladi_overpartitions),
    "aab-pair": (5, aab_pairs),
    "companion": (5, companion_overpartitions),
}
DEFAULT_VARIANT = {3: "schur", 4: "alladi", 5: "companion"}
# published theorems: a mismatch is a hard failure rather than a finding
HARD = {"schur", "alladi"}


@dataclass(frozen=True)
class EquinumerosityRow:
    n: int
    regular: int
    companion: int

    @property
    def match(self) -> bool:
        return self.regular == self.companion


@dataclass(frozen=True)
class EquinumerosityReport:
    k: int
    variant: str
    rows: tuple[EquinumerosityRow, ...]
    first_mismatch: int | None
    regular_objects: tuple = ()
    companion_objects: tuple = ()

    @property
    def verdict(self) -> str:
        if self.first_mismatch is None:
            return "PASS"
        return "FAIL" if self.variant in HARD else "DISCREPANCY"


def equinumerosity_report(n_max: int, k: int, variant: str | None = None) -> EquinumerosityReport:
    """Compare |R_{k,2}(n)| with the companion side for ``n = 0..n_max``.

    On the first mismatching weight both object lists are kept in the report.
    """
    variant = variant or DEFAULT_VARIANT.get(k)
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    expected_k, generate = VARIANTS[variant]
    if k != expected_k:
        raise ValueError(f"variant {variant!r} pairs with k = {expected_k}, not {k}")
    rows = []
    first = None
    reg_objs: tuple = ()
    comp_objs: tuple = ()
    for n in range(n_max + 1):
        regular = regular_partitions(n, k, 2)
        companion = generate(n)
        rows.append(EquinumerosityRow(n, len(regular), len(companion)))
        if first is None and len(regular) != len(companion):
            first = n
            reg_objs, comp_objs = tuple(regular), tuple(companion)
    return EquinumerosityReport(k, variant, tuple(rows), first, reg_objs, comp_objs)
