import json
import random

import pytest
from hypothesis import given, strategies as st

from little_glaisher.glaisher import (
    base_digits,
    conserved_sums,
    largest_first,
    phi_forward_direct,
    phi_forward_iterative,
    phi_inverse,
    random_policy,
    termination_bound,
)
from little_glaisher.partitions import NotRegularError, Partition, parse_partition

from conftest import regular_st


def merge_oracle(parts, k):
    """Rewrite a flat list of parts: drop k equal parts, append their product with k."""
    parts = sorted(parts)
    while True:
        for x in sorted(set(parts)):
            if parts.count(x) >= k:
                for _ in range(k):
                    parts.remove(x)
                parts.append(x * k)
                parts.sort()
                break
        else:
            return Partition.from_parts(parts)


def unmerge_oracle(parts, k):
    parts = list(parts)
    while any(x % k == 0 for x in parts):
        x = next(x for x in parts if x % k == 0)
        parts.remove(x)
        parts += [x // k] * k
    return Partition.from_parts(parts)


P = parse_partition


def test_iterative_examples():
    assert phi_forward_iterative(P("1^3 3"), 2)[0] == P("1 2 3")
    img, trace = phi_forward_iterative(P("5"), 3)
    assert img == P("5") and len(trace) == 0
    img, trace = phi_forward_iterative(P("1^6"), 2)
    assert img == P("2 4")
    # 1^6 -> 1^4 2 -> 1^2 2^2 -> 2^3 -> 2 4
    assert [str(s) for s in trace.replay(P("1^6"))] == ["1^6", "1^4 2", "1^2 2^2", "2^3", "2 4"]


def test_direct_examples():
    assert phi_forward_direct(P("1^3 3"), 2) == P("1 2 3")
    assert phi_forward_direct(Partition(), 7) == Partition()
    assert phi_forward_direct(P("1^7 5"), 2) == P("1 2 4 5")
    assert merge_oracle([1] * 7 + [5], 2) == P("1 2 4 5")


def test_inverse_examples():
    assert phi_inverse(P("1 2 3"), 2) == P("1^3 3")
    assert phi_inverse(P("1 3^2 5"), 3) == P("1^7 5")
    assert unmerge_oracle([1, 3, 3, 5], 3) == P("1^7 5")
    assert phi_inverse(Partition(), 5) == Partition()


@pytest.mark.parametrize("k", [0, 1, -3])
def test_rejects_small_k(k):
    with pytest.raises(ValueError):
        phi_forward_direct(P("1"), k)
    with pytest.raises(ValueError):
        phi_inverse(P("1"), k)


def test_domain_errors():
    with pytest.raises(NotRegularError):
        phi_forward_direct(P("2"), 2)
    with pytest.raises(NotRegularError):
        phi_forward_iterative(P("4 1"), 2)
    with pytest.raises(NotRegularError):
        phi_inverse(P("1^2"), 2)


def test_trace_jsonl():
    _, trace = phi_forward_iterative(P("1^6"), 2)
    rows = [json.loads(line) for line in trace.to_jsonl().splitlines()]
    assert [r["t"] for r in rows] == [1, 2, 3, 4]
    assert rows[0] == {"t": 1, "part": 1, "k": 2, "part_before": 6, "part_after": 4,
                       "merged_before": 0, "merged_after": 1}
    assert rows[-1]["part"] == 2


def test_base_digits():
    assert base_digits(0, 2) == []
    assert base_digits(6, 2) == [0, 1, 1]
    assert base_digits(5, 3) == [2, 1]


@pytest.mark.parametrize("k", [2, 3, 4, 5])
@given(data=st.data())
def test_agrees_with_oracles(k, data):
    lam = data.draw(regular_st(k))
    fwd = phi_forward_direct(lam, k)
    assert fwd == merge_oracle(lam.parts, k)
    assert phi_inverse(fwd, k) == lam == unmerge_oracle(fwd.parts, k)
    assert fwd.weight == lam.weight
    assert all(m < k for _, m in fwd.items())


@given(regular_st(3, max_part=20), st.randoms(use_true_random=False))
def test_trace_invariants(lam, rnd):
    k = 3
    img, trace = phi_forward_iterative(lam, k, random_policy(rnd))
    states = trace.replay(lam)
    assert states[-1] == img
    start = conserved_sums(lam, k)
    for before, after, step in zip(states, states[1:], trace.steps):
        assert conserved_sums(after, k) == start
        assert after.weight == lam.weight
        # exactly two frequencies move, by -k and +1
        changed = {i for i in set(before.support) | set(after.support)
                   if before.multiplicity(i) != after.multiplicity(i)}
        assert changed <= {step.part, step.merged_part}
        assert after.multiplicity(step.part) == before.multiplicity(step.part) - k
        assert after.multiplicity(step.merged_part) == before.multiplicity(step.merged_part) + 1
    assert len(trace) <= termination_bound(lam, k)


def test_order_policies_agree():
    rng = random.Random(7)
    lam = P("1^40 3^17 5^9")
    direct = phi_forward_direct(lam, 2)
    assert phi_forward_iterative(lam, 2, largest_first)[0] == direct
    for _ in range(100):
        assert phi_forward_iterative(lam, 2, random_policy(rng))[0] == direct


def test_termination_bound_is_attained():
    # 1^(2^m) under k = 2 merges 2^m - 1 times, and floor(2^m / 1) bounds it
    lam = P("1^16")
    _, trace = phi_forward_iterative(lam, 2)
    assert len(trace) == 15 <= termination_bound(lam, 2) == 16
