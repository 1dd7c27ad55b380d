import pytest
from hypothesis import settings, strategies as st

from little_glaisher.partitions import Partition

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")


def partitions_st(max_part=30, max_mult=12, max_size=6):
    return st.dictionaries(st.integers(1, max_part), st.integers(1, max_mult),
                           max_size=max_size).map(Partition)


def regular_st(k, l=None, max_part=30, max_size=6):
    # k-regular, and multiplicities < l when l is given
    top = 12 if l is None else l - 1
    parts = st.integers(1, max_part).filter(lambda i: i % k)
    return st.dictionaries(parts, st.integers(1, max(top, 1)), max_size=max_size).map(Partition)


def brute_partitions(n):
    """All partitions of n as sorted-descending tuples, built by adding parts one at a time."""
    if n == 0:
        return {()}
    out = set()
    for first in range(1, n + 1):
        for rest in brute_partitions(n - first):
            out.add(tuple(sorted((first,) + rest, reverse=True)))
    return out


@pytest.fixture(scope="session")
def partition_sets():
    return {n: brute_partitions(n) for n in range(13)}
