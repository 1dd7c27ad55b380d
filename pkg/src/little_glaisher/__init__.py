"""Bijective and generating-function tools for the Little Glaisher theorem:
k,l-regular partitions (no part divisible by k, no part repeated l times)
are equinumerous with l,k-regular ones."""

from .bijection import (
    CompatibleFactorization,
    PartitionGrid,
    coprime_map,
    k2_special_map,
    little_glaisher_inverse,
    little_glaisher_map,
    optimal_factorization,
    prime_factorization,
    psi_forward,
    psi_inverse,
    validate_factorization,
)
from .glaisher import phi_forward_direct, phi_forward_iterative, phi_inverse
from .mixed_radix import FactorList, compose_digits, decompose_digits, factor_form, unfactor_form
from .partitions import (
    OverPartition,
    Partition,
    enumerate_overpartitions,
    enumerate_partitions,
    is_kl_regular,
    parse_partition,
    regular_partitions,
    weight,
)
from .qseries import TruncatedSeries, eta_quotient_side, pochhammer, regular_product_side

__version__ = "0.1.0"
