import pytest
from hypothesis import given, strategies as st

from qdissect.partitions import (
    CapExceeded,
    Partition,
    chi5,
    dp_signed_sums,
    enumerate_signed_sum,
    partitions,
    signed_counts,
    signed_weight,
)
from qdissect.pseries import invert
from qdissect.qproducts import named

# p(n) for n = 0..15
PARTITION_NUMBERS = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77, 101, 135, 176]


def test_chi5():
    assert chi5(1) == 1
    assert chi5(7) == -1
    assert chi5(10) == 0
    assert [chi5(n) for n in range(10)] == [0, 1, -1, -1, 1, 0, 1, -1, -1, 1]


def test_partition_type():
    p = Partition((3, 1, 1))
    assert (p.n, p.k) == (5, 3)
    with pytest.raises(ValueError):
        Partition((1, 2))
    with pytest.raises(ValueError):
        Partition((2, 0))


def test_partition_generator_counts():
    assert [sum(1 for _ in partitions(n)) for n in range(16)] == PARTITION_NUMBERS
    assert sum(1 for _ in partitions(40)) == 37338
    for p in partitions(9):
        Partition(p)


def test_signed_weight():
    assert signed_weight((3,), "plain") == -1
    assert signed_weight((2, 1), "plain") == -1
    assert signed_weight((2,), "dagger") == 1
    assert signed_weight((5, 1), "plain") == 0
    assert signed_weight((), "dagger") == 1


def test_enumeration_examples():
    assert enumerate_signed_sum(0) == 1
    assert enumerate_signed_sum(2) == 0
    assert enumerate_signed_sum(3) == -1
    assert enumerate_signed_sum(6, "dagger") == 0


def test_enumeration_cap():
    with pytest.raises(CapExceeded):
        enumerate_signed_sum(41)
    assert enumerate_signed_sum(41, cap=41) == dp_signed_sums(41)[41]
    with pytest.raises(ValueError):
        enumerate_signed_sum(3, "other")


def test_dp_examples():
    assert dp_signed_sums(4) == [1, 1, 0, -1, 1]
    assert dp_signed_sums(2, "dagger") == [1, -1, 2]
    assert dp_signed_sums(0, "dagger") == [1]
    assert [c.value for c in signed_counts(4)] == [1, 1, 0, -1, 1]


@pytest.mark.parametrize("variant", ["plain", "dagger"])
def test_oracles_agree_up_to_40(variant):
    dp = dp_signed_sums(40, variant)
    assert [enumerate_signed_sum(n, variant) for n in range(41)] == dp


@pytest.mark.parametrize("variant,name", [("plain", "X"), ("dagger", "Y")])
def test_dp_matches_series_up_to_500(variant, name):
    assert tuple(dp_signed_sums(500, variant)) == invert(named(name, 500)).coeffs


def test_first_theorem_at_oracle_level():
    for n in range(2, 41, 10):
        assert enumerate_signed_sum(n, "plain") == 0
    for n in range(6, 41, 10):
        assert enumerate_signed_sum(n, "dagger") == 0


def test_second_theorem_at_oracle_level():
    plain, dagger = dp_signed_sums(500), dp_signed_sums(500, "dagger")
    for n in range(0, 501, 10):
        assert dagger[n] == plain[n]
    for n in range(8, 501, 10):
        assert dagger[n] == -plain[n]


@given(st.integers(0, 18))
def test_dagger_flips_odd_part_counts(n):
    # the dagger weight differs from the plain one by (-1)^k
    total = sum((-1) ** len(p) * signed_weight(p, "plain") for p in partitions(n))
    assert total == enumerate_signed_sum(n, "dagger")
