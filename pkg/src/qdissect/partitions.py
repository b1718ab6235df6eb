"""Partition counts signed by the Legendre symbol mod 5.

Two independent routes, neither of which touches series arithmetic:
exhaustive enumeration of partitions, and a dynamic program over the
largest allowed part.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Literal

Variant = Literal["plain", "dagger"]

ENUMERATION_CAP = 40


class CapExceeded(ValueError):
    pass


@dataclass(frozen=True)
class Partition:
    parts: tuple[int, ...]

    def __post_init__(self):
        if any(p <= 0 for p in self.parts):
            raise ValueError("parts must be positive")
        if any(a < b for a, b in zip(self.parts, self.parts[1:])):
            raise ValueError("parts must be weakly decreasing")

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def k(self) -> int:
        return len(self.parts)


@dataclass(frozen=True)
class SignedCount:
    n: int
    value: int
    variant: Variant


def chi5(n: int) -> int:
    r = n % 5
    if r == 0:
        return 0
    return 1 if r in (1, 4) else -1


def partitions(n: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    """All partitions of n as weakly decreasing tuples."""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def signed_weight(parts: tuple[int, ...], variant: Variant) -> int:
    w = -1 if (variant == "dagger" and len(parts) % 2) else 1
    for a in parts:
        w *= chi5(a)
        if not w:
            break
    return w


def _check_variant(variant: str) -> None:
    if variant not in ("plain", "dagger"):
        raise ValueError(f"variant must be 'plain' or 'dagger', got {variant!r}")


def enumerate_signed_sum(n: int, variant: Variant = "plain",
                         cap: int = ENUMERATION_CAP) -> int:
    _check_variant(variant)
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > cap:
        raise CapExceeded(f"n={n} exceeds the enumeration cap {cap}")
    return sum(signed_weight(p, variant) for p in partitions(n))


def dp_signed_sums(N: int, variant: Variant = "plain") -> list[int]:
    """[p(0), ..., p(N)] for the chosen variant.

    After processing parts 1..p, ``table[n]`` is the signed count of
    partitions of n with every part at most p.
    """
    _check_variant(variant)
    table = [0] * (N + 1)
    table[0] = 1
    for p in range(1, N + 1):
        w = chi5(p)
        if variant == "dagger":
            w = -w
        if not w:
            continue
        for n in range(p, N + 1):
            table[n] += w * table[n - p]
    return table


def signed_counts(N: int, variant: Variant = "plain") -> list[SignedCount]:
    return [SignedCount(n, v, variant) for n, v in enumerate(dp_signed_sums(N, variant))]
