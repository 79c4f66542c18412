"""Integer partitions and the statistics the counting formulas consume."""

from __future__ import annotations

from collections import Counter
from typing import Iterator


class Partition:
    """A weakly decreasing tuple of positive parts.

    The empty partition is the unique partition of 0.
    """

    __slots__ = ("parts",)

    def __init__(self, parts=()):
        parts = tuple(int(p) for p in parts)
        if any(p <= 0 for p in parts):
            raise ValueError(f"parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"parts must be weakly decreasing: {parts}")
        self.parts = parts

    def __repr__(self):
        return f"Partition({self.parts})"

    def __str__(self):
        return "(" + ",".join(map(str, self.parts)) + ")"

    def __eq__(self, other):
        if isinstance(other, Partition):
            return self.parts == other.parts
        return NotImplemented

    def __hash__(self):
        return hash(self.parts)

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    @property
    def size(self) -> int:
        return sum(self.parts)

    def conjugate(self) -> Partition:
        return conjugate(self)

    def multiplicities(self) -> dict[int, int]:
        return multiplicities(self)


def conjugate(p: Partition) -> Partition:
    """Column lengths of the diagram of ``p``."""
    if not p.parts:
        return Partition()
    return Partition(sum(1 for part in p.parts if part > i) for i in range(p.parts[0]))


def multiplicities(p: Partition) -> dict[int, int]:
    return dict(Counter(p.parts))


def sum_sq_conjugate(p: Partition) -> int:
    return sum(c * c for c in conjugate(p).parts)


def min_sum(p: Partition) -> int:
    """Sum of min(p_i, p_j) over all ordered index pairs (i, j).

    Deliberately the naive double loop: it is the cross-check for
    :func:`sum_sq_conjugate`.
    """
    total = 0
    for a in p.parts:
        for b in p.parts:
            total += min(a, b)
    return total


def odd_part_count(p: Partition) -> int:
    return sum(1 for part in p.parts if part % 2)


def is_sp_admissible(p: Partition) -> bool:
    """True when every odd part size occurs with even multiplicity."""
    return all(m % 2 == 0 for i, m in multiplicities(p).items() if i % 2)


def iterate_partitions(n: int, max_part: int | None = None) -> Iterator[Partition]:
    """Yield every partition of ``n`` once, in decreasing lexicographic order."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if max_part is None:
        max_part = n
    for parts in _gen(n, max_part):
        yield Partition(parts)


def _gen(n, max_part):
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in _gen(n - first, first):
            yield (first,) + rest


def iterate_sp_admissible(n: int) -> Iterator[Partition]:
    return (p for p in iterate_partitions(n) if is_sp_admissible(p))


def partition_count_table(n_max: int) -> list[int]:
    """p(0..n_max) by Euler's pentagonal-number recurrence."""
    p = [1] + [0] * n_max
    for n in range(1, n_max + 1):
        total = 0
        k = 1
        while True:
            g1 = k * (3 * k - 1) // 2
            if g1 > n:
                break
            sign = 1 if k % 2 else -1
            total += sign * p[n - g1]
            g2 = k * (3 * k + 1) // 2
            if g2 <= n:
                total += sign * p[n - g2]
            k += 1
        p[n] = total
    return p
