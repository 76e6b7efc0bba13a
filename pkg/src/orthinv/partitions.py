"""Set partitions via restricted growth strings."""

from __future__ import annotations

from typing import Iterator


def restricted_growth_strings(m: int) -> Iterator[tuple[int, ...]]:
    """All RGS a_1..a_m with a_1 = 0 and a_i <= 1 + max(a_1..a_{i-1})."""
    if m == 0:
        yield ()
        return
    a = [0] * m
    peak = [0] * m  # peak[i] = max(a[0..i])
    while True:
        yield tuple(a)
        # rightmost position that can still grow
        i = m - 1
        while i > 0 and a[i] > peak[i - 1]:
            i -= 1
        if i == 0:
            return
        a[i] += 1
        peak[i] = max(peak[i - 1], a[i])
        for j in range(i + 1, m):
            a[j] = 0
            peak[j] = peak[i]


def set_partitions(m: int, min_blocks: int = 0) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Partitions of {1..m} as tuples of ascending blocks, ordered by first element."""
    for rgs in restricted_growth_strings(m):
        k = (max(rgs) + 1) if rgs else 0
        if k < min_blocks:
            continue
        blocks: list[list[int]] = [[] for _ in range(k)]
        for slot, b in enumerate(rgs, start=1):
            blocks[b].append(slot)
        yield tuple(tuple(b) for b in blocks)


def perfect_matchings(items) -> Iterator[tuple[tuple[int, int], ...]]:
    """Pairings of an even-sized sequence; each pair keeps the input order."""
    items = tuple(items)
    if not items:
        yield ()
        return
    first, rest = items[0], items[1:]
    for k, partner in enumerate(rest):
        for tail in perfect_matchings(rest[:k] + rest[k + 1:]):
            yield ((first, partner),) + tail
