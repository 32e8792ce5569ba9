"""Canonical partitions of {1..r}: the representation of a subfield.

A partition is a tuple of disjoint tuples of 1-based indices covering
{1..r}, each block ascending, blocks ordered by least member (so the block
containing 1 comes first). Tuples make partitions hashable and directly
comparable, which the lattice closure relies on.
"""
from __future__ import annotations

Partition = tuple


def canonical_partition(blocks) -> Partition:
    out = tuple(sorted((tuple(sorted(b)) for b in blocks), key=lambda b: b[0]))
    seen = set()
    for b in out:
        for x in b:
            if x in seen:
                raise ValueError("blocks are not disjoint")
            seen.add(x)
    if seen != set(range(1, len(seen) + 1)):
        raise ValueError("blocks do not cover 1..r")
    return out


def discrete_partition(r: int) -> Partition:
    return tuple((i,) for i in range(1, r + 1))


def single_block_partition(r: int) -> Partition:
    return (tuple(range(1, r + 1)),)


def ground_size(P: Partition) -> int:
    return sum(len(b) for b in P)
