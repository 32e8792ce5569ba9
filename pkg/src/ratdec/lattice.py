"""The subfield lattice as a lattice of partitions under refinement.

Intersecting two subfields corresponds to joining their partitions, so the
full lattice is the closure of the principal partitions under pairwise
joins, plus the two trivial elements.
"""
from __future__ import annotations

from dataclasses import dataclass

from .partition import (
    Partition,
    canonical_partition,
    discrete_partition,
    ground_size,
    single_block_partition,
)


class LatticeError(ValueError):
    pass


def join(P: Partition, Q: Partition) -> Partition:
    """Finest common coarsening, by union-find over block co-membership."""
    r = ground_size(P)
    if ground_size(Q) != r:
        raise LatticeError("join of partitions over different ground sets")
    parent = list(range(r + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[rb] = ra

    for part in (P, Q):
        for block in part:
            for other in block[1:]:
                union(block[0], other)
    groups = {}
    for x in range(1, r + 1):
        groups.setdefault(find(x), []).append(x)
    return canonical_partition(groups.values())


def refines(P: Partition, Q: Partition) -> bool:
    """True iff every block of P is contained in some block of Q."""
    if ground_size(P) != ground_size(Q):
        raise LatticeError("refinement across different ground sets")
    owner = {}
    for bi, block in enumerate(Q):
        for x in block:
            owner[x] = bi
    for block in P:
        first = owner[block[0]]
        if any(owner[x] != first for x in block[1:]):
            return False
    return True


def _sort_key(P: Partition):
    return (-len(P), P)


@dataclass(frozen=True)
class SubfieldLattice:
    """All subfield partitions, finest first, with refinement cover edges."""

    partitions: tuple
    principal_flags: tuple
    hasse_edges: tuple  # (i, j) meaning partitions[i] is covered by partitions[j]

    @property
    def m(self) -> int:
        return len(self.partitions)

    def index_of(self, P: Partition) -> int:
        return self.partitions.index(P)


def close_under_join(principals) -> SubfieldLattice:
    """Worklist closure of the principal partitions under pairwise join."""
    principals = [canonical_partition(P) for P in principals]
    if not principals:
        raise LatticeError("no principal partitions given")
    r = ground_size(principals[0])
    found = set(principals)
    found.add(discrete_partition(r))
    found.add(single_block_partition(r))
    work = list(found)
    while work:
        P = work.pop()
        for Q in list(found):
            J = join(P, Q)
            if J not in found:
                found.add(J)
                work.append(J)
    ordered = tuple(sorted(found, key=_sort_key))
    prin = set(principals)
    flags = tuple(P in prin for P in ordered)
    edges = []
    strictly_below = {
        a: [b for b in range(len(ordered))
            if b != a and refines(ordered[a], ordered[b])]
        for a in range(len(ordered))
    }
    for a in range(len(ordered)):
        for b in strictly_below[a]:
            # cover: nothing strictly between a and b
            if not any(
                c in strictly_below[a] and b in strictly_below[c]
                for c in range(len(ordered))
                if c not in (a, b)
            ):
                edges.append((a, b))
    return SubfieldLattice(
        partitions=ordered,
        principal_flags=flags,
        hasse_edges=tuple(sorted(edges)),
    )


def maximal_chains(lattice: SubfieldLattice):
    """All maximal chains from the discrete to the single-block partition.

    Each chain is a tuple of indices into lattice.partitions, each entry
    covering the previous; depth-first in canonical order.
    """
    r = ground_size(lattice.partitions[0])
    bottom = lattice.index_of(discrete_partition(r))
    top = lattice.index_of(single_block_partition(r))
    succ = {}
    for a, b in lattice.hasse_edges:
        succ.setdefault(a, []).append(b)
    for a in succ:
        succ[a].sort()
    chains = []

    def walk(node, acc):
        if node == top:
            chains.append(tuple(acc))
            return
        for nxt in succ.get(node, ()):
            acc.append(nxt)
            walk(nxt, acc)
            acc.pop()

    if bottom == top:
        return [(bottom,)]
    walk(bottom, [bottom])
    return chains
