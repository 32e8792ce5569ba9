import itertools

import pytest
from hypothesis import given, settings, strategies as st

from ratdec.lattice import (
    LatticeError,
    SubfieldLattice,
    close_under_join,
    join,
    maximal_chains,
    refines,
)
from ratdec.partition import (
    canonical_partition,
    discrete_partition,
    single_block_partition,
)


def P(*blocks):
    return canonical_partition(blocks)


def test_join_worked_example():
    P2 = P((1, 2), (3, 4), (5,), (6,), (7,), (8,))
    P4 = P((1, 4), (2, 3), (5, 6), (7, 8))
    assert join(P2, P4) == P((1, 2, 3, 4), (5, 6), (7, 8))
    assert join(P2, P2) == P2
    assert join(discrete_partition(8), P4) == P4


def test_refines():
    P2 = P((1, 2), (3, 4), (5,), (6,), (7,), (8,))
    P5 = P((1, 2, 5), (3, 4, 6), (7,), (8,))
    assert refines(P2, P5)
    assert refines(discrete_partition(8), P5)
    assert not refines(P((1, 2), (3,)), P((1, 3), (2,)))


def _all_partitions(r):
    """Brute-force enumeration of the partitions of {1..r}."""
    if r == 0:
        yield ()
        return
    for sub in _all_partitions(r - 1):
        yield sub + ((r,),)
        for i in range(len(sub)):
            yield sub[:i] + (tuple(sorted(sub[i] + (r,))),) + sub[i + 1:]


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_join_is_minimal_common_coarsening(data):
    r = data.draw(st.integers(2, 5))
    allp = [canonical_partition(x) for x in _all_partitions(r)]
    A = data.draw(st.sampled_from(allp))
    B = data.draw(st.sampled_from(allp))
    J = join(A, B)
    assert refines(A, J) and refines(B, J)
    for C in allp:
        if refines(A, C) and refines(B, C):
            assert refines(J, C)
    # lattice laws
    assert join(A, B) == join(B, A)
    assert join(A, A) == A
    C = data.draw(st.sampled_from(allp))
    assert join(join(A, B), C) == join(A, join(B, C))


def test_close_under_join_worked_example():
    prins = [
        P((1,), (2,), (3,), (4,), (5,), (6,), (7,), (8,)),
        P((1, 2), (3, 4), (5,), (6,), (7,), (8,)),
        P((1, 3), (2, 4), (5, 6), (7, 8)),
        P((1, 4), (2, 3), (5, 6), (7, 8)),
        P((1, 2, 5), (3, 4, 6), (7,), (8,)),
        P((1, 2, 6), (3, 4, 5), (7, 8)),
        P((1, 2, 5, 7), (3, 4, 6, 8)),
        P((1, 2, 3, 4, 5, 6, 7, 8)),
    ]
    lat = close_under_join(prins)
    assert lat.m == 10
    new = set(lat.partitions) - set(prins)
    assert new == {
        P((1, 2, 3, 4), (5, 6), (7, 8)),
        P((1, 2, 3, 4, 5, 6), (7, 8)),
    }
    # the known chain is present
    chains = maximal_chains(lat)
    idx = {p: i for i, p in enumerate(lat.partitions)}
    wanted = tuple(idx[p] for p in (prins[0], prins[1], prins[4], prins[6], prins[7]))
    assert wanted in chains


def test_close_under_join_nested():
    prins = [
        P((1,), (2,), (3,)),
        P((1, 2), (3,)),
        P((1, 2, 3)),
    ]
    lat = close_under_join(prins)
    assert lat.m == 3
    assert maximal_chains(lat) == [(0, 1, 2)]


def test_close_single_principal():
    lat = close_under_join([P((1,), (2,))])
    assert lat.m == 2
    assert lat.partitions == (P((1,), (2,)), P((1, 2)))


def test_two_chains_for_t6_shape():
    prins = [
        P((1,), (2,), (3,), (4,)),
        P((1, 2), (3, 4)),
        P((1, 3), (2, 4)),
        P((1, 2, 3, 4)),
    ]
    lat = close_under_join(prins)
    assert lat.m == 4
    chains = maximal_chains(lat)
    assert len(chains) == 2


def test_chain_count_invariant_under_relabeling():
    import random
    prins = [
        P((1,), (2,), (3,), (4,)),
        P((1, 2), (3, 4)),
        P((1, 3), (2, 4)),
        P((1, 2, 3, 4)),
    ]
    base = len(maximal_chains(close_under_join(prins)))
    rng = random.Random(3)
    for _ in range(5):
        perm = [1] + rng.sample(range(2, 5), 3)
        mapping = {old: new for old, new in zip(range(1, 5), perm)}
        relabeled = [
            canonical_partition(
                tuple(tuple(mapping[x] for x in b) for b in p)
            )
            for p in prins
        ]
        assert len(maximal_chains(close_under_join(relabeled))) == base


@settings(max_examples=20, deadline=None)
@given(st.data())
def test_closure_contains_subset_joins(data):
    r = data.draw(st.integers(2, 5))
    allp = [canonical_partition(x) for x in _all_partitions(r)]
    prins = data.draw(st.lists(st.sampled_from(allp), min_size=1, max_size=4))
    prins[0] = discrete_partition(r)
    lat = close_under_join(prins)
    sub = data.draw(st.lists(st.sampled_from(prins), min_size=1, max_size=4))
    acc = sub[0]
    for p in sub[1:]:
        acc = join(acc, p)
    assert acc in lat.partitions


def test_ground_set_mismatch():
    with pytest.raises(LatticeError):
        join(P((1,), (2,)), P((1,), (2,), (3,)))
