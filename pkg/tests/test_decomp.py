import pytest

from ratdec.decomp import (
    Decomposition,
    complete_decompositions,
    left_component,
    luroth_generator,
    minimal_decompositions_poly,
)
from ratdec.factor import factor_nabla
from ratdec.fields import QQ, PrimeField
from ratdec.lattice import close_under_join
from ratdec.partition import canonical_partition
from ratdec.poly import parse_ratfun
from ratdec.ratfun import DecompositionError, compose, compose_chain, prepare
from ratdec.subfields import find_good_ideal, partitions

F2 = PrimeField(2)


def rf(text, K=QQ):
    return parse_ratfun(text, K)


def _pipeline(text, K=QQ):
    prep = prepare(rf(text, K))
    factors = factor_nabla(prep.working)
    ideal = find_good_ideal(prep.working, factors)
    parts, _, _ = partitions(factors, ideal)
    lat = close_under_join(parts)
    return prep, factors, parts, lat


def test_left_component_examples():
    assert left_component(
        rf("(t^24-2*t^12+1)/(t^16+2*t^12+t^8)"), rf("(t^12-1)/(t^8+t^4)")
    ) == rf("t^2")
    assert left_component(rf("t^4"), rf("t^2")) == rf("t^2")
    assert left_component(rf("t^6+2*t^4+t^2+1"), rf("t^3+t")) == rf("t^2+1")
    with pytest.raises(DecompositionError):
        left_component(rf("t^4"), rf("t^3"))
    with pytest.raises(DecompositionError):
        left_component(rf("t^4+t"), rf("t^2"))


def test_luroth_generator_t4():
    prep, factors, parts, lat = _pipeline("t^4")
    assert luroth_generator(canonical_partition([(1, 2), (3,)]), factors) == rf("t^2")
    assert luroth_generator(canonical_partition([(1,), (2,), (3,)]), factors) == rf("t")
    assert luroth_generator(canonical_partition([(1, 2, 3)]), factors) == rf("t^4")


def test_luroth_generator_worked_example():
    prep, factors, parts, lat = _pipeline("(t^24-2*t^12+1)/(t^16+2*t^12+t^8)")
    # find the partition with first block of size 4 containing the two
    # degree-8 monic factors' indices; its generator is the printed c
    c = rf("(t^12-1)/(t^8+t^4)")
    found = [
        P for P in parts
        if luroth_generator(P, factors) == c
    ]
    assert found, "no principal subfield generated by the worked-example c"


def test_complete_decompositions_t4():
    prep, factors, parts, lat = _pipeline("t^4")
    decs = complete_decompositions(prep, lat, factors)
    assert len(decs) == 1
    assert [repr(c) for c in decs[0].components] == ["t^2", "t^2"]


def test_complete_decompositions_t6():
    prep, factors, parts, lat = _pipeline("t^6")
    decs = complete_decompositions(prep, lat, factors)
    comps = {tuple(repr(c) for c in d.components) for d in decs}
    assert comps == {("t^2", "t^3"), ("t^3", "t^2")}
    for d in decs:
        assert d.composed() == rf("t^6")


def test_complete_decompositions_t2():
    prep, factors, parts, lat = _pipeline("t^2")
    decs = complete_decompositions(prep, lat, factors)
    assert len(decs) == 1
    assert [repr(c) for c in decs[0].components] == ["t^2"]


def test_complete_decompositions_worked_example():
    prep, factors, parts, lat = _pipeline("(t^24-2*t^12+1)/(t^16+2*t^12+t^8)")
    decs = complete_decompositions(prep, lat, factors)
    target = ("t^2", "(t^3-1)/(t^2+t)", "t^2", "t^2")
    comps = {tuple(repr(c) for c in d.components) for d in decs}
    assert target in comps
    f = rf("(t^24-2*t^12+1)/(t^16+2*t^12+t^8)")
    for d in decs:
        assert d.composed() == f
    # chain/decomposition bijection
    from ratdec.lattice import maximal_chains
    assert len(decs) == len(maximal_chains(lat))
    # non-equivalence: all component sequences distinct
    assert len(comps) == len(decs)


def test_frobenius_tail_decomposition():
    prep, factors, parts, lat = _pipeline("t^4", F2)
    assert prep.frobenius_exponent == 2
    decs = complete_decompositions(prep, lat, factors)
    assert len(decs) == 1
    assert [repr(c) for c in decs[0].components] == ["t^2", "t^2"]
    assert decs[0].composed() == rf("t^4", F2)


def test_minimal_decompositions_poly():
    f = rf("t^6+2*t^4+t^2+1")
    prep = prepare(f)
    factors = factor_nabla(prep.working)
    ideal = find_good_ideal(prep.working, factors)
    parts, _, _ = partitions(factors, ideal)
    out = minimal_decompositions_poly(f, parts, factors)
    assert out == [
        (rf("t^3+2*t^2+t+1"), rf("t^2")),
        (rf("t^2+1"), rf("t^3+t")),
    ]


def test_minimal_decompositions_t4():
    f = rf("t^4")
    factors = factor_nabla(f)
    ideal = find_good_ideal(f, factors)
    parts, _, _ = partitions(factors, ideal)
    out = minimal_decompositions_poly(f, parts, factors)
    assert out == [(rf("t^2"), rf("t^2"))]


def test_components_are_indecomposable():
    prep, factors, parts, lat = _pipeline("(t^24-2*t^12+1)/(t^16+2*t^12+t^8)")
    decs = complete_decompositions(prep, lat, factors)
    for d in decs[:2]:
        for comp in d.components:
            prep2, _, _, lat2 = _pipeline(repr(comp))
            from ratdec.lattice import maximal_chains
            chains = maximal_chains(lat2)
            assert all(len(ch) <= 2 for ch in chains)
