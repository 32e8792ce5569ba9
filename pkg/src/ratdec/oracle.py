"""Brute-force reference implementation for cross-checking.

Finds every subfield by exhaustive subset search over the irreducible
factors and decides membership by exact divisibility of membership
polynomials. Deliberately independent of the linear-algebra machinery:
only the polynomial layer is shared.
"""
from __future__ import annotations

from dataclasses import dataclass

from .factor import FactorSet
from .fields import RationalField
from .partition import Partition, canonical_partition
from .poly import RatFun, RatPolyX
from .ratfun import DecompositionError, build_nabla, build_phi


class OracleError(ValueError):
    pass


def is_member(g: RatFun, h: RatFun) -> bool:
    """True iff g lies in the field generated by h (both non-constant).

    Decided by exact divisibility of membership polynomials; computed in
    the cleared near-separate form (the two are equivalent), which keeps
    the division in K[x, t] and, over Q, in integer arithmetic.
    """
    if g.is_constant() or h.is_constant():
        raise OracleError("membership test needs non-constant functions")
    if g.field != h.field:
        raise OracleError("membership test across different fields")
    if g.degree % h.degree:
        return False
    nab_g = build_nabla(g)
    nab_h = build_nabla(h)
    if isinstance(g.field, RationalField):
        return _zbipoly_divides(_clear_rows(nab_g), _clear_rows(nab_h))
    return nab_g.exact_div(nab_h) is not None


def is_member_phi(g: RatFun, h: RatFun) -> bool:
    """Membership by direct division in K(t)[x]; slow reference route."""
    if g.degree % h.degree:
        return False
    phi_h = build_phi(h).monic()
    phi_g = build_phi(g)
    return (phi_g % phi_h).is_zero()


def _clear_rows(B):
    from math import gcd
    den = 1
    for row in B.rows:
        for x in row.c:
            den = den * x.denominator // gcd(den, x.denominator)
    rows = [[int(x * den) for x in row.c] for row in B.rows]
    g = 0
    for row in rows:
        for x in row:
            g = gcd(g, x)
        if g == 1:
            break
    if g > 1:
        rows = [[x // g for x in row] for row in rows]
    return rows


def _zbipoly_divides(arows, brows) -> bool:
    from .factor import _zbipoly_divmod_exact

    return _zbipoly_divmod_exact(arows, brows) is not None


@dataclass(frozen=True)
class OracleReport:
    subfield_subsets: tuple   # accepted first blocks, each a tuple of indices
    generators: tuple         # one generator per accepted subset
    partitions: tuple         # full partition per accepted subfield


def _first_nonconstant_coeff(M: RatPolyX) -> RatFun:
    for coeff in M.coeffs:
        if not coeff.is_constant():
            return coeff
    raise OracleError("product has constant coefficients only")


def _subsets_with_products(factors: FactorSet):
    """Every subset containing index 1 with its monic product, DFS order."""
    r = factors.r
    out = []

    def walk(idx, chosen, prod):
        if idx > r:
            out.append((tuple(chosen), prod))
            return
        walk(idx + 1, chosen, prod)
        chosen.append(idx)
        walk(idx + 1, chosen, prod * factors.monic_factors[idx - 1])
        chosen.pop()

    walk(2, [1], factors.monic_factors[0])
    return out


def oracle_subfields(f: RatFun, factors: FactorSet, cap: int = 20) -> OracleReport:
    """All subfields by exhaustive search, certified by exact divisibility.

    A subset S containing 1 is accepted when the membership polynomial of
    the generator read off from its product reproduces the product
    exactly. Cost is 2^(r-1) subset products; refuse beyond the cap.
    """
    r = factors.r
    if r > cap:
        raise OracleError(
            f"r = {r} exceeds the oracle cap {cap}; use the main path only"
        )
    accepted = []
    for subset, prod in sorted(_subsets_with_products(factors),
                               key=lambda sp: (len(sp[0]), sp[0])):
        if len(subset) == r:
            h = f
        else:
            try:
                h = _first_nonconstant_coeff(prod).monic_scaled()
            except OracleError:
                continue
            if h.is_constant():
                continue
        phi = build_phi(h).monic()
        if phi == prod:
            accepted.append((subset, h))
    subsets = tuple(s for s, _ in accepted)
    gens = tuple(h for _, h in accepted)
    parts = tuple(
        _partition_for_generator(h, factors) for _, h in accepted
    )
    return OracleReport(
        subfield_subsets=subsets, generators=gens, partitions=parts
    )


def _partition_for_generator(h: RatFun, factors: FactorSet) -> Partition:
    """Greedy minimal blocks whose products have coefficients in K(h)."""
    return _partition_by_membership(
        factors, lambda c: c.is_constant() or is_member(c, h)
    )


def _partition_by_membership(factors: FactorSet, belongs) -> Partition:
    r = factors.r
    remaining = list(range(1, r + 1))
    blocks = []
    while remaining:
        j = remaining[0]
        rest = [x for x in remaining if x != j]
        block = None
        for size in range(0, len(rest) + 1):
            import itertools
            for extra in itertools.combinations(rest, size):
                cand = (j,) + extra
                prod = RatPolyX.one(factors.field)
                for idx in cand:
                    prod = prod * factors.monic_factors[idx - 1]
                if all(belongs(c) for c in prod.coeffs):
                    block = cand
                    break
            if block is not None:
                break
        if block is None:
            raise OracleError("no block closes under membership")  # unreachable
        blocks.append(block)
        remaining = [x for x in remaining if x not in block]
    return canonical_partition(blocks)


def intersection_partition(h1: RatFun, h2: RatFun, factors: FactorSet) -> Partition:
    """Partition of the intersection field, by joint membership."""
    return _partition_by_membership(
        factors,
        lambda c: c.is_constant() or (is_member(c, h1) and is_member(c, h2)),
    )


def oracle_chains(report: OracleReport):
    """Maximal chains of the oracle's subfield set under refinement.

    Local re-implementation of the refinement order so the oracle stays
    independent of the lattice module.
    """
    parts = list(report.partitions)
    r = sum(len(b) for b in parts[0]) if parts else 0

    def refines_(P, Q):
        owner = {}
        for bi, block in enumerate(Q):
            for x in block:
                owner[x] = bi
        return all(
            all(owner[x] == owner[block[0]] for x in block) for block in P
        )

    bottom = max(parts, key=len)
    top = min(parts, key=len)
    chains = []

    def walk(cur, acc):
        if cur == top:
            chains.append(tuple(acc))
            return
        above = [
            P for P in parts
            if P != cur and refines_(cur, P)
        ]
        covers = [
            P for P in above
            if not any(
                Q != P and Q != cur and refines_(cur, Q) and refines_(Q, P)
                for Q in above
            )
        ]
        for P in sorted(covers):
            acc.append(P)
            walk(P, acc)
            acc.pop()

    walk(bottom, [bottom])
    return chains
