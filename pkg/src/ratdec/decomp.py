"""From lattice data to actual decompositions.

Each maximal chain of subfield partitions yields one complete
decomposition: a Lüroth generator is extracted per subfield and adjacent
generators are related by left components solved from a linear system.
"""
from __future__ import annotations

from dataclasses import dataclass

from .factor import FactorSet
from .fields import Field
from .lattice import SubfieldLattice, maximal_chains
from .linalg import Matrix, nullspace
from .partition import Partition, discrete_partition, single_block_partition
from .poly import RatFun, RatPolyX, UniPoly
from .ratfun import DecompositionError, PreparedInput, Unit, compose
from .subfields import _block_products


def luroth_generator(P: Partition, factors: FactorSet) -> RatFun:
    """Generator of the subfield attached to a partition.

    The first block product is the minimal polynomial of t over the
    subfield; its lowest-degree non-constant coefficient generates the
    field (scaled so numerator and denominator are monic). The one-block
    partition returns the decomposed function itself.
    """
    K = factors.field
    if len(P) == 1:
        return factors.f
    first = P[0]
    prod = RatPolyX.one(K)
    for j in first:
        prod = prod * factors.monic_factors[j - 1]
    for coeff in prod.coeffs:
        if not coeff.is_constant():
            return coeff.monic_scaled()
    raise DecompositionError(
        "first block product has constant coefficients only"
    )  # unreachable: it vanishes at x = t


def left_component(f: RatFun, h: RatFun) -> RatFun:
    """The unique g with f = g o h, by linear solving in g's coefficients.

    Writing g with numerator and denominator of degree m = deg f / deg h
    and clearing denominators turns f = g o h into a homogeneous linear
    system over K whose solution space must be one-dimensional.
    """
    K = f.field
    if h.is_constant():
        raise DecompositionError("inner function must be non-constant")
    if f.degree % h.degree:
        raise DecompositionError("h is not a right component of f (degrees)")
    m = f.degree // h.degree
    hn_pows = [UniPoly.one(K)]
    hd_pows = [UniPoly.one(K)]
    for _ in range(m):
        hn_pows.append(hn_pows[-1] * h.num)
        hd_pows.append(hd_pows[-1] * h.den)
    basis = [hn_pows[i] * hd_pows[m - i] for i in range(m + 1)]
    # unknowns a_0..a_m, b_0..b_m:  f_d * sum a_i basis_i - f_n * sum b_i basis_i = 0
    lhs = [f.den * b for b in basis]
    rhs = [f.num * b for b in basis]
    deg_cap = max(
        [p.degree for p in lhs if not p.is_zero()]
        + [p.degree for p in rhs if not p.is_zero()]
    )
    rows = []
    for d in range(deg_cap + 1):
        row = []
        for p in lhs:
            row.append(p.c[d] if d <= p.degree else K.zero)
        for p in rhs:
            row.append(K.neg(p.c[d]) if d <= p.degree else K.zero)
        rows.append(tuple(row))
    M = Matrix(K, rows, 2 * (m + 1))
    ns = nullspace(M)
    if len(ns) == 0:
        raise DecompositionError("h is not a right component of f (no solution)")
    if len(ns) > 1:
        raise DecompositionError(
            "left component is not projectively unique"
        )  # unreachable for reduced inputs
    v = ns.vectors[0]
    gn = UniPoly(K, v[: m + 1])
    gd = UniPoly(K, v[m + 1:])
    if gn.is_zero() or gd.is_zero():
        raise DecompositionError("h is not a right component of f (degenerate)")
    g = RatFun.make(gn, gd)
    if compose(g, h) != f:
        raise DecompositionError(
            "h is not a right component of f (recomposition mismatch)"
        )
    return g


@dataclass(frozen=True)
class Decomposition:
    """Ordered components, leftmost first, with the chain that produced them."""

    components: tuple
    provenance: tuple  # chain of partitions, finest first

    def composed(self) -> RatFun:
        out = self.components[0]
        for h in self.components[1:]:
            out = compose(out, h)
        return out

    def __repr__(self):
        return " o ".join(repr(c) for c in self.components)


def _frobenius_tail(field: Field, s: int):
    p = field.char
    tail = []
    for _ in range(s):
        coeffs = [field.zero] * p + [field.one]
        tail.append(RatFun.from_unipoly(UniPoly(field, coeffs)))
    return tail


def complete_decompositions(
    prep: PreparedInput,
    lattice: SubfieldLattice,
    factors: FactorSet,
    max_chains: int | None = None,
):
    """All non-equivalent complete decompositions of the prepared input.

    One decomposition per maximal chain of the subfield lattice; the
    leftmost component absorbs the preparation unit, and Frobenius layers
    t^p peeled during preparation are appended on the right. Every output
    is verified to recompose to the original input exactly.
    """
    K = prep.field
    original = prep.original
    working = prep.working
    inv_unit = prep.left_unit.inverse()
    chains = maximal_chains(lattice)
    if max_chains is not None and len(chains) > max_chains:
        chains = chains[:max_chains]
    tail = _frobenius_tail(K, prep.frobenius_exponent)
    gens = {}

    def generator_for(idx: int) -> RatFun:
        if idx not in gens:
            P = lattice.partitions[idx]
            if P == discrete_partition(factors.r):
                gens[idx] = RatFun.var(K)
            elif P == single_block_partition(factors.r):
                gens[idx] = working
            else:
                gens[idx] = luroth_generator(P, factors)
        return gens[idx]

    out = []
    for chain in chains:
        # chain runs finest -> coarsest; generators run t ... working f
        parts = list(reversed(chain))
        comps = []
        for a, b in zip(parts, parts[1:]):
            comps.append(left_component(generator_for(a), generator_for(b)))
        if comps:
            comps = comps + tail
        elif tail:
            # working is the identity generator; only Frobenius layers remain
            comps = list(tail)
        else:
            comps = [working]
        if not inv_unit.is_identity():
            comps[0] = inv_unit.apply(comps[0])
        dec = Decomposition(
            components=tuple(comps),
            provenance=tuple(lattice.partitions[i] for i in chain),
        )
        if dec.composed() != original:
            raise DecompositionError(
                "internal error: decomposition fails to recompose"
            )
        out.append(dec)
    return out


def minimal_decompositions_poly(
    f: RatFun, principals, factors: FactorSet
):
    """All minimal decompositions (g, h) of a polynomial f.

    A minimal decomposition has an indecomposable right component; its
    subfield is principal and its partition is refined by no other
    principal partition except the discrete one. Both components must come
    out polynomial for polynomial input.
    """
    from .lattice import refines

    if not f.is_polynomial():
        raise DecompositionError("minimal decompositions need a polynomial input")
    r = factors.r
    disc = discrete_partition(r)
    candidates = []
    seen = set()
    for P in principals:
        if P == disc or P in seen:
            continue
        seen.add(P)
        only_trivial = True
        for Q in principals:
            if Q in (P, disc):
                continue
            if refines(Q, P):
                only_trivial = False
                break
        if only_trivial:
            candidates.append(P)
    out = []
    for P in candidates:
        h = luroth_generator(P, factors)
        g = left_component(f, h)
        if not h.is_polynomial() or not g.is_polynomial():
            raise DecompositionError(
                "polynomial input produced a non-polynomial component"
            )
        out.append((g, h))
    out.sort(key=lambda gh: (gh[1].degree, gh[1].num.sort_key()))
    return out
