"""Principal-subfield partitions via reduced linear systems.

For each irreducible factor of the membership polynomial there is a
principal subfield; its partition of the factor indices is recovered as
the 0/1 echelon nullspace of a linear system built from logarithmic
derivative data. The fast path evaluates everything at a good reduction
point (t mapped to a root of an irreducible p(x)) and certifies candidate
partitions with an exact congruence test, retrying with more evaluation
points until certification succeeds; a deterministic 2n-point system is
the fallback.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

from .factor import FactorSet, is_irreducible_fq
from .fields import (
    ExtensionField,
    Field,
    PrimeField,
    QQ,
    RationalField,
    embedding,
    make_extension,
)
from .linalg import Matrix, nullspace, zero_one_echelon
from .partition import Partition, canonical_partition, discrete_partition
from .poly import RatFun, RatPolyX, UniPoly, uni_gcd, uni_lcm


class SkipEvaluationPoint(Exception):
    """The chosen c has logarithmic-derivative data outside the valuation ring."""


class SubfieldError(ValueError):
    pass


@dataclass(frozen=True)
class GoodIdeal:
    """Reduction target t -> alpha with separability guarantees.

    p_poly is irreducible over the base field (linear over Q), alpha is one
    of its roots inside the residue field, and every monic factor reduces
    cleanly because p does not divide f_d.
    """

    base_field: Field
    p_poly: UniPoly
    residue: Field
    alpha: object
    embed: object
    dp: int
    ftilde: tuple
    coord_dim: int
    coord_field: Field

    def reduce_unipoly(self, g: UniPoly):
        """Image of g(t) under t -> alpha."""
        R = self.residue
        acc = R.zero
        for c in reversed(g.c):
            acc = R.add(R.mul(acc, self.alpha), self.embed(c))
        return acc

    def try_reduce_ratfun(self, h: RatFun):
        """Image of h under t -> alpha, or None when alpha is a pole."""
        R = self.residue
        d = self.reduce_unipoly(h.den)
        if R.is_zero(d):
            return None
        return R.mul(self.reduce_unipoly(h.num), R.inv(d))

    def reduce_ratfun(self, h: RatFun):
        v = self.try_reduce_ratfun(h)
        if v is None:
            raise SkipEvaluationPoint(f"pole at the reduction point: {h!r}")
        return v

    def embed_unipoly_as_x(self, g: UniPoly) -> UniPoly:
        """Reinterpret g's coefficients over the residue field (variable x)."""
        return UniPoly(self.residue, tuple(self.embed(c) for c in g.c))

    def reduce_ratpolyx(self, F: RatPolyX) -> UniPoly:
        """Coefficient-wise image of an element of K(t)[x] in residue[x]."""
        return UniPoly(self.residue, tuple(self.reduce_ratfun(a) for a in F.coeffs))

    def coords(self, a):
        """Coordinates of a residue element over the coordinate field."""
        if self.coord_dim == 1:
            return (a,)
        return tuple(a)


def _separable_at(nabla, ideal_alpha, residue, embed) -> bool:
    spec = UniPoly(
        residue,
        tuple(
            _eval_embedded(row, ideal_alpha, residue, embed)
            for row in nabla.rows
        ),
    )
    if spec.degree != nabla.degree_x:
        return False
    return uni_gcd(spec, spec.derivative()).is_constant()


def _eval_embedded(row: UniPoly, alpha, residue, embed):
    acc = residue.zero
    for c in reversed(row.c):
        acc = residue.add(residue.mul(acc, alpha), embed(c))
    return acc


def _make_ideal(f, factors, p_poly, residue, alpha, embed, dp) -> GoodIdeal:
    if isinstance(residue, RationalField):
        coord_dim, coord_field = 1, QQ
    elif isinstance(residue, PrimeField):
        coord_dim, coord_field = 1, residue
    else:
        coord_dim, coord_field = residue.degree, PrimeField(residue.p)
    tmp = GoodIdeal(
        base_field=f.field,
        p_poly=p_poly,
        residue=residue,
        alpha=alpha,
        embed=embed,
        dp=dp,
        ftilde=(),
        coord_dim=coord_dim,
        coord_field=coord_field,
    )
    ftilde = tuple(tmp.reduce_ratpolyx(F) for F in factors.monic_factors)
    return GoodIdeal(
        base_field=f.field,
        p_poly=p_poly,
        residue=residue,
        alpha=alpha,
        embed=embed,
        dp=dp,
        ftilde=ftilde,
        coord_dim=coord_dim,
        coord_field=coord_field,
    )


def find_good_ideal(f: RatFun, factors: FactorSet) -> GoodIdeal:
    """Smallest reduction point satisfying the three good-ideal conditions.

    Over Q: the least non-negative integer a with f_d(a) != 0, f_n(a) != 0
    and the specialized difference polynomial squarefree. Over a finite
    field: the least monic irreducible p(x) in degree order with the same
    conditions at a root alpha of p.
    """
    K = f.field
    n = f.degree
    if isinstance(K, RationalField):
        ident = lambda c: c
        for a in itertools.count(0):
            alpha = QQ.of(a)
            if QQ.is_zero(f.den.evaluate(alpha)):
                continue
            if QQ.is_zero(f.num.evaluate(alpha)):
                continue
            if not _separable_at(factors.nabla, alpha, QQ, ident):
                continue
            p_poly = UniPoly(QQ, (QQ.neg(alpha), QQ.one))
            return _make_ideal(f, factors, p_poly, QQ, alpha, ident, 1)
    q = K.cardinality
    bound = max((2 * n - 1) * n, 1)
    dp = 1
    while True:
        if dp == 1:
            # linear case: enumerate by evaluation point, p = x - a
            for alpha in K.elements():
                if K.is_zero(f.den.evaluate(alpha)):
                    continue
                if K.is_zero(f.num.evaluate(alpha)):
                    continue
                if not _separable_at(factors.nabla, alpha, K, lambda c: c):
                    continue
                p_poly = UniPoly(K, (K.neg(alpha), K.one))
                return _make_ideal(f, factors, p_poly, K, alpha, lambda c: c, 1)
        else:
            residue = make_extension(K, dp)
            emb = embedding(K, residue)
            for mon in _monic_polys(K, dp):
                if not is_irreducible_fq(mon):
                    continue
                alpha = _root_in(mon, residue, emb)
                if residue.is_zero(_eval_embedded(f.den, alpha, residue, emb)):
                    continue
                if residue.is_zero(_eval_embedded(f.num, alpha, residue, emb)):
                    continue
                if not _separable_at(factors.nabla, alpha, residue, emb):
                    continue
                return _make_ideal(f, factors, mon, residue, alpha, emb, dp)
        dp += 1
        if q ** (dp - 1) > bound * q:
            raise SubfieldError("no good ideal within the degree bound")  # unreachable


def _monic_polys(K, d):
    """Monic degree-d polynomials over K in canonical counter order."""
    elems = list(K.elements())
    for tail in itertools.product(elems, repeat=d):
        yield UniPoly(K, tuple(tail) + (K.one,))


def _root_in(mon: UniPoly, residue, emb):
    for cand in residue.elements():
        acc = residue.zero
        for c in reversed(mon.c):
            acc = residue.add(residue.mul(acc, cand), emb(c))
        if residue.is_zero(acc):
            return cand
    raise SubfieldError("irreducible polynomial has no root in its residue field")


@dataclass(frozen=True)
class LogDerivRow:
    """Logarithmic-derivative data of all factors at one evaluation point."""

    c: object
    h: tuple       # h_j = G_j'(c)/G_j(c) as reduced rational functions in t
    l: UniPoly     # lcm of the h_j denominators
    p: tuple       # p_j = l * h_j, polynomials in t

    @property
    def r(self) -> int:
        return len(self.h)


def log_derivative_row(c, factors: FactorSet) -> LogDerivRow:
    K = factors.field
    hs = []
    for G in factors.factors:
        num = G.partial_x().eval_x(c)
        den = G.eval_x(c)
        if den.is_zero():
            raise SkipEvaluationPoint("factor vanishes identically at c")
        hs.append(RatFun.make(num, den))
    l = UniPoly.one(K)
    for h in hs:
        l = uni_lcm(l, h.den)
    ps = tuple((l // h.den) * h.num for h in hs)
    return LogDerivRow(c=c, h=tuple(hs), l=l, p=ps)


def _reduced_qtildes(row: LogDerivRow, ideal: GoodIdeal):
    """q~_j = p_j(x) - h~_j l(x) over the residue field, or None to skip c."""
    l_emb = ideal.embed_unipoly_as_x(row.l)
    out = []
    for h, pj in zip(row.h, row.p):
        val = ideal.try_reduce_ratfun(h)
        if val is None:
            return None
        out.append(ideal.embed_unipoly_as_x(pj) - l_emb.scale(val))
    return out


def _system_rows(i: int, qtildes, ideal: GoodIdeal):
    """Coefficient rows of q~_j mod F~_i expanded over coordinate basis."""
    Fi = ideal.ftilde[i - 1]
    di = Fi.degree
    R = ideal.residue
    rems = [qt % Fi for qt in qtildes]
    rows = []
    for d in range(di):
        for s in range(ideal.coord_dim):
            row = []
            for rem in rems:
                val = rem.c[d] if d <= rem.degree else R.zero
                row.append(ideal.coords(val)[s])
            rows.append(tuple(row))
    return rows


def build_reduced_system(i: int, row: LogDerivRow, ideal: GoodIdeal) -> Matrix:
    """The reduced system block contributed by one evaluation point.

    Raises SkipEvaluationPoint when some h_j has a pole at the reduction
    point, in which case the caller chooses another c.
    """
    qt = _reduced_qtildes(row, ideal)
    if qt is None:
        raise SkipEvaluationPoint(f"h data at c={row.c!r} leaves the valuation ring")
    return Matrix(ideal.coord_field, _system_rows(i, qt, ideal), row.r)


def _block_products(P: Partition, factors: FactorSet):
    out = []
    for block in P:
        prod = RatPolyX.one(factors.field)
        for j in block:
            prod = prod * factors.monic_factors[j - 1]
        out.append(prod)
    return out


def check(system: Matrix, i: int, factors: FactorSet, ideal: GoodIdeal):
    """Certified partition from an accumulated system, or None.

    The nullspace must be a 0/1 echelon basis; the induced candidate
    partition is accepted only if every coefficient of every candidate
    block product satisfies the residue congruence
    c_n(x) = c~ * c_d(x) mod F~_i, which by the separability of the
    reduced membership polynomial forces the products into the subfield.
    """
    basis = nullspace(system)
    blocks = zero_one_echelon(basis)
    if blocks is None:
        return None
    P = canonical_partition(blocks)
    Fi = ideal.ftilde[i - 1]
    for prod in _block_products(P, factors):
        for coeff in prod.coeffs:
            ctil = ideal.reduce_ratfun(coeff)
            lhs = ideal.embed_unipoly_as_x(coeff.num) % Fi
            rhs = (ideal.embed_unipoly_as_x(coeff.den) % Fi).scale(ctil)
            if lhs != rhs:
                return None
    return P


def is_in_principal_subfield(g: RatFun, i: int, factors: FactorSet) -> bool:
    """Exact membership test: F_i divides the membership polynomial of g."""
    Fi = factors.monic_factors[i - 1]
    K = factors.field
    num_x = RatPolyX(K, tuple(RatFun.const(K, c) for c in g.num.c))
    den_x = RatPolyX(K, tuple(RatFun.const(K, c) for c in g.den.c))
    gfun = RatFun.make(g.num, g.den)
    return (num_x % Fi) == (den_x % Fi).scale(gfun)


def _embed_factor_set(factors: FactorSet, E, emb) -> FactorSet:
    f = factors.f.map_coeffs(E, emb)
    nab = factors.nabla.map_coeffs(E, emb)
    Gs = tuple(G.map_coeffs(E, emb) for G in factors.factors)
    Fs = tuple(F.map_coeffs(E, emb) for F in factors.monic_factors)
    ms = tuple(m.map_coeffs(E, emb) for m in factors.leading_coeffs)
    return FactorSet(
        f=f, nabla=nab, factors=Gs, monic_factors=Fs,
        leading_coeffs=ms, n=factors.n,
    )


def _c_schedule(K):
    """Deterministic evaluation points: 0, 1, 2, ... in the field order."""
    if isinstance(K, RationalField):
        return (QQ.of(i) for i in itertools.count(0))
    return iter(list(K.elements()))


def partitions(factors: FactorSet, ideal: GoodIdeal):
    """Partitions of all principal subfields (fast certified path).

    Returns (partitions list, per-index c counts, total distinct c used).
    Evaluation points are drawn deterministically from the base field,
    then from extensions when a tiny field runs out; after 4n points any
    unresolved index falls back to the deterministic system.
    """
    r = factors.r
    n = factors.n
    K = factors.field
    result = {}
    c_counts = {i: 0 for i in range(1, r + 1)}
    systems = {i: [] for i in range(1, r + 1)}
    remaining = set(range(1, r + 1))
    ctx_factors, ctx_ideal = factors, ideal
    schedule = _c_schedule(K)
    ext_deg = 1
    used = 0
    cap = max(4 * n, 8)
    while remaining:
        try:
            c = next(schedule)
        except StopIteration:
            ext_deg += 1
            E = make_extension(K, ext_deg)
            emb = embedding(K, E)
            ctx_factors = _embed_factor_set(factors, E, emb)
            ctx_ideal = find_good_ideal(ctx_factors.f, ctx_factors)
            prev = {emb(a) for a in K.elements()} if ext_deg == 2 else None
            schedule = (
                x for x in E.elements()
                if prev is None or x not in prev
            )
            continue
        try:
            row = log_derivative_row(c, ctx_factors)
        except SkipEvaluationPoint:
            continue
        qt = _reduced_qtildes(row, ctx_ideal)
        if qt is None:
            continue
        used += 1
        for i in sorted(remaining):
            systems[i].extend(_system_rows(i, qt, ctx_ideal))
            c_counts[i] += 1
            M = Matrix(ctx_ideal.coord_field, systems[i], r)
            P = check(M, i, ctx_factors, ctx_ideal)
            if P is not None:
                result[i] = P
                remaining.discard(i)
        if remaining and used >= cap:
            for i in sorted(remaining):
                result[i] = partition_deterministic(i, factors)
            remaining.clear()
    return [result[i] for i in range(1, r + 1)], c_counts, used


def _deterministic_context(factors: FactorSet):
    """Factors plus 2n evaluation points, moving to an extension if needed."""
    K = factors.field
    n = factors.n
    need = 2 * n
    if isinstance(K, RationalField):
        return factors, [QQ.of(i) for i in range(need)], False
    if K.cardinality >= need:
        elems = list(K.elements())[:need]
        return factors, elems, False
    q = K.cardinality
    d = 1
    while q ** d < need + 1:
        d += 1
    E = make_extension(K, d)
    emb = embedding(K, E)
    ctx = _embed_factor_set(factors, E, emb)
    elems = list(itertools.islice(E.elements(), need))
    if len(elems) < need:
        raise SubfieldError(
            f"extension of degree {d} still lacks {need} evaluation points"
        )
    return ctx, elems, True


def partition_deterministic(i: int, factors: FactorSet) -> Partition:
    """Partition of the i-th principal subfield from the full 2n-point system."""
    ctx, points, extended = _deterministic_context(factors)
    K = ctx.field
    r = ctx.r
    Fi = ctx.monic_factors[i - 1]
    di = Fi.degree
    if isinstance(K, RationalField) or isinstance(K, PrimeField):
        coord_dim = 1
        coord_field = K
        coords = lambda a: (a,)
    elif isinstance(K, ExtensionField):
        coord_dim = K.degree
        coord_field = PrimeField(K.p)
        coords = tuple
    rows = []
    cache = getattr(factors, "_det_rows", None)
    if cache is None:
        cache = {}
        object.__setattr__(factors, "_det_rows", cache)
    for c in points:
        key = c
        if key in cache:
            row = cache[key]
        else:
            row = log_derivative_row(c, ctx)
            cache[key] = row
        l_as_x = RatPolyX(
            K, tuple(RatFun.const(K, v) for v in row.l.c)
        )
        rems = []
        for h, pj in zip(row.h, row.p):
            qj = RatPolyX(
                K, tuple(RatFun.const(K, v) for v in pj.c)
            ) - l_as_x.scale(h)
            rems.append(qj % Fi)
        clear = UniPoly.one(K)
        for rem in rems:
            for coeff in rem.coeffs:
                clear = uni_lcm(clear, coeff.den)
        cleared = []
        for rem in rems:
            polys = []
            for d in range(di):
                coeff = rem.coeffs[d] if d <= rem.degree else RatFun.const(K, K.zero)
                polys.append(coeff.num * (clear // coeff.den))
            cleared.append(polys)
        smax = max(
            (p.degree for polys in cleared for p in polys), default=-1
        )
        for d in range(di):
            for s in range(smax + 1):
                for k in range(coord_dim):
                    row_vec = []
                    for j in range(r):
                        pj = cleared[j][d]
                        v = pj.c[s] if s <= pj.degree else K.zero
                        row_vec.append(coords(v)[k])
                    rows.append(tuple(row_vec))
    M = Matrix(coord_field, rows, r)
    blocks = zero_one_echelon(nullspace(M))
    if blocks is None:
        raise SubfieldError(
            "deterministic system has no 0/1 echelon nullspace"
        )  # unreachable for valid inputs
    P = canonical_partition(blocks)
    if extended:
        # evaluation points outside the base field carry no sufficiency
        # theorem; certify exactly before returning
        for prod in _block_products(P, factors):
            for coeff in prod.coeffs:
                if not is_in_principal_subfield(coeff, i, factors):
                    raise SubfieldError(
                        "extension-point system produced an uncertified partition"
                    )
    return P
