"""Exact dense linear algebra: canonical nullspaces and 0/1 echelon bases.

Over Q the forward elimination is fraction-free (integer rows kept primitive
after every combination step); over finite fields it is plain Gaussian
elimination. The nullspace basis is returned in reduced echelon form, which
is the canonical object the partition machinery inspects.
"""
from __future__ import annotations

from fractions import Fraction

from .fields import Field, FieldError, RationalField


class Matrix:
    """Immutable row-deduplicated matrix over a Field.

    Zero rows are dropped and duplicate rows collapsed on ingestion, since
    systems are accumulated across many evaluation points.
    """

    __slots__ = ("field", "rows", "ncols")

    def __init__(self, field: Field, rows, ncols: int):
        self.field = field
        seen = {}
        kept = []
        for r in rows:
            r = tuple(r)
            if len(r) != ncols:
                raise ValueError("ragged matrix row")
            if all(field.is_zero(x) for x in r):
                continue
            if r not in seen:
                seen[r] = True
                kept.append(r)
        self.rows = tuple(kept)
        self.ncols = ncols

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def stack(self, other: "Matrix") -> "Matrix":
        if self.field != other.field or self.ncols != other.ncols:
            raise FieldError("stacking incompatible matrices")
        return Matrix(self.field, self.rows + other.rows, self.ncols)

    def mul_vector(self, v):
        K = self.field
        out = []
        for r in self.rows:
            acc = K.zero
            for x, y in zip(r, v):
                acc = K.add(acc, K.mul(x, y))
            out.append(acc)
        return out

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols} over {self.field!r})"


def _int_gcd(a, b):
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


def _primitive_int_row(row):
    """Scale a row of Fractions to coprime integers, first nonzero positive."""
    den = 1
    for x in row:
        den = den * x.denominator // _int_gcd(den, x.denominator)
    ints = [int(x * den) for x in row]
    g = 0
    for x in ints:
        g = _int_gcd(g, x)
        if g == 1:
            break
    if g > 1:
        ints = [x // g for x in ints]
    for x in ints:
        if x:
            if x < 0:
                ints = [-y for y in ints]
            break
    return ints


def _rref_fraction_free_qq(rows, ncols):
    """RREF over Q via primitive integer forward elimination."""
    work = [_primitive_int_row([Fraction(x) for x in r]) for r in rows]
    pivots = []
    rank = 0
    for col in range(ncols):
        piv = None
        for i in range(rank, len(work)):
            if work[i][col]:
                piv = i
                break
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        pv = work[rank][col]
        for i in range(len(work)):
            if i == rank or not work[i][col]:
                continue
            ci = work[i][col]
            work[i] = [pv * a - ci * b for a, b in zip(work[i], work[rank])]
            g = 0
            for x in work[i]:
                g = _int_gcd(g, x)
                if g == 1:
                    break
            if g > 1:
                work[i] = [x // g for x in work[i]]
        pivots.append(col)
        rank += 1
    out = []
    for i in range(rank):
        pv = Fraction(work[i][pivots[i]])
        out.append(tuple(Fraction(x) / pv for x in work[i]))
    return out, pivots


def _rref_field(field, rows, ncols):
    work = [list(r) for r in rows]
    pivots = []
    rank = 0
    for col in range(ncols):
        piv = None
        for i in range(rank, len(work)):
            if not field.is_zero(work[i][col]):
                piv = i
                break
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        inv = field.inv(work[rank][col])
        work[rank] = [field.mul(x, inv) for x in work[rank]]
        for i in range(len(work)):
            if i == rank or field.is_zero(work[i][col]):
                continue
            c = work[i][col]
            work[i] = [
                field.sub(x, field.mul(c, y))
                for x, y in zip(work[i], work[rank])
            ]
        pivots.append(col)
        rank += 1
    return [tuple(r) for r in work[:rank]], pivots


def rref(M: Matrix):
    """(rows in reduced echelon form, pivot column indices)."""
    if isinstance(M.field, RationalField):
        return _rref_fraction_free_qq(M.rows, M.ncols)
    return _rref_field(M.field, M.rows, M.ncols)


class SolutionBasis:
    """Canonical reduced-echelon basis of a nullspace."""

    __slots__ = ("field", "vectors", "ncols")

    def __init__(self, field, vectors, ncols):
        self.field = field
        self.vectors = tuple(tuple(v) for v in vectors)
        self.ncols = ncols

    def __iter__(self):
        return iter(self.vectors)

    def __len__(self):
        return len(self.vectors)

    def __repr__(self):
        return f"SolutionBasis({self.vectors!r})"


def nullspace(M: Matrix) -> SolutionBasis:
    """Reduced-echelon basis of {v : M v = 0}."""
    K = M.field
    n = M.ncols
    if M.nrows == 0:
        eye = []
        for i in range(n):
            v = [K.zero] * n
            v[i] = K.one
            eye.append(tuple(v))
        return SolutionBasis(K, eye, n)
    rows, pivots = rref(M)
    pivot_set = set(pivots)
    free = [c for c in range(n) if c not in pivot_set]
    basis = []
    for fc in free:
        v = [K.zero] * n
        v[fc] = K.one
        for i, pc in enumerate(pivots):
            v[pc] = K.neg(rows[i][fc])
        basis.append(tuple(v))
    if not basis:
        return SolutionBasis(K, (), n)
    canon, _ = _rref_field(K, basis, n) if not isinstance(K, RationalField) \
        else _rref_fraction_free_qq(basis, n)
    return SolutionBasis(K, canon, n)


def zero_one_echelon(basis: SolutionBasis):
    """Partition blocks if the basis is a 0/1 echelon basis, else None.

    Requires every entry in {0,1} and every column to carry exactly one 1.
    Blocks are returned 1-indexed, ordered with the block containing 1
    first and then by least member.
    """
    K = basis.field
    n = basis.ncols
    column_owner = [None] * n
    for bi, v in enumerate(basis.vectors):
        for j, x in enumerate(v):
            if K.is_zero(x):
                continue
            if x != K.one:
                return None
            if column_owner[j] is not None:
                return None
            column_owner[j] = bi
    if any(o is None for o in column_owner):
        return None
    blocks = {}
    for j, o in enumerate(column_owner):
        blocks.setdefault(o, []).append(j + 1)
    out = sorted((tuple(b) for b in blocks.values()), key=lambda b: b[0])
    return tuple(out)
