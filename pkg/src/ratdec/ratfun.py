"""Rational-function constructions behind the decomposition pipeline.

Units (fractional linear transformations), composition, the canonical
normal form of a generator, the difference polynomial and the membership
polynomial, and the input preparation step (Frobenius peeling plus the
monic-membership normalization).
"""
from __future__ import annotations

from dataclasses import dataclass

from .fields import Field, FieldError
from .poly import BiPoly, RatFun, RatPolyX, UniPoly


class DecompositionError(ValueError):
    """A precondition of the decomposition machinery was violated."""


@dataclass(frozen=True)
class Unit:
    """Fractional transformation (a*y + b)/(c*y + d) with ad - bc != 0."""

    field: Field
    a: object
    b: object
    c: object
    d: object

    def __post_init__(self):
        K = self.field
        det = K.sub(K.mul(self.a, self.d), K.mul(self.b, self.c))
        if K.is_zero(det):
            raise DecompositionError("degenerate unit: ad - bc = 0")

    @classmethod
    def identity(cls, field: Field) -> "Unit":
        return cls(field, field.one, field.zero, field.zero, field.one)

    @classmethod
    def reciprocal(cls, field: Field) -> "Unit":
        return cls(field, field.zero, field.one, field.one, field.zero)

    @classmethod
    def shift(cls, field: Field, b) -> "Unit":
        """y + b."""
        return cls(field, field.one, b, field.zero, field.one)

    @classmethod
    def scale(cls, field: Field, a) -> "Unit":
        """a * y."""
        return cls(field, a, field.zero, field.zero, field.one)

    def apply(self, f: RatFun) -> RatFun:
        """u o f, computed on the numerator/denominator pair."""
        K = self.field
        num = f.num.scale(self.a) + f.den.scale(self.b)
        den = f.num.scale(self.c) + f.den.scale(self.d)
        return RatFun.make(num, den)

    def compose(self, other: "Unit") -> "Unit":
        """self o other as units (matrix product)."""
        K = self.field
        return Unit(
            K,
            K.add(K.mul(self.a, other.a), K.mul(self.b, other.c)),
            K.add(K.mul(self.a, other.b), K.mul(self.b, other.d)),
            K.add(K.mul(self.c, other.a), K.mul(self.d, other.c)),
            K.add(K.mul(self.c, other.b), K.mul(self.d, other.d)),
        )

    def inverse(self) -> "Unit":
        K = self.field
        return Unit(K, self.d, K.neg(self.b), K.neg(self.c), self.a)

    def is_identity(self) -> bool:
        K = self.field
        return (
            K.is_zero(self.b)
            and K.is_zero(self.c)
            and self.a == self.d
            and not K.is_zero(self.a)
        )

    def as_ratfun(self) -> RatFun:
        K = self.field
        num = UniPoly(K, (self.b, self.a))
        den = UniPoly(K, (self.d, self.c))
        return RatFun.make(num, den)


def compose(g: RatFun, h: RatFun) -> RatFun:
    """g o h, reduced; degrees multiply."""
    if h.is_constant():
        raise DecompositionError("cannot compose with a constant inner function")
    K = g.field
    if K != h.field:
        raise FieldError("composition across different fields")
    m = g.degree
    hn_pows = [UniPoly.one(K)]
    hd_pows = [UniPoly.one(K)]
    for _ in range(m):
        hn_pows.append(hn_pows[-1] * h.num)
        hd_pows.append(hd_pows[-1] * h.den)

    def clear(p: UniPoly) -> UniPoly:
        acc = UniPoly.zero(K)
        for i in range(p.degree + 1):
            ci = p.c[i]
            if not K.is_zero(ci):
                acc = acc + (hn_pows[i] * hd_pows[m - i]).scale(ci)
        return acc

    out = RatFun.make(clear(g.num), clear(g.den))
    if out.degree != g.degree * h.degree:
        raise AssertionError("composition degree defect")  # unreachable
    return out


def compose_chain(parts) -> RatFun:
    parts = list(parts)
    out = parts[0]
    for h in parts[1:]:
        out = compose(out, h)
    return out


def normal_form(f: RatFun) -> tuple[RatFun, Unit]:
    """The unique normalized generator of K(f) and the unit u with u o f.

    Normalized means monic coprime parts p/q with p(0) = 0, and either
    deg p > deg q, or m = deg p < deg q = n with the t^m coefficient of q
    equal to zero.
    """
    if f.is_constant():
        raise DecompositionError("constant functions generate K itself")
    K = f.field
    u = Unit.identity(K)
    p, q = f.num, f.den

    def app(unit):
        nonlocal u, p, q
        u = unit.compose(u)
        g = unit.apply(RatFun.make(p, q))
        p, q = g.num, g.den

    if p.degree == q.degree:
        c = K.div(p.lc, q.lc)
        app(Unit.shift(K, K.neg(c)))
    if p.degree < q.degree and not K.is_zero(p.constant_value()):
        app(Unit.reciprocal(K))
    if p.degree > q.degree:
        q0 = q.constant_value()
        if K.is_zero(q0):
            # p(0) != 0 by coprimality, so inverting lands in the
            # small-over-large branch with the constant already zero
            app(Unit.reciprocal(K))
        else:
            c = K.div(p.constant_value(), q0)
            app(Unit.shift(K, K.neg(c)))
    if p.degree < q.degree:
        m = p.degree
        qm = q.c[m] if m < len(q.c) else K.zero
        if not K.is_zero(qm):
            # f -> f / (1 - c f) zeroes the t^m coefficient of q
            c = K.div(qm, p.lc)
            app(Unit(K, K.one, K.zero, K.neg(c), K.one))
    scale = K.div(q.lc, p.lc)
    app(Unit.scale(K, scale))
    out = RatFun.make(p, q)
    assert _is_normalized(out), "normal form recipe left an unnormalized result"
    return out, u


def _is_normalized(f: RatFun) -> bool:
    K = f.field
    p, q = f.num, f.den
    if p.is_zero() or not K.is_zero(p.constant_value()):
        return False
    if p.lc != K.one or q.lc != K.one:
        return False
    if p.degree > q.degree:
        return True
    if p.degree < q.degree:
        m = p.degree
        qm = q.c[m] if m < len(q.c) else K.zero
        return K.is_zero(qm)
    return False


def build_nabla(f: RatFun) -> BiPoly:
    """The difference polynomial fn(x) fd(t) - fn(t) fd(x) in K[x, t]."""
    if f.is_constant():
        raise DecompositionError("difference polynomial of a constant")
    nx = BiPoly.from_unipoly_in_x(f.num)   # fn(x)
    dx = BiPoly.from_unipoly_in_x(f.den)   # fd(x)
    return nx.scale(f.den) - dx.scale(f.num)


def build_phi(f: RatFun) -> RatPolyX:
    """The membership polynomial fn(x) - f(t) fd(x) in K(t)[x]."""
    if f.is_constant():
        raise DecompositionError("membership polynomial of a constant")
    K = f.field
    coeffs = []
    n = max(f.num.degree, f.den.degree)
    for i in range(n + 1):
        a = f.num.c[i] if i <= f.num.degree else K.zero
        b = f.den.c[i] if i <= f.den.degree else K.zero
        term = RatFun.const(K, a) - f.scale(b)
        coeffs.append(term)
    return RatPolyX(K, coeffs)


def reduced_derivative_is_zero(f: RatFun) -> bool:
    """True iff f' = 0, i.e. f lies in K(t^p) for reduced fractions."""
    num = f.num.derivative() * f.den - f.num * f.den.derivative()
    return num.is_zero()


def _peel_once(f: RatFun, p: int) -> RatFun:
    """f_tilde with f = f_tilde o t^p, valid when f' = 0 in char p."""
    K = f.field

    def depower(g: UniPoly) -> UniPoly:
        out = [K.zero] * (g.degree // p + 1)
        for i in range(g.degree + 1):
            c = g.c[i]
            if not K.is_zero(c):
                if i % p:
                    raise DecompositionError(
                        "inseparable input is not a p-th power composite"
                    )
                out[i // p] = c
        return UniPoly(K, out)

    return RatFun.make(depower(f.num), depower(f.den))


@dataclass(frozen=True)
class PreparedInput:
    """Input brought to the form the partition machinery requires."""

    original: RatFun
    working: RatFun
    left_unit: Unit        # working = left_unit o peeled
    frobenius_exponent: int

    @property
    def field(self):
        return self.original.field


def prepare(f: RatFun) -> PreparedInput:
    """Peel Frobenius, normalize, and force a monic membership polynomial.

    In characteristic p, while f' = 0 the input is rewritten as
    f = g o t^p and the exponent counted. The survivor is normalized; if
    its numerator degree is below its denominator degree the reciprocal is
    used so the membership polynomial comes out monic.
    """
    if f.is_constant():
        raise DecompositionError("cannot prepare a constant function")
    K = f.field
    s = 0
    g = f
    if K.char > 0:
        while not g.is_constant() and reduced_derivative_is_zero(g):
            g = _peel_once(g, K.char)
            s += 1
        if g.is_constant():
            raise DecompositionError(
                "input collapses to a constant after Frobenius peeling"
            )
    if g.degree == 1:
        nf, u = normal_form(g)
        return PreparedInput(f, nf, u, s)
    nf, u = normal_form(g)
    if nf.num.degree < nf.den.degree:
        working = nf.reciprocal()
        u = Unit.reciprocal(K).compose(u)
    else:
        working = nf
    if K.char > 0 and reduced_derivative_is_zero(working):
        raise DecompositionError(
            "peeling failed to restore separability"
        )  # pragma: no cover
    return PreparedInput(f, working, u, s)
