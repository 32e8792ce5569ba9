"""Dense univariate/bivariate polynomials and reduced rational functions.

Four layers, all exact and immutable:

  UniPoly   dense polynomial over a Field, coefficient i belongs to degree i
  BiPoly    polynomial in x whose x^i coefficient is a UniPoly in t
  RatFun    reduced fraction of UniPolys with a monic denominator
  RatPolyX  polynomial in x with RatFun coefficients (elements of K(t)[x])
"""
from __future__ import annotations

from fractions import Fraction

from .fields import QQ, Field, FieldError, RationalField

_KARATSUBA_CUTOFF = 32


class UniPoly:
    __slots__ = ("field", "c")

    def __init__(self, field: Field, coeffs, trusted: bool = False):
        self.field = field
        if trusted:
            self.c = coeffs
            return
        cs = [field.of(x) if isinstance(x, int) else x for x in coeffs]
        while cs and field.is_zero(cs[-1]):
            cs.pop()
        self.c = tuple(cs)

    @classmethod
    def zero(cls, field):
        return cls(field, (), trusted=True)

    @classmethod
    def one(cls, field):
        return cls(field, (field.one,), trusted=True)

    @classmethod
    def const(cls, field, a):
        a = field.of(a) if isinstance(a, int) else a
        if field.is_zero(a):
            return cls.zero(field)
        return cls(field, (a,), trusted=True)

    @classmethod
    def gen(cls, field):
        """The variable itself."""
        return cls(field, (field.zero, field.one), trusted=True)

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    def is_zero(self) -> bool:
        return not self.c

    def is_one(self) -> bool:
        return len(self.c) == 1 and self.c[0] == self.field.one

    def is_constant(self) -> bool:
        return len(self.c) <= 1

    @property
    def lc(self):
        if not self.c:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.c[-1]

    def constant_value(self):
        return self.c[0] if self.c else self.field.zero

    def _check(self, other):
        if self.field != other.field:
            raise FieldError(f"mixed fields {self.field!r} and {other.field!r}")

    def __add__(self, other):
        self._check(other)
        K = self.field
        a, b = self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, x in enumerate(b):
            out[i] = K.add(out[i], x)
        while out and K.is_zero(out[-1]):
            out.pop()
        return UniPoly(K, tuple(out), trusted=True)

    def __neg__(self):
        K = self.field
        return UniPoly(K, tuple(K.neg(x) for x in self.c), trusted=True)

    def __sub__(self, other):
        self._check(other)
        K = self.field
        a, b = self.c, other.c
        n = max(len(a), len(b))
        out = []
        for i in range(n):
            x = a[i] if i < len(a) else K.zero
            y = b[i] if i < len(b) else K.zero
            out.append(K.sub(x, y))
        while out and K.is_zero(out[-1]):
            out.pop()
        return UniPoly(K, tuple(out), trusted=True)

    def _mul_classical(self, other):
        K = self.field
        a, b = self.c, other.c
        out = [K.zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if K.is_zero(x):
                continue
            for j, y in enumerate(b):
                out[i + j] = K.add(out[i + j], K.mul(x, y))
        return UniPoly(K, tuple(out), trusted=True)

    def __mul__(self, other):
        self._check(other)
        if not self.c or not other.c:
            return UniPoly.zero(self.field)
        # single Karatsuba layer above the cutoff, classical below
        if min(len(self.c), len(other.c)) > _KARATSUBA_CUTOFF:
            m = max(len(self.c), len(other.c)) // 2
            a0, a1 = self._split(m)
            b0, b1 = other._split(m)
            z0 = a0._mul_classical(b0)
            z2 = a1._mul_classical(b1)
            z1 = (a0 + a1)._mul_classical(b0 + b1) - z0 - z2
            return z0 + z1._shift(m) + z2._shift(2 * m)
        return self._mul_classical(other)

    def _split(self, m):
        K = self.field
        lo = list(self.c[:m])
        while lo and K.is_zero(lo[-1]):
            lo.pop()
        return (
            UniPoly(K, tuple(lo), trusted=True),
            UniPoly(K, self.c[m:], trusted=True),
        )

    def _shift(self, m):
        if not self.c:
            return self
        K = self.field
        return UniPoly(K, (K.zero,) * m + self.c, trusted=True)

    def scale(self, a):
        K = self.field
        if K.is_zero(a):
            return UniPoly.zero(K)
        return UniPoly(K, tuple(K.mul(x, a) for x in self.c), trusted=True)

    def __divmod__(self, other):
        self._check(other)
        K = self.field
        if not other.c:
            raise ZeroDivisionError("polynomial division by zero")
        if len(self.c) < len(other.c):
            return UniPoly.zero(K), self
        inv_lc = K.inv(other.lc)
        rem = list(self.c)
        db = other.degree
        q = [K.zero] * (len(self.c) - db)
        for k in range(len(self.c) - db - 1, -1, -1):
            coef = K.mul(rem[db + k], inv_lc)
            if not K.is_zero(coef):
                q[k] = coef
                for j, bj in enumerate(other.c):
                    rem[j + k] = K.sub(rem[j + k], K.mul(coef, bj))
        rem = rem[:db]
        while rem and K.is_zero(rem[-1]):
            rem.pop()
        return (
            UniPoly(K, tuple(q), trusted=False),
            UniPoly(K, tuple(rem), trusted=True),
        )

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = UniPoly.one(self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def evaluate(self, a):
        K = self.field
        acc = K.zero
        for x in reversed(self.c):
            acc = K.add(K.mul(acc, a), x)
        return acc

    def derivative(self):
        K = self.field
        out = []
        for i in range(1, len(self.c)):
            ci = self.c[i]
            acc = K.zero
            for _ in range(i):
                acc = K.add(acc, ci)
            out.append(acc)
        while out and K.is_zero(out[-1]):
            out.pop()
        return UniPoly(K, tuple(out), trusted=True)

    def monic(self):
        if not self.c:
            return self
        if self.c[-1] == self.field.one:
            return self
        return self.scale(self.field.inv(self.lc))

    def taylor_shift(self, a):
        """g(var + a), classical repeated-Horner expansion."""
        K = self.field
        if K.is_zero(a) or not self.c:
            return self
        cs = list(self.c)
        n = len(cs)
        for i in range(n):
            for j in range(n - 2, i - 1, -1):
                cs[j] = K.add(cs[j], K.mul(a, cs[j + 1]))
        return UniPoly(K, tuple(cs), trusted=True)

    def map_coeffs(self, new_field: Field, fn):
        return UniPoly(new_field, tuple(fn(x) for x in self.c), trusted=False)

    def sort_key(self):
        K = self.field
        return (len(self.c),) + tuple(K.sort_key(x) for x in reversed(self.c))

    def __eq__(self, other):
        return (
            isinstance(other, UniPoly)
            and self.field == other.field
            and self.c == other.c
        )

    def __hash__(self):
        return hash((self.field, self.c))

    def __repr__(self):
        return format_unipoly(self, "t")


def _zx_content(v):
    g = 0
    for x in v:
        g = _int_gcd(g, x)
        if g == 1:
            break
    return g


def _int_gcd(a, b):
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


def _zx_primitive(v):
    g = _zx_content(v)
    if g == 0:
        return v
    if v[-1] < 0:
        g = -g
    return [x // g for x in v]


def _zx_prem(a, b):
    """Pseudo-remainder of integer coefficient lists (up to lc(b) powers)."""
    db = len(b) - 1
    lb = b[-1]
    r = list(a)
    while len(r) - 1 >= db and r:
        dr = len(r) - 1
        lead = r[-1]
        r = [lb * x for x in r[:-1]]
        for j in range(db):
            r[dr - db + j] -= lead * b[j]
        while r and r[-1] == 0:
            r.pop()
    return r


def _unipoly_to_zx(p: UniPoly):
    """(integer coefficient list, denominator) with list primitive * den."""
    den = 1
    for x in p.c:
        den = den * x.denominator // _int_gcd(den, x.denominator)
    return [int(x * den) for x in p.c], den


def uni_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd. Over Q runs a primitive PRS on cleared integers."""
    if a.field != b.field:
        raise FieldError("gcd of polynomials over different fields")
    K = a.field
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    if isinstance(K, RationalField):
        u, _ = _unipoly_to_zx(a)
        v, _ = _unipoly_to_zx(b)
        if len(u) < len(v):
            u, v = v, u
        u, v = _zx_primitive(u), _zx_primitive(v)
        while v:
            r = _zx_prem(u, v)
            u, v = v, _zx_primitive(r)
        g = UniPoly(K, tuple(Fraction(x) for x in u), trusted=True)
        return g.monic()
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def uni_lcm(a: UniPoly, b: UniPoly) -> UniPoly:
    if a.is_zero() or b.is_zero():
        return UniPoly.zero(a.field)
    g = uni_gcd(a, b)
    return ((a * b) // g).monic()


def uni_ext_gcd(a: UniPoly, b: UniPoly):
    """(g, s, t) with s*a + t*b = g, g the monic gcd."""
    K = a.field
    r0, r1 = a, b
    s0, s1 = UniPoly.one(K), UniPoly.zero(K)
    t0, t1 = UniPoly.zero(K), UniPoly.one(K)
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    inv = K.inv(r0.lc)
    return r0.scale(inv), s0.scale(inv), t0.scale(inv)


class BiPoly:
    """Polynomial in x over K[t]; rows[i] is the UniPoly coefficient of x^i."""

    __slots__ = ("field", "rows")

    def __init__(self, field: Field, rows, trusted: bool = False):
        self.field = field
        rows = list(rows)
        if not trusted:
            while rows and rows[-1].is_zero():
                rows.pop()
        self.rows = tuple(rows)

    @classmethod
    def zero(cls, field):
        return cls(field, (), trusted=True)

    @classmethod
    def from_unipoly_in_x(cls, p: UniPoly):
        K = p.field
        return cls(K, tuple(UniPoly.const(K, x) for x in p.c))

    @classmethod
    def from_unipoly_in_t(cls, p: UniPoly):
        return cls(p.field, (p,))

    @classmethod
    def x_minus_t(cls, field):
        return cls(
            field,
            (-UniPoly.gen(field), UniPoly.one(field)),
            trusted=True,
        )

    @property
    def degree_x(self) -> int:
        return len(self.rows) - 1

    @property
    def degree_t(self) -> int:
        return max((r.degree for r in self.rows), default=-1)

    def is_zero(self) -> bool:
        return not self.rows

    @property
    def lc_x(self) -> UniPoly:
        if not self.rows:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.rows[-1]

    def _check(self, other):
        if self.field != other.field:
            raise FieldError(f"mixed fields {self.field!r} and {other.field!r}")

    def __add__(self, other):
        self._check(other)
        K = self.field
        n = max(len(self.rows), len(other.rows))
        z = UniPoly.zero(K)
        out = []
        for i in range(n):
            a = self.rows[i] if i < len(self.rows) else z
            b = other.rows[i] if i < len(other.rows) else z
            out.append(a + b)
        return BiPoly(K, out)

    def __neg__(self):
        return BiPoly(self.field, tuple(-r for r in self.rows), trusted=True)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        K = self.field
        if not self.rows or not other.rows:
            return BiPoly.zero(K)
        out = [UniPoly.zero(K)] * (len(self.rows) + len(other.rows) - 1)
        for i, a in enumerate(self.rows):
            if a.is_zero():
                continue
            for j, b in enumerate(other.rows):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return BiPoly(K, out, trusted=True)

    def scale(self, a: UniPoly):
        return BiPoly(self.field, tuple(r * a for r in self.rows))

    def scale_const(self, a):
        return BiPoly(self.field, tuple(r.scale(a) for r in self.rows))

    def eval_x(self, c) -> UniPoly:
        """Substitute x -> c (a field element), leaving a polynomial in t."""
        K = self.field
        acc = UniPoly.zero(K)
        for r in reversed(self.rows):
            acc = acc.scale(c) + r
        return acc

    def eval_t(self, a) -> UniPoly:
        """Substitute t -> a, leaving a polynomial in x."""
        K = self.field
        return UniPoly(K, tuple(r.evaluate(a) for r in self.rows), trusted=False)

    def partial_x(self):
        K = self.field
        out = []
        for i in range(1, len(self.rows)):
            acc = UniPoly.zero(K)
            for _ in range(i):
                acc = acc + self.rows[i]
            out.append(acc)
        return BiPoly(K, out)

    def exact_div(self, other):
        """Quotient if division in K[t][x] is exact, else None.

        Exact quotients and intermediate remainders never exceed the
        dividend's t-degree (Newton polygon extremality), so growth past
        it aborts the division early.
        """
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("bivariate division by zero")
        if self.is_zero():
            return self
        K = self.field
        rem = list(self.rows)
        db = other.degree_x
        if len(rem) - 1 < db:
            return None
        dt_cap = self.degree_t
        q = [UniPoly.zero(K)] * (len(rem) - db)
        blc = other.lc_x
        for k in range(len(rem) - db - 1, -1, -1):
            qk, rk = divmod(rem[db + k], blc)
            if not rk.is_zero():
                return None
            if qk.degree > dt_cap:
                return None
            if not qk.is_zero():
                q[k] = qk
                for j in range(db + 1):
                    rem[j + k] = rem[j + k] - qk * other.rows[j]
                    if rem[j + k].degree > dt_cap:
                        return None
        if any(not r.is_zero() for r in rem):
            return None
        return BiPoly(K, q)

    def content_x(self) -> UniPoly:
        g = UniPoly.zero(self.field)
        for r in self.rows:
            g = uni_gcd(g, r)
            if g.degree == 0:
                break
        return g

    def primitive_part_x(self):
        """Divide out the K[t] content; normalize the leading constant.

        Over Q the result has integer, globally coprime coefficients with a
        positive leading term; over a finite field lc_x is made monic.
        """
        if self.is_zero():
            return self
        K = self.field
        g = self.content_x()
        rows = [r // g for r in self.rows] if g.degree > 0 else list(self.rows)
        if isinstance(K, RationalField):
            den = 1
            for r in rows:
                for x in r.c:
                    den = den * x.denominator // _int_gcd(den, x.denominator)
            num = 0
            for r in rows:
                for x in r.c:
                    num = _int_gcd(num, int(x * den))
                    if num == 1:
                        break
            scale = Fraction(den, num if num else 1)
            if rows[-1].lc * scale < 0:
                scale = -scale
            rows = [r.scale(scale) for r in rows]
        else:
            rows = [r.scale(K.inv(rows[-1].lc)) for r in rows]
        return BiPoly(K, rows, trusted=True)

    def swap_vars(self):
        """Exchange the roles of x and t."""
        K = self.field
        dt = self.degree_t
        cols = []
        for j in range(dt + 1):
            col = [
                r.c[j] if j < len(r.c) else K.zero
                for r in self.rows
            ]
            cols.append(UniPoly(K, tuple(col), trusted=False))
        return BiPoly(K, cols)

    def map_coeffs(self, new_field: Field, fn):
        return BiPoly(
            new_field, tuple(r.map_coeffs(new_field, fn) for r in self.rows)
        )

    def shift_t(self, a):
        """Substitute t -> t + a."""
        return BiPoly(self.field, tuple(r.taylor_shift(a) for r in self.rows))

    def sort_key(self):
        return (
            self.degree_x,
            self.degree_t,
            tuple(r.sort_key() for r in reversed(self.rows)),
        )

    def __eq__(self, other):
        return (
            isinstance(other, BiPoly)
            and self.field == other.field
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.field, self.rows))

    def __repr__(self):
        return format_bipoly(self)


def _prem_x(A, B, field):
    """Pseudo-remainder of BiPoly coefficient lists (polys in x over K[t])."""
    db = len(B) - 1
    lb = B[-1]
    r = list(A)
    steps = len(A) - len(B) + 1
    while r and len(r) - 1 >= db:
        lead = r[-1]
        r = [lb * x for x in r[:-1]]
        dr = len(r)  # old degree
        for j in range(db):
            r[dr - db + j] = r[dr - db + j] - lead * B[j]
        while r and r[-1].is_zero():
            r.pop()
        steps -= 1
    lbp = UniPoly.one(field)
    for _ in range(max(steps, 0)):
        lbp = lbp * lb
    return [x * lbp for x in r]


def resultant_x(A: BiPoly, B: BiPoly) -> UniPoly:
    """Resultant with respect to x, by the subresultant PRS.

    Convention: res(f, g) = lc(f)^deg(g) * prod over roots u of f of g(u).
    """
    K = A.field
    if A.is_zero() or B.is_zero():
        return UniPoly.zero(K)
    a = list(A.rows)
    b = list(B.rows)
    s = 1
    if len(a) < len(b):
        a, b = b, a
        if (len(a) - 1) % 2 == 1 and (len(b) - 1) % 2 == 1:
            s = -s
    if len(b) == 1:
        # resultant with a constant-in-x polynomial
        return _upow(b[0], len(a) - 1).scale(
            K.one if s > 0 else K.neg(K.one)
        )
    # contents out first
    ca = _rows_content(a, K)
    cb = _rows_content(b, K)
    a = [x // ca for x in a]
    b = [x // cb for x in b]
    mult = _upow(ca, len(b) - 1) * _upow(cb, len(a) - 1)
    g = UniPoly.one(K)
    h = UniPoly.one(K)
    while True:
        da, db = len(a) - 1, len(b) - 1
        delta = da - db
        if da % 2 == 1 and db % 2 == 1:
            s = -s
        r = _prem_x(a, b, K)
        a = b
        divisor = g * _upow(h, delta)
        b = [x // divisor for x in r]
        g = a[-1]
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = _upow(g, delta) // _upow(h, delta - 1)
        if not b:
            return UniPoly.zero(K)
        if len(b) == 1:
            da = len(a) - 1
            res = _upow(b[0], da) // _upow(h, da - 1) if da > 1 else (
                b[0] if da == 1 else UniPoly.one(K)
            )
            out = mult * res
            return out.scale(K.one if s > 0 else K.neg(K.one))


def _rows_content(rows, K):
    g = UniPoly.zero(K)
    for r in rows:
        g = uni_gcd(g, r)
        if g.degree == 0 and not g.is_zero():
            break
    if g.is_zero():
        return UniPoly.one(K)
    return g


def _upow(p: UniPoly, n: int) -> UniPoly:
    out = UniPoly.one(p.field)
    for _ in range(n):
        out = out * p
    return out


class RatFun:
    """Reduced rational function in t: coprime parts, monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: UniPoly, den: UniPoly, trusted: bool = False):
        if not trusted:
            raise ValueError("use RatFun.make to build reduced fractions")
        self.num = num
        self.den = den

    @classmethod
    def make(cls, num: UniPoly, den: UniPoly):
        if num.field != den.field:
            raise FieldError("numerator and denominator over different fields")
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        K = num.field
        if num.is_zero():
            return cls(UniPoly.zero(K), UniPoly.one(K), trusted=True)
        g = uni_gcd(num, den)
        if g.degree > 0:
            num, den = num // g, den // g
        l = den.lc
        if l != K.one:
            inv = K.inv(l)
            num, den = num.scale(inv), den.scale(inv)
        return cls(num, den, trusted=True)

    @classmethod
    def from_unipoly(cls, p: UniPoly):
        return cls(p, UniPoly.one(p.field), trusted=True)

    @classmethod
    def const(cls, field, a):
        return cls(UniPoly.const(field, a), UniPoly.one(field), trusted=True)

    @classmethod
    def var(cls, field):
        return cls(UniPoly.gen(field), UniPoly.one(field), trusted=True)

    @property
    def field(self):
        return self.num.field

    @property
    def degree(self) -> int:
        return max(self.num.degree, self.den.degree)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_one()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.num.constant_value()

    def __add__(self, other):
        g = uni_gcd(self.den, other.den)
        if g.degree > 0:
            da, db = self.den // g, other.den // g
            num = self.num * db + other.num * da
            return RatFun.make(num, da * other.den)
        return RatFun.make(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __neg__(self):
        return RatFun(-self.num, self.den, trusted=True)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        g1 = uni_gcd(self.num, other.den)
        g2 = uni_gcd(other.num, self.den)
        n1 = self.num // g1 if g1.degree > 0 else self.num
        d2 = other.den // g1 if g1.degree > 0 else other.den
        n2 = other.num // g2 if g2.degree > 0 else other.num
        d1 = self.den // g2 if g2.degree > 0 else self.den
        num, den = n1 * n2, d1 * d2
        if num.is_zero():
            return RatFun.from_unipoly(UniPoly.zero(num.field))
        K = num.field
        l = den.lc
        if l != K.one:
            inv = K.inv(l)
            num, den = num.scale(inv), den.scale(inv)
        return RatFun(num, den, trusted=True)

    def __truediv__(self, other):
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return self * other.reciprocal()

    def reciprocal(self):
        if self.is_zero():
            raise ZeroDivisionError("reciprocal of zero")
        return RatFun.make(self.den, self.num)

    def scale(self, a):
        return RatFun.make(self.num.scale(a), self.den)

    def derivative(self):
        num = self.num.derivative() * self.den - self.num * self.den.derivative()
        return RatFun.make(num, self.den * self.den)

    def evaluate(self, a):
        """Value at t = a; raises ZeroDivisionError on a pole."""
        K = self.field
        d = self.den.evaluate(a)
        if K.is_zero(d):
            raise ZeroDivisionError("pole of rational function")
        return K.mul(self.num.evaluate(a), K.inv(d))

    def map_coeffs(self, new_field, fn):
        return RatFun.make(
            self.num.map_coeffs(new_field, fn), self.den.map_coeffs(new_field, fn)
        )

    def monic_scaled(self):
        """Generator-equivalent scaling with both parts monic."""
        K = self.field
        if self.num.is_zero():
            return self
        return RatFun(self.num.monic(), self.den, trusted=True)

    def sort_key(self):
        return (self.num.sort_key(), self.den.sort_key())

    def __eq__(self, other):
        return (
            isinstance(other, RatFun)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return format_ratfun(self)


class RatPolyX:
    """Element of K(t)[x]: polynomial in x with RatFun coefficients."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs, trusted: bool = False):
        self.field = field
        coeffs = list(coeffs)
        if not trusted:
            while coeffs and coeffs[-1].is_zero():
                coeffs.pop()
        self.coeffs = tuple(coeffs)

    @classmethod
    def zero(cls, field):
        return cls(field, (), trusted=True)

    @classmethod
    def one(cls, field):
        return cls(field, (RatFun.const(field, field.one),), trusted=True)

    @classmethod
    def from_bipoly(cls, B: BiPoly, den: UniPoly | None = None):
        K = B.field
        if den is None:
            den = UniPoly.one(K)
        return cls(K, tuple(RatFun.make(r, den) for r in B.rows))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> RatFun:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.lc.is_constant() and (
            self.lc.constant_value() == self.field.one
        )

    def _check(self, other):
        if self.field != other.field:
            raise FieldError(f"mixed fields {self.field!r} and {other.field!r}")

    def __add__(self, other):
        self._check(other)
        K = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        z = RatFun.const(K, K.zero)
        out = []
        for i in range(n):
            a = self.coeffs[i] if i < len(self.coeffs) else z
            b = other.coeffs[i] if i < len(other.coeffs) else z
            out.append(a + b)
        return RatPolyX(K, out)

    def __neg__(self):
        return RatPolyX(self.field, tuple(-a for a in self.coeffs), trusted=True)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        K = self.field
        if not self.coeffs or not other.coeffs:
            return RatPolyX.zero(K)
        z = RatFun.const(K, K.zero)
        out = [z] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return RatPolyX(K, out, trusted=True)

    def scale(self, a: RatFun):
        return RatPolyX(self.field, tuple(c * a for c in self.coeffs))

    def __divmod__(self, other):
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero in K(t)[x]")
        if not other.is_monic():
            raise ValueError("divisor must be monic in K(t)[x]")
        K = self.field
        rem = list(self.coeffs)
        db = other.degree
        if len(rem) - 1 < db:
            return RatPolyX.zero(K), self
        q = [RatFun.const(K, K.zero)] * (len(rem) - db)
        for k in range(len(rem) - db - 1, -1, -1):
            coef = rem[db + k]
            if not coef.is_zero():
                q[k] = coef
                for j in range(db + 1):
                    rem[j + k] = rem[j + k] - coef * other.coeffs[j]
        return RatPolyX(K, q), RatPolyX(K, rem[:db])

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def monic(self):
        if self.is_zero() or self.is_monic():
            return self
        inv = self.lc.reciprocal()
        return self.scale(inv)

    def eval_x(self, c) -> RatFun:
        """Substitute x -> c, a base field element."""
        K = self.field
        cc = RatFun.const(K, c)
        acc = RatFun.const(K, K.zero)
        for a in reversed(self.coeffs):
            acc = acc * cc + a
        return acc

    def eval_x_ratfun(self, c: RatFun) -> RatFun:
        acc = RatFun.const(self.field, self.field.zero)
        for a in reversed(self.coeffs):
            acc = acc * c + a
        return acc

    def to_bipoly_cleared(self):
        """(B, l) with l the lcm of coefficient denominators and B = l*self."""
        K = self.field
        l = UniPoly.one(K)
        for a in self.coeffs:
            l = uni_lcm(l, a.den)
        rows = [a.num * (l // a.den) for a in self.coeffs]
        return BiPoly(K, rows), l

    def map_coeffs(self, new_field, fn):
        return RatPolyX(
            new_field, tuple(a.map_coeffs(new_field, fn) for a in self.coeffs)
        )

    def __eq__(self, other):
        return (
            isinstance(other, RatPolyX)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __repr__(self):
        return format_ratpolyx(self)


# ---------------------------------------------------------------------------
# text formatting


def _format_coeff(K, a) -> str:
    s = K.element_str(a)
    if any(op in s[1:] for op in "+-*/"):
        return f"({s})"
    return s


def format_unipoly(p: UniPoly, var: str = "t") -> str:
    if p.is_zero():
        return "0"
    K = p.field
    parts = []
    for i in range(p.degree, -1, -1):
        a = p.c[i]
        if K.is_zero(a):
            continue
        if i == 0:
            term = _format_coeff(K, a)
        else:
            v = var if i == 1 else f"{var}^{i}"
            if a == K.one:
                term = v
            elif isinstance(K, RationalField) and a == -1:
                term = f"-{v}"
            else:
                term = f"{_format_coeff(K, a)}*{v}"
        parts.append(term)
    out = parts[0]
    for term in parts[1:]:
        if term.startswith("-"):
            out += term
        else:
            out += "+" + term
    return out


def _wrap(s: str) -> str:
    if any(op in s[1:] for op in "+-") or "/" in s:
        return f"({s})"
    return s


def format_ratfun(f: RatFun) -> str:
    num = format_unipoly(f.num, "t")
    if f.den.is_one():
        return num
    den = format_unipoly(f.den, "t")
    return f"{_wrap(num)}/{_wrap(den)}"


def _format_xpoly(coeff_strs) -> str:
    """coeff_strs: list over x-degree of formatted coefficients or None."""
    parts = []
    for i in range(len(coeff_strs) - 1, -1, -1):
        cs = coeff_strs[i]
        if cs is None:
            continue
        if i == 0:
            term = _wrap(cs) if ("+" in cs[1:] or "-" in cs[1:] or "/" in cs) else cs
        else:
            v = "x" if i == 1 else f"x^{i}"
            if cs == "1":
                term = v
            elif cs == "-1":
                term = f"-{v}"
            else:
                term = f"{_wrap(cs)}*{v}"
        parts.append(term)
    if not parts:
        return "0"
    out = parts[0]
    for term in parts[1:]:
        if term.startswith("-") and not term.startswith("-("):
            out += term
        elif term.startswith("-"):
            out += term
        else:
            out += "+" + term
    return out


def format_bipoly(B: BiPoly) -> str:
    strs = [
        None if r.is_zero() else format_unipoly(r, "t")
        for r in B.rows
    ]
    return _format_xpoly(strs)


def format_ratpolyx(F: RatPolyX) -> str:
    strs = [
        None if a.is_zero() else format_ratfun(a)
        for a in F.coeffs
    ]
    return _format_xpoly(strs)


# ---------------------------------------------------------------------------
# text parsing


class ParseError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


class _Parser:
    """Recursive descent over +-*/^, integers, variables t and x."""

    def __init__(self, text: str, field: Field):
        self.text = text
        self.field = field
        self.pos = 0

    def _skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek(self):
        self._skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse(self):
        num, den = self._expr()
        self._skip_ws()
        if self.pos != len(self.text):
            raise ParseError(f"unexpected {self.text[self.pos]!r}", self.pos)
        return num, den

    def _expr(self):
        acc = self._term()
        while True:
            ch = self._peek()
            if ch == "+":
                self.pos += 1
                acc = _br_add(acc, self._term())
            elif ch == "-":
                self.pos += 1
                acc = _br_add(acc, _br_neg(self._term()))
            else:
                return acc

    def _term(self):
        acc = self._unary()
        while True:
            ch = self._peek()
            if ch == "*":
                self.pos += 1
                acc = _br_mul(acc, self._unary())
            elif ch == "/":
                opos = self.pos
                self.pos += 1
                acc = _br_div(acc, self._unary(), opos)
            else:
                return acc

    def _unary(self):
        ch = self._peek()
        if ch == "-":
            self.pos += 1
            return _br_neg(self._unary())
        if ch == "+":
            self.pos += 1
            return self._unary()
        return self._power()

    def _power(self):
        base = self._atom()
        if self._peek() == "^":
            opos = self.pos
            self.pos += 1
            exp = self._int_literal()
            if exp < 0:
                num, den = base
                if num.is_zero():
                    raise ParseError("zero to a negative power", opos)
                base = (den, num)
                exp = -exp
            num, den = base
            rn, rd = _br_one(self.field)
            for _ in range(exp):
                rn, rd = rn * num, rd * den
            return rn, rd
        return base

    def _int_literal(self) -> int:
        self._skip_ws()
        start = self.pos
        if self._peek() == "-":
            self.pos += 1
        if self.pos >= len(self.text) or not self.text[self.pos].isdigit():
            raise ParseError("expected integer exponent", self.pos)
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        return int(self.text[start:self.pos])

    def _atom(self):
        ch = self._peek()
        K = self.field
        if ch == "(":
            self.pos += 1
            inner = self._expr()
            if self._peek() != ")":
                raise ParseError("expected ')'", self.pos)
            self.pos += 1
            return inner
        if ch.isdigit():
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            val = int(self.text[start:self.pos])
            c = UniPoly.const(K, K.of(val))
            return BiPoly.from_unipoly_in_t(c), _one_bp(K)
        if ch == "t":
            self.pos += 1
            return BiPoly.from_unipoly_in_t(UniPoly.gen(K)), _one_bp(K)
        if ch == "x":
            self.pos += 1
            return (
                BiPoly(K, (UniPoly.zero(K), UniPoly.one(K))),
                _one_bp(K),
            )
        if ch == "":
            raise ParseError("unexpected end of input", self.pos)
        raise ParseError(f"unexpected {ch!r}", self.pos)


def _one_bp(K):
    return BiPoly.from_unipoly_in_t(UniPoly.one(K))


def _br_one(K):
    return _one_bp(K), _one_bp(K)


def _br_add(a, b):
    return a[0] * b[1] + b[0] * a[1], a[1] * b[1]


def _br_neg(a):
    return -a[0], a[1]


def _br_mul(a, b):
    return a[0] * b[0], a[1] * b[1]


def _br_div(a, b, pos):
    if b[0].is_zero():
        raise ParseError("division by zero", pos)
    return a[0] * b[1], a[1] * b[0]


def _bipoly_to_unipoly_t(B: BiPoly, pos=0) -> UniPoly:
    if B.degree_x > 0:
        raise ParseError("expected an expression in t only", pos)
    return B.rows[0] if B.rows else UniPoly.zero(B.field)


def parse_ratfun(text: str, field: Field) -> RatFun:
    """Parse a rational function in t over the given field."""
    num, den = _Parser(text, field).parse()
    p = _bipoly_to_unipoly_t(num)
    q = _bipoly_to_unipoly_t(den)
    if q.is_zero():
        raise ParseError("zero denominator", 0)
    return RatFun.make(p, q)


def parse_unipoly(text: str, field: Field) -> UniPoly:
    f = parse_ratfun(text, field)
    if not f.den.is_one():
        raise ParseError("expected a polynomial, found a proper fraction", 0)
    return f.num


def parse_ratpolyx(text: str, field: Field) -> RatPolyX:
    """Parse an element of K(t)[x]; the denominator must be free of x."""
    num, den = _Parser(text, field).parse()
    d = _bipoly_to_unipoly_t(den)
    if d.is_zero():
        raise ParseError("zero denominator", 0)
    return RatPolyX(field, tuple(RatFun.make(r, d) for r in num.rows))


def parse_bipoly(text: str, field: Field) -> BiPoly:
    num, den = _Parser(text, field).parse()
    d = _bipoly_to_unipoly_t(den)
    if d.is_zero():
        raise ParseError("zero denominator", 0)
    if not d.is_constant():
        raise ParseError("expected a polynomial in x and t", 0)
    K = field
    inv = K.inv(d.constant_value())
    return num.scale_const(inv)
