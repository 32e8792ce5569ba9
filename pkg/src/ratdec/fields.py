"""Exact coefficient arithmetic: rationals, prime fields, small extensions.

Field elements are plain Python values (Fraction for the rationals, int in
[0, p) for a prime field, fixed-length tuple of ints for an extension field)
and a Field object interprets them. Composite objects (polynomials,
matrices, rational functions) carry the Field and refuse to combine values
from two different fields.
"""
from __future__ import annotations

from fractions import Fraction


class FieldError(ValueError):
    """Invalid field construction, mixed-field operands, or bad coercion."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


class Field:
    """Interpreter for plain element values. Immutable, cheap to compare."""

    char: int = 0
    cardinality = None  # None means infinite

    def of(self, x):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return a == self.zero

    def eq(self, a, b) -> bool:
        return a == b

    def sort_key(self, a):
        """Total order on canonical representatives, for deterministic sorts."""
        raise NotImplementedError

    def elements(self):
        """Canonical enumeration (finite fields only)."""
        raise FieldError("cannot enumerate an infinite field")

    def element_str(self, a) -> str:
        return str(a)


class RationalField(Field):
    """The field of arbitrary-precision rationals, elements are Fractions."""

    char = 0
    cardinality = None
    zero = Fraction(0)
    one = Fraction(1)

    def of(self, x):
        if isinstance(x, bool):
            raise FieldError("bool is not a field element")
        if isinstance(x, (int, Fraction)):
            return Fraction(x)
        raise FieldError(f"cannot coerce {x!r} into Q")

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("division by zero in Q")
        return 1 / a

    def div(self, a, b):
        if not b:
            raise ZeroDivisionError("division by zero in Q")
        return a / b

    def is_zero(self, a):
        return not a

    def sort_key(self, a):
        return a

    def element_str(self, a):
        return str(a)

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")


QQ = RationalField()


class PrimeField(Field):
    """F_p, elements are ints reduced into [0, p)."""

    def __init__(self, p: int):
        if not is_prime(p):
            raise FieldError(f"{p} is not prime")
        self.p = p
        self.char = p
        self.cardinality = p
        self.zero = 0
        self.one = 1 % p

    def of(self, x):
        if isinstance(x, bool) or not isinstance(x, int):
            raise FieldError(f"cannot coerce {x!r} into GF({self.p})")
        return x % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise ZeroDivisionError(f"inverse of 0 in GF({self.p})")
        return pow(a, self.p - 2, self.p)

    def is_zero(self, a):
        return a % self.p == 0

    def sort_key(self, a):
        return a

    def elements(self):
        return iter(range(self.p))

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


def _fp_trim(v):
    while v and v[-1] == 0:
        v.pop()
    return v


def _fp_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _fp_trim(out)


def _fp_divmod(a, b, p):
    # b nonzero; coefficients are ints mod p
    a = list(a)
    db, da = len(b) - 1, len(a) - 1
    if da < db:
        return [], _fp_trim(a)
    inv_lb = pow(b[-1], p - 2, p)
    q = [0] * (da - db + 1)
    for k in range(da - db, -1, -1):
        c = (a[db + k] * inv_lb) % p
        if c:
            q[k] = c
            for j, bj in enumerate(b):
                a[j + k] = (a[j + k] - c * bj) % p
    return _fp_trim(q), _fp_trim(a[:db])


class ExtensionField(Field):
    """GF(p^k) as F_p[y]/(m(y)); elements are length-k tuples of ints.

    The modulus is monic irreducible over F_p, stored as the ascending
    coefficient tuple including the leading 1.
    """

    def __init__(self, p: int, modulus):
        if not is_prime(p):
            raise FieldError(f"{p} is not prime")
        modulus = tuple(c % p for c in modulus)
        if len(modulus) < 3 or modulus[-1] != 1:
            raise FieldError("modulus must be monic of degree >= 2")
        self.p = p
        self.modulus = modulus
        self.degree = len(modulus) - 1
        self.char = p
        self.cardinality = p ** self.degree
        k = self.degree
        self.zero = (0,) * k
        self.one = (1,) + (0,) * (k - 1)
        # reduction rows: y^(k+j) mod m(y), j = 0..k-2
        rows = []
        cur = [(-c) % p for c in modulus[:-1]]  # y^k
        rows.append(tuple(cur))
        for _ in range(k - 2):
            cur = [0] + cur
            top = cur[k] if len(cur) > k else 0
            cur = cur[:k]
            if top:
                cur = [(ci + top * ri) % p for ci, ri in zip(cur, rows[0])]
            rows.append(tuple(cur))
        self._red = rows

    def of(self, x):
        if isinstance(x, bool):
            raise FieldError("bool is not a field element")
        if isinstance(x, int):
            return (x % self.p,) + (0,) * (self.degree - 1)
        if isinstance(x, tuple) and len(x) == self.degree:
            return tuple(c % self.p for c in x)
        raise FieldError(f"cannot coerce {x!r} into {self!r}")

    @property
    def gen(self):
        return (0, 1) + (0,) * (self.degree - 2)

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple((-x) % p for x in a)

    def mul(self, a, b):
        p, k = self.p, self.degree
        conv = [0] * (2 * k - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    conv[i + j] = (conv[i + j] + ai * bj) % p
        out = conv[:k]
        for j in range(2 * k - 2, k - 1, -1):
            c = conv[j]
            if c:
                row = self._red[j - k]
                for i in range(k):
                    out[i] = (out[i] + c * row[i]) % p
        return tuple(out)

    def inv(self, a):
        if all(c == 0 for c in a):
            raise ZeroDivisionError(f"inverse of 0 in {self!r}")
        p = self.p
        # extended Euclid on (a, modulus) over F_p
        r0, r1 = list(self.modulus), _fp_trim(list(a))
        s0, s1 = [], [1]
        while r1:
            q, r = _fp_divmod(r0, r1, p)
            r0, r1 = r1, r
            s0, s1 = s1, _fp_trim([
                (x - y) % p
                for x, y in _zip_longest_sub(s0, _fp_mul(q, s1, p))
            ])
        # r0 is the gcd, a nonzero constant since the modulus is irreducible
        c_inv = pow(r0[0], p - 2, p)
        s0 = [(x * c_inv) % p for x in s0]
        s0 = s0[: self.degree] + [0] * (self.degree - len(s0))
        return tuple(s0[: self.degree])

    def is_zero(self, a):
        return all(c == 0 for c in a)

    def sort_key(self, a):
        v = 0
        for c in reversed(a):
            v = v * self.p + c
        return v

    def elements(self):
        p, k = self.p, self.degree
        for v in range(self.cardinality):
            digits = []
            x = v
            for _ in range(k):
                digits.append(x % p)
                x //= p
            yield tuple(digits)

    def element_str(self, a):
        terms = []
        for i, c in enumerate(a):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append("y" if c == 1 else f"{c}*y")
            else:
                terms.append(f"y^{i}" if c == 1 else f"{c}*y^{i}")
        return "+".join(terms) if terms else "0"

    def __repr__(self):
        return f"GF({self.p}^{self.degree})"

    def __eq__(self, other):
        return (
            isinstance(other, ExtensionField)
            and other.p == self.p
            and other.modulus == self.modulus
        )

    def __hash__(self):
        return hash(("GF", self.p, self.modulus))


def _zip_longest_sub(a, b):
    n = max(len(a), len(b))
    a = a + [0] * (n - len(a))
    b = b + [0] * (n - len(b))
    return zip(a, b)


def _monic_polys_over_fp(p, d):
    """Monic degree-d coefficient lists over F_p, ascending counter order."""
    for v in range(p ** d):
        digits = []
        x = v
        for _ in range(d):
            digits.append(x % p)
            x //= p
        yield digits + [1]


def irreducible_modulus(p: int, k: int):
    """First monic irreducible of degree k over F_p in ascending lex order.

    Irreducibility by trial division against every lower-degree monic
    irreducible; only used for desk-scale fields.
    """
    if k == 1:
        return (0, 1)
    lower = []
    for d in range(1, k // 2 + 1):
        for cand in _monic_polys_over_fp(p, d):
            if not any(_fp_divmod(cand, g, p)[1] == [] for g in lower):
                lower.append(cand)
    for cand in _monic_polys_over_fp(p, k):
        if cand[0] == 0:
            continue  # divisible by y
        if not any(_fp_divmod(cand, g, p)[1] == [] for g in lower):
            return tuple(cand)
    raise FieldError(f"no irreducible of degree {k} over GF({p})")  # unreachable


def make_extension(base: Field, degree: int) -> Field:
    """Extension of a finite field by the given relative degree.

    Always returns an absolute extension of the prime field, with the
    modulus found by deterministic ascending search.
    """
    if isinstance(base, RationalField):
        raise FieldError("field extensions are never needed in characteristic 0")
    if degree < 1:
        raise FieldError("extension degree must be >= 1")
    if degree == 1:
        return base
    if isinstance(base, PrimeField):
        total = degree
        p = base.p
    elif isinstance(base, ExtensionField):
        total = base.degree * degree
        p = base.p
    else:
        raise FieldError(f"cannot extend {base!r}")
    return ExtensionField(p, irreducible_modulus(p, total))


def embedding(src: Field, dst: Field):
    """Field homomorphism src -> dst for finite fields with [dst:src] integral.

    For a prime source this is the constant injection. For an extension
    source the image of the generator is the first root of the source
    modulus in dst (found by scanning, so only for desk-scale fields).
    """
    if src == dst:
        return lambda a: a
    if isinstance(src, PrimeField):
        if isinstance(dst, (PrimeField, ExtensionField)) and dst.char == src.p:
            return dst.of
        raise FieldError(f"no embedding {src!r} -> {dst!r}")
    if not isinstance(src, ExtensionField) or dst.char != src.p:
        raise FieldError(f"no embedding {src!r} -> {dst!r}")
    if not isinstance(dst, ExtensionField) or dst.degree % src.degree:
        raise FieldError(f"no embedding {src!r} -> {dst!r}")
    if dst.cardinality > 10 ** 6:
        raise FieldError("embedding search capped at desk-scale fields")
    mod = [dst.of(c) for c in src.modulus]
    root = None
    for cand in dst.elements():
        acc = dst.zero
        for c in reversed(mod):
            acc = dst.add(dst.mul(acc, cand), c)
        if dst.is_zero(acc):
            root = cand
            break
    if root is None:
        raise FieldError("source modulus has no root in destination")  # unreachable

    def emb(a):
        # Horner over the generator image
        acc = dst.zero
        for c in reversed(a):
            acc = dst.add(dst.mul(acc, root), dst.of(c))
        return acc

    return emb


class IntegersModPrimePower:
    """Z/p^k as a coefficient ring for Hensel lifting. Not a field.

    Duck-types the Field methods the polynomial layer needs; inv() only
    works on units (elements prime to p), which is all lifting ever inverts.
    """

    def __init__(self, p: int, k: int):
        self.p = p
        self.k = k
        self.modulus_value = p ** k
        self.char = self.modulus_value  # only used for repr/debug
        self.cardinality = self.modulus_value
        self.zero = 0
        self.one = 1

    def of(self, x):
        if isinstance(x, bool) or not isinstance(x, int):
            raise FieldError(f"cannot coerce {x!r} into {self!r}")
        return x % self.modulus_value

    def add(self, a, b):
        return (a + b) % self.modulus_value

    def sub(self, a, b):
        return (a - b) % self.modulus_value

    def mul(self, a, b):
        return (a * b) % self.modulus_value

    def neg(self, a):
        return (-a) % self.modulus_value

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError(f"{a} is not a unit in {self!r}")
        return pow(a, -1, self.modulus_value)

    def is_zero(self, a):
        return a % self.modulus_value == 0

    def eq(self, a, b):
        return (a - b) % self.modulus_value == 0

    def sort_key(self, a):
        return a

    def centered(self, a):
        """Representative in (-p^k/2, p^k/2], for lifting back to Z."""
        a %= self.modulus_value
        if 2 * a > self.modulus_value:
            a -= self.modulus_value
        return a

    def element_str(self, a):
        return str(a)

    def __repr__(self):
        return f"Z/{self.p}^{self.k}"

    def __eq__(self, other):
        return (
            isinstance(other, IntegersModPrimePower)
            and other.p == self.p
            and other.k == self.k
        )

    def __hash__(self):
        return hash(("Zpk", self.p, self.k))


def field_from_string(text: str) -> Field:
    """Parse a field descriptor: "q", "fp:7919", or "fp:2^4"."""
    text = text.strip().lower()
    if text == "q":
        return QQ
    if text.startswith("fp:"):
        spec = text[3:]
        if "^" in spec:
            base, _, exp = spec.partition("^")
            p, k = int(base), int(exp)
            if k == 1:
                return PrimeField(p)
            return ExtensionField(p, irreducible_modulus(p, k))
        return PrimeField(int(spec))
    raise FieldError(f"unknown field descriptor {text!r}")


def field_to_string(K: Field) -> str:
    if isinstance(K, RationalField):
        return "q"
    if isinstance(K, PrimeField):
        return f"fp:{K.p}"
    if isinstance(K, ExtensionField):
        return f"fp:{K.p}^{K.degree}"
    raise FieldError(f"unprintable field {K!r}")
