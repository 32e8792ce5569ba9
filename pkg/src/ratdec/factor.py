"""Polynomial factorization: univariate over F_q and Q, bivariate by
evaluation, Hensel lifting and subset recombination.

The bivariate entry point factors the difference polynomial of a prepared
rational function. Over Q the lifting runs u-adically (u = t - t0) with
coefficients in Z/p^K for a deterministically chosen odd prime p, so that
all intermediate arithmetic is bounded integers; candidates are certified
by exact integer trial division. Over a finite field the lifting runs over
the field itself, moving to an extension only when the base field has no
usable evaluation point.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .fields import (
    ExtensionField,
    Field,
    FieldError,
    IntegersModPrimePower,
    PrimeField,
    QQ,
    RationalField,
    embedding,
    make_extension,
)
from .poly import BiPoly, RatFun, RatPolyX, UniPoly, uni_ext_gcd, uni_gcd
from .ratfun import DecompositionError, build_nabla


class FactorError(ValueError):
    pass


# ---------------------------------------------------------------------------
# univariate factorization over finite fields


def _powmod(base: UniPoly, exp: int, mod: UniPoly) -> UniPoly:
    result = UniPoly.one(base.field) % mod
    base = base % mod
    while exp:
        if exp & 1:
            result = (result * base) % mod
        base = (base * base) % mod
        exp >>= 1
    return result


def _frobenius_root(a, K):
    """p-th root in F_q, i.e. a^(q/p)."""
    q = K.cardinality
    p = K.char
    return _field_pow(a, q // p, K)


def _field_pow(a, n: int, K):
    out = K.one
    while n:
        if n & 1:
            out = K.mul(out, a)
        a = K.mul(a, a)
        n >>= 1
    return out


def _poly_pth_root(f: UniPoly) -> UniPoly:
    K = f.field
    p = K.char
    out = [K.zero] * (f.degree // p + 1)
    for i in range(0, f.degree + 1, p):
        out[i // p] = _frobenius_root(f.c[i], K)
    return UniPoly(K, out)


def squarefree_decomposition_fq(f: UniPoly):
    """[(monic squarefree part, multiplicity)] over a finite field."""
    K = f.field
    f = f.monic()
    parts = {}

    def accumulate(h: UniPoly, mult: int):
        if h.is_constant():
            return
        if mult in parts:
            parts[mult] = parts[mult] * h
        else:
            parts[mult] = h

    def walk(g: UniPoly, outer: int):
        d = g.derivative()
        if d.is_zero():
            walk(_poly_pth_root(g), outer * K.char)
            return
        c = uni_gcd(g, d)
        w = g // c
        i = 1
        while not w.is_constant():
            y = uni_gcd(w, c)
            z = w // y
            accumulate(z, i * outer)
            w = y
            c = c // y
            i += 1
        if not c.is_constant():
            walk(_poly_pth_root(c), outer * K.char)

    walk(f, 1)
    return sorted(
        ((poly, mult) for mult, poly in parts.items()),
        key=lambda pm: (pm[1], pm[0].sort_key()),
    )


def _ddf(f: UniPoly):
    """Distinct degree: [(product of degree-d irreducibles, d)], f squarefree monic."""
    K = f.field
    q = K.cardinality
    out = []
    x = UniPoly.gen(K)
    h = x % f
    d = 0
    rest = f
    while rest.degree > 2 * (d + 1) - 1 and not rest.is_constant():
        d += 1
        h = _powmod(h, q, rest)
        g = uni_gcd(h - x, rest)
        if not g.is_constant():
            out.append((g, d))
            rest = rest // g
            h = h % rest
    if not rest.is_constant():
        out.append((rest, rest.degree))
    return out


def _random_poly(K, deg: int, rng: random.Random) -> UniPoly:
    if isinstance(K, ExtensionField):
        cs = [
            tuple(rng.randrange(K.p) for _ in range(K.degree))
            for _ in range(deg + 1)
        ]
    else:
        cs = [rng.randrange(K.p) for _ in range(deg + 1)]
    return UniPoly(K, cs)


def _edf(f: UniPoly, d: int, rng: random.Random):
    """Split a product of distinct degree-d irreducibles (Cantor-Zassenhaus)."""
    K = f.field
    q = K.cardinality
    if f.degree == d:
        return [f.monic()]
    while True:
        a = _random_poly(K, f.degree - 1, rng)
        if a.is_constant():
            continue
        if q % 2 == 1:
            b = _powmod(a, (q ** d - 1) // 2, f)
            g = uni_gcd(b - UniPoly.one(K), f)
        else:
            e = K.degree if isinstance(K, ExtensionField) else 1
            acc = a % f
            tr = acc
            for _ in range(e * d - 1):
                acc = (acc * acc) % f
                tr = tr + acc
            g = uni_gcd(tr, f)
        if g.is_constant() or g.degree == f.degree:
            continue
        return sorted(
            _edf(g, d, rng) + _edf(f // g, d, rng),
            key=lambda p: p.sort_key(),
        )


def factor_fq_squarefree(f: UniPoly, rng: random.Random):
    """Monic irreducible factors of a squarefree monic f over F_q."""
    out = []
    for part, d in _ddf(f):
        out.extend(_edf(part, d, rng))
    return sorted(out, key=lambda p: p.sort_key())


def is_irreducible_fq(f: UniPoly) -> bool:
    """Rabin's test over F_q."""
    K = f.field
    q = K.cardinality
    n = f.degree
    if n <= 0:
        return False
    if n == 1:
        return True
    x = UniPoly.gen(K)
    primes = set()
    m = n
    d = 2
    while d * d <= m:
        while m % d == 0:
            primes.add(d)
            m //= d
        d += 1
    if m > 1:
        primes.add(m)
    for ell in primes:
        h = _powmod(x, q ** (n // ell), f)
        if not uni_gcd(h - x, f).is_constant():
            return False
    return _powmod(x, q ** n, f) == x % f


# ---------------------------------------------------------------------------
# univariate factorization over Q (Zassenhaus)


def _zx_trim(v):
    while v and v[-1] == 0:
        v.pop()
    return v


def _zx_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _zx_trim(out)


def _zx_content(v):
    g = 0
    for x in v:
        g = math.gcd(g, x)
        if g == 1:
            break
    return g


def _zx_primitive(v):
    g = _zx_content(v)
    if g == 0:
        return list(v)
    if v[-1] < 0:
        g = -g
    return [x // g for x in v]


def _zx_divmod_exact(a, b):
    """Quotient if b divides a exactly in Z[x], else None."""
    if not b:
        raise ZeroDivisionError
    a = list(a)
    db = len(b) - 1
    if len(a) - 1 < db:
        return None
    q = [0] * (len(a) - db)
    lb = b[-1]
    for k in range(len(a) - db - 1, -1, -1):
        c = a[db + k]
        if c % lb:
            return None
        c //= lb
        if c:
            q[k] = c
            for j in range(db + 1):
                a[j + k] -= c * b[j]
    return q if not any(a[:db]) else None


def _zx_derivative(v):
    return _zx_trim([i * v[i] for i in range(1, len(v))])


def _zx_gcd(a, b):
    a, b = _zx_primitive(a), _zx_primitive(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        # primitive PRS step
        r = list(a)
        db = len(b) - 1
        lb = b[-1]
        while r and len(r) - 1 >= db:
            dr = len(r) - 1
            lead = r[-1]
            r = [lb * x for x in r[:-1]]
            for j in range(db):
                r[dr - db + j] -= lead * b[j]
            _zx_trim(r)
        a, b = b, _zx_primitive(r)
    return _zx_primitive(a)


def _primes():
    yield from (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)
    n = 49
    while True:
        if all(n % p for p in (2, 3, 5, 7)):
            k = 11
            prime = True
            while k * k <= n:
                if n % k == 0:
                    prime = False
                    break
                k += 2
            if prime:
                yield n
        n += 2


def _zpk_poly_divmod(a, b, m):
    """divmod of int coefficient lists mod m; b monic."""
    a = [x % m for x in a]
    b = [x % m for x in b]
    _zx_trim(b)
    db = len(b) - 1
    if len(a) - 1 < db:
        return [], _zx_trim(a)
    q = [0] * (len(a) - db)
    for k in range(len(a) - db - 1, -1, -1):
        c = a[db + k] % m
        if c:
            q[k] = c
            for j in range(db + 1):
                a[j + k] = (a[j + k] - c * b[j]) % m
    return _zx_trim(q), _zx_trim(a[:db])


def _zpk_mul(a, b, m):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % m
    return _zx_trim(out)


def _zpk_sub(a, b, m):
    n = max(len(a), len(b))
    out = [
        ((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % m
        for i in range(n)
    ]
    return _zx_trim(out)


def _bezout_mod_p(g, h, p):
    """s, t int lists with s g + t h = 1 mod p (g, h coprime mod p)."""
    Fp = PrimeField(p)
    gg = UniPoly(Fp, [x % p for x in g])
    hh = UniPoly(Fp, [x % p for x in h])
    d, s, t = uni_ext_gcd(gg, hh)
    if not d.is_one():
        raise FactorError("factors not coprime modulo p")
    return list(s.c), list(t.c)


def _bezout_zpk(g, h, p, m):
    """s g + t h = 1 mod m = p^K, h monic, starting from the mod-p identity."""
    s, t = _bezout_mod_p(g, h, p)
    for _ in range(m.bit_length() + 2):
        sg = _zpk_mul(s, g, m)
        th = _zpk_mul(t, h, m)
        e = _zpk_sub(_zpk_sub([1], sg, m), th, m)
        if not e:
            return s, t
        se = _zpk_mul(s, e, m)
        _, r = _zpk_poly_divmod(se, h, m)
        s = _zpk_sub(s, [(-x) % m for x in r], m)
        one_minus_sg = _zpk_sub([1], _zpk_mul(s, g, m), m)
        t, _ = _zpk_poly_divmod(one_minus_sg, h, m)
    raise FactorError("Bezout lifting did not converge")  # unreachable


def _hensel_pair_zx(f, g, h, p, K):
    """Lift f = g h mod p to mod p^K; all monic int lists. Returns (g, h)."""
    m = p ** K
    s, t = _bezout_mod_p(g, h, p)
    cur = p
    g = [x % m for x in g]
    h = [x % m for x in h]
    while cur < m:
        cur = min(cur * cur, m)
        e = _zpk_sub(f, _zpk_mul(g, h, m), m)
        se = _zpk_mul(s, e, m)
        _, r = _zpk_poly_divmod(se, h, m)
        num = _zpk_sub(e, _zpk_mul(g, r, m), m)
        dg, rem = _zpk_poly_divmod(num, h, m)
        h = _zpk_sub(h, [(-x) % m for x in r], m)
        g = _zpk_sub(g, [(-x) % m for x in dg], m)
        if cur < m:
            # b = s g + t h - 1
            b = _zpk_sub(_zpk_mul(s, g, m), _zpk_sub([1], _zpk_mul(t, h, m), m), m)
            sb = _zpk_mul(s, b, m)
            _, rb = _zpk_poly_divmod(sb, h, m)
            s = _zpk_sub(s, rb, m)
            one_minus_sg = _zpk_sub([1], _zpk_mul(s, g, m), m)
            t, _ = _zpk_poly_divmod(one_minus_sg, h, m)
    return g, h


def _hensel_multifactor_zx(f, locals_, p, K):
    """Lift monic f = prod(locals_) mod p to mod p^K, all monic int lists."""
    if len(locals_) == 1:
        return [[x % (p ** K) for x in f]]
    half = len(locals_) // 2
    left, right = locals_[:half], locals_[half:]
    m = p ** K
    gl = [1]
    for v in left:
        gl = _zpk_mul(gl, v, p)
    gr = [1]
    for v in right:
        gr = _zpk_mul(gr, v, p)
    G, H = _hensel_pair_zx(f, gl, gr, p, K)
    return _hensel_multifactor_zx(G, left, p, K) + _hensel_multifactor_zx(
        H, right, p, K
    )


def _centered(x, m):
    x %= m
    if 2 * x > m:
        x -= m
    return x


def zassenhaus(H):
    """Irreducible factors of a primitive squarefree H in Z[x], deg >= 1."""
    H = _zx_primitive(H)
    n = len(H) - 1
    if n == 1:
        return [H]
    lc = H[-1]
    p = None
    for q in _primes():
        if q == 2 or lc % q == 0:
            continue
        Fp = PrimeField(q)
        hp = UniPoly(Fp, [x % q for x in H])
        if hp.degree != n:
            continue
        if uni_gcd(hp, hp.derivative()).is_constant():
            p = q
            break
    rng = random.Random(1)
    Fp = PrimeField(p)
    hp = UniPoly(Fp, [x % p for x in H]).monic()
    locals_ = factor_fq_squarefree(hp, rng)
    if len(locals_) == 1:
        return [H]
    hmax = max(abs(x) for x in H)
    bound = (math.isqrt(n + 1) + 1) * (1 << n) * hmax * abs(lc)
    K = 1
    while p ** K <= 2 * bound:
        K += 1
    m = p ** K
    lc_inv = pow(lc, -1, m)
    f_monic = [(x * lc_inv) % m for x in H]
    lifted = _hensel_multifactor_zx(
        f_monic, [[int(c) for c in v.c] for v in locals_], p, K
    )
    pool = list(range(len(lifted)))
    remaining = list(H)
    found = []
    size = 1
    while pool:
        if size > len(pool) // 2:
            # factor supports partition the pool, so the remainder is
            # irreducible once nothing fits into half of it
            found.append(_zx_primitive(remaining))
            pool = []
            break
        progressed = False
        for subset in itertools.combinations(pool, size):
            prod = [lc % m]
            for i in subset:
                prod = _zpk_mul(prod, lifted[i], m)
            cand = _zx_primitive([_centered(x, m) for x in prod])
            q = _zx_divmod_exact(remaining, cand)
            if q is not None and len(cand) > 1:
                found.append(cand)
                remaining = q
                lc = remaining[-1]
                pool = [i for i in pool if i not in subset]
                progressed = True
                break
        if not progressed:
            size += 1
    return found


def _yun_squarefree_qq(f: UniPoly):
    """[(monic squarefree part, multiplicity)] over Q."""
    f = f.monic()
    out = []
    d = f.derivative()
    g = uni_gcd(f, d)
    w = f // g
    y = d // g
    i = 1
    while not w.is_constant():
        z = y - w.derivative()
        h = uni_gcd(w, z)
        if not h.is_constant():
            out.append((h, i))
        w = w // h
        y = z // h
        i += 1
    return out


def factor_univariate(g: UniPoly, rng: random.Random | None = None):
    """[(monic irreducible, multiplicity)]; unit content dropped."""
    if g.is_zero():
        raise FactorError("cannot factor the zero polynomial")
    if g.is_constant():
        return []
    K = g.field
    if isinstance(K, RationalField):
        out = []
        for part, mult in _yun_squarefree_qq(g):
            den = 1
            for x in part.c:
                den = den * x.denominator // math.gcd(den, x.denominator)
            zx = [int(x * den) for x in part.c]
            for fac in zassenhaus(zx):
                poly = UniPoly(QQ, [Fraction(x) for x in fac]).monic()
                out.append((poly, mult))
        return sorted(out, key=lambda fm: (fm[0].sort_key(), fm[1]))
    if rng is None:
        rng = random.Random(0)
    out = []
    for part, mult in squarefree_decomposition_fq(g):
        for fac in factor_fq_squarefree(part, rng):
            out.append((fac, mult))
    return sorted(out, key=lambda fm: (fm[0].sort_key(), fm[1]))


# ---------------------------------------------------------------------------
# truncated power series helpers (series in u, coefficients in a ring R)


def _raw_modulus(R):
    """Integer modulus when coefficients are plain ints, else None."""
    if isinstance(R, IntegersModPrimePower):
        return R.modulus_value
    if isinstance(R, PrimeField):
        return R.p
    return None


def _ser_trim(a, R, N):
    a = a[:N]
    return a


def _ser_add(a, b, R, N):
    n = min(max(len(a), len(b)), N)
    m = _raw_modulus(R)
    if m is not None:
        return [
            ((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % m
            for i in range(n)
        ]
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else R.zero
        y = b[i] if i < len(b) else R.zero
        out.append(R.add(x, y))
    return out


def _ser_sub(a, b, R, N):
    n = min(max(len(a), len(b)), N)
    m = _raw_modulus(R)
    if m is not None:
        return [
            ((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % m
            for i in range(n)
        ]
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else R.zero
        y = b[i] if i < len(b) else R.zero
        out.append(R.sub(x, y))
    return out


def _ser_mul(a, b, R, N):
    if not a or not b:
        return []
    n = min(len(a) + len(b) - 1, N)
    m = _raw_modulus(R)
    if m is not None:
        la, lb = len(a), len(b)
        out = []
        for k in range(n):
            acc = 0
            lo = k - lb + 1
            if lo < 0:
                lo = 0
            hi = k if k < la else la - 1
            for i in range(lo, hi + 1):
                acc += a[i] * b[k - i]
            out.append(acc % m)
        return out
    out = [R.zero] * n
    for i, x in enumerate(a):
        if i >= n:
            break
        if R.is_zero(x):
            continue
        top = min(len(b), n - i)
        for j in range(top):
            out[i + j] = R.add(out[i + j], R.mul(x, b[j]))
    return out


def _ser_neg(a, R):
    return [R.neg(x) for x in a]


def _ser_is_zero(a, R):
    return all(R.is_zero(x) for x in a)


def _ser_inv(a, R, N):
    """Multiplicative inverse of a series with unit constant term."""
    inv0 = R.inv(a[0])
    out = [inv0]
    for k in range(1, N):
        acc = R.zero
        for j in range(1, min(k, len(a) - 1) + 1):
            acc = R.add(acc, R.mul(a[j], out[k - j]))
        out.append(R.neg(R.mul(inv0, acc)))
    return out


def _sx_trim(A, R):
    while A and _ser_is_zero(A[-1], R):
        A.pop()
    return A


def _sx_mul(A, B, R, N):
    if not A or not B:
        return []
    out = [[] for _ in range(len(A) + len(B) - 1)]
    for i, a in enumerate(A):
        if _ser_is_zero(a, R):
            continue
        for j, b in enumerate(B):
            out[i + j] = _ser_add(out[i + j], _ser_mul(a, b, R, N), R, N)
    return _sx_trim(out, R)


def _sx_sub(A, B, R, N):
    n = max(len(A), len(B))
    out = []
    for i in range(n):
        a = A[i] if i < len(A) else []
        b = B[i] if i < len(B) else []
        out.append(_ser_sub(a, b, R, N))
    return _sx_trim(out, R)


def _sx_add(A, B, R, N):
    n = max(len(A), len(B))
    out = []
    for i in range(n):
        a = A[i] if i < len(A) else []
        b = B[i] if i < len(B) else []
        out.append(_ser_add(a, b, R, N), )
    return _sx_trim(out, R)


def _sx_is_monic(A, R):
    return bool(A) and A[-1] and A[-1][0] == R.one and _ser_is_zero(A[-1][1:], R)


def _sx_divmod(A, B, R, N):
    """Division in x by B monic in x; coefficients are u-series mod u^N."""
    A = [list(a) for a in A]
    db = len(B) - 1
    if len(A) - 1 < db:
        return [], _sx_trim(A, R)
    q = [[] for _ in range(len(A) - db)]
    for k in range(len(A) - db - 1, -1, -1):
        c = A[db + k]
        if _ser_is_zero(c, R):
            continue
        q[k] = c
        for j in range(db):
            A[j + k] = _ser_sub(A[j + k], _ser_mul(c, B[j], R, N), R, N)
        A[db + k] = []
    return _sx_trim(q, R), _sx_trim(A[:db], R)


def _sx_scale(A, s, R, N):
    return [_ser_mul(a, s, R, N) for a in A]


def _hensel_pair_series(F, G, H, S, T, R, N):
    """Lift F = G H from u-precision 1 to N; G, H monic in x.

    S, T are Bezout cofactors with S G + T H = 1 at u = 0.
    """
    k = 1
    while k < N:
        k2 = min(2 * k, N)
        E = _sx_sub(F, _sx_mul(G, H, R, k2), R, k2)
        if E:
            SE = _sx_mul(S, E, R, k2)
            _, Rr = _sx_divmod(SE, H, R, k2)
            num = _sx_sub(E, _sx_mul(G, Rr, R, k2), R, k2)
            DG, rem = _sx_divmod(num, H, R, k2)
            if rem:
                raise FactorError("series Hensel step lost exactness")
            G = _sx_add(G, DG, R, k2)
            H = _sx_add(H, Rr, R, k2)
        if k2 < N:
            b = _sx_sub(
                _sx_add(_sx_mul(S, G, R, k2), _sx_mul(T, H, R, k2), R, k2),
                [[R.one]],
                R,
                k2,
            )
            if b:
                Sb = _sx_mul(S, b, R, k2)
                _, rb = _sx_divmod(Sb, H, R, k2)
                S = _sx_sub(S, rb, R, k2)
                one_minus_SG = _sx_sub([[R.one]], _sx_mul(S, G, R, k2), R, k2)
                T, _ = _sx_divmod(one_minus_SG, H, R, k2)
        k = k2
    return G, H


def _bezout_series(g0, h0, R):
    """Bezout cofactors of coprime x-polys at u = 0 over the ring R."""
    if isinstance(R, IntegersModPrimePower):
        s, t = _bezout_zpk(
            [c % R.modulus_value for c in g0],
            [c % R.modulus_value for c in h0],
            R.p,
            R.modulus_value,
        )
        return [[x] for x in s], [[x] for x in t]
    gg = UniPoly(R, g0)
    hh = UniPoly(R, h0)
    d, s, t = uni_ext_gcd(gg, hh)
    if not d.is_one():
        raise FactorError("local factors are not coprime")
    return [[x] for x in s.c], [[x] for x in t.c]


def _hensel_multifactor_series(F, locals_, R, N):
    """Lift monic F (x-poly of u-series) = prod locals_ mod u to precision N."""
    if len(locals_) == 1:
        return [[_ser_trim(list(a), R, N) for a in F]]
    half = len(locals_) // 2
    left, right = locals_[:half], locals_[half:]
    g0 = [R.one]
    for v in left:
        g0 = _series_free_mul(g0, v, R)
    h0 = [R.one]
    for v in right:
        h0 = _series_free_mul(h0, v, R)
    S, T = _bezout_series(g0, h0, R)
    G, H = _hensel_pair_series(
        F, [[c] for c in g0], [[c] for c in h0], S, T, R, N
    )
    return _hensel_multifactor_series(G, left, R, N) + _hensel_multifactor_series(
        H, right, R, N
    )


def _series_free_mul(a, b, R):
    """Plain poly multiplication of coefficient lists over R."""
    out = [R.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not R.is_zero(x):
            for j, y in enumerate(b):
                out[i + j] = R.add(out[i + j], R.mul(x, y))
    return out


def hensel_lift_bivariate(
    F: BiPoly, t0, factors_at_t0, precision: int
) -> list[BiPoly]:
    """Lift a coprime monic factorization of F(x, t0) to (t - t0)^precision.

    The returned factors are monic in x over K[[t - t0]] mapped back to
    polynomials in t, truncated at the requested precision; their product
    is congruent to F scaled monic.
    """
    if precision < 1:
        raise FactorError("precision must be >= 1")
    K = F.field
    spec = F.eval_t(t0)
    if spec.degree != F.degree_x:
        raise FactorError("leading coefficient vanishes at the chosen point")
    if not uni_gcd(spec, spec.derivative()).is_constant():
        raise FactorError("specialization is not squarefree")
    prod = UniPoly.one(K)
    for g in factors_at_t0:
        prod = prod * g
    if prod != spec.monic():
        raise FactorError("given factors do not multiply to the specialization")
    shifted = F.shift_t(t0)
    lc_series = list(shifted.lc_x.c)
    inv_lc = _ser_inv(lc_series, K, precision)
    Fx = [
        _ser_mul(list(row.c), inv_lc, K, precision)
        for row in shifted.rows
    ]
    locals_ = [list(g.c) for g in factors_at_t0]
    lifted = _hensel_multifactor_series(Fx, locals_, K, precision)
    out = []
    for Lx in lifted:
        rows = [
            UniPoly(K, ser).taylor_shift(K.neg(t0))
            for ser in Lx
        ]
        out.append(BiPoly(K, rows))
    return out


# ---------------------------------------------------------------------------
# the factor set of the difference polynomial


@dataclass(frozen=True)
class FactorSet:
    """Irreducible factors of the difference polynomial of f.

    factors[i] are lc_x-monic-normalized irreducible BiPolys with
    factors[0] = x - t; monic_factors[i] = factors[i] / leading_coeffs[i].
    """

    f: RatFun
    nabla: BiPoly
    factors: tuple
    monic_factors: tuple
    leading_coeffs: tuple
    n: int

    @property
    def r(self) -> int:
        return len(self.factors)

    @property
    def field(self):
        return self.f.field

    def verify(self):
        K = self.field
        prod = BiPoly.from_unipoly_in_t(UniPoly.one(K))
        for G in self.factors:
            prod = prod * G
        if prod != self.nabla:
            raise FactorError("factor product does not recover the input")
        m = UniPoly.one(K)
        for mi in self.leading_coeffs:
            m = m * mi
        if m != self.f.den:
            raise FactorError("leading coefficients do not multiply to f_d")
        if sum(G.degree_x for G in self.factors) != self.n:
            raise FactorError("x-degrees do not sum to n")
        if sum(G.degree_t for G in self.factors) != self.n:
            raise FactorError("t-degrees do not sum to n")
        return True


def _eval_x_at_t(B: BiPoly) -> UniPoly:
    """B(t, t), the substitution x -> t."""
    K = B.field
    t = UniPoly.gen(K)
    acc = UniPoly.zero(K)
    power = UniPoly.one(K)
    for row in B.rows:
        acc = acc + row * power
        power = power * t
    return acc


def _factor_nabla_qq(nab1: BiPoly, rng: random.Random):
    """Irreducible factors over Q of the (x - t)-free part, unnormalized."""
    den = 1
    for row in nab1.rows:
        for x in row.c:
            den = den * x.denominator // math.gcd(den, x.denominator)
    zrows = [[int(x * den) for x in row.c] for row in nab1.rows]
    g = 0
    for row in zrows:
        for x in row:
            g = math.gcd(g, x)
        if g == 1:
            break
    if g > 1:
        zrows = [[x // g for x in row] for row in zrows]
    if zrows[-1][-1] < 0:
        zrows = [[-x for x in row] for row in zrows]
    dx = len(zrows) - 1
    dt = max(len(row) - 1 for row in zrows)
    lc_row = zrows[-1]

    def zrow_eval(row, a):
        acc = 0
        for c in reversed(row):
            acc = acc * a + c
        return acc

    t0 = None
    spec0 = None
    for cand in itertools.count(0):
        if zrow_eval(lc_row, cand) == 0:
            continue
        # the x-polynomial at t = cand
        spec = _zx_trim([zrow_eval(row, cand) for row in zrows])
        if len(spec) - 1 != dx:
            continue
        dspec = _zx_derivative(spec)
        if len(_zx_gcd(spec, dspec)) == 1:
            t0 = cand
            spec0 = spec
            break
    lc0 = spec0[-1]
    p = None
    for q in _primes():
        if q == 2 or lc0 % q == 0:
            continue
        Fp = PrimeField(q)
        sp = UniPoly(Fp, [x % q for x in spec0])
        if sp.degree != dx:
            continue
        if uni_gcd(sp, sp.derivative()).is_constant():
            p = q
            break
    Fp = PrimeField(p)
    locals_fp = factor_fq_squarefree(
        UniPoly(Fp, [x % p for x in spec0]).monic(), rng
    )
    if len(locals_fp) == 1:
        return [_zrows_to_bipoly(zrows)]
    hmax = max(max(abs(x) for x in row) for row in zrows if row)
    lmax = max(abs(x) for x in lc_row)
    dlc = len(lc_row) - 1
    N = dt + dlc + 1
    # rigorous coefficient bound for (f_d/m_S) * G_S via Mahler measure:
    # |G|_inf <= 2^(dx+dt) |F|_2 and the lc cofactor is a factor of f_d
    norm_f = math.isqrt((dx + 1) * (dt + 1)) + 1
    norm_lc = math.isqrt(dlc + 1) + 1
    bound = (
        ((1 << (dx + dt)) * norm_f * hmax)
        * ((1 << dlc) * norm_lc * lmax)
        * (dt + dlc + 1)
    )
    K_exp = 1
    while p ** K_exp <= 2 * bound:
        K_exp += 1
    while True:
        result = _recombine_qq(zrows, spec0, locals_fp, p, K_exp, t0, N, dx, bound)
        if result is not None:
            return result
        K_exp *= 2
        bound *= bound


def _zrows_to_bipoly(zrows) -> BiPoly:
    return BiPoly(
        QQ, [UniPoly(QQ, [Fraction(x) for x in row]) for row in zrows]
    )


def _zrows_shift_t(zrows, a):
    """Substitute t -> t + a on integer rows."""
    out = []
    for row in zrows:
        cs = list(row)
        n = len(cs)
        for i in range(n):
            for j in range(n - 2, i - 1, -1):
                cs[j] += a * cs[j + 1]
        out.append(cs)
    return out


def _recombine_qq(zrows, spec0, locals_fp, p, K_exp, t0, N, dx, bound):
    m = p ** K_exp
    R = IntegersModPrimePower(p, K_exp)
    shifted = _zrows_shift_t(zrows, t0)
    lc_series = [x % m for x in shifted[-1]]
    inv_lc = _ser_inv(lc_series, R, N)
    Fx = [_ser_mul([x % m for x in row], inv_lc, R, N) for row in shifted]
    # lift the specialization's factorization p-adically first, so the
    # u-adic start is exact over Z/p^K
    lc0_inv = pow(spec0[-1] % m, -1, m)
    spec_monic = [(x * lc0_inv) % m for x in spec0]
    locals_pk = _hensel_multifactor_zx(
        spec_monic, [[int(c) for c in v.c] for v in locals_fp], p, K_exp
    )
    lifted = _hensel_multifactor_series(Fx, locals_pk, R, N)

    def shift_back_mod(ser):
        """Taylor shift u -> t - t0 of one series, modulo p^K."""
        cs = [x % m for x in ser]
        n = len(cs)
        for i in range(n):
            for j in range(n - 2, i - 1, -1):
                cs[j] = (cs[j] - t0 * cs[j + 1]) % m
        return cs

    # size filter on one reconstructed coefficient: a candidate's
    # subleading x-coefficient is lc * (sum of local subleading series),
    # mapped back to t-coordinates; a true factor's centered lift is
    # bounded while junk looks uniform mod p^K
    sub_term = []
    for L in lifted:
        sub = L[-2] if len(L) >= 2 else []
        sub_term.append(shift_back_mod(_ser_mul(lc_series, sub, R, N)))

    def sub_small(subset):
        acc = [0] * N
        for i in subset:
            for j, v in enumerate(sub_term[i]):
                acc[j] += v
        return all(abs(_centered(v, m)) <= bound for v in acc)

    pool = list(range(len(lifted)))
    remaining = [list(r) for r in zrows]
    found = []
    size = 1
    while pool:
        if size > len(pool) // 2:
            # no factor is supported on at most half the pool, and factor
            # supports partition it, so the remainder is irreducible
            rem_pp = _zrows_primitive(remaining)
            if rem_pp is None or len(rem_pp) - 1 < 1:
                return None  # bound exhausted, caller retries
            found.append(rem_pp)
            remaining = [[1]]
            pool = []
            break
        progressed = False
        for subset in itertools.combinations(pool, size):
            if not sub_small(subset):
                continue
            cur = [lc_series]
            for i in subset:
                cur = _sx_mul(cur, lifted[i], R, N)
            cand_rows = [
                [_centered(x, m) for x in shift_back_mod(ser)] for ser in cur
            ]
            cand_rows = _zrows_primitive(cand_rows)
            if cand_rows is None:
                continue
            q = _zbipoly_divmod_exact(remaining, cand_rows)
            if q is not None:
                found.append(cand_rows)
                remaining = q
                pool = [i for i in pool if i not in subset]
                progressed = True
                break
        if not progressed:
            size += 1
    if _zrows_primitive(remaining) != [[1]]:
        return None
    return [_zrows_to_bipoly(rows) for rows in found]


def _zrows_primitive(rows):
    """Primitive part w.r.t. x: strip the Z[t] content, normalize the sign."""
    rows = [_zx_trim(list(r)) for r in rows]
    while rows and not rows[-1]:
        rows.pop()
    if not rows:
        return None
    cont = []
    for r in rows:
        if not r:
            continue
        cont = _zx_gcd(cont, r) if cont else _zx_primitive(r)
        if len(cont) == 1 and abs(cont[0]) == 1:
            break
    if len(cont) > 1:
        rows = [(_zx_divmod_exact(r, cont) if r else []) for r in rows]
    g = 0
    for row in rows:
        for x in row:
            g = math.gcd(g, x)
        if g == 1:
            break
    if g > 1:
        rows = [[x // g for x in row] for row in rows]
    if rows[-1][-1] < 0:
        rows = [[-x for x in row] for row in rows]
    return rows


def _zbipoly_divmod_exact(arows, brows):
    """Exact division of integer bivariate rows (x-major), else None.

    In an exact division every intermediate quantity stays within the
    dividend's t-degree, so any growth past it proves non-divisibility
    and aborts early (false candidates otherwise blow up quickly).
    """
    arows = [list(r) for r in arows]
    while arows and not _zx_trim(arows[-1]):
        arows.pop()
    db = len(brows) - 1
    if len(arows) - 1 < db:
        return None
    dt_cap = max((len(r) - 1 for r in arows if r), default=0)
    q = [[] for _ in range(len(arows) - db)]
    blc = brows[-1]
    for k in range(len(arows) - db - 1, -1, -1):
        lead = _zx_trim(list(arows[db + k]))
        if not lead:
            q[k] = []
            continue
        qk = _zx_divmod_exact(lead, blc)
        if qk is None:
            return None
        if len(qk) - 1 > dt_cap:
            return None
        q[k] = qk
        for j in range(db + 1):
            prod = _zx_mul(qk, brows[j])
            row = arows[j + k]
            n = max(len(row), len(prod))
            row += [0] * (n - len(row))
            for idx, v in enumerate(prod):
                row[idx] -= v
            arows[j + k] = _zx_trim(row)
            if len(arows[j + k]) - 1 > dt_cap:
                return None
    for j in range(db):
        if _zx_trim(list(arows[j])):
            return None
    return q


def _factor_nabla_fq(nab1: BiPoly, rng: random.Random):
    """Irreducible factors of the (x - t)-free part over a finite field."""
    K = nab1.field
    t0 = None
    ext_d = 1
    while t0 is None:
        if ext_d == 1:
            E, emb, nabE = K, (lambda a: a), nab1
        else:
            E = make_extension(K, ext_d)
            emb = embedding(K, E)
            nabE = nab1.map_coeffs(E, emb)
        for cand in E.elements():
            if E.is_zero(nabE.lc_x.evaluate(cand)):
                continue
            spec = nabE.eval_t(cand)
            if uni_gcd(spec, spec.derivative()).is_constant():
                t0 = cand
                break
        if t0 is None:
            ext_d += 1
    spec0 = nabE.eval_t(t0)
    locals_ = factor_fq_squarefree(spec0.monic(), rng)
    if len(locals_) == 1 and E == K:
        return [nab1]
    N = nabE.degree_t + nabE.lc_x.degree + 1
    shifted = nabE.shift_t(t0)
    lc_series = list(shifted.lc_x.c)
    inv_lc = _ser_inv(lc_series, E, N)
    Fx = [_ser_mul(list(row.c), inv_lc, E, N) for row in shifted.rows]
    lifted = _hensel_multifactor_series(
        Fx, [list(v.c) for v in locals_], E, N
    )
    back = None
    if E != K:
        if K.cardinality > 4096:
            raise FactorError("extension fallback needs a tiny base field")
        back = {}
        for a in K.elements():
            back[emb(a)] = a
    # constant-row filter: the x^0 row of a true candidate divides
    # gcd-corrected (x^0 row of the remaining target); precomputable per
    # local and combined by cheap truncated series products
    neg_t0 = E.neg(t0)
    const_series = [L[0] if L else [] for L in lifted]
    full_lc = nabE.lc_x

    def const_row_ok(subset, remaining_E):
        w_ser = lc_series
        for i in subset:
            if not const_series[i]:
                return True
            w_ser = _ser_mul(w_ser, const_series[i], E, N)
        w = UniPoly(E, w_ser).taylor_shift(neg_t0)
        if w.is_zero():
            return True
        rem0 = remaining_E.rows[0] if remaining_E.rows else UniPoly.zero(E)
        if rem0.is_zero():
            return True
        c2 = uni_gcd(w, full_lc)
        return ((rem0 * c2) % w).is_zero()

    pool = list(range(len(lifted)))
    remaining = nab1
    remaining_E = nabE
    found = []
    size = 1
    while pool:
        if size > len(pool) // 2:
            # factor supports partition the pool; none fits in half of
            # it, so the remainder is a single irreducible factor
            if remaining.degree_x < 1:
                raise FactorError("leftover constant after recombination")
            found.append(remaining.primitive_part_x())
            remaining = BiPoly.from_unipoly_in_t(UniPoly.one(K))
            pool = []
            break
        progressed = False
        for subset in itertools.combinations(pool, size):
            if not const_row_ok(subset, remaining_E):
                continue
            cur = [lc_series]
            for i in subset:
                cur = _sx_mul(cur, lifted[i], E, N)
            rows = [
                UniPoly(E, ser).taylor_shift(neg_t0) for ser in cur
            ]
            cand = BiPoly(E, rows)
            if cand.is_zero():
                continue
            cand = cand.primitive_part_x()
            if back is not None:
                coeffs_ok = all(
                    all(x in back for x in row.c) for row in cand.rows
                )
                if not coeffs_ok:
                    continue
                cand = cand.map_coeffs(K, lambda a: back[a])
            q = remaining.exact_div(cand)
            if q is not None and cand.degree_x >= 1:
                found.append(cand)
                remaining = q
                remaining_E = (
                    q if E == K else q.map_coeffs(E, emb)
                )
                pool = [i for i in pool if i not in subset]
                progressed = True
                break
        if not progressed:
            size += 1
    if remaining.degree_x != 0:
        raise FactorError("leftover factor after recombination")
    return found


def factor_nabla(f: RatFun, seed: int = 0) -> FactorSet:
    """Factor the difference polynomial of a prepared rational function.

    The first factor is always x - t; the rest are sorted by
    (deg_x, deg_t, coefficient order) and normalized so the leading
    coefficient in x is monic in K[t].
    """
    K = f.field
    rng = random.Random(seed)
    nab = build_nabla(f)
    n = f.degree
    xmt = BiPoly.x_minus_t(K)
    nab1 = nab.exact_div(xmt)
    if nab1 is None:
        raise FactorError("difference polynomial not divisible by x - t")
    if _eval_x_at_t(nab1).is_zero():
        raise FactorError(
            "difference polynomial has a repeated x - t factor; "
            "input was not prepared (membership polynomial inseparable)"
        )
    if nab1.degree_x == 0:
        factors = [xmt]
    else:
        if isinstance(K, RationalField):
            raw = _factor_nabla_qq(nab1, rng)
        else:
            raw = _factor_nabla_fq(nab1, rng)
        normalized = []
        for G in raw:
            lc = G.lc_x
            G = G.scale_const(K.inv(lc.lc))
            normalized.append(G)
        normalized.sort(key=lambda G: G.sort_key())
        factors = [xmt] + normalized
    monic_factors = []
    leading = []
    for G in factors:
        m = G.lc_x
        leading.append(m)
        monic_factors.append(RatPolyX.from_bipoly(G, m))
    fs = FactorSet(
        f=f,
        nabla=nab,
        factors=tuple(factors),
        monic_factors=tuple(monic_factors),
        leading_coeffs=tuple(leading),
        n=n,
    )
    fs.verify()
    return fs
