import random
from fractions import Fraction

import pytest

from ratdec.factor import (
    FactorError,
    FactorSet,
    factor_fq_squarefree,
    factor_nabla,
    factor_univariate,
    hensel_lift_bivariate,
    is_irreducible_fq,
    squarefree_decomposition_fq,
    zassenhaus,
)
from ratdec.fields import QQ, ExtensionField, PrimeField
from ratdec.poly import BiPoly, UniPoly, parse_bipoly, parse_ratfun, parse_ratpolyx, parse_unipoly
from ratdec.ratfun import prepare

F2 = PrimeField(2)
F5 = PrimeField(5)


def up(text, K=QQ):
    return parse_unipoly(text, K)


def test_factor_univariate_f5():
    # every nonzero residue mod 5 is a 4th root of 1
    facs = factor_univariate(up("t^4-1", F5))
    polys = {f for f, m in facs}
    assert polys == {up("t-1", F5), up("t-2", F5), up("t-3", F5), up("t-4", F5)}
    assert all(m == 1 for _, m in facs)
    for f, _ in facs:
        root = F5.neg(f.c[0])
        assert F5.is_zero(up("t^4-1", F5).evaluate(root))


def test_factor_univariate_qq_cyclotomic():
    facs = factor_univariate(up("t^4-1"))
    polys = {f for f, m in facs}
    assert polys == {up("t-1"), up("t+1"), up("t^2+1")}


def _brute_force_irreducible_z(coeffs, max_deg):
    """Landau-Mignotte style exhaustive check for monic integer factors."""
    import math
    n = len(coeffs) - 1
    bound = (math.isqrt(n + 1) + 1) * (1 << n) * max(abs(c) for c in coeffs)
    from ratdec.factor import _zx_divmod_exact
    import itertools
    for d in range(1, max_deg + 1):
        for tail in itertools.product(range(-bound, bound + 1), repeat=d):
            cand = list(tail) + [1]
            if _zx_divmod_exact(list(coeffs), cand) is not None:
                return False
    return True


def test_factor_univariate_qq_irreducible():
    # oracle first: no monic integer factor of degree <= 2 divides t^4 + 1
    assert _brute_force_irreducible_z([1, 0, 0, 0, 1], 2)
    facs = factor_univariate(up("t^4+1"))
    assert facs == [(up("t^4+1"), 1)]


def test_factor_univariate_multiplicity():
    facs = factor_univariate(up("(t-1)^2*(t+2)"))
    assert facs == [(up("t-1"), 2), (up("t+2"), 1)]


def test_squarefree_char_p():
    f = up("t^10+t^5", F5)  # (t^2 + t)^5
    parts = squarefree_decomposition_fq(f)
    assert parts == [(up("t^2+t", F5), 5)]


def test_factor_fq_pth_power():
    facs = factor_univariate(up("t^10+t^5", F5))
    assert facs == [(up("t", F5), 5), (up("t+1", F5), 5)]


def test_is_irreducible_fq():
    assert is_irreducible_fq(up("t^2+1", PrimeField(3)))
    assert not is_irreducible_fq(up("t^2-1", PrimeField(3)))
    F4 = ExtensionField(2, (1, 1, 1))
    y = F4.gen
    # t^2 + t + y is irreducible over F_4
    assert is_irreducible_fq(UniPoly(F4, (y, F4.one, F4.one)))


def test_zassenhaus_seed_stability():
    a = zassenhaus([-1, 0, 0, 0, 0, 0, 1])  # t^6 - 1
    b = zassenhaus([-1, 0, 0, 0, 0, 0, 1])
    assert a == b
    prod_deg = sum(len(f) - 1 for f in a)
    assert prod_deg == 6 and len(a) == 4


def test_hensel_lift_bivariate_examples():
    F = parse_bipoly("x^2-t^2", QQ)
    lifted = hensel_lift_bivariate(
        F, QQ.of(1), [up("t-1"), up("t+1")], 2
    )
    assert set(lifted) == {
        parse_bipoly("x-t", QQ), parse_bipoly("x+t", QQ)
    }
    # precision 1 returns the inputs unchanged (as bivariate constants in t)
    lifted1 = hensel_lift_bivariate(F, QQ.of(1), [up("t-1"), up("t+1")], 1)
    assert set(lifted1) == {
        parse_bipoly("x-1", QQ), parse_bipoly("x+1", QQ)
    }
    with pytest.raises(FactorError):
        hensel_lift_bivariate(F, QQ.zero, [up("t"), up("t")], 2)


def test_factor_nabla_squares():
    f = parse_ratfun("t^2", QQ)
    fs = factor_nabla(prepare(f).working)
    assert [str(g) for g in fs.factors] == ["x-t", "x+t"]
    assert fs.verify()


def test_factor_nabla_t4():
    fs = factor_nabla(parse_ratfun("t^4", QQ))
    assert len(fs.factors) == 3
    assert fs.factors[0] == parse_bipoly("x-t", QQ)
    assert set(fs.factors[1:]) == {
        parse_bipoly("x+t", QQ), parse_bipoly("x^2+t^2", QQ)
    }
    assert fs.verify()


def test_factor_nabla_worked_example():
    f = parse_ratfun("(t^24-2*t^12+1)/(t^16+2*t^12+t^8)", QQ)
    fs = factor_nabla(f)
    assert fs.r == 8
    expected_monic = {
        parse_ratpolyx("x-t", QQ),
        parse_ratpolyx("x+t", QQ),
        parse_ratpolyx("x+1/t", QQ),
        parse_ratpolyx("x-1/t", QQ),
        parse_ratpolyx("x^2+t^2", QQ),
        parse_ratpolyx("x^2+1/t^2", QQ),
        parse_ratpolyx("x^8+((t^8+1)/(t^4*(t^4+1)))*x^4+1/t^4", QQ),
        parse_ratpolyx("x^8+((t^8+1)/(t^4+1))*x^4+t^4", QQ),
    }
    assert set(fs.monic_factors) == expected_monic
    assert fs.verify()
    # Remark-style identities
    prod_m = UniPoly.one(QQ)
    for m in fs.leading_coeffs:
        prod_m = prod_m * m
    assert prod_m == f.den
    assert sum(g.degree_t for g in fs.factors) == 24
    assert sum(g.degree_x for g in fs.factors) == 24


def test_factor_nabla_over_f101():
    K = PrimeField(101)
    f = parse_ratfun("t^4", K)
    fs = factor_nabla(f)
    assert fs.verify()
    assert fs.factors[0] == BiPoly.x_minus_t(K)


def test_factor_nabla_tiny_field_extension_point():
    # over F_2, t^3 + t is separable; evaluation points are scarce
    K = F2
    f = parse_ratfun("t^3+t", K)
    fs = factor_nabla(f)
    assert fs.verify()
    assert sum(g.degree_x for g in fs.factors) == 3


def test_factor_nabla_seed_determinism():
    f = parse_ratfun("t^6", QQ)
    a = factor_nabla(f, seed=7)
    b = factor_nabla(f, seed=7)
    assert a.factors == b.factors
    c = factor_nabla(f, seed=123)
    assert a.factors == c.factors  # canonical sort makes order seed-free


def test_factor_nabla_t6_factors():
    fs = factor_nabla(parse_ratfun("t^6", QQ))
    assert set(fs.factors) == {
        parse_bipoly("x-t", QQ),
        parse_bipoly("x+t", QQ),
        parse_bipoly("x^2+x*t+t^2", QQ),
        parse_bipoly("x^2-x*t+t^2", QQ),
    }
