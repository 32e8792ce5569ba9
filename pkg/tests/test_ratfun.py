import pytest
from hypothesis import given, settings, strategies as st

from ratdec.fields import QQ, PrimeField
from ratdec.poly import RatFun, UniPoly, parse_bipoly, parse_ratfun, parse_ratpolyx
from ratdec.ratfun import (
    DecompositionError,
    PreparedInput,
    Unit,
    build_nabla,
    build_phi,
    compose,
    compose_chain,
    normal_form,
    prepare,
    reduced_derivative_is_zero,
)

F2 = PrimeField(2)
F5 = PrimeField(5)


def rf(text, K=QQ):
    return parse_ratfun(text, K)


def test_compose_basic():
    assert compose(rf("t^2"), rf("t^3")) == rf("t^6")
    assert compose(rf("(t^3-1)/(t^2+t)"), rf("t^4")) == rf("(t^12-1)/(t^8+t^4)")
    f = compose_chain([rf("t^2"), rf("(t^3-1)/(t^2+t)"), rf("t^2"), rf("t^2")])
    assert f == rf("(t^24-2*t^12+1)/(t^16+2*t^12+t^8)")
    with pytest.raises(DecompositionError):
        compose(rf("t^2"), rf("3"))


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_compose_degree_multiplicative(data):
    from hypothesis import assume

    K = data.draw(st.sampled_from([QQ, F5]))

    def rand_ratfun():
        num = [K.of(data.draw(st.integers(-3, 3))) for _ in range(4)]
        den = [K.of(data.draw(st.integers(-3, 3))) for _ in range(3)]
        p, q = UniPoly(K, num), UniPoly(K, den)
        assume(not q.is_zero() and not p.is_zero())
        f = RatFun.make(p, q)
        assume(not f.is_constant())
        return f

    g, h = rand_ratfun(), rand_ratfun()
    assert compose(g, h).degree == g.degree * h.degree


def test_normal_form_examples():
    nf, u = normal_form(rf("2*t^2+3"))
    assert nf == rf("t^2")
    assert u.apply(rf("2*t^2+3")) == nf

    nf, _ = normal_form(rf("1/t"))
    assert nf == rf("t")

    nf, _ = normal_form(rf("t/(t^2+1)"))
    assert nf == rf("t/(t^2+1)")


def test_normal_form_large_over_small_with_vanishing_q0():
    # (t^2+1)/t: direct entry to the big/small branch with q(0) = 0
    nf, u = normal_form(rf("(t^2+1)/t"))
    assert nf == rf("t/(t^2+1)")
    assert u.apply(rf("(t^2+1)/t")) == nf


def test_normal_form_worked_example_generator():
    c = rf("(t^12-1)/(t^8+t^4)")
    nf, _ = normal_form(c)
    assert nf == rf("(t^8+t^4)/(t^12-1)")


def test_normal_form_idempotent_and_unit_invariant():
    samples = [
        rf("t^2"),
        rf("(t^3-1)/(t^2+t)"),
        rf("(t^24-2*t^12+1)/(t^16+2*t^12+t^8)"),
        rf("(3*t^5+t)/(t^2-2)"),
    ]
    units = [
        Unit.identity(QQ),
        Unit.reciprocal(QQ),
        Unit(QQ, QQ.of(2), QQ.of(3), QQ.of(1), QQ.of(-1)),
        Unit(QQ, QQ.of(1), QQ.of(-5), QQ.of(0), QQ.of(7)),
    ]
    for f in samples:
        nf, u = normal_form(f)
        assert u.apply(f) == nf
        nf2, u2 = normal_form(nf)
        assert nf2 == nf and u2.is_identity()
        for unit in units:
            g = unit.apply(f)
            if g.is_constant():
                continue
            assert normal_form(g)[0] == nf


def test_unit_algebra():
    u = Unit(QQ, QQ.of(2), QQ.of(3), QQ.of(1), QQ.of(-1))
    v = u.inverse()
    w = u.compose(v)
    assert w.is_identity()
    f = rf("t^3+t")
    assert v.apply(u.apply(f)) == f
    with pytest.raises(DecompositionError):
        Unit(QQ, QQ.of(1), QQ.of(2), QQ.of(2), QQ.of(4))


def test_build_nabla_phi():
    f = rf("t^2")
    assert build_nabla(f) == parse_bipoly("x^2-t^2", QQ)
    phi = build_phi(f)
    assert phi == parse_ratpolyx("x^2-t^2", QQ)

    f = rf("(t^2+1)/t")
    nab = build_nabla(f)
    assert nab == parse_bipoly("(x^2+1)*t-(t^2+1)*x", QQ)
    assert nab.swap_vars() == -nab  # antisymmetry

    nab4 = build_nabla(rf("t^4"))
    assert nab4.exact_div(parse_bipoly("x-t", QQ)) is not None

    # phi equals nabla divided by fd(t), coefficient-wise
    f = rf("(t^24-2*t^12+1)/(t^16+2*t^12+t^8)")
    nab = build_nabla(f)
    phi = build_phi(f)
    cleared, l = phi.to_bipoly_cleared()
    assert l == f.den
    assert cleared == nab


def test_prepare_char0():
    f = rf("(t^24-2*t^12+1)/(t^16+2*t^12+t^8)")
    prep = prepare(f)
    assert prep.frobenius_exponent == 0
    assert prep.working == f
    assert prep.working.num.degree > prep.working.den.degree
    # left unit maps the original onto the working form
    assert prep.left_unit.apply(f) == prep.working


def test_prepare_reciprocal_branch():
    f = rf("t/(t^2+1)")
    prep = prepare(f)
    assert prep.working == rf("(t^2+1)/t")
    assert prep.working.num.degree > prep.working.den.degree


def test_prepare_frobenius_examples():
    f = parse_ratfun("t^4", F2)
    prep = prepare(f)
    assert prep.frobenius_exponent == 2
    assert prep.working == parse_ratfun("t", F2)

    f = parse_ratfun("t^6+t^2", F2)
    assert reduced_derivative_is_zero(f)
    prep = prepare(f)
    assert prep.frobenius_exponent == 1
    assert prep.working == parse_ratfun("t^3+t", F2)


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_separability_iff_derivative_nonzero(data):
    K = F5
    num = [K.of(data.draw(st.integers(0, 4))) for _ in range(6)]
    den = [K.of(data.draw(st.integers(0, 4))) for _ in range(3)]
    p, q = UniPoly(K, num), UniPoly(K, den)
    if p.is_zero() or q.is_zero():
        return
    f = RatFun.make(p, q)
    if f.is_constant():
        return
    # f' = 0 iff both parts lie in K[t^5] for the reduced fraction
    expect = all(i % 5 == 0 or K.is_zero(c) for i, c in enumerate(f.num.c)) and \
        all(i % 5 == 0 or K.is_zero(c) for i, c in enumerate(f.den.c))
    assert reduced_derivative_is_zero(f) == expect
