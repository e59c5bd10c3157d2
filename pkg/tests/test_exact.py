from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cohrank.errors import EndpointIsRoot
from cohrank.exact import (
    AlgReal,
    Poly,
    algreal_compare,
    as_rat,
    format_decimal,
    is_real_rooted,
    is_root,
    isolate_real_roots,
    mobius,
    poly_eval,
    sign_at,
    squarefree_decomposition,
    sturm_count,
    taylor_shift,
)

from oracle import ev, sqrt2_bracket_ok

X2M2 = Poly([-2, 0, 1])


def sqrt2():
    return isolate_real_roots(X2M2)[0][0]


class TestPoly:
    def test_normalizes_trailing_zeros(self):
        assert Poly([1, 2, 0, 0]).coeffs == (1, 2)
        assert Poly([0, 0]).degree == -1
        assert not Poly()

    def test_arithmetic(self):
        p, q = Poly([1, 1]), Poly([-1, 1])
        assert p * q == X2M2 + 1
        assert (p**3).coeffs == (1, 3, 3, 1)
        assert divmod(p**3, q) == (Poly([7, 4, 1]), Poly.const(8))
        assert (p - p).degree == -1

    def test_floats_rejected(self):
        with pytest.raises(TypeError):
            as_rat(0.5)
        with pytest.raises(TypeError):
            Poly([0.5])

    def test_format(self):
        assert Poly([3, -8, 6]).format() == "6*x^2 - 8*x + 3"
        assert str(Poly([0, -1])) == "-x"
        assert str(Poly()) == "0"

    def test_order_at(self):
        p = Poly.from_roots([1, 1, 1, 2])
        assert p.order_at(1) == 3
        assert p.order_at(2) == 1
        assert p.order_at(0) == 0
        assert Poly().order_at(5) == float("inf")


class TestPolyEval:
    def test_zero_polynomial(self):
        assert poly_eval(Poly(), 5) == 0

    def test_quadratic(self):
        assert poly_eval(X2M2, F(3, 2)) == F(1, 4)

    def test_gv_hilbert_polynomial(self):
        chi = Poly([1]) + Poly([-1, 1]) * 4 + Poly([-1, 1]) ** 2 * 6
        assert chi == Poly([3, -8, 6])
        assert poly_eval(chi, 2) == 11


class TestTaylorShift:
    def test_binomial(self):
        assert taylor_shift(Poly.monomial(4), 1) == Poly([1, 4, 6, 4, 1])

    def test_identity(self):
        p = Poly([F(1, 3), -2, 5])
        assert taylor_shift(p, 0) == p

    def test_hand_expansion(self):
        assert taylor_shift(X2M2, 1) == Poly([-1, 2, 1])


class TestSturm:
    def test_counts(self):
        assert sturm_count(X2M2, 0, 2) == 1
        assert sturm_count(Poly([1, 0, 1]), -10, 10) == 0
        assert sturm_count(Poly([-1, 1]) ** 3, 0, 2) == 1

    def test_endpoint_root(self):
        with pytest.raises(EndpointIsRoot):
            sturm_count(Poly([-1, 1]), 1, 2)

    def test_bad_interval(self):
        with pytest.raises(ValueError):
            sturm_count(X2M2, 2, 0)
        with pytest.raises(ValueError):
            sturm_count(Poly(), 0, 1)

    def test_many_close_roots(self):
        p = Poly.from_roots([F(k, 100) for k in range(10)])
        assert sturm_count(p, F(-1, 200), F(1, 10)) == 10


class TestSquarefree:
    def test_yun(self):
        p = Poly.from_roots([1, 1, 1, 2, 3, 3]) * 5
        dec = dict((m, f) for f, m in squarefree_decomposition(p))
        assert dec == {1: Poly.from_roots([2]), 2: Poly.from_roots([3]), 3: Poly.from_roots([1])}


class TestIsolation:
    def test_sqrt2(self):
        roots = isolate_real_roots(X2M2)
        assert [m for _, m in roots] == [1, 1]
        (a, _), (b, _) = roots
        assert sqrt2_bracket_ok(a.lo, a.hi)
        assert sqrt2_bracket_ok(-b.hi, -b.lo)
        assert a.hi <= b.lo or b.hi <= a.lo

    def test_double_root(self):
        roots = isolate_real_roots(Poly([1, -2, 1]))
        assert len(roots) == 1
        assert roots[0][0] == 1 and roots[0][1] == 2

    def test_no_real_roots(self):
        assert isolate_real_roots(Poly([1, 0, 1])) == []

    def test_mixed(self):
        p = Poly([-2, 0, 0, 1]) * X2M2 * Poly.from_roots([F(1, 3), F(1, 3)])
        roots = isolate_real_roots(p)
        # sqrt 2, cube root of 2, 1/3 twice, -sqrt 2
        assert [m for _, m in roots] == [1, 1, 2, 1]
        vals = [float(r) for r, _ in roots]
        assert vals == sorted(vals, reverse=True)
        assert roots[2][0] == F(1, 3)
        assert abs(vals[1] - 2 ** (1 / 3)) < 1e-12

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            isolate_real_roots(Poly())

    def test_real_rooted(self):
        assert is_real_rooted(X2M2)
        assert not is_real_rooted(Poly([1, 0, 1]))
        assert is_real_rooted(Poly.from_roots([1, 1, -3]))

    def test_refine_to(self):
        r = sqrt2().refine_to(F(1, 10**9))
        assert r.width < F(1, 10**9)
        assert sqrt2_bracket_ok(r.lo, r.hi)


class TestAlgReal:
    def test_compare_rational(self):
        assert algreal_compare(sqrt2(), F(3, 2)) == -1
        assert sqrt2() < F(3, 2)
        assert sqrt2() > F(7, 5)

    def test_equal_with_different_intervals(self):
        a = AlgReal(X2M2, 1, 2)
        b = AlgReal(X2M2, F(7, 5), F(3, 2))
        assert algreal_compare(a, b) == 0

    def test_equal_with_different_polynomials(self):
        a = AlgReal(X2M2, 1, 2)
        b = AlgReal(X2M2 * Poly([-3, 0, 1]), F(7, 5), F(3, 2))
        assert a == b
        assert a != AlgReal(Poly([-3, 0, 1]), 1, 2)

    def test_negative(self):
        assert algreal_compare(-sqrt2(), 0) == -1

    def test_bad_interval(self):
        with pytest.raises(ValueError):
            AlgReal(X2M2, -2, 2)
        with pytest.raises(ValueError):
            AlgReal(Poly([-1, 1]) ** 2, 0, 2)

    def test_rational_embedding(self):
        q = AlgReal.rational(F(2, 3))
        assert q.poly == Poly([F(-2, 3), 1]) and q.lo == q.hi == F(2, 3)
        assert q.exact_rational() == F(2, 3)

    def test_hidden_rational_detected(self):
        r = isolate_real_roots(Poly.from_roots([F(2, 3), F(-5, 7)]) * 21)
        assert r[0][0].is_rational and r[0][0] == F(2, 3)

    def test_decimal(self):
        assert sqrt2().decimal() == "1.414213562373"
        assert sqrt2().decimal(3) == "1.414"
        assert format_decimal(F(1, 3)) == "0.333333333333"
        assert format_decimal(F(5, 2), 0) == "2"
        assert format_decimal(F(-1, 8), 2) == "-0.12"

    def test_sign_and_roots(self):
        s = sqrt2()
        assert sign_at(Poly([-3, 0, 1]), s) == -1
        assert sign_at(Poly([-1, 0, 1]), s) == 1
        assert is_root(X2M2**2, s)
        assert (X2M2**2 * Poly([1, 1])).order_at(s) == 2

    def test_mobius(self):
        s = sqrt2()
        t = mobius(-s, 1, 0, -1, 1)  # y / (1 - y)
        assert t.decimal(9) == "-0.585786438"
        with pytest.raises(ValueError):
            mobius(s, 1, 0, -1, 1)
        with pytest.raises(ZeroDivisionError):
            mobius(AlgReal.rational(1), 1, 0, -1, 1)
        assert mobius(s, 2, 0, 0, 1) == mobius(s, 1, 0, 0, F(1, 2))


# properties

small_rats = st.fractions(min_value=-20, max_value=20, max_denominator=12)
polys = st.lists(small_rats, min_size=1, max_size=6).map(Poly)


@settings(max_examples=60, deadline=None)
@given(polys, small_rats)
def test_taylor_shift_roundtrip(p, c):
    assert taylor_shift(taylor_shift(p, c), -c) == p


@settings(max_examples=60, deadline=None)
@given(polys, small_rats)
def test_taylor_shift_matches_evaluation(p, c):
    q = taylor_shift(p, c)
    for y in (F(0), F(1, 2), F(-3)):
        assert q(y) == ev(p.coeffs, c + y)


int_roots = st.lists(st.integers(-6, 6), min_size=1, max_size=5)


@settings(max_examples=60, deadline=None)
@given(int_roots, st.lists(st.integers(2, 7), max_size=2))
def test_isolation_multiplicities(roots, no_real):
    """Roots of prod (x - r) * prod (x^2 + n): multiplicities add up iff no quadratic factors."""
    p = Poly.from_roots(roots)
    for n in no_real:
        p = p * Poly([n, 0, 1])
    iso = isolate_real_roots(p)
    total = sum(m for _, m in iso)
    assert total <= p.degree
    assert (total == p.degree) == is_real_rooted(p) == (not no_real)
    assert [r.lo for r, _ in iso] == sorted(set(roots), reverse=True)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(2, 30), min_size=1, max_size=3, unique=True))
def test_isolating_intervals_are_isolating(ns):
    """For products of x^2 - n (n not square) every interval holds exactly one root."""
    p = Poly([1])
    for n in ns:
        p = p * Poly([-n, 0, 1])
    s = p.squarefree_part()
    iso = isolate_real_roots(p)
    for r, _ in iso:
        if not r.is_rational:
            assert sturm_count(s, r.lo, r.hi) == 1
    for (a, _), (b, _) in zip(iso, iso[1:]):
        assert a.lo >= b.hi


def _alg_strategy():
    # roots of degree <= 4 polynomials with small integer roots or quadratic irrationals
    return st.sampled_from([
        Poly([-2, 0, 1]), Poly([-3, 0, 1]), Poly([-1, -1, 1]), Poly([-5, 0, 0, 0, 1]),
        Poly([-2, 0, 0, 1]), Poly([1, -4, 0, 1]), Poly.from_roots([F(1, 2), F(7, 5)]),
    ]).flatmap(lambda p: st.sampled_from([r for r, _ in isolate_real_roots(p)]))


@settings(max_examples=60, deadline=None)
@given(_alg_strategy(), _alg_strategy(), _alg_strategy())
def test_compare_is_a_total_order(a, b, c):
    assert algreal_compare(a, b) == -algreal_compare(b, a)
    assert algreal_compare(a, a) == 0
    if algreal_compare(a, b) <= 0 and algreal_compare(b, c) <= 0:
        assert algreal_compare(a, c) <= 0
    assert (algreal_compare(a, b) < 0) == (float(a) < float(b)) or abs(float(a) - float(b)) < 1e-12
