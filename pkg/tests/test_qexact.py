from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from commlie.qexact import (
    ModeMismatch,
    QRing,
    USeries,
    euler_sum,
    evaluate,
    parse_poly,
    pochhammer,
    render,
    series_mul,
    series_pow,
    series_recip,
)

SYM = QRing()


def test_pochhammer_examples():
    assert pochhammer(1, 1, 2, QRing(2)) == Fraction(3, 8)
    for d in (1, 2, 3):
        for sign in (1, -1):
            assert pochhammer(d, sign, 0, SYM) == SYM.one
    assert render(pochhammer(1, -1, 1, SYM)) == "(q + 1)/(q)"


def test_euler_sum_examples():
    q = SYM.q
    s = euler_sum(1, SYM.one, (1, 1), 1, SYM)
    assert s[0] == 1 and s[1] == 1 / (1 - 1 / q)
    for scale in (SYM.one, q, 5 * q):
        assert euler_sum(2, scale, (1, 1), 1, SYM).coeffs == [SYM.one, SYM.zero]
    r2 = QRing(2)
    # the m-th coefficient is q^m / (1/q)_m, evaluated directly
    direct = [Fraction(2) ** m / pochhammer(1, 1, m, r2) for m in range(3)]
    assert euler_sum(1, r2.coerce(2), (1, 1), 2, r2).coeffs == direct == [1, 4, Fraction(32, 3)]


def test_series_examples():
    for ring in (QRing(3), SYM):
        n = 6
        one_minus_u = USeries(ring, [ring.one, -ring.one] + [ring.zero] * (n - 1))
        geometric = USeries(ring, [ring.one] * (n + 1))
        assert series_mul(one_minus_u, geometric) == USeries.one(ring, n)
        assert series_pow(geometric, 0) == USeries.one(ring, n)
    q = SYM.q
    s = USeries(SYM, [SYM.one, -q, SYM.zero])
    assert series_recip(s).coeffs == [SYM.one, q, q ** 2]


def test_euler_identity_against_finite_product():
    # sum_m u^m/(1/q)_m versus prod_{l<=L} 1/(1-u/q^l); the tail only touches q^-(L+1) terms
    for n in (4, 8, 12):
        L = n + 2
        r = QRing(2)
        lhs = euler_sum(1, r.one, (1, 1), n, r)
        rhs = USeries.one(r, n)
        for l in range(L + 1):
            rhs = rhs * USeries(r, [r.one, -Fraction(1, 2 ** l)] + [r.zero] * (n - 1)).recip()
        for k in range(n + 1):
            assert abs(lhs[k] - rhs[k]) <= Fraction(4 ** k, 2 ** (L + 1))
    # symbolically the difference at u^1 is exactly the tail sum_{l > L} q^-l
    n, L = 3, 5
    lhs = euler_sum(1, SYM.one, (1, 1), n, SYM)
    rhs = USeries.one(SYM, n)
    for l in range(L + 1):
        rhs = rhs * USeries(SYM, [SYM.one, -1 / SYM.q ** l] + [SYM.zero] * (n - 1)).recip()
    assert lhs[1] - rhs[1] == (1 / SYM.q ** (L + 1)) / (1 - 1 / SYM.q)


def test_symbolic_coefficients_evaluate_to_numeric():
    for at in (2, 3, 4, 5):
        sym = euler_sum(1, SYM.q, (2, -1), 5, SYM)
        num = euler_sum(1, QRing(at).coerce(at), (2, -1), 5, QRing(at))
        assert [evaluate(c, at) for c in sym.coeffs] == num.coeffs


def test_log_exp_roundtrip_and_fractional_power():
    r = QRing(3)
    s = USeries(r, [r.one, Fraction(2), Fraction(-1, 3), Fraction(5), Fraction(0), Fraction(7)])
    assert s.log().exp() == s
    assert s.power(Fraction(1, 2)) ** 2 == s
    assert s.power(3) == s ** 3


def test_mode_mismatch():
    with pytest.raises(ModeMismatch):
        USeries.one(QRing(2), 3) + USeries.one(QRing(3), 3)
    with pytest.raises(ModeMismatch):
        USeries.one(QRing(2), 3) + USeries.one(QRing(2), 4)


def test_render_and_parse_roundtrip():
    q = SYM.q
    g2 = q ** 6 + q ** 5 - q ** 3
    assert render(g2) == "q^6 + q^5 - q^3"
    assert render(2 * q ** 3 - q + 1) == "2*q^3 - q + 1"
    assert parse_poly("q^6 + q^5 - q^3") == g2
    assert render(SYM.zero) == "0"


def test_symbolic_normal_form():
    q = SYM.q
    x = (q ** 2 - 1) / (2 * q - 2)
    assert render(x) == "(q + 1)/(2)"
    y = (1 - q) / (1 - q ** 2)
    assert render(y) == "(1)/(q + 1)"


small = st.fractions(min_value=-5, max_value=5, max_denominator=6)
series = st.lists(small, min_size=5, max_size=5)


@settings(max_examples=60)
@given(series, series, series)
def test_ring_axioms(a, b, c):
    r = QRing(2)
    a, b, c = (USeries(r, [Fraction(x) for x in v]) for v in (a, b, c))
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    if a[0] != 0:
        assert a * a.recip() == USeries.one(r, 4)
