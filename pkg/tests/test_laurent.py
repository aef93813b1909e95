import pytest

from gluedknots.laurent import LaurentPoly, substitute_half_var


def test_basic_arithmetic():
    t = LaurentPoly.var()          # q
    one = LaurentPoly.one()
    p = (t + one) * (t - one)
    assert p == t * t - one
    assert (p - p).is_zero()
    assert -p == LaurentPoly.zero() - p


def test_negative_exponents_and_mirror():
    t = LaurentPoly.var()
    tinv = LaurentPoly({-2: 1})
    assert t * tinv == LaurentPoly.one()
    p = 3 * t + tinv
    assert p.mirror() == 3 * tinv + t


def test_power_and_shift():
    t = LaurentPoly.var()
    assert t ** 5 == LaurentPoly({10: 1})
    assert (t ** 0) == LaurentPoly.one()
    assert LaurentPoly({2: 1, 0: 1}).shift(-2) == LaurentPoly({0: 1, -2: 1})
    assert (-t) ** 3 == LaurentPoly({6: -1})


def test_exact_division():
    t = LaurentPoly.var()
    one = LaurentPoly.one()
    num = t ** 4 - one
    den = t ** 2 - one
    assert num.exact_div(den) == t ** 2 + one
    with pytest.raises(ValueError):
        (t ** 2 + one).exact_div(t + one)


def test_half_exponent_text_form():
    p = LaurentPoly({-8: -1, -6: 1, -2: 1})    # -q^-4 + q^-3 + q^-1
    assert p.to_text() == "-1*q^(-4) + 1*q^(-3) + 1*q^(-1)"
    h = LaurentPoly({1: -1, 5: -1})            # -q^(1/2) - q^(5/2)
    assert h.to_text() == "-1*q^(1/2) + -1*q^(5/2)"
    assert LaurentPoly.zero().to_text() == "0"
    assert LaurentPoly.const(7).to_text() == "7"


def test_scale_exponents():
    p = LaurentPoly({8: 1, -4: 2})
    q = p.scale_exponents(-1, 4)
    assert q == LaurentPoly({-2: 1, 1: 2})
    with pytest.raises(ValueError):
        LaurentPoly({2: 1}).scale_exponents(-1, 4)


def test_substitute_half_var():
    # z -> t^(1/2) - t^(-1/2): z^2 + 1 becomes t - 1 + 1/t
    z2p1 = LaurentPoly({4: 1, 0: 1})
    z_val = LaurentPoly({1: 1, -1: -1})
    got = substitute_half_var(z2p1, z_val)
    assert got == LaurentPoly({2: 1, 0: -1, -2: 1})


def test_evaluate_int():
    p = LaurentPoly({2: 1, 0: -1, -2: 1})      # t - 1 + 1/t
    assert p.evaluate_int(-1) == -3
    assert p.evaluate_int(1) == 1


def test_degree_span():
    p = LaurentPoly({-8: -1, -6: 1, -2: 1})
    assert p.degree() == -1
    assert p.span() == 3
    assert LaurentPoly.zero().span() == 0
