# tests/test_exactnum.py
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings

from models.exactnum import (
    ArithOp,
    QPoly,
    QRatFunc,
    as_rational,
    eval_at_q,
    q_number,
    ratfunc_arith,
)
from strategies import nonzero_ratfuncs_st, qpolys_st, ratfuncs_st
from utils.exceptions import DivisionByZeroException, PoleException

ONE_PLUS_Q = QPoly((Fraction(1), Fraction(1)))


def poly(*coeffs) -> QPoly:
    return QPoly(tuple(Fraction(c) for c in coeffs))


def is_canonical(v: QRatFunc) -> bool:
    return v.den.leading == 1 and v.num.gcd(v.den).is_one()


def to_sympy(v: QRatFunc):
    q = sympy.Symbol("q")

    def expr(p: QPoly):
        return sum(sympy.Rational(c.numerator, c.denominator) * q**i for i, c in enumerate(p.coeffs))

    return expr(v.num) / expr(v.den)


class TestQPoly:
    def test_strips_trailing_zeros(self):
        assert poly(1, 2, 0, 0) == poly(1, 2)
        assert poly(0, 0).is_zero()
        assert poly().degree == -1

    def test_divmod(self):
        # q^3 + 1 = (q + 1)(q^2 - q + 1)
        quot, rem = poly(1, 0, 0, 1).divmod(ONE_PLUS_Q)
        assert quot == poly(1, -1, 1)
        assert rem.is_zero()

    def test_divide_by_zero(self):
        with pytest.raises(DivisionByZeroException):
            poly(1, 1).divmod(QPoly.zero())

    def test_exact_div_rejects_remainder(self):
        with pytest.raises(DivisionByZeroException):
            poly(1, 0, 1).exact_div(ONE_PLUS_Q)

    def test_linear_power_root(self):
        assert (ONE_PLUS_Q**3).linear_power_root() == -1
        assert poly(-2, 1).scale(5).linear_power_root() == 2
        assert poly(1, 0, 1).linear_power_root() is None
        assert QPoly.constant(3).linear_power_root() is None

    def test_gcd_of_one_plus_q_powers(self):
        a = ONE_PLUS_Q**3 * poly(-2, 1)
        b = ONE_PLUS_Q**2 * poly(0, 1)
        assert a.gcd(b) == ONE_PLUS_Q**2
        assert b.gcd(ONE_PLUS_Q**5) == ONE_PLUS_Q**2

    def test_gcd_general(self):
        a = poly(-1, 0, 1)  # (q - 1)(q + 1)
        b = poly(-1, 1) * poly(2, 1)
        assert a.gcd(b) == poly(-1, 1)
        assert poly(1, 0, 1).gcd(poly(0, 1)).is_one()

    @given(qpolys_st, qpolys_st)
    def test_gcd_divides_both(self, a, b):
        g = a.gcd(b)
        if not g.is_zero():
            assert g.divides(a)
            assert g.divides(b)
            assert g.leading == 1

    def test_evaluate_and_str(self):
        p = poly(1, -3, 0, 2)
        assert p.evaluate(2) == 11
        assert str(p) == "2*q^3 - 3*q + 1"
        assert str(QPoly.zero()) == "0"


class TestQRatFunc:
    def test_canonical_form(self):
        v = QRatFunc(poly(2, 2), poly(2, 4, 2))
        assert v.num == poly(1)
        assert v.den == ONE_PLUS_Q
        assert v == QRatFunc(QPoly.one(), ONE_PLUS_Q)

    def test_zero_has_unit_denominator(self):
        v = QRatFunc(QPoly.zero(), poly(3, 1))
        assert v.is_zero()
        assert v.den.is_one()

    def test_zero_denominator(self):
        with pytest.raises(DivisionByZeroException):
            QRatFunc(QPoly.one(), QPoly.zero())

    def test_division_by_zero(self):
        with pytest.raises(DivisionByZeroException):
            QRatFunc.q() / QRatFunc.zero()
        with pytest.raises(DivisionByZeroException):
            QRatFunc.q() / 0

    def test_str(self):
        assert str(QRatFunc(poly(0, 1), ONE_PLUS_Q)) == "(q)/(q + 1)"
        assert str(QRatFunc.constant(Fraction(-1, 2))) == "-1/2"

    @given(ratfuncs_st, ratfuncs_st, ratfuncs_st)
    @settings(max_examples=60, deadline=None)
    def test_field_laws(self, a, b, c):
        assert a + b == b + a
        assert a * b == b * a
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert (a - a).is_zero()

    @given(ratfuncs_st, nonzero_ratfuncs_st)
    @settings(deadline=None)
    def test_division_inverts_multiplication(self, a, b):
        assert (a / b) * b == a
        assert b * b.inverse() == QRatFunc.one()

    @given(ratfuncs_st, ratfuncs_st)
    @settings(deadline=None)
    def test_results_stay_canonical(self, a, b):
        for value in (a + b, a - b, a * b, a.scale(Fraction(3, 7)), a + 5):
            assert is_canonical(value)

    @given(ratfuncs_st, ratfuncs_st)
    @settings(max_examples=30, deadline=None)
    def test_agrees_with_sympy(self, a, b):
        assert sympy.cancel(to_sympy(a * b + a) - (to_sympy(a) * to_sympy(b) + to_sympy(a))) == 0

    def test_negative_powers(self):
        q = QRatFunc.q()
        assert q**-2 * q**2 == QRatFunc.one()
        assert (q + 1) ** 0 == QRatFunc.one()

    def test_ratfunc_arith(self):
        a, b = QRatFunc.q(), q_number(2)
        assert ratfunc_arith(a, b, ArithOp.ADD) == a + b
        assert ratfunc_arith(a, b, "sub") == a - b
        assert ratfunc_arith(a, b, ArithOp.MUL) == a * b
        assert ratfunc_arith(a, b, "div") == QRatFunc(poly(0, 1), ONE_PLUS_Q)
        with pytest.raises(DivisionByZeroException):
            ratfunc_arith(a, QRatFunc.zero(), ArithOp.DIV)


class TestHelpers:
    def test_q_number(self):
        q = QRatFunc.q()
        assert q_number(0).is_zero()
        assert q_number(1) == QRatFunc.one()
        assert q_number(2) == q + 1
        assert q_number(3) == q**2 + q + 1
        assert q_number(-1) == -(q.inverse())

    def test_q_number_classical_limit(self):
        for x in range(-3, 6):
            assert eval_at_q(q_number(x), 1) == x

    def test_eval_at_q(self):
        v = QRatFunc(poly(0, 1), ONE_PLUS_Q)
        assert eval_at_q(v, 1) == Fraction(1, 2)
        assert v.evaluate(Fraction(1, 2)) == Fraction(1, 3)

    def test_pole_is_not_a_division_error(self):
        v = QRatFunc(QPoly.one(), ONE_PLUS_Q)
        with pytest.raises(PoleException):
            eval_at_q(v, -1)

    def test_as_rational(self):
        assert as_rational("-3/6") == Fraction(-1, 2)
        assert as_rational(4) == Fraction(4)
        with pytest.raises(TypeError):
            as_rational(0.5)
        with pytest.raises(TypeError):
            as_rational(True)
