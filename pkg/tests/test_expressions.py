from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from plabica.expressions import LaurentPoly, RationalExpr

A, B, C = (1, 2), (1, 3), (2, 3)


def lp(*pairs_coeff):
    total = LaurentPoly()
    for pairs, coeff in pairs_coeff:
        total = total + LaurentPoly.monomial(pairs, coeff)
    return total


class TestLaurentPoly:
    def test_addition_cancels(self):
        p = LaurentPoly.var(A) - LaurentPoly.var(A)
        assert not p

    def test_product(self):
        p = (LaurentPoly.var(A) + LaurentPoly.var(B)) * (LaurentPoly.var(A) - LaurentPoly.var(B))
        assert p == LaurentPoly.var(A, 2) - LaurentPoly.var(B, 2)

    def test_monomial_division(self):
        p = LaurentPoly.monomial([(A, 2), (B, 1)], 6)
        q = LaurentPoly.monomial([(A, 1)], 3)
        assert p.exact_div(q) == LaurentPoly.monomial([(A, 1), (B, 1)], 2)

    def test_negative_exponents(self):
        p = LaurentPoly.var(A, -1) * LaurentPoly.var(A, 1)
        assert p == LaurentPoly.const(1)

    def test_exact_division_polynomials(self):
        a, b = LaurentPoly.var(A), LaurentPoly.var(B)
        p = a * a - b * b
        assert p.exact_div(a + b) == a - b

    def test_inexact_division_raises(self):
        a, b = LaurentPoly.var(A), LaurentPoly.var(B)
        with pytest.raises(ArithmeticError):
            (a * a + b).exact_div(a + b)

    def test_division_with_laurent_shift(self):
        a, b, c = (LaurentPoly.var(v) for v in (A, B, C))
        numerator = a * b + c
        quotient = numerator.exact_div(LaurentPoly.var(A))
        assert quotient * a == numerator

    @given(st.data())
    @settings(max_examples=40, deadline=None)
    def test_division_roundtrip(self, data):
        def rand_poly():
            terms = {}
            for _ in range(data.draw(st.integers(1, 3))):
                exps = [
                    (v, data.draw(st.integers(-2, 2)))
                    for v in (A, B)
                ]
                coeff = data.draw(st.integers(1, 5))
                mono = LaurentPoly.monomial(exps, coeff)
                terms[len(terms)] = mono
            total = LaurentPoly()
            for m in terms.values():
                total = total + m
            return total

        p, q = rand_poly(), rand_poly()
        if not p or not q:
            return
        assert (p * q).exact_div(q) == p

    def test_eval(self):
        p = LaurentPoly.var(A, 2) + LaurentPoly.var(B, -1)
        assert p.eval({A: Fraction(3), B: Fraction(1, 2)}) == Fraction(11)

    def test_exponent_vectors(self):
        p = LaurentPoly.var(A) * LaurentPoly.var(B, -2) + LaurentPoly.const(3)
        rows = p.exponent_vectors([A, B])
        assert sorted(rows) == [(0, 0), (1, -2)]

    def test_json_roundtrip(self):
        p = lp(([(A, 2), ((4, 5), -1)], 7), ([("q", 1)], 1))
        assert LaurentPoly.from_json(p.to_json()) == p


class TestRationalExpr:
    def test_var_over_var_equality(self):
        x, y = RationalExpr.var(A), RationalExpr.var(B)
        assert (x * y) / y == x

    def test_cross_multiplication_equality(self):
        x, y = RationalExpr.var(A), RationalExpr.var(B)
        lhs = (x + y) / (x * y)
        rhs = RationalExpr.const(1) / x + RationalExpr.const(1) / y
        assert lhs == rhs

    def test_laurent_extraction(self):
        x, y = RationalExpr.var(A), RationalExpr.var(B)
        e = (x * x + x * y) / x
        assert e.is_laurent()
        assert e.laurent() == (LaurentPoly.var(A) + LaurentPoly.var(B))

    def test_non_laurent_detected(self):
        x, y = RationalExpr.var(A), RationalExpr.var(B)
        e = RationalExpr.const(1) / (x + y)
        assert not e.is_laurent()
        with pytest.raises(ArithmeticError):
            e.laurent()

    def test_zero_denominator_rejected(self):
        with pytest.raises(ZeroDivisionError):
            RationalExpr(LaurentPoly.var(A), LaurentPoly())

    def test_eval(self):
        x, y = RationalExpr.var(A), RationalExpr.var(B)
        e = (x + y) / (x - y)
        assert e.eval({A: 3, B: 1}) == Fraction(2)

    def test_json_roundtrip(self):
        x, y = RationalExpr.var(A), RationalExpr.var(B)
        e = (x + y) / (x * y)
        back = RationalExpr.from_json(e.to_json())
        assert back == e
