from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from specred.poly import (
    AlgebraicNumber,
    IntPoly,
    Ordering,
    RationalInterval,
    compare,
    decimal_str,
    isolate_real_roots,
    largest_real_root,
    poly_gcd,
    sort_key,
    squarefree_part,
    sturm_chain,
)

x = sympy.Symbol("x")
coeff_lists = st.lists(st.integers(-20, 20), min_size=1, max_size=7)
small_roots = st.lists(st.integers(-12, 12), min_size=1, max_size=6)


def to_sympy(p: IntPoly):
    return sympy.Poly(list(reversed(p.coeffs)) or [0], x)


def from_sympy(sp) -> IntPoly:
    return IntPoly(tuple(int(c) for c in reversed(sp.all_coeffs())))


class TestIntPoly:
    def test_trimmed_and_degree(self):
        assert IntPoly((1, 2, 0, 0)).coeffs == (1, 2)
        assert IntPoly(()).degree() == -1
        assert IntPoly((5,)).degree() == 0

    def test_rejects_non_integers(self):
        with pytest.raises(TypeError):
            IntPoly((1, 0.5))

    def test_str(self):
        assert str(IntPoly((88, -21, 1))) == "x^2 - 21x + 88"

    def test_arith_matches_sympy(self):
        p, q = IntPoly((1, -3, 0, 2)), IntPoly((-4, 1, 1))
        assert to_sympy(p * q) == to_sympy(p) * to_sympy(q)
        assert to_sympy(p - q) == to_sympy(p) - to_sympy(q)
        assert to_sympy(p**3) == to_sympy(p) ** 3

    def test_exact_division(self):
        a, b = IntPoly((-1, 1)), IntPoly((2, 0, 1))
        assert (a * b) // b == a
        with pytest.raises(ArithmeticError):
            IntPoly((1, 0, 1)) // IntPoly((1, 2))

    def test_evaluation_at_fraction(self):
        p = IntPoly((-2, 0, 3))
        assert p(Fraction(2, 3)) == Fraction(-2, 3)
        assert p.sign_at(Fraction(2, 3)) == -1

    def test_compose_shift(self):
        p = IntPoly((1, 2, 1))
        assert p.compose_shift(-1) == IntPoly((0, 0, 1))

    @given(coeff_lists, coeff_lists)
    @settings(max_examples=150, deadline=None)
    def test_gcd_matches_sympy(self, a, b):
        p, q = IntPoly(tuple(a)), IntPoly(tuple(b))
        if p.is_zero() or q.is_zero():
            return
        expected = from_sympy(sympy.gcd(to_sympy(p), to_sympy(q)))
        assert poly_gcd(p, q) == expected.normalized().primitive()

    @given(small_roots, small_roots)
    @settings(max_examples=100, deadline=None)
    def test_gcd_of_products_of_roots(self, r1, r2):
        p, q = IntPoly.from_roots(r1), IntPoly.from_roots(r2)
        common = set(r1) & set(r2)
        g = poly_gcd(p, q)
        # at least one copy of each shared root
        assert all(g(c) == 0 for c in common)
        assert to_sympy(g) == sympy.gcd(to_sympy(p), to_sympy(q))

    def test_squarefree_part(self):
        p = IntPoly.from_roots([2, 2, 2, -1, 5, 5])
        assert squarefree_part(p) == IntPoly.from_roots([2, -1, 5])


class TestSturm:
    def test_counts_roots(self):
        p = IntPoly.from_roots([-3, 0, 1, 7])
        chain = sturm_chain(p)
        assert chain.count() == 4
        assert chain.count(Fraction(-1), Fraction(1)) == 2
        assert chain.count(Fraction(1), Fraction(7)) == 1

    @given(coeff_lists)
    @settings(max_examples=150, deadline=None)
    def test_root_count_matches_sympy(self, coeffs):
        p = IntPoly(tuple(coeffs))
        if p.degree() < 1:
            return
        expected = len(sympy.real_roots(to_sympy(p).sqf_part()))
        assert sturm_chain(p).count() == expected


class TestIsolation:
    @given(coeff_lists)
    @settings(max_examples=100, deadline=None)
    def test_isolated_roots_match_sympy(self, coeffs):
        p = IntPoly(tuple(coeffs))
        if p.degree() < 1:
            return
        roots = isolate_real_roots(p)
        ref = sorted(set(sympy.real_roots(to_sympy(p))), key=lambda r: float(r))
        assert len(roots) == len(ref)
        for a, r in zip(roots, ref):
            a.validate()
            assert sympy.Rational(a.lo) <= r <= sympy.Rational(a.hi)

    def test_rational_root_is_exact_after_refine(self):
        root = largest_real_root(IntPoly((-6, 1, 1)))  # roots 2, -3
        assert compare(root, AlgebraicNumber.rational(2)) is Ordering.EQ

    def test_invalid_interval_rejected(self):
        with pytest.raises(ValueError):
            AlgebraicNumber(IntPoly((-2, 0, 1)), RationalInterval(Fraction(0), Fraction(1))).validate()

    def test_refine_width(self):
        a = largest_real_root(IntPoly((-2, 0, 1))).refine(Fraction(1, 2**30))
        assert a.interval.width <= Fraction(1, 2**30)
        assert a.lo**2 < 2 < a.hi**2


class TestCompare:
    def test_equal_algebraic_with_different_minpolys(self):
        sqrt2 = largest_real_root(IntPoly((-2, 0, 1)))
        other = largest_real_root(IntPoly((-2, 0, 1)) * IntPoly((-5, 0, 1)) * IntPoly((3, 1)))
        other = [r for r in isolate_real_roots(other.minpoly) if abs(float(r) - 2**0.5) < 1e-6][0]
        assert compare(sqrt2, other) is Ordering.EQ

    def test_close_but_distinct(self):
        # sqrt(2) and 99/70 differ by about 7e-5
        sqrt2 = largest_real_root(IntPoly((-2, 0, 1)))
        approx = AlgebraicNumber.rational(Fraction(99, 70))
        assert compare(sqrt2, approx) is Ordering.LT
        assert compare(approx, sqrt2) is Ordering.GT

    def test_sqrt9_equals_3(self):
        assert compare(largest_real_root(IntPoly((-9, 0, 1))), AlgebraicNumber.rational(3)) is Ordering.EQ

    @given(st.lists(st.integers(-30, 30), min_size=2, max_size=5), st.integers(2, 40))
    @settings(max_examples=80, deadline=None)
    def test_sorting_matches_sympy(self, ints, n):
        values = [largest_real_root(IntPoly((-n, 0, 1)))] + [AlgebraicNumber.rational(i) for i in ints]
        ours = [float(v) for v in sorted(values, key=sort_key)]
        ref = sorted([sympy.sqrt(n)] + [sympy.Integer(i) for i in ints])
        assert ours == pytest.approx([float(r) for r in ref])


class TestSerialisation:
    def test_round_trip(self):
        a = largest_real_root(IntPoly((-7, 0, 1))).refine(Fraction(1, 1000))
        b = AlgebraicNumber.from_dict(a.to_dict())
        assert compare(a, b) is Ordering.EQ
        assert a.to_dict()["decimal"] == "2.645751"

    def test_decimal_half_even(self):
        assert decimal_str(Fraction(5, 2), 0) == "2"
        assert decimal_str(Fraction(13, 12), 6) == "1.083333"
        assert decimal_str(Fraction(-1, 10**9), 3) == "0.000"
