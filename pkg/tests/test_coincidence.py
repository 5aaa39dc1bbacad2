from itertools import combinations

import pytest
import sympy

from specred.coincidence import (
    Kind,
    SlopeParams,
    TwoCommonWitness,
    check_mod4,
    divisors,
    enumerate_two_common,
    integer_radius_family,
    one_common_candidates,
    pair_from_ak,
    search_one_common,
    slope_precondition_failure,
)
from specred.graph import PineappleParams
from specred.pineapple import cubic, radius_certificate, radius_collisions, spectral_radius
from specred.poly import AlgebraicNumber, IntPoly, Ordering, compare, isolate_real_roots, poly_gcd

P = PineappleParams


def pineapples_with_root(rho):
    """Every P(a, b) whose cubic vanishes at the integer rho, found directly.

    With t = a - 2 - rho the cubic at rho gives b = rho(rho+1)(t+1)/t.
    """
    n = rho * (rho + 1)
    out = set()
    for d in divisors(n):
        for t in (d, -d):
            a = rho + 2 + t
            b, rem = divmod(n * (t + 1), t)
            if a >= 2 and not rem and b >= 0:
                assert cubic((a, b))(rho) == 0
                out.add((a, b))
    return sorted(out)


def brute_one_common(max_rho):
    found = set()
    for rho in range(1, max_rho + 1):
        for p, q in combinations(pineapples_with_root(rho), 2):
            if (q[0] - p[0]) * (q[1] - p[1]) < 0 and poly_gcd(cubic(p), cubic(q)) == IntPoly((-rho, 1)):
                found.add(p + q)
    return found


def brute_two_common(max_alpha, max_beta):
    # two monic cubics share a quadratic q only if their difference is a multiple of q
    members = [(a, b) for a in range(2, max_alpha + 1) for b in range(max_beta + 1)]
    found = set()
    for p, q in combinations(members, 2):
        if p[0] == q[0] or (q[0] - p[0]) * (q[1] - p[1]) >= 0:
            continue
        diff = cubic(p) - cubic(q)
        if diff.degree() == 2 and poly_gcd(cubic(p), diff).degree() == 2:
            found.add(tuple(sorted([p, q])))
    return found


class TestHelpers:
    def test_divisors(self):
        assert divisors(12) == [1, 2, 3, 4, 6, 12]
        assert divisors(1) == [1]

    def test_slope_params(self):
        with pytest.raises(ValueError):
            SlopeParams(4, 2)
        with pytest.raises(ValueError):
            SlopeParams(0, 1)


class TestTwoCommon:
    def test_mod4_agrees_with_beta_integrality(self):
        for k in range(3, 150):
            for a in range(1, k - 1):
                if (a - k) % 2:
                    with pytest.raises(ValueError):
                        check_mod4(a, k)
                    continue
                a2 = (k - a + 2) // 2
                integral = k * (a2 - 1) * (a2 - 2) % (k - 1) == 0
                assert (check_mod4(a, k) is not None) == integral

    def test_example_pair(self):
        w = check_mod4(8, 22)
        assert w is not None and w.case == "c"
        pair = pair_from_ak(w)
        assert (pair.p1, pair.p2) == (P(16, 44), P(8, 220))
        assert pair.shared_poly == IntPoly((88, -21, 1))
        assert [x.decimal(3) for x in pair.shared] == ["5.783", "15.217"]

    def test_shared_roots_are_top_two(self):
        for pair in enumerate_two_common(40):
            for p in (pair.p1, pair.p2):
                roots = isolate_real_roots(cubic(p))
                assert [compare(a, b) for a, b in zip(roots[1:], pair.shared)] == [Ordering.EQ, Ordering.EQ]

    def test_invariants(self):
        pairs = enumerate_two_common(60)
        assert pairs
        for pair in pairs:
            w = pair.witness
            assert pair.kind is Kind.TWO_COMMON_LARGEST
            assert pair.p1.alpha + pair.p2.alpha == w.k + 2
            assert pair.p1.alpha - pair.p2.alpha == w.a
            assert pair.p2.beta == pair.p1.beta + w.k * w.a
            assert pair.a_value == 0
            assert pair.sign_condition()

    def test_gcd_matches_sympy(self):
        x = sympy.Symbol("x")
        for pair in enumerate_two_common(30):
            f, g = (sympy.Poly(cubic(p).coeffs[::-1], x) for p in (pair.p1, pair.p2))
            assert sympy.Poly(pair.shared_poly.coeffs[::-1], x) == sympy.gcd(f, g)

    def test_complete_against_brute_force(self):
        # alpha1 + alpha2 = k + 2 <= 20 stays well inside max_k = 60
        expected = brute_two_common(10, 70)
        found = {
            tuple(sorted([(p.p1.alpha, p.p1.beta), (p.p2.alpha, p.p2.beta)]))
            for p in enumerate_two_common(60)
            if max(p.p1.alpha, p.p2.alpha) <= 10 and max(p.p1.beta, p.p2.beta) <= 70
        }
        assert found == expected

    def test_small_alpha_pair(self):
        # k = 3, a = 1: K3 and the star K_{1,4}
        pair = pair_from_ak(TwoCommonWitness(1, 3, "d", 0))
        assert {pair.p1, pair.p2} == {P(3, 0), P(2, 3)}

    def test_parallel_matches_serial(self):
        assert [p.key for p in enumerate_two_common(40, jobs=2)] == [p.key for p in enumerate_two_common(40)]


class TestOneCommon:
    def test_example_pairs(self):
        cands = {(p.p1, p.p2): p for p in one_common_candidates(11, SlopeParams(11, 2))}
        radius = cands[(P(7, 110), P(9, 99))]
        other = cands[(P(17, 165), P(19, 154))]
        assert radius.kind is Kind.ONE_COMMON_RADIUS and {radius.witness.m, radius.witness.n} == {-4, -6}
        assert other.kind is Kind.ONE_COMMON_NON_RADIUS and {other.witness.m, other.witness.n} == {4, 6}
        assert compare(radius.shared[0], AlgebraicNumber.rational(11)) is Ordering.EQ

    def test_factor_pair_for_rho3(self):
        cands = {(p.p1, p.p2): p for p in one_common_candidates(3, SlopeParams(2, 1))}
        pair = cands[(P(2, 8), P(3, 6))]
        assert pair.kind is Kind.ONE_COMMON_RADIUS
        assert (pair.witness.m, pair.witness.n) == (-3, -2)

    def test_preconditions(self):
        assert slope_precondition_failure(3, SlopeParams(5, 1)) is not None
        assert slope_precondition_failure(0, SlopeParams(1, 1)) is not None
        assert one_common_candidates(3, SlopeParams(5, 1)) == []
        # s = 2 does not divide rho+1 = 5 but r*s = 10 divides 20
        assert slope_precondition_failure(4, SlopeParams(5, 2)) is None
        assert slope_precondition_failure(4, SlopeParams(5, 2), complete=False) is not None

    def test_pair_missed_by_narrow_conditions(self):
        cands = {(p.p1, p.p2): p for p in one_common_candidates(4, SlopeParams(5, 2))}
        pair = cands[(P(2, 15), P(4, 10))]
        assert pair.kind is Kind.ONE_COMMON_RADIUS
        narrow = {p.key for p in search_one_common(4, complete=False)}
        assert pair.key not in narrow

    def test_complete_against_brute_force(self):
        assert {p.key for p in search_one_common(20)} == brute_one_common(20)

    def test_narrow_is_subset(self):
        assert {p.key for p in search_one_common(20, complete=False)} <= {p.key for p in search_one_common(20)}

    def test_kind_agrees_with_radius(self):
        for pair in search_one_common(15):
            rho = pair.shared[0]
            both = all(compare(spectral_radius(p), rho) is Ordering.EQ for p in (pair.p1, pair.p2))
            assert both == (pair.kind is Kind.ONE_COMMON_RADIUS)
            assert pair.a_value != 0
            assert pair.shared_poly.degree() == 1

    def test_parallel_matches_serial(self):
        assert [p.key for p in search_one_common(12, jobs=2)] == [p.key for p in search_one_common(12)]

    def test_certified_radii_pass_sign_test(self):
        for pair in search_one_common(30):
            if pair.kind is Kind.ONE_COMMON_RADIUS:
                for p in (pair.p1, pair.p2):
                    cert = radius_certificate(p, pair.shared[0])
                    assert cert.is_radius and cert.sign_test_positive and cert.above_critical_point

    def test_rho2_radius_branch_empty(self):
        pairs = [p for p in search_one_common(2) if p.kind is Kind.ONE_COMMON_RADIUS]
        assert pairs == []


class TestIntegerRadiusFamily:
    @pytest.mark.parametrize("rho", [3, 7, 20])
    def test_family(self, rho):
        pair = integer_radius_family(rho)
        assert (pair.p1, pair.p2) == (P(rho + 1, 0), P(rho, rho * (rho + 1) // 2))
        for p in (pair.p1, pair.p2):
            assert compare(spectral_radius(p), AlgebraicNumber.rational(rho)) is Ordering.EQ

    def test_small_rho_rejected(self):
        with pytest.raises(ValueError):
            integer_radius_family(2)


class TestClosure:
    def test_radius_collisions_match_searches(self):
        amax, bmax = 12, 150
        scanned = set()
        for group in radius_collisions((amax, bmax)):
            for p, q in combinations(sorted(group), 2):
                scanned.add((p.alpha, p.beta, q.alpha, q.beta))

        def inside(pair):
            return all(m.alpha <= amax and m.beta <= bmax for m in (pair.p1, pair.p2))

        predicted = {p.key for p in enumerate_two_common(60) if inside(p)}
        predicted |= {p.key for p in search_one_common(30) if p.kind is Kind.ONE_COMMON_RADIUS and inside(p)}
        assert scanned == predicted
