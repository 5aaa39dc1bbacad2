import logging
import pickle
from fractions import Fraction

import pytest
import sympy

from specred.graph import PineappleParams, build_pineapple, charpoly
from specred.pineapple import (
    K1,
    b_count,
    c_count,
    critical_point,
    cubic,
    radius_sign_polynomial,
    is_spectral_radius,
    pineapple_spectrum,
    radius_certificate,
    radius_collisions,
    redundancy,
    redundancy_curve,
    spectral_radius,
    spectrum_multiplicities,
    stable_tail_start,
    subgraph_family,
)
from specred.poly import AlgebraicNumber, IntPoly, Ordering, compare, isolate_real_roots
from specred.spectrum import complementarity_spectrum

GRID = [(a, b) for a in range(2, 7) for b in range(0, 7)]


class TestCharpoly:
    @pytest.mark.parametrize("a,b", GRID)
    def test_factorisation_matches_direct(self, a, b):
        p = PineappleParams(a, b)
        assert pineapple_spectrum(p).full_charpoly.expand() == charpoly(build_pineapple(p))

    def test_cubic_coefficients(self):
        assert cubic((5, 3)) == IntPoly((9, -7, -3, 1))

    @pytest.mark.parametrize("a,b", [(2, 0), (3, 0), (2, 5), (4, 3), (16, 44), (8, 220)])
    def test_radius_matches_sympy(self, a, b):
        lam = sympy.Symbol("lam")
        adj = [[int(bool(r >> j & 1)) for j in range(a + b)] for r in build_pineapple(PineappleParams(a, b)).rows]
        ref = max(sympy.Matrix(adj).charpoly(lam).real_roots())
        assert float(spectral_radius((a, b))) == pytest.approx(float(ref), abs=1e-12)

    @pytest.mark.parametrize("a,b", GRID)
    def test_multiplicities_match_sympy(self, a, b):
        lam = sympy.Symbol("lam")
        cp = sympy.Poly(charpoly(build_pineapple(PineappleParams(a, b))).coeffs[::-1], lam)
        roots = sympy.roots(cp, filter=None, multiple=False)
        mult = spectrum_multiplicities((a, b))
        assert mult["0"] == roots.get(sympy.Integer(0), 0)
        assert mult["-1"] == roots.get(sympy.Integer(-1), 0)


class TestCounts:
    def test_b_formula(self):
        assert b_count((4, 3)) == 13
        assert len(subgraph_family((4, 3))) == 13

    def test_family_members(self):
        fam = subgraph_family((4, 3))
        assert fam[0] is K1
        assert set(fam[1:]) == {PineappleParams(i, j) for i in range(2, 5) for j in range(4)}

    @pytest.mark.parametrize("a,b", [(a, b) for a in range(2, 6) for b in range(0, 5)])
    def test_fast_path_matches_oracle(self, a, b):
        rep = complementarity_spectrum(build_pineapple(PineappleParams(a, b)), max_n=16)
        assert (rep.b, rep.c, rep.redundancy) == (b_count((a, b)), c_count((a, b)), redundancy((a, b)))

    def test_collision_in_p43(self):
        assert radius_collisions((4, 3)) == [[PineappleParams(2, 3), PineappleParams(3, 0)]]

    def test_closure_of_collisions(self):
        # grouping must agree with direct pairwise comparison over the whole family
        p = (5, 12)
        fam = subgraph_family(p)[1:]
        groups = {m: i for i, g in enumerate(radius_collisions(p)) for m in g}
        for i, m1 in enumerate(fam):
            for m2 in fam[i + 1:]:
                eq = compare(spectral_radius(m1), spectral_radius(m2)) is Ordering.EQ
                together = m1 in groups and groups.get(m1) == groups.get(m2)
                assert eq == together

    def test_k1_pickles(self):
        assert pickle.loads(pickle.dumps(K1)) is K1


class TestRadiusCertificate:
    def test_all_roots_classified(self):
        p = PineappleParams(7, 110)
        roots = isolate_real_roots(cubic(p))
        certs = [radius_certificate(p, r) for r in roots]
        assert [c.is_radius for c in certs] == [False, False, True]
        assert all(not c.disagreements for c in certs)

    def test_sign_polynomial_is_derivative(self):
        for a, b in GRID:
            assert radius_sign_polynomial((a, b)) == cubic((a, b)).derivative()

    def test_sign_test_positive_at_smallest_root_is_logged(self, caplog):
        p = PineappleParams(7, 110)
        smallest = isolate_real_roots(cubic(p))[0]
        with caplog.at_level(logging.INFO, logger="specred.pineapple"):
            cert = radius_certificate(p, smallest)
        assert cert.sign_test_positive and not cert.is_radius
        assert "non-largest" in caplog.text

    def test_non_root_rejected(self):
        with pytest.raises(ValueError):
            radius_certificate((4, 3), AlgebraicNumber.rational(5))

    def test_integer_radius(self):
        assert is_spectral_radius((4, 0), AlgebraicNumber.rational(3))
        assert is_spectral_radius((3, 6), AlgebraicNumber.rational(3))

    def test_critical_points(self):
        assert float(critical_point((7, 110))) == pytest.approx(8.104, abs=1e-3)
        assert float(critical_point((9, 99))) == pytest.approx(8.745, abs=1e-3)


class TestCurves:
    def test_alpha3_formula(self):
        rows = redundancy_curve(alpha=3, start=0, stop=20)
        for row in rows:
            b = row.param
            expected = 2 * b + 3 if b <= 2 else 2 * b + 2 if b <= 7 else 2 * b + 1
            assert row.c == expected

    def test_stable_tail(self):
        rows = redundancy_curve(alpha=4, start=0, stop=40)
        tail = stable_tail_start(rows)
        assert tail is not None
        assert len({r.excess for r in rows[tail:]}) == 1
        assert rows[tail - 1].excess != rows[tail].excess

    def test_beta_fixed(self):
        rows = redundancy_curve(beta=3, start=2, stop=8)
        assert [r.param for r in rows] == list(range(2, 9))
        assert all(r.redundancy == Fraction(r.b, r.c) for r in rows)

    def test_needs_one_fixed(self):
        with pytest.raises(ValueError):
            redundancy_curve(start=0, stop=3)
        assert stable_tail_start([]) is None
