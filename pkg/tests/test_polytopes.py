import math
from fractions import Fraction

import pytest

from plabica.expressions import LaurentPoly, RationalExpr
from plabica.plabic import (
    PlabicError,
    build_checkboard,
    build_dual_checkboard,
    build_rectangle,
)
from plabica.polytopes import (
    AffineLatticeMap,
    HPolytope,
    check_no_body_is_gt,
    conjecture_scan,
    coordinate_order,
    gt_polytope,
    polytopes_equal,
    superpotential_polytope,
    tropicalize,
    unimodular_map_F,
)
from plabica.seeds import closed_form_W, family_member, superpotential_terms
from plabica.subsets import dihedral_group, sigma

A, B = (1, 2), (1, 3)


def cube(dim):
    rows = []
    for i in range(dim):
        row = [0] * dim
        row[i] = 1
        rows.append((tuple(row), 0))
        row2 = [0] * dim
        row2[i] = -1
        rows.append((tuple(row2), 1))
    return HPolytope(list(range(dim)), rows)


class TestTropicalForm:
    def test_monomial(self):
        t = tropicalize(RationalExpr.var(A) / RationalExpr.var(B), coords=[A, B])
        assert t.vectors == [(1, -1)]
        assert t((2, 5)) == -3

    def test_min_of_two(self):
        t = tropicalize(RationalExpr.var(A) + RationalExpr.var(B), coords=[A, B])
        assert t((3, 5)) == 3

    def test_base_superpotential_vanishes_at_origin(self):
        W = closed_form_W("ch-base", 0, 2, 4)
        coords = sorted(W.laurent().variables(), key=lambda v: (v == "q", v))
        t = tropicalize(W, coords)
        point = [0] * len(coords)
        point[coords.index("q")] = 1
        assert t(tuple(point)) == 0

    def test_negative_coefficient_rejected(self):
        bad = RationalExpr(LaurentPoly.var(A) - LaurentPoly.var(B))
        with pytest.raises(PlabicError):
            tropicalize(bad, coords=[A, B])


class TestHPolytope:
    def test_cube(self):
        P = cube(3)
        assert len(P.vertices()) == 8
        assert len(P.lattice_points()) == 8

    def test_dd_matches_bruteforce(self):
        P = cube(3)
        assert sorted(P._vertices_dd()) == sorted(P._vertices_bruteforce())

    def test_simplex_fractional_vertex(self):
        # x, y >= 0, x + 2y <= 1
        P = HPolytope(["x", "y"], [((1, 0), 0), ((0, 1), 0), ((-1, -2), 1)])
        assert set(P.vertices()) == {(0, 0), (1, 0), (0, Fraction(1, 2))}

    def test_unbounded_distinct_error(self):
        P = HPolytope(["x", "y"], [((1, 0), 0), ((0, 1), 0)])
        with pytest.raises(PlabicError) as err:
            P.vertices()
        assert err.value.code == "unbounded"

    def test_row_canonicalization(self):
        P = HPolytope(["x"], [((Fraction(2, 3),), Fraction(4, 3)), ((2,), 4)])
        assert P.rows == [((1,), 2)]

    def test_equality(self):
        assert polytopes_equal(cube(2), cube(2))
        shifted = HPolytope(
            [0, 1],
            [((1, 0), 0), ((-1, 0), 1), ((0, 1), 0), ((0, -1), 2)],
        )
        assert not polytopes_equal(cube(2), shifted)


class TestGTPolytope:
    @pytest.mark.parametrize("k,n", [(2, 4), (2, 5), (2, 6), (3, 6)])
    def test_lattice_count_is_binomial(self, k, n):
        assert len(gt_polytope(k, n).lattice_points()) == math.comb(n, k)

    def test_vertices_integral(self):
        for v in gt_polytope(2, 5).vertices():
            assert all(x == int(x) for x in v)

    def test_origin_is_vertex(self):
        gt = gt_polytope(2, 4)
        origin = (0,) * gt.dim()
        assert gt.contains(origin)
        assert origin in gt.vertices()


class TestSuperpotentialPolytope:
    def test_dimension(self):
        for k, n in [(2, 4), (2, 5), (3, 6)]:
            P = superpotential_polytope(build_checkboard(k, n))
            assert P.dim() == k * (n - k)

    def test_origin_in_gamma_zero(self):
        for k, n in [(2, 4), (2, 5)]:
            P = superpotential_polytope(build_checkboard(k, n), r=0)
            assert P.contains((0,) * P.dim())
            assert all(b == 0 for _, b in P.rows)

    def test_scaling(self):
        G = build_checkboard(2, 5)
        P1 = superpotential_polytope(G, 1)
        P2 = superpotential_polytope(G, 2)
        verts2 = {tuple(2 * x for x in v) for v in P1.vertices()}
        assert verts2 == set(P2.vertices())

    def test_rotated_checkboard_rows_match_remark(self):
        # inequalities of the rotated graph agree with the tropicalised
        # closed formula, row for row
        k, n, m = 2, 5, 2
        G = family_member("ch-rot", m, k, n)
        P = superpotential_polytope(G)
        W = closed_form_W("ch-rot", m, k, n)
        coords = list(coordinate_order(G)) + ["q"]
        rows = set()
        for vec in W.laurent().exponent_vectors(coords):
            rows.add((vec[:-1], Fraction(vec[-1])))
        expected = HPolytope(coords[:-1], rows)
        assert set(P.rows) == set(expected.rows)

    def test_lattice_count_matches_binomial(self):
        for k, n in [(2, 4), (2, 5)]:
            P = superpotential_polytope(build_checkboard(k, n))
            assert len(P.lattice_points()) == math.comb(n, k)


class TestUnimodularMap:
    def test_determinant_is_one(self):
        F = unimodular_map_F("ch-rot", 0, 2, 5)
        assert abs(mat_det_int(F.matrix)) == 1

    def test_translation_cases_from_the_proof(self):
        # m = ceil(k/2): no translation; m = ceil((n+k)/2): all-ones shift
        for k, n in [(2, 4), (2, 5), (3, 6)]:
            F = unimodular_map_F("ch-rot", -(-k // 2), k, n)
            assert set(F.translation) == {0}
            F2 = unimodular_map_F("ch-rot", -(-(n + k) // 2), k, n)
            assert set(F2.translation) == {1}

    def test_roundtrip_on_lattice_points(self):
        k, n = 2, 5
        F = unimodular_map_F("ch-rot", 1, k, n)
        G = family_member("ch-rot", 1, k, n)
        P = superpotential_polytope(G)
        for v in P.lattice_points()[:10]:
            image = F.apply_point(v)
            assert all(x == int(x) for x in image)
            assert F.inverse_point(image) == tuple(Fraction(x) for x in v)

    def test_image_equals_gt(self):
        for family, m, k, n in [
            ("ch-rot", 0, 2, 5),
            ("ch-refl", 3, 2, 5),
            ("dual-ch-rot", 2, 3, 6),
            ("dual-ch-refl", 1, 3, 6),
        ]:
            F = unimodular_map_F(family, m, k, n)
            G = family_member(family, m, k, n)
            assert polytopes_equal(
                F.apply_polytope(superpotential_polytope(G)), gt_polytope(k, n)
            )

    def test_identity_map_polytope_equality(self):
        gt = gt_polytope(2, 4)
        ident = AffineLatticeMap(
            [[int(i == j) for j in range(gt.dim())] for i in range(gt.dim())],
            [0] * gt.dim(),
            gt.coords,
            gt.coords,
        )
        assert polytopes_equal(ident.apply_polytope(gt), gt)

    def test_non_unimodular_rejected(self):
        with pytest.raises(PlabicError):
            AffineLatticeMap([[2]], [0], ["x"], ["y"])


def mat_det_int(matrix):
    from plabica.polytopes import mat_det

    return mat_det(matrix)


class TestMainTheorem:
    @pytest.mark.parametrize("k,n", [(2, 4), (2, 5)])
    def test_full_orbit_gt_equivalence(self, k, n):
        seen = set()
        for base in (build_checkboard(k, n), build_dual_checkboard(k, n)):
            for g in dihedral_group(n):
                H = base.dihedral_act(g)
                C = H.label_collection()
                if C in seen:
                    continue
                seen.add(C)
                assert check_no_body_is_gt(H)

    def test_non_member_rejected(self):
        with pytest.raises(PlabicError):
            check_no_body_is_gt(build_rectangle(3, 6))


class TestConjectureScan:
    def test_rotations_of_checkboard_agree(self):
        report = conjecture_scan(build_checkboard(2, 5))
        assert report["rotations_agree"]
        assert report["rotations"][0]["lattice_points_r1"] == 10

    def test_reflections_reported_separately(self):
        report = conjecture_scan(build_checkboard(2, 4))
        assert set(report["reflections"]) == set(range(4))
        assert "rotations_agree" in report and "reflections" not in str(
            report["rotations_agree"]
        )
