import json
import random
from fractions import Fraction

import pytest

from padics import sampling
from padics.affine import AffineMap, aff_compose
from padics.cells import (Cell, act, cell_canonical, cell_contains,
                          cell_semimetric, children, export_tree,
                          is_bounded_cellset, meet, parent, rho,
                          separating_cell, zp_cell)


class TestCanonicalForm:
    def test_integral_ring_itself(self):
        c = cell_canonical(0, 0, 2)
        assert c.center == 0 and c.scale == 0

    def test_third_reduces_via_modular_inverse(self):
        # 1/3 = 3^-1 mod 2: the inverse of 3 mod 2 is 1, so center 1
        assert cell_canonical(Fraction(1, 3), 1, 2).center == 1

    def test_deep_point_collapses_to_zero(self):
        assert cell_canonical(Fraction(8), 1, 2).center == 0

    def test_canonicalization_is_idempotent(self):
        rng = random.Random(0)
        for p in (2, 3, 5):
            for _ in range(300):
                c = sampling.cell(rng, p)
                again = cell_canonical(c.center, c.scale, p)
                assert again == c

    def test_center_is_in_the_cell(self):
        rng = random.Random(1)
        for _ in range(300):
            x = sampling.rational(rng, 3)
            k = rng.randint(-4, 4)
            c = cell_canonical(x, k, 3)
            assert cell_contains(c, x)

    def test_non_canonical_direct_construction_rejected(self):
        with pytest.raises(ValueError):
            Cell(Fraction(8), 1, 2)

    def test_negative_scale_canonical_form(self):
        # 1/2 + 4 Z_2 has digits on [-1, 2)
        c = cell_canonical(Fraction(1, 2) + 8, 2, 2)
        assert c.center == Fraction(1, 2)


class TestTree:
    def test_children_of_z2(self):
        kids = children(zp_cell(2))
        assert [str(k) for k in kids] == ["(0, 1)", "(1, 1)"]

    def test_children_partition(self):
        rng = random.Random(2)
        for p in (2, 3):
            for _ in range(200):
                c = sampling.cell(rng, p)
                kids = children(c)
                assert len(set(kids)) == p
                x = c.center + Fraction(p) ** c.scale * sampling.integral(
                    rng, p, zero_weight=0.3)
                assert cell_contains(c, x)
                assert sum(cell_contains(k, x) for k in kids) == 1

    def test_parent_inverts_children(self):
        rng = random.Random(3)
        for p in (2, 3):
            for _ in range(200):
                c = sampling.cell(rng, p)
                for kid in children(c):
                    assert parent(kid) == c

    def test_parent_examples(self):
        assert parent(cell_canonical(0, 1, 2)) == zp_cell(2)
        assert parent(cell_canonical(1, 1, 2)) == zp_cell(2)

    def test_exhaustive_round_trip_to_depth_four(self):
        for p in (2, 3):
            frontier = [zp_cell(p)]
            for _ in range(4):
                nxt = []
                for c in frontier:
                    kids = children(c)
                    assert len(set(kids)) == p
                    assert all(parent(k) == c for k in kids)
                    nxt.extend(kids)
                frontier = nxt
            assert len(frontier) == p**4


class TestMeetAndMetric:
    def test_meet_of_cell_with_itself(self):
        c = cell_canonical(Fraction(1, 3), 2, 2)
        assert meet(c, c) == c

    def test_meet_of_siblings(self):
        kids = children(zp_cell(2))
        assert meet(kids[0], kids[1]) == zp_cell(2)

    def test_sibling_distance(self):
        kids = children(zp_cell(2))
        assert rho(kids[0], kids[1]) == 2

    def test_parent_child_edge(self):
        assert rho(zp_cell(3), cell_canonical(0, 1, 3)) == 1

    def test_metric_axioms_on_samples(self):
        rng = random.Random(4)
        for _ in range(1000):
            a, b, c = (sampling.cell(rng, 2) for _ in range(3))
            assert rho(a, b) == rho(b, a)
            assert (rho(a, b) == 0) == (a == b)
            assert rho(a, c) <= rho(a, b) + rho(b, c)

    def test_meet_is_minimal(self):
        rng = random.Random(5)
        for _ in range(300):
            a, b = sampling.cell(rng, 3), sampling.cell(rng, 3)
            m = meet(a, b)
            assert cell_contains(m, a.center) and cell_contains(m, b.center)
            assert m.scale <= min(a.scale, b.scale)
            blocking = [
                kid for kid in children(m)
                if cell_contains(kid, a.center)
                and cell_contains(kid, b.center)
                and kid.scale <= min(a.scale, b.scale)
            ]
            assert not blocking


class TestAction:
    def test_identity_fixes_cells(self):
        rng = random.Random(6)
        for _ in range(100):
            c = sampling.cell(rng, 2)
            assert act(AffineMap.identity(2), c) == c

    def test_worked_example(self):
        f = AffineMap(Fraction(2), Fraction(1), 2)
        assert act(f, zp_cell(2)) == cell_canonical(1, 1, 2)

    def test_rho_invariance(self):
        rng = random.Random(7)
        for _ in range(1000):
            f = sampling.affine_map(rng, 2)
            a, b = sampling.cell(rng, 2), sampling.cell(rng, 2)
            assert rho(act(f, a), act(f, b)) == rho(a, b)

    def test_action_is_composition_compatible(self):
        rng = random.Random(8)
        for _ in range(300):
            f = sampling.affine_map(rng, 2)
            g = sampling.affine_map(rng, 2)
            c = sampling.cell(rng, 2)
            assert act(aff_compose(f, g), c) == act(f, act(g, c))

    def test_non_invertible_rejected(self):
        with pytest.raises(ValueError):
            act(AffineMap(Fraction(0), Fraction(1), 2), zp_cell(2))


class TestGroupSemimetric:
    def test_self_distance(self):
        f = AffineMap(Fraction(3), Fraction(7), 2)
        assert cell_semimetric(f, f) == 0

    def test_scaling_by_p(self):
        f = AffineMap(Fraction(2), Fraction(0), 2)
        assert cell_semimetric(f, AffineMap.identity(2)) == 1

    def test_vanishes_exactly_on_integral_cosets(self):
        rng = random.Random(9)
        for _ in range(500):
            f = sampling.affine_map(rng, 2)
            beta = sampling.affine_star_zp(rng, 2)
            assert cell_semimetric(aff_compose(f, beta), f) == 0
        for _ in range(500):
            f = sampling.affine_map(rng, 2)
            g = sampling.affine_map(rng, 2)
            vanished = cell_semimetric(f, g) == 0
            quotient = aff_compose(
                AffineMap(1 / g.a, -g.b / g.a, 2), f)
            from padics.affine import membership
            assert vanished == membership(quotient).in_Astar_Zp

    def test_left_invariance(self):
        rng = random.Random(10)
        for _ in range(500):
            f, g, h = (sampling.affine_map(rng, 2) for _ in range(3))
            assert (cell_semimetric(aff_compose(h, f), aff_compose(h, g))
                    == cell_semimetric(f, g))


class TestSeparation:
    def test_equal_maps_are_inseparable(self):
        f = AffineMap(Fraction(3), Fraction(5), 2)
        assert separating_cell(f, f) is None

    def test_distinct_maps_get_a_witness(self):
        rng = random.Random(11)
        for _ in range(500):
            f = sampling.affine_map(rng, 2)
            g = sampling.affine_map(rng, 2)
            if f == g:
                continue
            cell = separating_cell(f, g)
            assert cell is not None
            assert act(f, cell) != act(g, cell)

    def test_adversarial_close_coefficients(self):
        # nearly equal maps of very negative valuation need deep cells
        f = AffineMap(Fraction(1, 2**20), Fraction(0), 2)
        g = AffineMap(Fraction(1, 2**20) + 1, Fraction(0), 2)
        cell = separating_cell(f, g)
        assert cell is not None and act(f, cell) != act(g, cell)


class TestBoundedness:
    def test_singleton(self):
        c = cell_canonical(Fraction(1, 3), 2, 2)
        witness = is_bounded_cellset([c])
        assert witness.bounded and witness.hull == c

    def test_pair(self):
        a = zp_cell(2)
        b = cell_canonical(1, 1, 2)
        witness = is_bounded_cellset([a, b])
        assert witness.hull == a

    def test_hull_contains_all(self):
        rng = random.Random(12)
        for _ in range(200):
            cs = [sampling.cell(rng, 3) for _ in range(5)]
            witness = is_bounded_cellset(cs)
            for c in cs:
                assert cell_contains(witness.hull, c.center)
                assert witness.hull.scale <= c.scale

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            is_bounded_cellset([])


class TestExport:
    def test_depth_zero_single_node(self):
        doc = export_tree(zp_cell(2), 0)
        assert doc.count("label=") == 1
        assert "->" not in doc

    def test_binary_depth_two_counts(self):
        doc = export_tree(zp_cell(2), 2)
        assert doc.count("label=") == 7   # 1 + 2 + 4
        assert doc.count("->") == 6

    def test_ternary_depth_two_counts(self):
        doc = export_tree(zp_cell(3), 2)
        assert doc.count("label=") == 13  # 1 + 3 + 9

    def test_json_structure(self):
        doc = json.loads(export_tree(zp_cell(3), 1, fmt="json"))
        assert doc["center"] == "0" and len(doc["children"]) == 3

    def test_node_limit(self):
        with pytest.raises(ValueError):
            export_tree(zp_cell(2), 5, node_limit=10)

    def test_deterministic_output(self):
        assert export_tree(zp_cell(2), 3) == export_tree(zp_cell(2), 3)
