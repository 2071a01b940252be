"""Tests for Burnside functors, Tambara ideals, quotients and the norms of F2."""

import pytest

from mackeycalc.algebra.grouptab import K4
from mackeycalc.algebra.zlattice import Lattice
from mackeycalc.common.errors import InfiniteLevelError, NotInLevelError
from mackeycalc.mackey.identify import identify
from mackeycalc.tambara import serialize
from mackeycalc.tambara.burnside import burnside_norm
from mackeycalc.tambara.green import green_geometric_fixed, restrict_green
from mackeycalc.tambara.ideals import ideal_generate, quotient
from mackeycalc.tambara.norms import norm_value


class TestBurnside:
    def test_c2_burnside_is_a_tambara_functor(self, burnside_c2):
        assert burnside_c2.violations() == []

    def test_k4_burnside_is_a_tambara_functor(self, burnside_k4):
        assert burnside_k4.violations(span=1) == []

    @pytest.mark.parametrize("a", [-2, -1, 0, 1, 2, 3, 5])
    def test_c2_norm_formula(self, burnside_c2, a):
        # nm(a) = a + ((a^2 - a) / 2) t
        assert burnside_c2.norm("e", "C2", (a,)) == (a, (a * a - a) // 2)

    def test_composite_norm_matches_marks(self, burnside_k4):
        for a in range(-2, 4):
            assert burnside_k4.norm("e", "K", (a,)) == burnside_norm(K4, "e", "K", (a,))

    def test_products_count_orbits(self, burnside_c2):
        t = (0, 1)
        assert burnside_c2.green.multiply("C2", t, t) == (0, 2)


class TestIdeals:
    def test_closure_is_idempotent(self, burnside_c2):
        ideal = ideal_generate(burnside_c2, [("C2", burnside_c2.green.scalar("C2", 2))])
        assert ideal.violations() == []
        again = ideal_generate(
            burnside_c2, [(sub, v) for sub in burnside_c2.table.subgroups for v in ideal.basis(sub)]
        )
        assert again.lattices == ideal.lattices

    def test_closure_absorbs_norms(self, burnside_c2):
        ideal = ideal_generate(burnside_c2, [("e", (2,))])
        # nm(2) = 2 + t
        assert ideal.contains("C2", (2, 1))
        assert not ideal.contains("C2", (1, 0))

    def test_generator_of_wrong_length(self, burnside_c2):
        with pytest.raises(NotInLevelError):
            ideal_generate(burnside_c2, [("e", (1, 0))])


class TestQuotients:
    def test_two_at_the_top_gives_constant_f2(self, burnside_c2):
        ideal = ideal_generate(burnside_c2, [("C2", burnside_c2.green.scalar("C2", 2))])
        q = quotient(burnside_c2, ideal)
        assert q.violations() == []
        assert identify(q.mackey).name == "F2"

    def test_two_underlying_gives_z4_over_z2(self, burnside_c2):
        ideal = ideal_generate(burnside_c2, [("e", (2,))])
        q = quotient(burnside_c2, ideal)
        assert q.level("C2").elementary_divisors() == [4]
        assert q.level("e").elementary_divisors() == [2]
        assert identify(q.mackey).name == "NeC2_F2"

    def test_zero_ideal_returns_the_input(self, burnside_c2):
        ideal = ideal_generate(burnside_c2, [])
        assert ideal.is_zero()
        assert quotient(burnside_c2, ideal) is burnside_c2

    def test_infinite_quotient_names_the_level(self, burnside_c2):
        # 2 - t restricts to zero, so nothing reaches the underlying level
        ideal = ideal_generate(burnside_c2, [("C2", (2, -1))])
        with pytest.raises(InfiniteLevelError) as excinfo:
            quotient(burnside_c2, ideal)
        assert excinfo.value.level == "C2"


class TestNormFromTrivialSubgroup:
    def test_top_level(self, norm_e):
        top = norm_e.level("K")
        assert top.elementary_divisors() == [2, 2, 8]
        assert top.labels == ("1", "b_L", "b_R")

    def test_relations(self, norm_e):
        g = norm_e.green
        top = norm_e.level("K")
        b_l, b_r = (0, 1, 0), (0, 0, 1)
        assert top.is_zero(g.multiply("K", b_l, b_l))
        assert top.is_zero(g.multiply("K", b_r, b_r))
        assert top.is_zero(g.multiply("K", b_l, b_r))
        assert top.is_zero((0, 2, 0))
        assert top.is_zero((0, 0, 2))

    def test_norm_values(self, norm_e):
        top = norm_e.level("K")
        assert top.equal(norm_value(norm_e, "L", "K", (2,)), (0, 1, 0))
        assert top.equal(norm_value(norm_e, "L", "K", (3,)), (-3, 1, 0))
        assert top.equal(norm_e.norm("R", "K", (2,)), (0, 0, 1))
        assert top.equal(norm_value(norm_e, "e", "K", (1,)), norm_e.green.unit("K"))

    def test_top_closure_matches_the_groebner_basis(self, burnside_k4):
        ideal = ideal_generate(burnside_k4, [("e", (2,))])
        assert burnside_k4.level("K").labels == ("1", "t_L", "t_D", "t_R", "t_Lt_D")
        # t_H^2 = 2 t_H and t_H t_J = t_Lt_D in the Burnside ring
        printed = [
            (4, 2, 0, 0, 0),  # t_L^2 + 4
            (4, 0, 0, 0, 1),  # t_L t_R + 4
            (4, 0, 0, 2, 0),  # t_R^2 + 4
            (2, 1, 1, 1, 0),  # t_L + t_D + t_R + 2
            (4, 2, 0, 0, 0),  # 2 t_L + 4
            (4, 0, 0, 2, 0),  # 2 t_R + 4
            (8, 0, 0, 0, 0),
        ]
        assert ideal.lattices["K"] == Lattice(5, printed)
        assert all(ideal.contains("K", v) for v in printed)

    def test_transfers_and_restrictions(self, norm_e):
        g = norm_e.green
        top = norm_e.level("K")
        b_l, b_r = (0, 1, 0), (0, 0, 1)
        assert top.equal(g.tr("L", "K", g.unit("L")), (-2, 1, 0))
        assert top.equal(g.tr("R", "K", g.unit("R")), (-2, 0, 1))
        for h in "LDR":
            assert norm_e.level(h).is_zero(g.res(h, "K", b_l))
            assert norm_e.level(h).is_zero(g.res(h, "K", b_r))

    def test_tambara_axioms(self, norm_e):
        assert norm_e.violations() == []

    def test_geometric_fixed_points(self, norm_e):
        phi = green_geometric_fixed(norm_e, "L")
        assert phi.violations() == []
        assert identify(phi.mackey).name == "NeC2_F2"

    def test_geometric_fixed_points_at_the_top(self, norm_e):
        phi = green_geometric_fixed(norm_e, "K")
        assert phi.violations() == []
        assert phi.mackey.table.group_id == "e"
        assert identify(phi.mackey).name == "F2"

    def test_restriction_is_the_c2_norm(self, norm_e):
        res = restrict_green(norm_e, "L")
        assert res.violations() == []
        assert identify(res.mackey).name == "NeC2_F2"

    def test_document_round_trip(self, norm_e):
        text = serialize.dumps(norm_e)
        again = serialize.loads(text)
        assert serialize.dumps(again) == text
        assert again.violations() == []


class TestNormFromDiagonal:
    def test_top_level(self, norm_d):
        top = norm_d.level("K")
        assert top.elementary_divisors() == [2, 4]
        assert top.labels == ("1", "c")

    def test_relations(self, norm_d):
        g = norm_d.green
        top = norm_d.level("K")
        c = (0, 1)
        assert top.is_zero(g.multiply("K", c, c))
        assert top.is_zero((0, 2))

    def test_transfer_and_norm_values(self, norm_d):
        g = norm_d.green
        top = norm_d.level("K")
        assert top.equal(g.tr("L", "K", g.unit("L")), (2, 1))
        assert top.equal(norm_d.norm("R", "K", g.scalar("R", 2)), (0, 1))
        assert top.equal(norm_value(norm_d, "L", "K", g.scalar("L", 2)), (0, 1))
        assert top.equal(norm_value(norm_d, "L", "K", g.scalar("L", 3)), (1, 1))

    def test_two_torsion_from_transfer_of_restriction(self, norm_d):
        g = norm_d.green
        top = norm_d.level("K")
        one = g.unit("K")
        assert top.equal(g.tr("D", "K", g.res("D", "K", one)), g.scalar("K", 2))
        for x in top.elements():
            assert top.equal(g.tr("D", "K", g.res("D", "K", x)), g.multiply("K", x, g.scalar("K", 2)))
        assert top.is_zero(g.multiply("K", (0, 1), g.scalar("K", 2)))

    def test_tambara_axioms(self, norm_d):
        assert norm_d.violations() == []

    def test_augmentation_kernel(self, k4_functor):
        from mackeycalc.mackey.functor import hom_space, kernel

        nd, f2 = k4_functor("NDK_F2"), k4_functor("F2")
        surjections = [
            h for h in hom_space(nd, f2) if all(h.component(sub).is_surjective() for sub in K4.subgroups)
        ]
        assert surjections
        ker, _ = kernel(surjections[0])
        assert identify(ker).name == "n_D + g"
