"""Tests for Mackey functors, morphisms, the catalog and identification."""

import itertools

import pytest

from mackeycalc.algebra.grouptab import C2, K4
from mackeycalc.algebra.zlattice import IntMatrix
from mackeycalc.common.errors import MackeyAxiomError
from mackeycalc.mackey import catalog
from mackeycalc.mackey.change import geometric_fixed, induce, inflate, restrict
from mackeycalc.mackey.functor import (
    MackeyFunctor,
    MackeyMorphism,
    cokernel,
    direct_sum,
    dual,
    hom_space,
    kernel,
    require_valid,
    validate,
)
from mackeycalc.mackey.gsets import GSet, evaluate, pullback, pushforward
from mackeycalc.mackey.identify import IDENTIFY_CACHE_SIZE, _identify_document, display_name, identify
from mackeycalc.mackey.serialize import dumps, loads


def first_morphism(source: MackeyFunctor, target: MackeyFunctor, accept) -> MackeyMorphism | None:
    """First 0/1 combination of hom_space generators passing ``accept``."""
    generators = hom_space(source, target)
    subs = source.table.subgroups
    for mask in itertools.product((0, 1), repeat=len(generators)):
        components = {
            sub: IntMatrix.zeros(source.level(sub).generator_count, target.level(sub).generator_count) for sub in subs
        }
        for bit, h in zip(mask, generators, strict=True):
            if bit:
                components = {sub: components[sub] + h.components[sub] for sub in subs}
        f = MackeyMorphism(source, target, components)
        if accept(f):
            return f
    return None


def levelwise(f: MackeyMorphism, check: str) -> bool:
    return all(getattr(f.component(sub), check)() for sub in f.source.table.subgroups)


@pytest.mark.parametrize("group", ["e", "C2", "K4"])
def test_catalog_entries_satisfy_the_axioms(group):
    for entry in catalog.entries(group):
        assert validate(entry.value) == [], entry.name


def test_catalog_lookup_errors():
    with pytest.raises(KeyError, match="Catalog entry not found"):
        catalog.get_entry("K4", "no-such-functor")
    assert "F2" in catalog.list_entries("C2")


def test_broken_functor_is_reported():
    # res = tr = 1 on F2 breaks the double coset formula: res tr = 1 + gamma = 0
    bad = MackeyFunctor.build(
        C2, {"C2": [2], "e": [2]}, res={("e", "C2"): [[1]]}, tr={("e", "C2"): [[1]]}, name="bad"
    )
    problems = validate(bad)
    assert any("double coset" in p for p in problems)
    with pytest.raises(MackeyAxiomError):
        require_valid(bad)


def test_build_rejects_unknown_subgroup():
    with pytest.raises(ValueError, match="Unknown subgroup"):
        MackeyFunctor.build(C2, {"L": [2]})


class TestDuality:
    def test_dual_swaps_restriction_and_transfer(self, k4_functor):
        assert identify(dual(k4_functor("F2"))).name == "F2*"
        assert identify(dual(k4_functor("n_D"))).name == "n_D*"

    def test_dual_is_an_involution(self, k4_functor):
        for name in ["F2", "E", "mg", "B(2,0)"]:
            m = k4_functor(name)
            assert identify(dual(dual(m))).name == identify(m).name

    @pytest.mark.parametrize(("name", "expected"), [("g", "g"), ("B(2,0)", "B(2,0)"), ("mg", "mg*"), ("mg*", "mg")])
    def test_duals_in_the_catalog(self, k4_functor, name, expected):
        assert identify(dual(k4_functor(name))).name == expected

    def test_c2_g_is_self_dual(self, c2_functor):
        assert identify(dual(c2_functor("g"))).name == "g"

    def test_dual_needs_finite_levels(self, k4_functor):
        with pytest.raises(ValueError, match="finite"):
            dual(k4_functor("Z"))


class TestMorphisms:
    def test_kernel_and_cokernel(self, c2_functor):
        g, dual_f2 = c2_functor("g"), c2_functor("F2*")
        inclusion = MackeyMorphism(g, dual_f2, {"C2": IntMatrix.of([[1]]), "e": IntMatrix.zeros(0, 1)}).validate()
        quotient, projection = cokernel(inclusion)
        assert validate(quotient) == []
        assert identify(quotient).name == "f"
        ker, inc = kernel(projection)
        assert validate(ker) == []
        assert identify(ker).name == "g"
        assert inc.violations() == []

    def test_non_morphism_is_rejected(self, c2_functor):
        g, f2 = c2_functor("g"), c2_functor("F2")
        candidate = MackeyMorphism(g, f2, {"C2": IntMatrix.of([[1]]), "e": IntMatrix.zeros(0, 1)})
        assert candidate.violations()

    def test_hom_space(self, c2_functor):
        f2 = c2_functor("F2")
        generators = hom_space(f2, f2)
        assert all(h.violations() == [] for h in generators)
        assert any(not h.component("C2").is_zero() for h in generators)
        to_f2 = hom_space(c2_functor("g"), f2)
        assert all(h.component(sub).is_zero() for h in to_f2 for sub in C2.subgroups)

    def test_hom_space_between_levels_of_different_rank(self, k4_functor):
        # E has rank 3 on top, F2 has rank 1
        e, f2 = k4_functor("E"), k4_functor("F2")
        for source, target in [(e, f2), (f2, e)]:
            generators = hom_space(source, target)
            assert all(h.violations() == [] for h in generators)

    def test_augmentation_kernel_of_the_norm(self, k4_functor):
        ne, f2 = k4_functor("NeK_F2"), k4_functor("F2")
        augmentation = first_morphism(ne, f2, lambda f: levelwise(f, "is_surjective"))
        assert augmentation is not None
        assert augmentation.violations() == []
        ker, _ = kernel(augmentation)
        assert identify(ker).name == "B(2,0) + g^2"

    def test_cokernel_of_the_dual_constant_in_the_norm(self, k4_functor):
        dual_f2, ne = k4_functor("F2*"), k4_functor("NeK_F2")
        inclusion = first_morphism(dual_f2, ne, lambda f: levelwise(f, "is_injective"))
        assert inclusion is not None
        quotient, _ = cokernel(inclusion)
        assert validate(quotient) == []
        assert identify(quotient).name == "E"

    def test_composition(self, c2_functor):
        f2 = c2_functor("F2")
        identity = MackeyMorphism.identity(f2)
        assert identity.then(identity).is_isomorphism()


class TestChangeOfGroup:
    def test_restriction_of_constant_is_constant(self, k4_functor):
        for sub in ["L", "D", "R"]:
            assert identify(restrict(sub, k4_functor("F2"))).name == "F2"

    def test_induction_from_trivial_group(self):
        up = induce(C2, "e", catalog.get_functor("e", "F2"))
        assert validate(up) == []
        assert up.level("e").describe() == "Z/2 + Z/2"
        assert up.level("C2").describe() == "Z/2"

    def test_inflation_has_zero_below_the_kernel(self):
        m = inflate(K4, "L", catalog.get_functor("C2", "F2"))
        assert validate(m) == []
        assert m.support() == ["K", "L"]

    def test_geometric_fixed_points_of_constant(self, k4_functor):
        phi = geometric_fixed(k4_functor("F2"), "L")
        assert phi.table.group_id == "C2"
        assert identify(phi).name == "F2"

    def test_geometric_fixed_points_of_the_norm(self, k4_functor):
        ne = k4_functor("NeK_F2")
        assert identify(geometric_fixed(ne, "L")).name == "NeC2_F2"
        top = geometric_fixed(ne, "K")
        assert top.table.group_id == "e"
        assert top.level("e").describe() == "Z/2"


class TestGSets:
    def test_orbit_evaluation(self, k4_functor):
        x = GSet.orbit(K4, "L").times(GSet.orbit(K4, "R"))
        assert len(x.orbit_reps) == 1
        assert x.stabilizers == ["e"]
        assert evaluate(k4_functor("F2"), x).describe() == "Z/2"

    def test_push_then_pull_is_multiplication_by_index(self, c2_functor):
        # Z: pull back along G/e -> G/G then push forward gives tr res = 2
        z = c2_functor("Z")
        free, point = GSet.orbit(C2, "e"), GSet.point(C2)
        to_point = lambda p: point.points[0]  # noqa: E731
        composite = pullback(z, free, point, to_point) @ pushforward(z, free, point, to_point)
        assert composite == IntMatrix.of([[2]])


class TestIdentification:
    def test_catalog_atoms_identify_as_themselves(self, k4_functor):
        for name in ["F2", "F2*", "g", "mg", "n_D", "E"]:
            assert identify(k4_functor(name)).name == name

    @pytest.mark.parametrize("group", ["e", "C2", "K4"])
    def test_every_atom_identifies_as_itself(self, group):
        for entry in catalog.entries(group, atoms_only=True):
            found = identify(entry.value)
            assert found.name == entry.name
            assert found.isomorphism is not None and found.isomorphism.is_isomorphism()

    def test_sum_with_a_dual(self, k4_functor):
        assert identify(direct_sum(k4_functor("mg*"), k4_functor("g"))).name == "mg* + g"

    def test_renamed_functor_reuses_the_cached_result(self, k4_functor):
        m = k4_functor("mg").with_name("renamed")
        found = identify(m)
        assert found.name == "mg"
        assert found.isomorphism is not None and found.isomorphism.target is m
        assert _identify_document.cache_info().maxsize == IDENTIFY_CACHE_SIZE

    def test_unidentified_keeps_the_document(self):
        m = MackeyFunctor.build(C2, {"C2": [8], "e": [2]}, res={("e", "C2"): [[1]]}, name="odd")
        found = identify(m)
        assert not found.identified
        assert found.document is not None and found.document["name"] == "odd"

    def test_sums_fold_inflations(self, k4_functor):
        total = direct_sum(*(k4_functor(f"phi*_{h}(F2)") for h in "LDR"))
        found = identify(total)
        assert found.name == "phi*_LDR(F2)"
        assert found.isomorphism is not None and found.isomorphism.is_isomorphism()

    def test_powers(self, k4_functor):
        g = k4_functor("g")
        assert identify(direct_sum(g, g, g)).name == "g^3"
        assert identify(direct_sum(k4_functor("F2"), g)).name == "F2 + g"

    def test_zero(self):
        assert identify(MackeyFunctor.zero(K4)).name == "0"

    def test_display_names(self):
        assert display_name([]) == "0"
        assert display_name([("phi*_L(F2)", 1), ("phi*_D(F2)", 1), ("phi*_R(F2)", 1), ("g", 2)]) == (
            "phi*_LDR(F2) + g^2"
        )
        assert display_name([("phi*_L(f)", 1), ("phi*_R(f)", 1)]) == "phi*_LR(f)"


def test_lewis_document_round_trip(k4_functor):
    m = k4_functor("E")
    text = dumps(m)
    assert '"format": "mackeycalc.lewis/1"' in text
    again = loads(text)
    assert again == m
    assert dumps(again) == text


def test_lewis_document_rejects_unknown_format():
    with pytest.raises(ValueError, match="Unknown document format"):
        loads('{"format": "other/1"}')
