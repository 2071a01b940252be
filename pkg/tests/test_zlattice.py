"""Tests for integer lattices, presentations and homomorphisms."""

import random

import pytest
from sympy import Matrix
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from mackeycalc.algebra.zlattice import (
    AbHom,
    AbPresentation,
    IntMatrix,
    Lattice,
    cokernel,
    dual_hom,
    dual_presentation,
    hermite_normal_form,
    homology,
    iso_test,
    kernel,
    left_kernel,
    smith_normal_form,
    solve_integer,
)
from mackeycalc.common.errors import IllDefinedHomError


def _random_matrix(rng: random.Random, rows: int, cols: int) -> IntMatrix:
    return IntMatrix.of([[rng.randint(-6, 6) for _ in range(cols)] for _ in range(rows)], cols=cols)


class TestSmithNormalForm:
    def test_factorization(self):
        rng = random.Random(1)
        for _ in range(25):
            m = _random_matrix(rng, rng.randint(1, 4), rng.randint(1, 4))
            u, d, v = smith_normal_form(m)
            assert u @ m @ v == d
            for i in range(d.rows):
                for j in range(d.cols):
                    if i != j:
                        assert d[i, j] == 0

    def test_divisibility_chain(self):
        m = IntMatrix.of([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
        _, d, _ = smith_normal_form(m)
        diag = [abs(d[i, i]) for i in range(3)]
        assert diag == [2, 6, 12]

    def test_agrees_with_sympy(self):
        rng = random.Random(5)
        for _ in range(10):
            m = _random_matrix(rng, 3, 3)
            ours = AbPresentation(3, m).elementary_divisors()
            theirs = sympy_snf(Matrix(m.tolist()))
            diag = sorted(abs(int(theirs[i, i])) for i in range(3))
            expected = sorted(x for x in diag if x > 1) + [0] * diag.count(0)
            assert ours == expected


class TestLattice:
    def test_membership_and_reduction(self):
        lat = Lattice(2, [(2, 0), (0, 4)])
        assert (4, 8) in lat
        assert (1, 0) not in lat
        assert lat.reduce((3, 5)) == (1, 1)

    def test_equality_is_span_equality(self):
        assert Lattice(2, [(2, 0), (0, 2)]) == Lattice(2, [(2, 2), (0, 2)])
        assert Lattice(2, [(2, 0)]) != Lattice(2, [(1, 0)])

    def test_coordinates_reconstruct(self):
        lat = Lattice(3, [(1, 2, 3), (0, 3, 1)])
        v = (2, 7, 7)
        coords = lat.coordinates(v)
        basis = lat.basis()
        rebuilt = tuple(sum(c * b[i] for c, b in zip(coords, basis, strict=True)) for i in range(3))
        assert rebuilt == v

    def test_hermite_normal_form_is_canonical(self):
        a = IntMatrix.of([[2, 4], [0, 6]])
        b = IntMatrix.of([[2, 10], [2, 4]])
        assert hermite_normal_form(a) == hermite_normal_form(b)


class TestPresentations:
    def test_describe(self):
        p = AbPresentation.from_relations(3, [(2, 0, 0), (0, 4, 0)])
        assert p.describe() == "Z/2 + Z/4 + Z"
        assert p.free_rank == 1
        assert not p.is_finite()

    def test_primary_decomposition(self):
        assert AbPresentation.cyclic(12).primary_decomposition() == [3, 4]

    def test_elements_of_finite_group(self):
        p = AbPresentation.from_divisors([2, 4])
        assert len(p.elements()) == 8
        assert len(set(p.elements())) == 8

    def test_infinite_group_has_no_order(self):
        with pytest.raises(ValueError, match="infinite"):
            AbPresentation.free(1).order()

    def test_simplify_maps_are_inverse(self):
        p = AbPresentation.from_relations(2, [(2, 4), (6, 6)])
        simple, to_simple, from_simple = p.simplify()
        assert iso_test(simple, p)
        assert to_simple.then(from_simple).equals(AbHom.identity(p))
        assert from_simple.then(to_simple).equals(AbHom.identity(simple))


class TestHomomorphisms:
    def test_ill_defined_map_is_rejected(self):
        z2 = AbPresentation.cyclic(2)
        z3 = AbPresentation.cyclic(3)
        with pytest.raises(IllDefinedHomError):
            AbHom.from_rows(z2, z3, [(1,)]).validate()

    def test_kernel_and_cokernel_of_doubling(self):
        z4 = AbPresentation.cyclic(4)
        double = AbHom.from_rows(z4, z4, [(2,)])
        ker, inc = kernel(double)
        coker, _ = cokernel(double)
        assert ker.elementary_divisors() == [2]
        assert coker.elementary_divisors() == [2]
        assert inc.then(double).is_zero()

    def test_preimage(self):
        z = AbPresentation.free(1)
        z6 = AbPresentation.cyclic(6)
        f = AbHom.from_rows(z, z6, [(2,)])
        assert f.preimage((4,)) is not None
        assert f.preimage((1,)) is None

    def test_isomorphism_detection(self):
        z2 = AbPresentation.cyclic(2)
        z3 = AbPresentation.cyclic(3)
        z6 = AbPresentation.cyclic(6)
        both = z2.direct_sum(z3)
        f = AbHom.from_rows(both, z6, [(3,), (2,)])
        assert f.is_isomorphism()

    def test_left_kernel_and_solve(self):
        m = IntMatrix.of([[1, 2], [2, 4], [0, 1]])
        null = left_kernel(m)
        assert (null @ m).is_zero()
        assert null.rows == 1
        x = solve_integer(m, (3, 7))
        assert x is not None
        assert IntMatrix.of([x], cols=3) @ m == IntMatrix.of([(3, 7)])
        assert solve_integer(IntMatrix.of([[2]]), (1,)) is None


class TestHomology:
    def test_multiplication_by_two_complex(self):
        # Z --2--> Z --0--> Z: homology in the middle is Z/2
        z = AbPresentation.free(1)
        incoming = AbHom.from_rows(z, z, [(2,)])
        outgoing = AbHom.zero(z, z)
        h = homology(z, outgoing, incoming)
        assert h.group.elementary_divisors() == [2]
        assert h.class_of((1,)) != h.class_of((2,))
        assert h.class_of(h.representative((1,))) == (1,)

    def test_exact_sequence_has_zero_homology(self):
        z = AbPresentation.free(1)
        z2 = AbPresentation.cyclic(2)
        incoming = AbHom.from_rows(z, z, [(2,)])
        outgoing = AbHom.from_rows(z, z2, [(1,)])
        assert homology(z, outgoing, incoming).group.is_trivial()


class TestDuality:
    def test_dual_of_finite_group(self):
        p = AbPresentation.from_divisors([2, 4])
        assert iso_test(dual_presentation(p), p)

    def test_dual_of_infinite_group_fails(self):
        with pytest.raises(ValueError):
            dual_presentation(AbPresentation.free(1))

    def test_dual_of_inclusion_is_projection(self):
        z2 = AbPresentation.cyclic(2)
        z4 = AbPresentation.cyclic(4)
        inclusion = AbHom.from_rows(z2, z4, [(2,)])
        d = dual_hom(inclusion)
        assert d.is_surjective()
        assert not d.is_injective()
