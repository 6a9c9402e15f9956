"""Exact lattice arithmetic: Hermite bases, membership, intersections and semigroup membership."""

from __future__ import annotations

import itertools
import math
import random

import pytest

from api.modules.toric.lattice_core.impl import (
    IntegerLattice,
    combine,
    hermite_basis,
    is_cyclic_generated_by,
    lattice_intersection,
    lattice_membership,
    lattices_equal,
    semigroup_membership,
)
from core.errors import InvalidInputError

# ---------------------------------------------------------------------------
# Fixtures
# ---------------------------------------------------------------------------

# T_1 of the (n, f, g) = (3, 3, 2) family: v_i = 6e_i, w_1, w_2
T1_332 = [(6, 0, 0), (0, 6, 0), (0, 0, 6), (1, 0, 1), (0, 1, 1)]
W3_332 = (4, 4, 2)


def _brute_semigroup(target, gens) -> bool:
    """Plain recursion over bounded coefficients, no pruning."""
    if not any(target):
        return True
    if not gens:
        return False
    g, rest = gens[0], gens[1:]
    bound = min(t // a for t, a in zip(target, g) if a)
    for k in range(bound + 1):
        if _brute_semigroup(tuple(t - k * a for t, a in zip(target, g)), rest):
            return True
    return False


# ---------------------------------------------------------------------------
# hermite_basis / lattice_membership
# ---------------------------------------------------------------------------


class TestHermiteBasis:
    def test_standard_basis(self):
        L = hermite_basis([(1, 0), (0, 1)])
        assert L.basis == ((1, 0), (0, 1))
        assert L.rank == 2

    def test_single_generator(self):
        L = hermite_basis([(2, 4)])
        assert L.basis == ((2, 4),)

    def test_family_lattice_has_index_six(self):
        L = hermite_basis(T1_332)
        assert L.basis == ((1, 0, 1), (0, 1, 1), (0, 0, 6))
        assert math.prod(row[col] for row, col in zip(L.basis, L.pivots)) == 6
        assert W3_332 in L

    def test_canonical_form_is_independent_of_generator_order(self):
        shuffled = list(reversed(T1_332))
        assert lattices_equal(hermite_basis(T1_332), hermite_basis(shuffled))

    def test_dimension_mismatch(self):
        with pytest.raises(InvalidInputError):
            hermite_basis([(1, 0), (0, 1, 0)])

    def test_empty_generators(self):
        with pytest.raises(InvalidInputError):
            hermite_basis([])

    @pytest.mark.parametrize("seed", range(10))
    def test_round_trip_membership(self, seed: int):
        rng = random.Random(seed)
        dim = rng.randint(2, 4)
        gens = [tuple(rng.randint(-9, 9) for _ in range(dim)) for _ in range(rng.randint(1, 5))]
        if not any(any(g) for g in gens):
            gens.append((1,) + (0,) * (dim - 1))
        L = hermite_basis(gens)
        for g in gens:
            rep = lattice_membership(g, L)
            assert rep is not None
            assert combine(rep, L.basis) == tuple(g)

    @pytest.mark.parametrize("seed", range(10))
    def test_basis_is_in_row_hermite_form(self, seed: int):
        rng = random.Random(500 + seed)
        dim = rng.randint(2, 5)
        gens = [tuple(rng.randint(-12, 12) for _ in range(dim)) for _ in range(rng.randint(2, 6))]
        L = hermite_basis(gens)
        assert list(L.pivots) == sorted(set(L.pivots))
        for k, (row, col) in enumerate(zip(L.basis, L.pivots)):
            assert row[col] > 0
            assert all(0 <= above[col] < row[col] for above in L.basis[:k])
        assert all(g in L for g in gens)
        if L.basis:
            assert lattices_equal(hermite_basis(list(L.basis)), L)

    @pytest.mark.parametrize(
        "generators",
        [[(1.5, 0), (0, 1)], [(2.0, 0)], [(True, 0), (0, 1)], [("1", 0)]],
    )
    def test_non_integer_entries_are_rejected(self, generators):
        with pytest.raises(InvalidInputError) as exc:
            hermite_basis(generators)
        assert exc.value.error_code == "MALFORMED_VECTOR"


class TestLatticeMembership:
    def test_w_n_in_z_t1(self):
        L = hermite_basis(T1_332)
        rep = lattice_membership(W3_332, L)
        assert rep is not None
        assert combine(rep, L.basis) == W3_332

    def test_relation_five_combination(self):
        # v_1 + v_2 + v_3 - 2(w_1 + w_2) = w_3
        assert combine((1, 1, 1, -2, -2), T1_332) == W3_332

    def test_zero_vector(self):
        L = hermite_basis(T1_332)
        assert lattice_membership((0, 0, 0), L) == (0, 0, 0)

    def test_not_divisible(self):
        L = hermite_basis([(6, 0, 0), (0, 6, 0), (0, 0, 6)])
        assert lattice_membership((1, 1, 1), L) is None

    def test_vector_outside_span(self):
        L = hermite_basis([(1, 1, 0)])
        assert lattice_membership((1, 0, 0), L) is None

    def test_dimension_mismatch(self):
        with pytest.raises(InvalidInputError):
            lattice_membership((1, 2), hermite_basis(T1_332))

    def test_float_vector_is_rejected(self):
        with pytest.raises(InvalidInputError) as exc:
            lattice_membership((4.0, 4, 2), hermite_basis(T1_332))
        assert exc.value.error_code == "MALFORMED_VECTOR"


# ---------------------------------------------------------------------------
# lattice_intersection / is_cyclic_generated_by
# ---------------------------------------------------------------------------


class TestLatticeIntersection:
    def test_scaled_units_with_single_row(self):
        L = lattice_intersection(hermite_basis([(6, 0, 0), (0, 6, 0), (0, 0, 6)]), hermite_basis([(1, 0, 1)]))
        assert L.basis == ((6, 0, 6),)

    def test_idempotent(self):
        L = hermite_basis(T1_332)
        assert lattices_equal(lattice_intersection(L, L), L)

    def test_omission_intersection_is_f_times_w_n(self):
        t_omit = [(6, 0, 0), (0, 6, 0), (0, 0, 6), (1, 0, 1)]
        L = lattice_intersection(hermite_basis(t_omit), hermite_basis([W3_332]))
        assert is_cyclic_generated_by(L) == (12, 12, 6)

    def test_zero_intersection(self):
        L = lattice_intersection(hermite_basis([(1, 0)]), hermite_basis([(0, 1)]))
        assert L.rank == 0
        assert is_cyclic_generated_by(L) is None

    def test_dimension_mismatch(self):
        with pytest.raises(InvalidInputError):
            lattice_intersection(hermite_basis([(1, 0)]), hermite_basis([(1, 0, 0)]))

    @pytest.mark.parametrize("seed", range(8))
    def test_intersection_is_exact(self, seed: int):
        rng = random.Random(100 + seed)
        dim = 3
        L1 = hermite_basis([tuple(rng.randint(-6, 6) for _ in range(dim)) for _ in range(3)] + [(1, 1, 1)])
        L2 = hermite_basis([tuple(rng.randint(-6, 6) for _ in range(dim)) for _ in range(2)] + [(2, 0, 2)])
        meet = lattice_intersection(L1, L2)
        for row in meet.basis:
            assert row in L1
            assert row in L2
        for _ in range(50):
            coeffs = [rng.randint(-4, 4) for _ in L1.basis]
            v = combine(coeffs, L1.basis)
            if v in L2:
                assert v in meet

    @pytest.mark.parametrize("n", [3, 4])
    def test_lemma_one_stepwise_intersections(self, n: int):
        rng = random.Random(n)
        for _ in range(12):
            c, d = rng.randint(1, 12), rng.randint(1, 12)
            m = math.lcm(c, d)
            indices = rng.sample(range(n - 1), rng.randint(1, n - 1))
            gens = [tuple(c if j == i else 0 for j in range(n)) for i in range(n)]
            for i in indices:
                w = tuple(d if j in (i, n - 1) else 0 for j in range(n))
                L = lattice_intersection(hermite_basis(gens), hermite_basis([w]))
                assert is_cyclic_generated_by(L) == tuple((m // d) * a for a in w)
                gens.append(w)


class TestCyclicGenerator:
    def test_rank_one(self):
        assert is_cyclic_generated_by(hermite_basis([(6, 0, 6)])) == (6, 0, 6)

    def test_rank_two(self):
        assert is_cyclic_generated_by(hermite_basis([(1, 0), (0, 1)])) is None

    def test_sign_normalization(self):
        L = IntegerLattice(basis=((-4, -4, -2),), ambient_dim=3)
        assert is_cyclic_generated_by(L) == (4, 4, 2)


# ---------------------------------------------------------------------------
# semigroup_membership
# ---------------------------------------------------------------------------


class TestSemigroupMembership:
    def test_three_w_n_uses_only_the_v(self):
        rep = semigroup_membership((12, 12, 6), T1_332)
        assert rep is not None
        assert rep.coefficients == (2, 2, 1, 0, 0)
        assert rep.expand(T1_332) == (12, 12, 6)

    def test_two_w_n(self):
        rep = semigroup_membership((8, 8, 4), T1_332)
        assert rep is not None
        assert rep.coefficients == (1, 1, 0, 2, 2)

    def test_w_n_not_in_semigroup(self):
        assert semigroup_membership(W3_332, T1_332) is None

    def test_zero_target(self):
        rep = semigroup_membership((0, 0, 0), T1_332)
        assert rep is not None
        assert rep.coefficients == (0, 0, 0, 0, 0)

    def test_negative_coordinate(self):
        with pytest.raises(InvalidInputError):
            semigroup_membership((1, -1, 0), T1_332)

    def test_zero_generator(self):
        with pytest.raises(InvalidInputError):
            semigroup_membership((1, 1), [(0, 0), (1, 1)])

    @pytest.mark.parametrize(
        ("target", "generators"),
        [((2.7, 0), [(1, 0)]), ((2, 0), [(1.0, 0)]), ((1, 0), [(True, 0)])],
    )
    def test_non_integer_input_is_rejected(self, target, generators):
        with pytest.raises(InvalidInputError) as exc:
            semigroup_membership(target, generators)
        assert exc.value.error_code == "MALFORMED_VECTOR"

    @pytest.mark.parametrize("seed", range(25))
    def test_agrees_with_plain_recursion(self, seed: int):
        rng = random.Random(1000 + seed)
        dim = rng.randint(1, 3)
        count = rng.randint(1, 4)
        gens = []
        while len(gens) < count:
            g = tuple(rng.randint(0, 7) for _ in range(dim))
            if any(g):
                gens.append(g)
        for target in itertools.islice(
            itertools.product(range(0, 21, 3), repeat=dim), 0, None, max(1, 7 ** dim // 40)
        ):
            rep = semigroup_membership(target, gens)
            assert (rep is not None) == _brute_semigroup(target, gens)
            if rep is not None:
                assert rep.expand(gens) == target
