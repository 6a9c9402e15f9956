"""Ideal membership, fibers and bounded Markov bases."""

from __future__ import annotations

import math
from itertools import combinations

import pytest

from api.modules.toric.family.impl import lemma1_ci_binomials, lemma1_configuration
from api.modules.toric.lattice_core.impl import hermite_basis, lattice_intersection, lattices_equal
from api.modules.toric.toric_ideal.impl import (
    binomial_grading,
    binomial_in_ideal,
    enumerate_fiber,
    indispensable_binomials,
    markov_basis,
    minimal_generator_count,
    spanning_check,
)
from core.errors import InvalidInputError
from shared.toric_types import Binomial, ToricConfiguration

EXAMPLE1_GENERATORS = {
    "y1^6 - x1*x3",
    "y2^6 - x2*x3",
    "y3^2 - x1*x2*y1^2*y2^2",
    "x3*y3 - y1^4*y2^4",
    "y1^2*y3 - x1*y2^4",
    "y2^2*y3 - x2*y1^4",
}


@pytest.fixture
def example1() -> ToricConfiguration:
    return ToricConfiguration(n=3, c=6, rows=((1, 0, 1), (0, 1, 1), (4, 4, 2)))


@pytest.fixture(scope="module")
def example1_markov():
    T = ToricConfiguration(n=3, c=6, rows=((1, 0, 1), (0, 1, 1), (4, 4, 2)))
    return markov_basis(T, 36)


def _binomial(plus, minus, n=3) -> Binomial:
    return Binomial(tuple(plus), tuple(minus), n)


# ---------------------------------------------------------------------------
# binomial_in_ideal / enumerate_fiber
# ---------------------------------------------------------------------------


class TestBinomialInIdeal:
    def test_relation_from_the_gluing(self, example1):
        b = _binomial((0, 0, 0, 0, 0, 2), (1, 1, 0, 2, 2, 0))
        assert binomial_in_ideal(b, example1)

    def test_y3_cubed_relation(self, example1):
        b = _binomial((0, 0, 0, 0, 0, 3), (2, 2, 1, 0, 0, 0))
        assert binomial_in_ideal(b, example1)

    def test_non_member(self, example1):
        b = _binomial((0, 0, 0, 0, 0, 1), (1, 0, 0, 0, 0, 0))
        assert not binomial_in_ideal(b, example1)

    def test_arity_mismatch(self, example1):
        b = _binomial((0, 0, 0, 1), (1, 0, 0, 0))
        with pytest.raises(InvalidInputError) as exc:
            binomial_in_ideal(b, example1)
        assert exc.value.error_code == "ARITY_MISMATCH"

    def test_grading(self, example1):
        b = _binomial((0, 0, 0, 0, 0, 2), (1, 1, 0, 2, 2, 0))
        assert binomial_grading(b, example1) == 20


class TestEnumerateFiber:
    def test_two_point_fiber(self, example1):
        fiber = enumerate_fiber(example1, (8, 8, 4))
        assert fiber.points == ((0, 0, 0, 0, 0, 2), (1, 1, 0, 2, 2, 0))
        assert fiber.grading == 20

    def test_single_point(self, example1):
        assert enumerate_fiber(example1, (6, 0, 0)).points == ((1, 0, 0, 0, 0, 0),)

    def test_empty_fiber(self, example1):
        assert enumerate_fiber(example1, (1, 0, 0)).points == ()

    def test_zero_degree(self, example1):
        assert enumerate_fiber(example1, (0, 0, 0)).points == ((0,) * 6,)

    def test_every_point_maps_to_the_degree(self, example1):
        fiber = enumerate_fiber(example1, (12, 12, 12))
        assert len(fiber.points) > 2
        assert all(example1.image(z) == (12, 12, 12) for z in fiber.points)

    def test_dimension_mismatch(self, example1):
        with pytest.raises(InvalidInputError) as exc:
            enumerate_fiber(example1, (1, 2))
        assert exc.value.error_code == "DIMENSION_MISMATCH"

    def test_negative_degree(self, example1):
        with pytest.raises(InvalidInputError) as exc:
            enumerate_fiber(example1, (1, -1, 0))
        assert exc.value.error_code == "NEGATIVE_COORDINATE"


# ---------------------------------------------------------------------------
# markov_basis
# ---------------------------------------------------------------------------


class TestMarkovBasis:
    def test_example1_has_six_minimal_generators(self, example1_markov):
        assert example1_markov.count == 6
        assert {b.to_text() for b in example1_markov.binomials} == EXAMPLE1_GENERATORS
        assert example1_markov.complete_up_to_bound
        assert example1_markov.degree_bound_used == 36

    def test_example1_gradings(self, example1, example1_markov):
        assert [binomial_grading(b, example1) for b in example1_markov.binomials] == [12, 12, 14, 14, 16, 20]

    def test_example1_generators_are_indispensable(self, example1_markov):
        assert len(indispensable_binomials(example1_markov)) == 6

    def test_generators_are_canonical_and_in_ideal(self, example1, example1_markov):
        for b in example1_markov.binomials:
            assert b.is_canonical()
            assert binomial_in_ideal(b, example1)

    def test_minimal_generator_count(self, example1):
        assert minimal_generator_count(example1, 36) == (6, True)

    def test_small_bound_is_flagged_incomplete(self, example1):
        result = markov_basis(example1, 20)
        assert result.count == 6
        assert not result.complete_up_to_bound

    def test_free_configuration(self):
        result = markov_basis(ToricConfiguration(n=3, c=2), 20)
        assert result.count == 0
        assert result.complete_up_to_bound

    @pytest.mark.parametrize("bound", [0, -3])
    def test_invalid_bound(self, example1, bound):
        with pytest.raises(InvalidInputError) as exc:
            markov_basis(example1, bound)
        assert exc.value.error_code == "INVALID_BOUND"

    def test_deterministic(self, example1):
        assert markov_basis(example1, 24) == markov_basis(example1, 24)


class TestLemma1Configurations:
    """T^{(i_1..i_k)}: splitting off the last w is a gluing and the ideal is the complete intersection of F_{i_h}."""

    @pytest.mark.parametrize("n", [3, 4])
    @pytest.mark.parametrize("c", range(1, 9))
    @pytest.mark.parametrize("d", range(1, 9))
    def test_intersection_and_markov_basis(self, n: int, c: int, d: int):
        m = math.lcm(c, d)
        for k in range(1, n):
            for indices in combinations(range(1, n), k):
                T = lemma1_configuration(n, c, d, indices)
                gens = T.generators
                w = gens[-1]
                meet = lattice_intersection(hermite_basis(gens[:-1]), hermite_basis([w]))
                assert lattices_equal(meet, hermite_basis([tuple(m // d * a for a in w)]))

                result = markov_basis(T, 2 * m)
                expected = {b.canonical() for b in lemma1_ci_binomials(n, c, d, indices)}
                assert set(result.binomials) == expected


class TestSpanningCheck:
    def test_markov_basis_spans(self, example1, example1_markov):
        assert spanning_check(example1, example1_markov.binomials, 30)

    def test_dropping_a_generator_disconnects_a_fiber(self, example1, example1_markov):
        kept = [b for b in example1_markov.binomials if b.to_text() != "x3*y3 - y1^4*y2^4"]
        assert not spanning_check(example1, kept, 30)

    def test_arity_mismatch(self, example1):
        with pytest.raises(InvalidInputError):
            spanning_check(example1, [_binomial((0, 1), (1, 0), n=1)], 10)
