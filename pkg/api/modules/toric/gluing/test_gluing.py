"""Gluing certificates, completely p-glued trees and the binomials they produce."""

from __future__ import annotations

from dataclasses import replace

import pytest

from api.modules.toric.family.impl import (
    FamilyParameters,
    build_family,
    lemma1_ci_binomials,
    lemma1_configuration,
    p_power_rep,
)
from api.modules.toric.gluing.impl import (
    GluingCertificate,
    GluingLeaf,
    GluingNode,
    binomials_from_tree,
    check_gluing,
    check_p_gluing,
    completely_glued,
    completely_p_glued,
    iter_nodes,
    proposition1_support_chain,
    tree_from_dict,
    validate_certificate,
    validate_tree,
)
from api.modules.toric.lattice_core.impl import NonnegCombination
from api.modules.toric.toric_ideal.impl import binomial_in_ideal
from core.errors import CertificateError, InvalidInputError, ResourceCapError
from shared.toric_types import ToricConfiguration

# ---------------------------------------------------------------------------
# Fixtures
# ---------------------------------------------------------------------------

FAMILY_INSTANCES = [(3, 3, 2), (3, 4, 3), (4, 4, 3), (4, 5, 4)]


@pytest.fixture
def example1() -> ToricConfiguration:
    return ToricConfiguration(n=3, c=6, rows=((1, 0, 1), (0, 1, 1), (4, 4, 2)))


@pytest.fixture
def free3() -> ToricConfiguration:
    return ToricConfiguration(n=3, c=2)


def _split_off_w_n(n: int, f: int, g: int) -> tuple[list, list]:
    """(Lemma-1 part T_1, {w_n}) of a family configuration."""
    gens = build_family(FamilyParameters(n, f, g)).generators
    return list(gens[:-1]), [gens[-1]]


# ---------------------------------------------------------------------------
# check_gluing / check_p_gluing
# ---------------------------------------------------------------------------


class TestCheckGluing:
    def test_diagonal_glues_onto_even_lattice(self):
        cert = check_gluing([(2, 0), (0, 2)], [(1, 1)])
        assert cert is not None
        assert cert.w == (2, 2)
        assert cert.alpha == 0
        assert cert.rep1.coefficients == (1, 1)
        assert cert.rep2.coefficients == (2,)

    def test_numerical_semigroup_gluing(self):
        cert = check_gluing([(4,), (6,)], [(9,)])
        assert cert is not None
        assert cert.w == (18,)
        assert cert.rep1.expand([(4,), (6,)]) == (18,)
        assert cert.rep2.coefficients == (2,)

    def test_rank_two_intersection_is_not_a_gluing(self):
        assert check_gluing([(1, 0), (0, 1)], [(1, 1), (1, 2)]) is None

    def test_lemma1_split_is_a_plain_gluing(self):
        T = lemma1_configuration(3, 6, 1, [1, 2])
        gens = T.generators
        cert = check_gluing(list(gens[:-1]), [gens[-1]])
        assert cert is not None
        assert cert.w == (0, 6, 6)
        assert cert.alpha == 0

    def test_overlapping_parts_are_rejected(self):
        with pytest.raises(InvalidInputError) as exc:
            check_gluing([(1, 0), (0, 1)], [(1, 0)])
        assert exc.value.error_code == "INVALID_PARTITION"

    def test_empty_part_is_rejected(self):
        with pytest.raises(InvalidInputError):
            check_gluing([(1, 0)], [])

    def test_dimension_mismatch(self):
        with pytest.raises(InvalidInputError) as exc:
            check_gluing([(1, 0)], [(1, 0, 0)])
        assert exc.value.error_code == "DIMENSION_MISMATCH"


class TestCheckPGluing:
    @pytest.mark.parametrize("p", [2, 3, 5])
    def test_example1_needs_exactly_one_power(self, p: int):
        T1, T2 = _split_off_w_n(3, 3, 2)
        cert = check_p_gluing(T1, T2, p)
        assert cert is not None
        assert cert.alpha == 1
        assert cert.w == (4, 4, 2)
        validate_certificate(cert, T1 + T2)

    @pytest.mark.parametrize("p", [2, 3, 5, 7])
    def test_plain_gluings_certify_with_alpha_zero_for_every_prime(self, p: int):
        cert = check_p_gluing([(2, 0), (0, 2)], [(1, 1)], p)
        assert cert is not None
        assert cert.alpha == 0
        assert cert.p == p

    def test_non_prime_is_rejected(self):
        with pytest.raises(InvalidInputError) as exc:
            check_p_gluing([(2, 0), (0, 2)], [(1, 1)], 4)
        assert exc.value.error_code == "NOT_PRIME"

    def test_alpha_max_bounds_the_search(self):
        T1, T2 = _split_off_w_n(3, 3, 2)
        assert check_p_gluing(T1, T2, 2, alpha_max=0) is None

    def test_p_zero_falls_back_to_plain_gluing(self):
        T1, T2 = _split_off_w_n(3, 3, 2)
        assert check_p_gluing(T1, T2, 0) is None


class TestCharacteristicDichotomy:
    """w_n is outside ℕT_1, yet a prime power of it lies inside for every p."""

    @pytest.mark.parametrize("n,f,g", FAMILY_INSTANCES)
    def test_no_plain_certificate(self, n: int, f: int, g: int):
        T1, T2 = _split_off_w_n(n, f, g)
        assert check_gluing(T1, T2) is None

    @pytest.mark.parametrize("n,f,g", FAMILY_INSTANCES)
    @pytest.mark.parametrize("p", [2, 3])
    def test_p_certificate_within_the_power_representation(self, n: int, f: int, g: int, p: int):
        T1, T2 = _split_off_w_n(n, f, g)
        cert = check_p_gluing(T1, T2, p)
        assert cert is not None
        assert 1 <= cert.alpha <= p_power_rep(f, g, p).alpha
        assert cert.w == T2[0]
        validate_certificate(cert, T1 + T2)

    @pytest.mark.parametrize("p", [2, 3])
    def test_example1_alpha_is_one(self, p: int):
        T1, T2 = _split_off_w_n(3, 3, 2)
        assert check_p_gluing(T1, T2, p).alpha == 1


# ---------------------------------------------------------------------------
# validate_certificate
# ---------------------------------------------------------------------------


class TestValidateCertificate:
    @pytest.fixture
    def good(self) -> tuple[GluingCertificate, list]:
        T1, T2 = _split_off_w_n(3, 3, 2)
        return check_p_gluing(T1, T2, 2), T1 + T2

    def test_good_certificate_passes(self, good):
        cert, gens = good
        validate_certificate(cert, gens)

    def test_wrong_w(self, good):
        cert, gens = good
        with pytest.raises(CertificateError) as exc:
            validate_certificate(replace(cert, w=(8, 8, 4), alpha=0), gens)
        assert exc.value.error_code == "LATTICE_MISMATCH"

    def test_tampered_representation(self, good):
        cert, gens = good
        bad = list(cert.rep1.coefficients)
        bad[0] += 1
        with pytest.raises(CertificateError) as exc:
            validate_certificate(replace(cert, rep1=NonnegCombination(tuple(bad))), gens)
        assert exc.value.error_code == "EXPANSION_MISMATCH"

    def test_wrong_alpha(self, good):
        cert, gens = good
        with pytest.raises(CertificateError) as exc:
            validate_certificate(replace(cert, alpha=2), gens)
        assert exc.value.error_code == "EXPANSION_MISMATCH"

    def test_overlapping_partition(self, good):
        cert, gens = good
        with pytest.raises(CertificateError) as exc:
            validate_certificate(replace(cert, part2=(4, 5)), gens)
        assert exc.value.error_code == "INVALID_PARTITION"

    def test_non_prime(self, good):
        cert, gens = good
        with pytest.raises(CertificateError) as exc:
            validate_certificate(replace(cert, p=4), gens)
        assert exc.value.error_code == "NOT_PRIME"

    def test_dict_round_trip_keeps_validity(self, good):
        cert, gens = good
        validate_certificate(GluingCertificate.from_dict(cert.to_dict()), gens)


# ---------------------------------------------------------------------------
# completely_p_glued / binomials_from_tree
# ---------------------------------------------------------------------------


class TestCompletelyPGlued:
    @pytest.mark.parametrize("n,f,g", FAMILY_INSTANCES)
    @pytest.mark.parametrize("p", [2, 3, 5])
    def test_family_is_completely_p_glued(self, n: int, f: int, g: int, p: int):
        T = build_family(FamilyParameters(n, f, g))
        tree = completely_p_glued(T, p)
        assert tree is not None
        validate_tree(tree, T)
        nodes = list(iter_nodes(tree))
        assert len(nodes) == n
        assert max(node.certificate.alpha for node in nodes) >= 1
        binomials = binomials_from_tree(tree, T)
        assert len(binomials) == T.r
        assert all(binomial_in_ideal(b, T) for b in binomials)

    def test_example1_tree_binomials(self, example1):
        tree = completely_p_glued(example1, 2)
        assert [b.to_text() for b in binomials_from_tree(tree, example1)] == [
            "y1^6 - x1*x3",
            "y2^6 - x2*x3",
            "y3^2 - x1*x2*y1^2*y2^2",
        ]

    def test_example1_tree_for_p3(self, example1):
        tree = completely_p_glued(example1, 3)
        assert binomials_from_tree(tree, example1)[-1].to_text() == "y3^3 - x1^2*x2^2*x3"

    def test_example1_root_splits_off_w3_with_alpha_one(self, example1):
        tree = completely_p_glued(example1, 2)
        assert isinstance(tree, GluingNode)
        assert tree.certificate.part2 == (5,)
        assert tree.certificate.alpha == 1
        assert tree.right == GluingLeaf((5,))

    def test_plain_gluing_fails_on_example1(self, example1):
        assert completely_glued(example1) is None
        assert completely_p_glued(example1, 0) is None

    def test_free_configuration_is_a_leaf(self, free3):
        tree = completely_p_glued(free3, 2)
        assert tree == GluingLeaf((0, 1, 2))
        assert binomials_from_tree(tree, free3) == []

    @pytest.mark.parametrize("n,c,d,indices", [(3, 4, 6, [1, 2]), (4, 6, 4, [1, 3]), (4, 2, 3, [1, 2, 3])])
    def test_lemma1_configuration_is_completely_glued(self, n, c, d, indices):
        T = lemma1_configuration(n, c, d, indices)
        tree = completely_glued(T)
        assert tree is not None
        assert all(node.certificate.alpha == 0 for node in iter_nodes(tree))
        assert {b.canonical() for b in binomials_from_tree(tree, T)} == set(lemma1_ci_binomials(n, c, d, indices))

    def test_search_cap(self, example1):
        with pytest.raises(ResourceCapError) as exc:
            completely_p_glued(example1, 2, search_cap=5)
        assert exc.value.error_code == "SEARCH_CAP_EXCEEDED"

    def test_non_prime(self, example1):
        with pytest.raises(InvalidInputError):
            completely_p_glued(example1, 6)

    def test_deterministic(self, example1):
        assert completely_p_glued(example1, 2) == completely_p_glued(example1, 2)


class TestTreeValidation:
    def test_dict_round_trip(self, example1):
        tree = completely_p_glued(example1, 2)
        assert tree_from_dict(tree.to_dict()) == tree

    def test_tampered_tree_is_rejected(self, example1):
        tree = completely_p_glued(example1, 2)
        data = tree.to_dict()
        data["certificate"]["rep1"][0] += 1
        with pytest.raises(CertificateError):
            binomials_from_tree(tree_from_dict(data), example1)

    def test_tree_must_cover_configuration(self, example1):
        with pytest.raises(CertificateError):
            validate_tree(GluingLeaf((0, 1, 2)), example1)

    def test_non_free_leaf_is_rejected(self, example1):
        with pytest.raises(CertificateError) as exc:
            validate_tree(GluingLeaf(tuple(range(6))), example1)
        assert exc.value.error_code == "NOT_FREE"

    def test_malformed_dict(self):
        with pytest.raises(InvalidInputError):
            tree_from_dict({"certificate": {}})


class TestSupportChain:
    def test_nested_supports(self):
        T = ToricConfiguration(n=3, c=4, rows=((1, 0, 0), (1, 1, 0), (1, 1, 1)))
        assert proposition1_support_chain(T)

    @pytest.mark.parametrize("n,f,g", FAMILY_INSTANCES)
    def test_family_lies_outside_the_nested_class(self, n: int, f: int, g: int):
        assert not proposition1_support_chain(build_family(FamilyParameters(n, f, g)))
