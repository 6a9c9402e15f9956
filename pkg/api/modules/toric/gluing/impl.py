from __future__ import annotations

"""
toric.gluing 实现层

功能概述
- 判定并构造粘合（alpha = 0）与 p-粘合证书：
  ℤT1 ∩ ℤT2 = ℤw，且 p^alpha·w ∈ ℕT1 ∩ ℕT2
- 递归搜索完全 p-粘合树：叶子为自由交换半群（生成元 ℚ-线性无关）
- 由粘合树导出二项式：每个内部节点一条，rep1/rep2 分别作为两侧单项式的指数
- 证书与粘合树的独立复核（格相等、精确展开、划分良构）

约定
- 证书中的划分使用全局生成元下标（0 起），T 的顺序为 v_1..v_n, w_1..w_r
- p = 0 表示普通粘合（只允许 alpha = 0）
- 二划分搜索顺序：先尝试单元素划分（从最后一个生成元开始），再按大小递增枚举
"""

import logging
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from itertools import combinations
from typing import Any

from sympy import isprime

from api.modules.toric.lattice_core.impl import (
    NonnegCombination,
    hermite_basis,
    is_cyclic_generated_by,
    lattice_intersection,
    lattices_equal,
    semigroup_membership,
)
from core.config.engine_config import get_engine_config
from core.errors import CertificateError, InvalidInputError, ResourceCapError
from shared.toric_types import Binomial, ExponentVector, ToricConfiguration, as_vector

from .variables import PLAIN_GLUING

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GluingCertificate:
    """(T1, T2) 的 p-粘合见证；rep1/rep2 与 part1/part2 的下标一一对齐"""

    part1: tuple[int, ...]
    part2: tuple[int, ...]
    w: ExponentVector
    alpha: int
    p: int
    rep1: NonnegCombination
    rep2: NonnegCombination

    @property
    def scale(self) -> int:
        return self.p**self.alpha if self.alpha else 1

    @property
    def target(self) -> ExponentVector:
        """p^alpha · w"""
        return tuple(self.scale * a for a in self.w)

    def to_dict(self) -> dict[str, Any]:
        return {
            "part1": list(self.part1),
            "part2": list(self.part2),
            "w": list(self.w),
            "alpha": self.alpha,
            "p": self.p,
            "rep1": list(self.rep1.coefficients),
            "rep2": list(self.rep2.coefficients),
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> GluingCertificate:
        try:
            return cls(
                part1=tuple(int(i) for i in data["part1"]),
                part2=tuple(int(i) for i in data["part2"]),
                w=as_vector(data["w"]),
                alpha=int(data["alpha"]),
                p=int(data["p"]),
                rep1=NonnegCombination(tuple(int(k) for k in data["rep1"])),
                rep2=NonnegCombination(tuple(int(k) for k in data["rep2"])),
            )
        except (KeyError, TypeError, ValueError) as e:
            raise InvalidInputError(f"malformed gluing certificate: {e}", "MALFORMED_CERTIFICATE")


@dataclass(frozen=True)
class GluingLeaf:
    """自由交换半群：indices 对应的生成元 ℚ-线性无关"""

    indices: tuple[int, ...]

    @property
    def generator_indices(self) -> tuple[int, ...]:
        return tuple(sorted(self.indices))

    def to_dict(self) -> dict[str, Any]:
        return {"leaf": list(self.indices)}


@dataclass(frozen=True)
class GluingNode:
    certificate: GluingCertificate
    left: GluingTree
    right: GluingTree

    @property
    def generator_indices(self) -> tuple[int, ...]:
        return tuple(sorted(self.certificate.part1 + self.certificate.part2))

    def to_dict(self) -> dict[str, Any]:
        return {"certificate": self.certificate.to_dict(), "left": self.left.to_dict(), "right": self.right.to_dict()}


GluingTree = GluingLeaf | GluingNode


def tree_from_dict(data: dict[str, Any]) -> GluingTree:
    if not isinstance(data, dict):
        raise InvalidInputError("gluing tree node must be an object", "MALFORMED_CERTIFICATE")
    if "leaf" in data:
        return GluingLeaf(tuple(int(i) for i in data["leaf"]))
    try:
        return GluingNode(
            certificate=GluingCertificate.from_dict(data["certificate"]),
            left=tree_from_dict(data["left"]),
            right=tree_from_dict(data["right"]),
        )
    except KeyError as e:
        raise InvalidInputError(f"gluing tree node lacks {e}", "MALFORMED_CERTIFICATE")


def iter_nodes(tree: GluingTree) -> Iterator[GluingNode]:
    """后序遍历内部节点（先左子树，再右子树，最后节点本身）"""
    if isinstance(tree, GluingNode):
        yield from iter_nodes(tree.left)
        yield from iter_nodes(tree.right)
        yield tree


# ---------------------------------------------------------------------------
# Certificates
# ---------------------------------------------------------------------------


def _check_prime(p: int) -> None:
    if p != PLAIN_GLUING and not isprime(p):
        raise InvalidInputError(f"p must be a prime, got {p}", "NOT_PRIME")


def is_free(generators: Sequence[Sequence[int]]) -> bool:
    """ℚ-线性无关的生成元张成自由交换半群"""
    return bool(generators) and hermite_basis(generators).rank == len(generators)


def _certify(
    gens: Sequence[ExponentVector], part1: tuple[int, ...], part2: tuple[int, ...], p: int, alpha_max: int
) -> GluingCertificate | None:
    """对全局下标划分 (part1, part2) 寻找最小 alpha 的证书"""
    g1 = [gens[i] for i in part1]
    g2 = [gens[i] for i in part2]
    w = is_cyclic_generated_by(lattice_intersection(hermite_basis(g1), hermite_basis(g2)))
    if w is None or any(a < 0 for a in w):
        return None
    top = 0 if p == PLAIN_GLUING else alpha_max
    for alpha in range(top + 1):
        scale = p**alpha if alpha else 1
        target = tuple(scale * a for a in w)
        # 较小的一侧通常更快失败
        first, second = (g2, g1) if len(g2) <= len(g1) else (g1, g2)
        rep_a = semigroup_membership(target, first)
        if rep_a is None:
            continue
        rep_b = semigroup_membership(target, second)
        if rep_b is None:
            continue
        rep1, rep2 = (rep_b, rep_a) if first is g2 else (rep_a, rep_b)
        return GluingCertificate(part1=part1, part2=part2, w=w, alpha=alpha, p=p, rep1=rep1, rep2=rep2)
    return None


def _validate_parts(T1: Sequence[Sequence[int]], T2: Sequence[Sequence[int]]) -> list[ExponentVector]:
    if not T1 or not T2:
        raise InvalidInputError("both parts of a gluing must be nonempty", "INVALID_PARTITION")
    gens = [as_vector(g) for g in (*T1, *T2)]
    if len({len(g) for g in gens}) != 1:
        raise InvalidInputError("gluing parts have different ambient dimensions", "DIMENSION_MISMATCH")
    if set(gens[: len(T1)]) & set(gens[len(T1) :]):
        raise InvalidInputError("gluing parts overlap", "INVALID_PARTITION")
    if any(a < 0 for g in gens for a in g):
        raise InvalidInputError("generators must lie in ℕ^n", "NEGATIVE_COORDINATE")
    return gens


def check_gluing(T1: Sequence[Sequence[int]], T2: Sequence[Sequence[int]]) -> GluingCertificate | None:
    """
    普通粘合：ℤT1 ∩ ℤT2 = ℤw 且 w ∈ ℕT1 ∩ ℕT2。
    证书下标相对于拼接列表 T1 ++ T2。
    """
    gens = _validate_parts(T1, T2)
    part1 = tuple(range(len(T1)))
    part2 = tuple(range(len(T1), len(gens)))
    return _certify(gens, part1, part2, PLAIN_GLUING, 0)


def check_p_gluing(
    T1: Sequence[Sequence[int]], T2: Sequence[Sequence[int]], p: int, alpha_max: int | None = None
) -> GluingCertificate | None:
    """p-粘合：返回 alpha ≤ alpha_max 中最小的证书"""
    _check_prime(p)
    if p == PLAIN_GLUING:
        return check_gluing(T1, T2)
    alpha_max = get_engine_config().alpha_max if alpha_max is None else alpha_max
    if alpha_max < 0:
        raise InvalidInputError("alpha_max must be nonnegative", "INVALID_ALPHA_MAX")
    gens = _validate_parts(T1, T2)
    return _certify(gens, tuple(range(len(T1))), tuple(range(len(T1), len(gens))), p, alpha_max)


def validate_certificate(cert: GluingCertificate, generators: Sequence[Sequence[int]]) -> None:
    """
    复核证书：划分良构、ℤT1 ∩ ℤT2 = ℤw、rep1/rep2 精确展开为 p^alpha·w。
    失败时抛出 CertificateError。
    """
    gens = [as_vector(g) for g in generators]
    idx1, idx2 = set(cert.part1), set(cert.part2)
    if not idx1 or not idx2:
        raise CertificateError("certificate has an empty part", "INVALID_PARTITION")
    if idx1 & idx2:
        raise CertificateError(f"certificate parts overlap at {sorted(idx1 & idx2)}", "INVALID_PARTITION")
    if len(idx1) != len(cert.part1) or len(idx2) != len(cert.part2):
        raise CertificateError("certificate part lists repeat an index", "INVALID_PARTITION")
    if any(i < 0 or i >= len(gens) for i in idx1 | idx2):
        raise CertificateError("certificate refers to a generator outside the configuration", "INVALID_PARTITION")
    if cert.alpha < 0:
        raise CertificateError("alpha must be nonnegative")
    if cert.p == PLAIN_GLUING:
        if cert.alpha != 0:
            raise CertificateError("plain gluing certificates must have alpha = 0")
    elif not isprime(cert.p):
        raise CertificateError(f"certificate prime {cert.p} is not prime", "NOT_PRIME")

    g1 = [gens[i] for i in cert.part1]
    g2 = [gens[i] for i in cert.part2]
    if len(cert.w) != len(gens[0]) or not any(cert.w):
        raise CertificateError("w must be a nonzero vector of the ambient dimension")
    meet = lattice_intersection(hermite_basis(g1), hermite_basis(g2))
    if not lattices_equal(meet, hermite_basis([cert.w])):
        raise CertificateError(f"ℤT1 ∩ ℤT2 is not generated by w = {list(cert.w)}", "LATTICE_MISMATCH")

    target = cert.target
    for name, rep, part in (("rep1", cert.rep1, g1), ("rep2", cert.rep2, g2)):
        if len(rep.coefficients) != len(part):
            raise CertificateError(f"{name} has {len(rep.coefficients)} coefficients for {len(part)} generators")
        if any(k < 0 for k in rep.coefficients):
            raise CertificateError(f"{name} has a negative coefficient", "NEGATIVE_COORDINATE")
        if rep.expand(part) != target:
            raise CertificateError(f"{name} does not expand to p^alpha·w = {list(target)}", "EXPANSION_MISMATCH")


def validate_tree(tree: GluingTree, config: ToricConfiguration) -> None:
    """复核整棵树：根覆盖全部生成元，每个节点证书有效且子树覆盖其两侧，叶子自由"""
    gens = config.generators
    if tree.generator_indices != tuple(range(len(gens))):
        raise CertificateError("tree does not cover the configuration exactly", "INVALID_PARTITION")

    def walk(node: GluingTree) -> None:
        if isinstance(node, GluingLeaf):
            if len(set(node.indices)) != len(node.indices) or any(i < 0 or i >= len(gens) for i in node.indices):
                raise CertificateError(f"malformed leaf {list(node.indices)}", "INVALID_PARTITION")
            if not is_free([gens[i] for i in node.indices]):
                raise CertificateError(f"leaf {list(node.indices)} is not a free semigroup", "NOT_FREE")
            return
        cert = node.certificate
        validate_certificate(cert, gens)
        if node.left.generator_indices != tuple(sorted(cert.part1)):
            raise CertificateError("left subtree does not match part1", "INVALID_PARTITION")
        if node.right.generator_indices != tuple(sorted(cert.part2)):
            raise CertificateError("right subtree does not match part2", "INVALID_PARTITION")
        walk(node.left)
        walk(node.right)

    walk(tree)


# ---------------------------------------------------------------------------
# Tree search
# ---------------------------------------------------------------------------


def _bipartitions(indices: tuple[int, ...]) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """每个无序二划分恰好产出一次；part2 从单元素开始，靠后的生成元优先"""
    size = len(indices)
    for k in range(1, size // 2 + 1):
        for combo in combinations(reversed(indices), k):
            if 2 * k == size and indices[0] in combo:
                continue
            chosen = set(combo)
            part1 = tuple(i for i in indices if i not in chosen)
            yield part1, tuple(sorted(combo))


def completely_p_glued(
    config: ToricConfiguration, p: int, alpha_max: int | None = None, search_cap: int | None = None
) -> GluingTree | None:
    """
    递归二划分搜索完全 p-粘合树；p = 0 时即完全粘合（每个节点 alpha = 0）。
    搜索对二划分穷举，返回 None 表示 alpha_max 之内不存在粘合树。
    """
    _check_prime(p)
    cfg = get_engine_config()
    alpha_max = cfg.alpha_max if alpha_max is None else alpha_max
    search_cap = cfg.gluing_search_cap if search_cap is None else search_cap
    gens = config.generators
    if len(gens) > search_cap:
        raise ResourceCapError(
            f"configuration has {len(gens)} generators, gluing search cap is {search_cap}", "SEARCH_CAP_EXCEEDED"
        )

    memo: dict[tuple[int, ...], GluingTree | None] = {}

    def search(indices: tuple[int, ...]) -> GluingTree | None:
        if indices in memo:
            return memo[indices]
        result: GluingTree | None = None
        if is_free([gens[i] for i in indices]):
            result = GluingLeaf(indices)
        else:
            for part1, part2 in _bipartitions(indices):
                cert = _certify(gens, part1, part2, p, alpha_max)
                if cert is None:
                    continue
                logger.debug("glued %s | %s alpha=%d w=%s", part1, part2, cert.alpha, cert.w)
                left = search(part1)
                if left is None:
                    continue
                right = search(part2)
                if right is None:
                    continue
                result = GluingNode(cert, left, right)
                break
        memo[indices] = result
        return result

    tree = search(tuple(range(len(gens))))
    if tree is None:
        logger.info("no gluing tree for p=%s within alpha_max=%d (%d subsets searched)", p, alpha_max, len(memo))
    return tree


def completely_glued(config: ToricConfiguration, search_cap: int | None = None) -> GluingTree | None:
    return completely_p_glued(config, PLAIN_GLUING, alpha_max=0, search_cap=search_cap)


def binomials_from_tree(tree: GluingTree, config: ToricConfiguration) -> list[Binomial]:
    """每个内部节点一条二项式（后序）：rep1 与 rep2 放到各自下标处即为两侧指数"""
    validate_tree(tree, config)
    num_vars = config.num_vars
    out: list[Binomial] = []
    for node in iter_nodes(tree):
        cert = node.certificate
        a = [0] * num_vars
        b = [0] * num_vars
        for i, k in zip(cert.part1, cert.rep1.coefficients, strict=True):
            a[i] = k
        for i, k in zip(cert.part2, cert.rep2.coefficients, strict=True):
            b[i] = k
        out.append(Binomial.oriented(a, b, config.n))
    return out


def proposition1_support_chain(config: ToricConfiguration) -> bool:
    """w_i 的支撑在某个排列下构成包含链（完全 p-粘合的一个充分条件）"""
    supports = sorted(
        (frozenset(j for j, a in enumerate(row) if a) for row in config.rows), key=len
    )
    return all(s <= t for s, t in zip(supports, supports[1:]))
