from __future__ import annotations

"""
toric.lattice_core 实现层

功能概述
- 精确整数线性代数（Python int，任意精度，无溢出）
- 行式 Hermite 标准形由 sympy 的 hermite_normal_form（DomainMatrix over ZZ）给出：
  主元为正，主元上方元素约化到 [0, pivot)，作为 ℤ-格的规范基
- 非整数坐标（浮点、布尔）在入口处被拒绝（MALFORMED_VECTOR）
- 格成员判定：按主元列逐行整除消去，返回基下的整系数表示
- 格交：对堆叠矩阵 [[B1, B1], [B2, 0]] 做 Hermite 约化，左半为零的行的右半即为 ℤB1 ∩ ℤB2 的基
- 半群成员判定：对非负系数做深度优先搜索
  - 每个生成元至少有一个正坐标，故系数 ≤ 目标在该坐标上的值，搜索有界且完备
  - 系数从大到小尝试，失败的 (位置, 余量) 记入本次调用的备忘表
"""

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from functools import lru_cache

from sympy.polys.domains import ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import hermite_normal_form

from core.errors import InvalidInputError
from shared.toric_types import ExponentVector, as_vector

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class IntegerLattice:
    """ℤ^n 的子格，基为行式 Hermite 标准形；秩 0 时 basis 为空"""

    basis: tuple[ExponentVector, ...]
    ambient_dim: int

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(j for j, a in enumerate(row) if a) for row in self.basis)

    def __contains__(self, v: Sequence[int]) -> bool:
        return lattice_membership(v, self) is not None


@dataclass(frozen=True)
class NonnegCombination:
    """与生成元列表对齐的非负整系数"""

    coefficients: tuple[int, ...]

    def expand(self, generators: Sequence[Sequence[int]]) -> ExponentVector:
        return combine(self.coefficients, generators)


def combine(coefficients: Sequence[int], generators: Sequence[Sequence[int]]) -> ExponentVector:
    """Σ coefficients[i]·generators[i]"""
    if len(coefficients) != len(generators):
        raise InvalidInputError("coefficient count does not match generator count", "ARITY_MISMATCH")
    if not generators:
        raise InvalidInputError("cannot combine an empty generator list")
    out = [0] * len(generators[0])
    for k, gen in zip(coefficients, generators, strict=True):
        if k:
            for j, a in enumerate(gen):
                out[j] += k * a
    return tuple(out)


def _common_dim(vectors: Sequence[Sequence[int]], expected: int | None = None) -> int:
    dims = {len(v) for v in vectors}
    if expected is not None:
        dims.add(expected)
    if len(dims) != 1:
        raise InvalidInputError(f"dimension mismatch among vectors: {sorted(dims)}", "DIMENSION_MISMATCH")
    return dims.pop()


@lru_cache(maxsize=4096)
def _row_hnf(rows: tuple[ExponentVector, ...], ncols: int) -> tuple[ExponentVector, ...]:
    """
    行式 Hermite 标准形（返回非零行，按主元列递增）

    sympy 的 hermite_normal_form 作用于列向量，主元落在最后一个非零行；
    这里把坐标倒序后以生成元为列传入，再把结果转置、坐标与列序还原，
    得到以首个非零坐标为主元（取正）、主元上方元素落在 [0, pivot) 的行式。
    """
    cols = [row for row in rows if any(row)]
    if not cols:
        return ()
    A = DomainMatrix([[ZZ(v[ncols - 1 - i]) for v in cols] for i in range(ncols)], (ncols, len(cols)), ZZ)
    H = hermite_normal_form(A).to_Matrix()
    return tuple(tuple(int(H[ncols - 1 - j, k]) for j in range(ncols)) for k in reversed(range(H.shape[1])))


def hermite_basis(generators: Sequence[Sequence[int]]) -> IntegerLattice:
    """
    返回生成元整张成的格，基为规范 Hermite 形式
    """
    if not generators:
        raise InvalidInputError("hermite_basis needs at least one generator")
    gens = [as_vector(g) for g in generators]
    dim = _common_dim(gens)
    return IntegerLattice(basis=_row_hnf(tuple(gens), dim), ambient_dim=dim)


def zero_lattice(ambient_dim: int) -> IntegerLattice:
    return IntegerLattice(basis=(), ambient_dim=ambient_dim)


def lattice_membership(v: Sequence[int], L: IntegerLattice) -> tuple[int, ...] | None:
    """
    v ∈ L 时返回其在 L.basis 下的整系数表示，否则返回 None
    """
    v = as_vector(v)
    _common_dim([v], L.ambient_dim)
    residual = list(v)
    coefficients: list[int] = []
    for row, col in zip(L.basis, L.pivots, strict=True):
        q, rem = divmod(residual[col], row[col])
        if rem:
            return None
        coefficients.append(q)
        if q:
            residual = [a - q * b for a, b in zip(residual, row, strict=True)]
    if any(residual):
        return None
    return tuple(coefficients)


def lattice_intersection(L1: IntegerLattice, L2: IntegerLattice) -> IntegerLattice:
    """
    ℤB1 ∩ ℤB2：堆叠 [[b1, b1] for b1 in B1] + [[b2, 0] for b2 in B2]，
    左半为零的 Hermite 行的右半张成交格
    """
    if L1.ambient_dim != L2.ambient_dim:
        raise InvalidInputError(
            f"dimension mismatch: {L1.ambient_dim} vs {L2.ambient_dim}", "DIMENSION_MISMATCH"
        )
    n = L1.ambient_dim
    if not L1.basis or not L2.basis:
        return zero_lattice(n)
    stacked = tuple(b + b for b in L1.basis) + tuple(b + (0,) * n for b in L2.basis)
    reduced = _row_hnf(stacked, 2 * n)
    tail = [row[n:] for row in reduced if not any(row[:n])]
    if not tail:
        return zero_lattice(n)
    return hermite_basis(tail)


def lattices_equal(L1: IntegerLattice, L2: IntegerLattice) -> bool:
    """规范形下相等即基相等"""
    return L1.ambient_dim == L2.ambient_dim and L1.basis == L2.basis


def sign_normalized(v: Sequence[int]) -> ExponentVector:
    """首个非零坐标取正"""
    v = as_vector(v)
    for a in v:
        if a:
            return v if a > 0 else tuple(-x for x in v)
    return v


def is_cyclic_generated_by(L: IntegerLattice) -> ExponentVector | None:
    """秩为 1 时返回生成元（首个非零坐标为正），否则返回 None"""
    if L.rank != 1:
        return None
    return sign_normalized(L.basis[0])


def semigroup_membership(
    target: Sequence[int], generators: Sequence[Sequence[int]]
) -> NonnegCombination | None:
    """
    target ∈ ℕ·generators 时返回非负系数，否则返回 None

    搜索完备：第 i 个生成元的系数不超过 min_j target_j // g_ij（g_ij > 0）。
    """
    if not generators:
        raise InvalidInputError("semigroup_membership needs at least one generator")
    target = as_vector(target)
    generators = [as_vector(g) for g in generators]
    dim = _common_dim(generators, len(target))
    if any(a < 0 for a in target) or any(a < 0 for g in generators for a in g):
        raise InvalidInputError("semigroup membership is defined on ℕ^n only", "NEGATIVE_COORDINATE")
    if any(not any(g) for g in generators):
        raise InvalidInputError("semigroup generators must be nonzero", "ZERO_GENERATOR")

    coefficients = [0] * len(generators)
    if not any(target):
        return NonnegCombination(tuple(coefficients))

    # 只有支撑落在 target 支撑内的生成元可用
    target_support = {j for j, a in enumerate(target) if a}
    usable = [i for i, g in enumerate(generators) if {j for j, a in enumerate(g) if a} <= target_support]
    if not usable:
        return None
    gens = [generators[i] for i in usable]

    # 必要条件：先判 ℤ-格成员
    if lattice_membership(target, hermite_basis(gens)) is None:
        return None

    supports = [tuple(j for j, a in enumerate(g) if a) for g in gens]
    # cover[i]：gens[i:] 的支撑并集
    cover: list[frozenset[int]] = [frozenset()] * (len(gens) + 1)
    for i in range(len(gens) - 1, -1, -1):
        cover[i] = cover[i + 1] | frozenset(supports[i])

    failed: set[tuple[int, ExponentVector]] = set()

    def search(i: int, residual: ExponentVector) -> tuple[int, ...] | None:
        if not any(residual):
            return (0,) * (len(gens) - i)
        if i == len(gens):
            return None
        key = (i, residual)
        if key in failed:
            return None
        g = gens[i]
        bound = min(residual[j] // g[j] for j in supports[i])
        for k in range(bound, -1, -1):
            nxt = tuple(a - k * b for a, b in zip(residual, g, strict=True)) if k else residual
            if any(a and j not in cover[i + 1] for j, a in enumerate(nxt)):
                continue
            rest = search(i + 1, nxt)
            if rest is not None:
                return (k, *rest)
        failed.add(key)
        return None

    found = search(0, target)
    logger.debug("semigroup_membership dim=%d gens=%d states=%d found=%s", dim, len(gens), len(failed), found)
    if found is None:
        return None
    for i, k in zip(usable, found, strict=True):
        coefficients[i] = k
    return NonnegCombination(tuple(coefficients))
