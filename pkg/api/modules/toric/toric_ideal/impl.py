"""
toric.toric_ideal 实现层

- 关系 (∗) 判定：二项式两侧指数在配置矩阵下的像相等
- 纤维枚举：给定 b ∈ ℕ^n，列出 A·z = b 的全部非负整解 z
- 有界 Markov 基：按 (总次数, 字典序 b) 逐个处理纤维，用已收集的移动连通纤维，
  每多出一个连通分量补一条二项式（该分量字典序最小点 → 首个分量字典序最小点）
"""

from __future__ import annotations

import logging
from collections import defaultdict
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from networkx.utils import UnionFind

from core.config.engine_config import get_engine_config
from core.errors import InvalidInputError
from shared.toric_types import Binomial, ExponentVector, ToricConfiguration, as_vector

logger = logging.getLogger(__name__)

Move = tuple[ExponentVector, ExponentVector]


@dataclass(frozen=True)
class Fiber:
    degree: ExponentVector
    points: tuple[ExponentVector, ...]

    @property
    def grading(self) -> int:
        return sum(self.degree)


@dataclass(frozen=True)
class MarkovBasisResult:
    binomials: tuple[Binomial, ...]
    degree_bound_used: int
    complete_up_to_bound: bool
    # 与 binomials 对齐：该二项式所在纤维的点数
    fiber_sizes: tuple[int, ...] = ()

    @property
    def count(self) -> int:
        return len(self.binomials)


def binomial_grading(b: Binomial, config: ToricConfiguration) -> int:
    return sum(config.image(b.plus))


def _check_arity(b: Binomial, config: ToricConfiguration) -> None:
    if b.n != config.n or b.num_vars != config.num_vars:
        raise InvalidInputError(
            f"binomial over {b.n} x / {b.r} y variables does not match configuration ({config.n}, {config.r})",
            "ARITY_MISMATCH",
        )


def binomial_in_ideal(b: Binomial, config: ToricConfiguration) -> bool:
    """x^plus - x^minus ∈ I(V) 当且仅当两侧指数的像相等"""
    _check_arity(b, config)
    return config.image(b.plus) == config.image(b.minus)


def enumerate_fiber(config: ToricConfiguration, degree: Sequence[int]) -> Fiber:
    """A·z = degree 的全部非负整解，按字典序排列"""
    b = as_vector(degree)
    if len(b) != config.n:
        raise InvalidInputError(f"degree has length {len(b)}, expected {config.n}", "DIMENSION_MISMATCH")
    if any(a < 0 for a in b):
        raise InvalidInputError("fiber degree must lie in ℕ^n", "NEGATIVE_COORDINATE")
    gens = config.generators
    supports = [tuple(j for j, a in enumerate(g) if a) for g in gens]
    points: list[ExponentVector] = []
    z = [0] * len(gens)

    def walk(i: int, residual: ExponentVector) -> None:
        if i == len(gens):
            if not any(residual):
                points.append(tuple(z))
            return
        g = gens[i]
        bound = min(residual[j] // g[j] for j in supports[i])
        for k in range(bound + 1):
            z[i] = k
            walk(i + 1, tuple(a - k * c for a, c in zip(residual, g, strict=True)) if k else residual)
        z[i] = 0

    walk(0, b)
    return Fiber(degree=b, points=tuple(sorted(points)))


def _enumerate_by_grading(config: ToricConfiguration, bound: int) -> dict[ExponentVector, list[ExponentVector]]:
    """枚举总次数 ≤ bound 的全部 z，按像 b 分桶"""
    gens = config.generators
    weights = [sum(g) for g in gens]
    buckets: dict[ExponentVector, list[ExponentVector]] = defaultdict(list)
    z = [0] * len(gens)

    def walk(i: int, budget: int) -> None:
        if i == len(gens):
            point = tuple(z)
            buckets[config.image(point)].append(point)
            return
        for k in range(budget // weights[i] + 1):
            z[i] = k
            walk(i + 1, budget - k * weights[i])
        z[i] = 0

    walk(0, bound)
    return buckets


def _components(points: Sequence[ExponentVector], moves: Iterable[Move]) -> list[list[ExponentVector]]:
    """以移动为边的连通分量；分量内按字典序，分量按各自最小点排序"""
    uf = UnionFind(points)
    members = set(points)
    for u, v in moves:
        for z in points:
            if all(a >= b for a, b in zip(z, u, strict=True)):
                target = tuple(a - b + c for a, b, c in zip(z, u, v, strict=True))
                if target in members:
                    uf.union(z, target)
    comps = [sorted(s) for s in uf.to_sets()]
    comps.sort(key=lambda c: c[0])
    return comps


def _moves_below(moves: Sequence[tuple[ExponentVector, Move]], degree: ExponentVector) -> list[Move]:
    return [m for deg, m in moves if all(a <= b for a, b in zip(deg, degree, strict=True))]


def markov_basis(config: ToricConfiguration, grading_bound: int | None = None) -> MarkovBasisResult:
    """
    次数有界的 Markov 基。

    纤维按 (总次数, b 的字典序) 处理；同一纤维内的连通性只依赖更低纤维已收集的移动。
    complete_up_to_bound：最高 stabilization_fraction 比例的次数层没有新增生成元。
    """
    cfg = get_engine_config()
    bound = cfg.markov_default_bound if grading_bound is None else grading_bound
    if isinstance(bound, bool) or not isinstance(bound, int) or bound <= 0:
        raise InvalidInputError(f"grading bound must be a positive integer, got {bound!r}", "INVALID_BOUND")

    buckets = _enumerate_by_grading(config, bound)
    logger.debug("markov_basis: %d points in %d fibers up to grading %d", sum(map(len, buckets.values())), len(buckets), bound)

    moves: list[tuple[ExponentVector, Move]] = []
    binomials: list[Binomial] = []
    fiber_sizes: list[int] = []
    top_level = 0
    for degree in sorted(buckets, key=lambda b: (sum(b), b)):
        points = sorted(buckets[degree])
        if len(points) < 2:
            continue
        comps = _components(points, _moves_below(moves, degree))
        if len(comps) == 1:
            continue
        anchor = comps[0][0]
        for comp in comps[1:]:
            b = Binomial.oriented(comp[0], anchor, config.n)
            binomials.append(b)
            fiber_sizes.append(len(points))
            moves.append((degree, (b.plus, b.minus)))
        top_level = sum(degree)
        logger.debug("grading %d fiber %s: %d components", top_level, degree, len(comps))

    quiet_from = bound - int(bound * cfg.stabilization_fraction)
    complete = top_level <= quiet_from
    if not complete:
        logger.warning(
            "markov basis not stabilised: generator added at grading %d, bound %d", top_level, bound
        )
    return MarkovBasisResult(
        binomials=tuple(binomials),
        degree_bound_used=bound,
        complete_up_to_bound=complete,
        fiber_sizes=tuple(fiber_sizes),
    )


def minimal_generator_count(config: ToricConfiguration, grading_bound: int | None = None) -> tuple[int, bool]:
    """(次数 ≤ bound 的极小生成元个数, 是否稳定)"""
    result = markov_basis(config, grading_bound)
    return result.count, result.complete_up_to_bound


def indispensable_binomials(result: MarkovBasisResult) -> list[Binomial]:
    """纤维恰为两点的生成元出现在每个二项式生成组中"""
    return [b for b, size in zip(result.binomials, result.fiber_sizes, strict=True) if size == 2]


def spanning_check(config: ToricConfiguration, binomials: Sequence[Binomial], grading_bound: int) -> bool:
    """用给定二项式的全部移动复核：次数 ≤ bound 的每个纤维都连通"""
    for b in binomials:
        _check_arity(b, config)
    moves = [(config.image(b.plus), (b.plus, b.minus)) for b in binomials]
    for degree, points in _enumerate_by_grading(config, grading_bound).items():
        if len(points) > 1 and len(_components(sorted(points), _moves_below(moves, degree))) > 1:
            logger.info("fiber %s is disconnected under the given moves", degree)
            return False
    return True
