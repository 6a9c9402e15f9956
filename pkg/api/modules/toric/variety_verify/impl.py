from __future__ import annotations

"""
toric.variety_verify 实现层

功能概述
- 二项式求值：modulus > 0 时在 ℤ/l 上（平方乘幂），modulus = 0 时精确整数
- 参数化采样：x_j = u_j^c，y_i = Π u_j^{a_ij}
- 有限域消没集：按坐标深度优先赋值，二项式的变量全部赋值后立即检查；按首坐标分片，可并发
- 两个方程组在若干素数上的消没集比较，附对称差见证点
- 二项式幂 F^{(h)} = M^h - N^h 与递推 F^{(h+1)} = M·F^{(h)} + F·N^h 的逐点复核
- 特征零的两类旁证：参数化点上的精确求值、有限域点的整数提升复核
"""

import logging
from collections.abc import Iterable, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any

from sympy import isprime

from core.config.engine_config import get_engine_config
from core.errors import InvalidInputError, ResourceCapError
from shared.toric_types import Binomial, ToricConfiguration

logger = logging.getLogger(__name__)

FiniteFieldPoint = tuple[int, ...]


@dataclass(frozen=True)
class VerificationReport:
    field_prime: int
    system_a_size: int
    system_b_size: int
    equal: bool
    witnesses: tuple[FiniteFieldPoint, ...] = ()
    only_in_a: int = 0
    only_in_b: int = 0

    def to_dict(self) -> dict[str, Any]:
        return {
            "field_prime": self.field_prime,
            "system_a_size": self.system_a_size,
            "system_b_size": self.system_b_size,
            "equal": self.equal,
            "only_in_a": self.only_in_a,
            "only_in_b": self.only_in_b,
            "witnesses": [list(p) for p in self.witnesses],
        }


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------


def _monomial(exponents: Sequence[int], point: Sequence[int], modulus: int) -> int:
    value = 1
    for e, x in zip(exponents, point, strict=True):
        if e:
            value = value * pow(x, e, modulus) % modulus if modulus else value * x**e
    return value


def evaluate_binomial(b: Binomial, point: Sequence[int], modulus: int = 0) -> int:
    """x^plus - x^minus 在 point 处的值；modulus > 0 时返回 [0, modulus) 内的余数"""
    if len(point) != b.num_vars:
        raise InvalidInputError(f"point has {len(point)} coordinates, binomial has {b.num_vars} variables", "ARITY_MISMATCH")
    if modulus < 0 or (modulus and not isprime(modulus)):
        raise InvalidInputError(f"modulus must be a prime or 0, got {modulus}", "NOT_PRIME")
    diff = _monomial(b.plus, point, modulus) - _monomial(b.minus, point, modulus)
    return diff % modulus if modulus else diff


def parametrization_points(config: ToricConfiguration, u_samples: Iterable[Sequence[int]]) -> list[tuple[int, ...]]:
    out = []
    for u in u_samples:
        if len(u) != config.n:
            raise InvalidInputError(f"u has {len(u)} coordinates, expected {config.n}", "DIMENSION_MISMATCH")
        xs = [a**config.c for a in u]
        ys = [_monomial(row, u, 0) for row in config.rows]
        out.append(tuple(xs + ys))
    return out


# ---------------------------------------------------------------------------
# Finite-field vanishing sets
# ---------------------------------------------------------------------------


def _num_vars(system: Sequence[Binomial], num_vars: int | None) -> int:
    arities = {b.num_vars for b in system}
    if num_vars is not None:
        arities.add(num_vars)
    if len(arities) != 1:
        if not arities:
            raise InvalidInputError("an empty system needs num_vars", "ARITY_MISMATCH")
        raise InvalidInputError(f"system mixes arities {sorted(arities)}", "ARITY_MISMATCH")
    return arities.pop()


def _check_field(l: int, num_vars: int, point_cap: int | None) -> None:
    if not isprime(l):
        raise InvalidInputError(f"field size must be a prime, got {l}", "NOT_PRIME")
    cap = get_engine_config().vanishing_point_cap if point_cap is None else point_cap
    if l**num_vars > cap:
        raise ResourceCapError(f"{l}^{num_vars} points exceed the cap {cap}", "POINT_CAP_EXCEEDED")


def vanishing_set(
    system: Sequence[Binomial],
    l: int,
    num_vars: int | None = None,
    workers: int | None = None,
    point_cap: int | None = None,
) -> frozenset[FiniteFieldPoint]:
    """𝔽_l^{n+r} 中方程组的全部公共零点"""
    N = _num_vars(system, num_vars)
    _check_field(l, N, point_cap)
    workers = get_engine_config().workers if workers is None else workers

    # checks[k]：最后一个变量下标为 k 的二项式，(plus, minus) 均为 [(下标, 指数)]
    checks: list[list[tuple[list[tuple[int, int]], list[tuple[int, int]]]]] = [[] for _ in range(N)]
    for b in system:
        plus = [(i, e) for i, e in enumerate(b.plus) if e]
        minus = [(i, e) for i, e in enumerate(b.minus) if e]
        last = max(i for i, _ in plus + minus)
        checks[last].append((plus, minus))

    powers: dict[int, list[int]] = {}
    for b in system:
        for e in (*b.plus, *b.minus):
            if e and e not in powers:
                powers[e] = [pow(v, e, l) for v in range(l)]

    def value(mono: list[tuple[int, int]], point: list[int]) -> int:
        acc = 1
        for i, e in mono:
            acc = acc * powers[e][point[i]] % l
        return acc

    def shard(lead: int) -> list[FiniteFieldPoint]:
        found: list[FiniteFieldPoint] = []
        point = [0] * N
        point[0] = lead
        if any(value(p, point) != value(m, point) for p, m in checks[0]):
            return found

        def walk(k: int) -> None:
            if k == N:
                found.append(tuple(point))
                return
            for v in range(l):
                point[k] = v
                if all(value(p, point) == value(m, point) for p, m in checks[k]):
                    walk(k + 1)
            point[k] = 0

        walk(1)
        return found

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            shards = list(pool.map(shard, range(l)))
    else:
        shards = [shard(v) for v in range(l)]
    result = frozenset(p for s in shards for p in s)
    logger.debug("vanishing_set: %d binomials over F_%d, %d points", len(system), l, len(result))
    return result


def compare_systems(
    system_a: Sequence[Binomial],
    system_b: Sequence[Binomial],
    primes: Sequence[int] | None = None,
    num_vars: int | None = None,
) -> list[VerificationReport]:
    """逐素数比较两组方程的消没集"""
    cfg = get_engine_config()
    primes = list(cfg.verify_primes if primes is None else primes)
    if not primes:
        raise InvalidInputError("at least one field prime is required", "NO_PRIMES")
    N = _num_vars([*system_a, *system_b], num_vars)
    reports = []
    for l in primes:
        _check_field(l, N, None)
        za = vanishing_set(system_a, l, num_vars=N)
        zb = vanishing_set(system_b, l, num_vars=N)
        only_a, only_b = za - zb, zb - za
        witnesses = tuple(sorted(only_a | only_b)[: cfg.max_witnesses])
        reports.append(
            VerificationReport(
                field_prime=l,
                system_a_size=len(za),
                system_b_size=len(zb),
                equal=not only_a and not only_b,
                witnesses=witnesses,
                only_in_a=len(only_a),
                only_in_b=len(only_b),
            )
        )
        logger.info("F_%d: |A| = %d, |B| = %d, equal = %s", l, len(za), len(zb), reports[-1].equal)
    return reports


# ---------------------------------------------------------------------------
# Binomial powers
# ---------------------------------------------------------------------------


def binomial_power(F: Binomial, h: int) -> Binomial:
    """F^{(h)} = M^h - N^h"""
    if h < 1:
        raise InvalidInputError(f"power must be positive, got {h}", "INVALID_POWER")
    return Binomial(tuple(h * e for e in F.plus), tuple(h * e for e in F.minus), F.n)


def check_power_recursion(F: Binomial, h: int, point: Sequence[int]) -> bool:
    """F^{(h+1)} = M·F^{(h)} + F·N^h，精确整数"""
    M = _monomial(F.plus, point, 0)
    N = _monomial(F.minus, point, 0)
    lhs = evaluate_binomial(binomial_power(F, h + 1), point)
    rhs = M * evaluate_binomial(binomial_power(F, h), point) + evaluate_binomial(F, point) * N**h
    return lhs == rhs


# ---------------------------------------------------------------------------
# Characteristic-zero evidence
# ---------------------------------------------------------------------------


def sample_parametrization_check(
    system: Sequence[Binomial], config: ToricConfiguration, samples: Iterable[Sequence[int]], modulus: int = 0
) -> dict[str, Any]:
    """方程组中每个二项式在参数化像点上取零"""
    checked = 0
    failures: list[dict[str, Any]] = []
    for point in parametrization_points(config, samples):
        for b in system:
            checked += 1
            if evaluate_binomial(b, point, modulus) != 0 and len(failures) < get_engine_config().max_witnesses:
                failures.append({"point": list(point), "binomial": b.to_text()})
    return {"checked": checked, "failures": failures, "passed": not failures}


def _symmetric_lift(residue: int, l: int) -> int:
    return residue - l if residue > l // 2 else residue


def integer_lift_check(
    system: Sequence[Binomial], generators: Sequence[Binomial], l: int = 5, num_vars: int | None = None
) -> dict[str, Any]:
    """
    把 𝔽_l 上 system 的零点提升为 (-l/2, l/2] 内的整数点，保留在 ℤ 上仍为 system 零点的，
    再复核 generators 在这些整数点上精确取零。
    """
    N = _num_vars([*system, *generators], num_vars)
    lifted = []
    for p in sorted(vanishing_set(system, l, num_vars=N)):
        z = tuple(_symmetric_lift(a, l) for a in p)
        if all(evaluate_binomial(b, z) == 0 for b in system):
            lifted.append(z)
    failures = []
    for z in lifted:
        bad = [b.to_text() for b in generators if evaluate_binomial(b, z) != 0]
        if bad and len(failures) < get_engine_config().max_witnesses:
            failures.append({"point": list(z), "binomials": bad})
    return {"field_prime": l, "lifted": len(lifted), "failures": failures, "passed": not failures}
