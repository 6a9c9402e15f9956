"""
toric.family 实现层

构造对象
- 引理 1 配置 T^{(i_1..i_k)}：v_j = c·e_j，w_{i_h} = d(e_{i_h} + e_n)，以及完全交二项式
  F_{i_h} = y_h^{m/d} - x_{i_h}^{m/c} x_n^{m/c}（m = lcm(c, d)）
- (n, f, g) 族：v_i = fg·e_i，w_i = (f-g)(e_i + e_n)，w_n = g²Σe_i + g((n-1)g-(n-2)f)e_n
- p 幂表示 p^alpha = s·f + t·g（alpha 最小，t 取最小非负解）与 F_{n,p}
- 四个定义方程组、非完全交见证 G 及其报告

约定
- 引理 1 的下标取自 {1..n-1}；y_h 对应第 h 个下标的 w
- 所有关系均以精确整数向量恒等式复核
"""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass
from itertools import combinations
from typing import Any

from sympy import isprime

from api.modules.toric.gluing.impl import check_gluing
from api.modules.toric.lattice_core.impl import semigroup_membership
from api.modules.toric.toric_ideal.impl import binomial_in_ideal, markov_basis
from core.errors import InvalidInputError
from shared.toric_types import Binomial, ExponentVector, ToricConfiguration

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Parameters
# ---------------------------------------------------------------------------


def check_conditions(n: int, f: int, g: int) -> dict[str, bool]:
    """逐条求值族条件，不抛异常"""
    return {
        "n_at_least_3": n >= 3,
        "coprime": f >= 1 and g >= 1 and math.gcd(f, g) == 1,
        "a": g < f and (n - 1) * f <= n * g,
        "b": f < 2 * g,
        "c": (n - 2) * f < (n - 1) * g,
    }


@dataclass(frozen=True)
class FamilyParameters:
    n: int
    f: int
    g: int

    def __post_init__(self):
        for name in ("n", "f", "g"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int):
                raise InvalidInputError(f"{name} must be an integer, got {value!r}", "INVALID_FAMILY")
        if self.n < 3:
            raise InvalidInputError(f"the family needs n >= 3, got n = {self.n}", "INVALID_FAMILY")
        if self.f < 1 or self.g < 1:
            raise InvalidInputError("f and g must be positive", "INVALID_FAMILY")
        if math.gcd(self.f, self.g) != 1:
            raise InvalidInputError(f"f and g must be coprime, gcd({self.f}, {self.g}) = {math.gcd(self.f, self.g)}", "INVALID_FAMILY")
        if not (self.g < self.f and (self.n - 1) * self.f <= self.n * self.g):
            raise InvalidInputError(
                f"condition (a) fails: need g < f and (n-1)f <= ng, got n={self.n}, f={self.f}, g={self.g}",
                "INVALID_FAMILY",
            )

    @property
    def conditions(self) -> dict[str, bool]:
        return check_conditions(self.n, self.f, self.g)

    @property
    def w_n(self) -> ExponentVector:
        n, f, g = self.n, self.f, self.g
        return (g * g,) * (n - 1) + (g * ((n - 1) * g - (n - 2) * f),)


def admissible_parameters(n_max: int, f_max: int) -> list[FamilyParameters]:
    """全部满足条件的 (n, f, g)，n ≤ n_max，f ≤ f_max"""
    out = []
    for n in range(3, n_max + 1):
        for f in range(2, f_max + 1):
            for g in range(1, f):
                c = check_conditions(n, f, g)
                if c["coprime"] and c["a"]:
                    out.append(FamilyParameters(n, f, g))
    return out


# ---------------------------------------------------------------------------
# Lemma-1 configurations
# ---------------------------------------------------------------------------


def _check_lemma1_args(n: int, c: int, d: int, indices: Sequence[int]) -> tuple[int, ...]:
    if n < 2:
        raise InvalidInputError(f"n must be at least 2, got {n}", "INVALID_LEMMA1")
    if c < 1 or d < 1:
        raise InvalidInputError("c and d must be positive", "INVALID_LEMMA1")
    idx = tuple(int(i) for i in indices)
    if not 1 <= len(idx) <= n - 1:
        raise InvalidInputError(f"need 1 <= k <= n-1 indices, got k = {len(idx)}", "INVALID_LEMMA1")
    if len(set(idx)) != len(idx):
        raise InvalidInputError(f"indices repeat: {list(idx)}", "INVALID_LEMMA1")
    bad = [i for i in idx if not 1 <= i <= n - 1]
    if bad:
        raise InvalidInputError(f"indices must lie in 1..{n - 1}, got {bad}", "INDEX_OUT_OF_RANGE")
    return idx


def lemma1_configuration(n: int, c: int, d: int, indices: Sequence[int]) -> ToricConfiguration:
    idx = _check_lemma1_args(n, c, d, indices)
    rows = tuple(tuple(d if j in (i - 1, n - 1) else 0 for j in range(n)) for i in idx)
    return ToricConfiguration(n=n, c=c, rows=rows)


def lemma1_ci_binomials(n: int, c: int, d: int, indices: Sequence[int]) -> list[Binomial]:
    """F_{i_h} = y_h^{m/d} - x_{i_h}^{m/c} x_n^{m/c}，按下标顺序"""
    idx = _check_lemma1_args(n, c, d, indices)
    m = math.lcm(c, d)
    k = len(idx)
    out = []
    for h, i in enumerate(idx):
        y_side = [0] * (n + k)
        y_side[n + h] = m // d
        x_side = [0] * (n + k)
        x_side[i - 1] = m // c
        x_side[n - 1] += m // c
        out.append(Binomial.oriented(y_side, x_side, n))
    return out


# ---------------------------------------------------------------------------
# The (n, f, g) family
# ---------------------------------------------------------------------------


def build_family(params: FamilyParameters) -> ToricConfiguration:
    n, f, g = params.n, params.f, params.g
    rows = [tuple(f - g if j in (i, n - 1) else 0 for j in range(n)) for i in range(n - 1)]
    rows.append(params.w_n)
    return ToricConfiguration(n=n, c=f * g, rows=tuple(rows))


def recognize_family(config: ToricConfiguration) -> FamilyParameters | None:
    """若 config 恰为某个 (n, f, g) 族成员则返回其参数"""
    n, c = config.n, config.c
    if n < 3 or config.r != n:
        return None
    for f in range(2, c + 1):
        if c % f:
            continue
        g = c // f
        cond = check_conditions(n, f, g)
        if cond["coprime"] and cond["a"] and build_family(FamilyParameters(n, f, g)) == config:
            return FamilyParameters(n, f, g)
    return None


def frobenius_number(f: int, g: int) -> int:
    """⟨f, g⟩ 中最大的不可表示整数 fg - f - g"""
    if f < 1 or g < 1 or math.gcd(f, g) != 1:
        raise InvalidInputError(f"f and g must be coprime positive integers, got ({f}, {g})", "INVALID_FAMILY")
    return f * g - f - g


@dataclass(frozen=True)
class PPowerRep:
    p: int
    alpha: int
    s: int
    t: int

    @property
    def power(self) -> int:
        return self.p**self.alpha

    def to_dict(self) -> dict[str, int]:
        return {"p": self.p, "alpha": self.alpha, "s": self.s, "t": self.t, "power": self.power}


def p_power_rep(f: int, g: int, p: int) -> PPowerRep:
    """
    最小 alpha 使 p^alpha = s·f + t·g（s, t ≥ 0）；t 取 t·g ≡ p^alpha (mod f) 的最小非负解。
    p^alpha 超过 Frobenius 数后必可表示，循环必然终止。
    """
    if not isprime(p):
        raise InvalidInputError(f"p must be a prime, got {p}", "NOT_PRIME")
    frobenius = frobenius_number(f, g)
    g_inv = pow(g, -1, f) if f > 1 else 0
    alpha, power = 0, 1
    while True:
        t = (power * g_inv) % f if f > 1 else 0
        rest = power - t * g
        if rest >= 0:
            return PPowerRep(p=p, alpha=alpha, s=rest // f, t=t)
        if power > frobenius:
            # 不会发生：大于 Frobenius 数的整数都可表示
            raise AssertionError(f"{power} > {frobenius} but not representable by ({f}, {g})")
        alpha, power = alpha + 1, power * p


def extra_exponents(params: FamilyParameters, rep: PPowerRep) -> tuple[int, int, int]:
    """F_{n,p} 右侧单项式的指数 (A, B, C)"""
    n, f, g, s, t = params.n, params.f, params.g, rep.s, rep.t
    A = (s + 2 * t) * g - f * t
    B = ((n - 1) * s + n * t) * g - ((n - 2) * s + (n - 1) * t) * f
    C = t * g * (f - g)
    return A, B, C


def extra_binomial(params: FamilyParameters, p: int) -> Binomial:
    """F_{n,p} = y_n^{p^alpha} - x_1^A···x_{n-1}^A x_n^B y_1^C···y_{n-1}^C"""
    rep = p_power_rep(params.f, params.g, p)
    A, B, C = extra_exponents(params, rep)
    n = params.n
    if min(A, B, C) < 0:
        raise InvalidInputError(f"negative exponent in F_{{n,p}} for {params}: {(A, B, C)}", "INVALID_FAMILY")
    plus = [0] * (2 * n)
    plus[2 * n - 1] = rep.power
    minus = [A] * (n - 1) + [B] + [C] * (n - 1) + [0]
    return Binomial.oriented(plus, minus, n)


def theorem4_system(params: FamilyParameters, p: int, q: int) -> list[Binomial]:
    """F_1..F_{n-1}, F_{n,p}, F_{n,q}：n + 1 个二项式"""
    if p == q:
        raise InvalidInputError("p and q must differ", "SAME_PRIMES")
    n, f, g = params.n, params.f, params.g
    base = [b.padded(n) for b in lemma1_ci_binomials(n, f * g, f - g, range(1, n))]
    return [*base, extra_binomial(params, p), extra_binomial(params, q)]


def proposition2_witness(params: FamilyParameters) -> Binomial:
    """G = y_1^g···y_{n-1}^g y_n - x_1···x_n"""
    n, g = params.n, params.g
    plus = [0] * n + [g] * (n - 1) + [1]
    minus = [1] * n + [0] * n
    G = Binomial.oriented(plus, minus, n)
    if not binomial_in_ideal(G, build_family(params)):
        raise AssertionError(f"witness relation fails for {params}")
    return G


# ---------------------------------------------------------------------------
# Identities and reports
# ---------------------------------------------------------------------------


def _combo(coeffs: Sequence[int], vectors: Sequence[ExponentVector]) -> ExponentVector:
    out = [0] * len(vectors[0])
    for k, vec in zip(coeffs, vectors, strict=True):
        for j, a in enumerate(vec):
            out[j] += k * a
    return tuple(out)


def relation_identities(params: FamilyParameters, p: int = 2) -> list[dict[str, Any]]:
    """
    精确向量恒等式：
    - sum_v: Σv_i - gΣ_{i<n} w_i = w_n
    - f_w_n: f·w_n = gΣ_{i<n} v_i + ((n-1)g - (n-2)f)·v_n
    - g_w_n: g·w_n = (2g-f)Σ_{i<n} v_i + (ng-(n-1)f)·v_n + g(f-g)Σ_{i<n} w_i
    - p_power: p^alpha·w_n = 像(F_{n,p} 右侧)
    - witness: gΣ_{i<n} w_i + w_n = Σv_i
    """
    n, f, g = params.n, params.f, params.g
    T = build_family(params)
    gens = T.generators
    v, w = gens[:n], gens[n:]
    w_n = w[-1]

    def scaled(k: int, vec: ExponentVector) -> ExponentVector:
        return tuple(k * a for a in vec)

    rep = p_power_rep(f, g, p)
    A, B, C = extra_exponents(params, rep)
    entries = [
        ("sum_v", _combo([1] * n + [-g] * (n - 1), [*v, *w[:-1]]), w_n),
        ("f_w_n", scaled(f, w_n), _combo([g] * (n - 1) + [(n - 1) * g - (n - 2) * f], v)),
        (
            "g_w_n",
            scaled(g, w_n),
            _combo([2 * g - f] * (n - 1) + [n * g - (n - 1) * f] + [g * (f - g)] * (n - 1), [*v, *w[:-1]]),
        ),
        ("p_power", scaled(rep.power, w_n), _combo([A] * (n - 1) + [B] + [C] * (n - 1), [*v, *w[:-1]])),
        ("witness", _combo([g] * (n - 1) + [1], w), _combo([1] * n, v)),
    ]
    return [{"name": name, "lhs": list(lhs), "rhs": list(rhs), "holds": lhs == rhs} for name, lhs, rhs in entries]


def remark2_check(params: FamilyParameters, omit: Sequence[int] | None = None) -> list[dict[str, Any]]:
    """
    省略部分 w_i（i < n）后，T^{(S)} ∪ {w_n} 为 (T^{(S)}, {w_n}) 的粘合，且 w = f·w_n。
    omit 给定时只检查该省略集合，否则检查全部非空真子集 S ⊂ {1..n-1}。
    """
    n, f = params.n, params.f
    T = build_family(params)
    v = list(T.generators[:n])
    w = list(T.rows)
    everything = tuple(range(1, n))
    if omit is not None:
        omitted = set(int(i) for i in omit)
        if not omitted or not omitted <= set(everything):
            raise InvalidInputError(f"omit must be a nonempty subset of 1..{n - 1}", "INDEX_OUT_OF_RANGE")
        kept_sets = [tuple(i for i in everything if i not in omitted)]
    else:
        kept_sets = [S for k in range(1, n - 1) for S in combinations(everything, k)]
    expected = tuple(f * a for a in params.w_n)
    out = []
    for kept in kept_sets:
        if not kept:
            continue
        part1 = v + [w[i - 1] for i in kept]
        cert = check_gluing(part1, [params.w_n])
        out.append(
            {
                "kept": list(kept),
                "glued": cert is not None,
                "w": list(cert.w) if cert else None,
                "w_is_f_w_n": bool(cert) and cert.w == expected,
            }
        )
    return out


def _minimal_e(params: FamilyParameters) -> int:
    """最小 e ≥ 1 使 e·w_n ∈ ℕT_1（g·w_n ∈ ℕT_1 保证 e ≤ g）"""
    T = build_family(params)
    t1 = T.generators[:-1]
    for e in range(1, params.g + 1):
        if semigroup_membership(tuple(e * a for a in params.w_n), t1) is not None:
            return e
    raise AssertionError(f"g·w_n not in ℕT_1 for {params}")


def default_proposition2_bound(params: FamilyParameters) -> int:
    n, f, g = params.n, params.f, params.g
    return max(n * f * g, 2 * f * g * (f - g))


def proposition2_check(params: FamilyParameters, degree_bound: int | None = None) -> dict[str, Any]:
    """
    非完全交报告：
    - e：e·w_n ∈ ℕT_1 的最小 e，且 Markov 基中形如 y_n^e - (不含 y_n) 的生成元均有 e > 1
    - G ∈ I(V)
    - 生成元个数下界 > n（y_n 纯幂纤维超出次数界时补 1）
    """
    n = params.n
    minimum = default_proposition2_bound(params)
    bound = minimum if degree_bound is None else degree_bound
    if bound < minimum:
        raise InvalidInputError(
            f"degree bound {bound} is below {minimum}, the grading of the relations F_i and G",
            "DEGREE_BOUND_TOO_SMALL",
        )
    T = build_family(params)
    result = markov_basis(T, bound)
    e = _minimal_e(params)

    y_n = T.num_vars - 1
    monic = [
        b
        for b in result.binomials
        if b.plus[y_n] > 0 and all(a == 0 for j, a in enumerate(b.plus) if j != y_n) and b.minus[y_n] == 0
    ]
    monic_ok = all(b.plus[y_n] > 1 for b in monic)
    e_fiber_grading = e * sum(params.w_n)
    count = result.count + (1 if e_fiber_grading > bound else 0)

    G = proposition2_witness(params)
    report = {
        "params": {"n": params.n, "f": params.f, "g": params.g},
        "degree_bound": bound,
        "e": e,
        "e_greater_than_one": e > 1 and monic_ok,
        "monic_generators": [b.to_text() for b in monic],
        "witness": G.to_text(),
        "witness_in_ideal": binomial_in_ideal(G, T),
        "generators_within_bound": result.count,
        "generator_count_lower_bound": count,
        "count_exceeds_n": count > n,
        "complete_up_to_bound": result.complete_up_to_bound,
    }
    logger.debug("proposition2_check %s -> e=%d count>=%d", params, e, count)
    return report
