"""
toric 分析工作流 - 实现层

工作流程（全部经由 core.call_api 调用 modules 命名空间下的 toric/* API，载荷为 JSON 同构字典）：
1. family_report：族配置 → n + 1 个定义方程 → 见证 G → 恒等式与省略极小性 →（可选）非完全交报告
2. glue_report：解析配置（族简写经 toric/family/build 展开）→ 完全 p-粘合树 → 后序二项式
3. markov_report：有界 Markov 基、计数与稳定性
4. verify_report：方程组 A（默认族的定义方程）与方程组 B（默认 Markov 基）在若干素数上比较消没集，
   附参数化采样与整数提升两类旁证
"""

import logging
from typing import Any

import core

logger = logging.getLogger(__name__)

# 参数化采样的默认点数
PARAMETRIZATION_SAMPLES = 4


def _call(path: str, payload: dict[str, Any]) -> dict[str, Any]:
    return core.call_api(path, payload, namespace="modules")


def resolve_config(config: dict[str, Any]) -> tuple[dict[str, Any], dict[str, int] | None]:
    """
    把配置文档解析为显式配置 {n, c, rows}，并识别其族参数

    返回：(显式配置, {n, f, g} 或 None)
    """
    if "f" in config or "g" in config:
        family = {"n": config.get("n"), "f": config.get("f"), "g": config.get("g")}
        built = _call("toric/family/build", family)
        return built["config"], family
    recognized = _call("toric/family/recognize", {"config": config})
    return config, recognized["family"]


def _parametrization_samples(n: int, count: int = PARAMETRIZATION_SAMPLES) -> list[list[int]]:
    # 小的正整数点 u，保证各坐标两两不全相同
    return [[(k + j) % 3 + 1 + k for j in range(n)] for k in range(count)]


def family_report(
    n: int,
    f: int,
    g: int,
    p: int = 2,
    q: int = 3,
    proposition2: bool = False,
    bound: int | None = None,
) -> dict[str, Any]:
    """
    (n, f, g) 族的完整报告

    返回：
      {
        "params": {n, f, g}, "config": {...}, "conditions": {...}, "frobenius": int,
        "system": {n, r, binomials, equations},      # F_1..F_{n-1}, F_{n,p}, F_{n,q}
        "witness": {binomial, equation},
        "identities": {identities, all_hold},
        "omission_minimality": {subsets, all_glued},
        "support_chain": bool,
        "proposition2": {...} | None,
      }
    """
    params = {"n": n, "f": f, "g": g}
    built = _call("toric/family/build", params)
    system = _call("toric/family/theorem4_system", {**params, "p": p, "q": q})
    report: dict[str, Any] = {
        "params": params,
        "p": p,
        "q": q,
        "config": built["config"],
        "conditions": built["conditions"],
        "frobenius": built["frobenius"],
        "system": system,
        "witness": _call("toric/family/witness", params),
        "identities": _call("toric/family/relation_identities", {**params, "p": p}),
        "omission_minimality": _call("toric/family/omission_minimality", params),
        "support_chain": _call("toric/gluing/support_chain", {"config": built["config"]})["chain"],
        "proposition2": None,
    }
    if proposition2:
        payload = {**params, "bound": bound} if bound is not None else params
        report["proposition2"] = _call("toric/family/proposition2_check", payload)
    logger.info("family_report(%d, %d, %d): %d equations", n, f, g, len(system["binomials"]))
    return report


def glue_report(config: dict[str, Any], p: int, alpha_max: int | None = None) -> dict[str, Any]:
    """完全 p-粘合树搜索报告；p = 0 为完全粘合"""
    explicit, family = resolve_config(config)
    payload: dict[str, Any] = {"config": explicit, "p": p}
    if alpha_max is not None:
        payload["alpha_max"] = alpha_max
    result = _call("toric/gluing/completely_p_glued", payload)
    if not result["found"]:
        logger.info("no gluing tree for p = %d (alpha_max = %d)", p, result["alpha_max"])
    return {"config": explicit, "family": family, **result}


def markov_report(config: dict[str, Any], bound: int | None = None) -> dict[str, Any]:
    """有界 Markov 基报告"""
    explicit, family = resolve_config(config)
    payload: dict[str, Any] = {"config": explicit}
    if bound is not None:
        payload["bound"] = bound
    return {"config": explicit, "family": family, **_call("toric/toric_ideal/markov_basis", payload)}


def verify_report(
    config: dict[str, Any],
    p: int = 2,
    q: int = 3,
    primes: list[int] | None = None,
    bound: int | None = None,
    system: dict[str, Any] | None = None,
    against: dict[str, Any] | None = None,
) -> dict[str, Any]:
    """
    比较两组方程的有限域消没集

    - 方程组 A：显式 system，否则为族配置的 n + 1 个定义方程；两者皆无时报 NO_SYSTEM
    - 方程组 B：显式 against，否则为次数 ≤ bound 的 Markov 基
    - verified 当且仅当所有素数上消没集相等
    """
    explicit, family = resolve_config(config)
    n, r = explicit["n"], len(explicit["rows"])

    if system is not None:
        system_a = {"n": n, "r": r, **system}
        source_a = "file"
    elif family is not None:
        system_a = _call("toric/family/theorem4_system", {**family, "p": p, "q": q})
        source_a = f"theorem4(p={p}, q={q})"
    else:
        raise core.InvalidInputError(
            "configuration is not a family member; pass an explicit system to compare", "NO_SYSTEM"
        )

    if against is not None:
        system_b = {"n": n, "r": r, **against}
        source_b = "file"
    else:
        payload: dict[str, Any] = {"config": explicit}
        if bound is not None:
            payload["bound"] = bound
        markov = _call("toric/toric_ideal/markov_basis", payload)
        system_b = {"n": n, "r": r, "binomials": markov["binomials"]}
        source_b = f"markov(bound={markov['degree_bound_used']})"

    compare_payload: dict[str, Any] = {"system_a": system_a, "system_b": system_b}
    if primes is not None:
        compare_payload["primes"] = primes
    compared = _call("toric/variety_verify/compare_systems", compare_payload)

    parametrization = _call(
        "toric/variety_verify/sample_parametrization",
        {"config": explicit, "system": system_a, "samples": _parametrization_samples(n)},
    )
    lift_prime = min(primes) if primes else min(core.get_engine_config().verify_primes)
    lift = _call("toric/variety_verify/integer_lift", {"system": system_a, "generators": system_b, "l": lift_prime})

    return {
        "config": explicit,
        "family": family,
        "system_a": {"source": source_a, "count": len(system_a["binomials"])},
        "system_b": {"source": source_b, "count": len(system_b["binomials"])},
        "reports": compared["reports"],
        "all_equal": compared["all_equal"],
        "parametrization": parametrization,
        "integer_lift": lift,
        "verified": compared["all_equal"],
    }
