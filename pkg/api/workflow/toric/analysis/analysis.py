"""
toric 分析工作流 - API 封装层

提供 CLI 与网关共用的四类报告：
- family_report：族配置、定义方程、见证、恒等式与省略极小性
- glue_report：完全 p-粘合树与导出的二项式
- markov_report：有界 Markov 基
- verify_report：有限域消没集比较与特征零旁证
"""

from typing import Any

import core

from .impl import family_report as _family_report
from .impl import glue_report as _glue_report
from .impl import markov_report as _markov_report
from .impl import verify_report as _verify_report

_INT = {"type": "integer"}
_CONFIG_DOC = {
    "type": "object",
    "description": "显式配置 {n, c, rows} 或族简写 {n, f, g}",
    "required": ["n"],
}
_SYSTEM = {"type": "object", "properties": {"binomials": {"type": "array"}}, "required": ["binomials"]}


@core.register_api(
    path="toric/analysis/family_report",
    name="族报告",
    description="(n, f, g) 族的配置、n + 1 个定义方程、见证 G、条件检查、恒等式与省略极小性",
    input_schema={
        "type": "object",
        "properties": {
            "n": _INT,
            "f": _INT,
            "g": _INT,
            "p": _INT,
            "q": _INT,
            "proposition2": {"type": "boolean"},
            "bound": _INT,
        },
        "required": ["n", "f", "g"],
        "additionalProperties": False,
    },
    output_schema={
        "type": "object",
        "properties": {
            "config": {"type": "object"},
            "system": {"type": "object"},
            "witness": {"type": "object"},
            "conditions": {"type": "object"},
        },
        "required": ["config", "system", "witness", "conditions"],
        "additionalProperties": True,
    },
)
def family_report(
    n: int,
    f: int,
    g: int,
    p: int = 2,
    q: int = 3,
    proposition2: bool = False,
    bound: int | None = None,
) -> dict[str, Any]:
    return _family_report(n, f, g, p=p, q=q, proposition2=proposition2, bound=bound)


@core.register_api(
    path="toric/analysis/glue_report",
    name="粘合报告",
    description="完全 p-粘合树（p = 0 为完全粘合）及后序二项式",
    input_schema={
        "type": "object",
        "properties": {"config": _CONFIG_DOC, "p": _INT, "alpha_max": {"type": "integer", "minimum": 0}},
        "required": ["config", "p"],
        "additionalProperties": False,
    },
    output_schema={
        "type": "object",
        "properties": {"found": {"type": "boolean"}, "tree": {"type": ["object", "null"]}},
        "required": ["found", "tree"],
        "additionalProperties": True,
    },
)
def glue_report(config: dict[str, Any], p: int, alpha_max: int | None = None) -> dict[str, Any]:
    return _glue_report(config, p, alpha_max)


@core.register_api(
    path="toric/analysis/markov_report",
    name="Markov 报告",
    description="有界 Markov 基、计数与稳定性标记",
    input_schema={
        "type": "object",
        "properties": {"config": _CONFIG_DOC, "bound": {"type": "integer", "minimum": 1}},
        "required": ["config"],
        "additionalProperties": False,
    },
    output_schema={
        "type": "object",
        "properties": {"count": _INT, "complete_up_to_bound": {"type": "boolean"}},
        "required": ["count", "complete_up_to_bound"],
        "additionalProperties": True,
    },
)
def markov_report(config: dict[str, Any], bound: int | None = None) -> dict[str, Any]:
    return _markov_report(config, bound)


@core.register_api(
    path="toric/analysis/verify_report",
    name="消没集比较报告",
    description="方程组 A（默认族的定义方程）与方程组 B（默认 Markov 基）逐素数比较",
    input_schema={
        "type": "object",
        "properties": {
            "config": _CONFIG_DOC,
            "p": _INT,
            "q": _INT,
            "primes": {"type": "array", "items": _INT},
            "bound": _INT,
            "system": _SYSTEM,
            "against": _SYSTEM,
        },
        "required": ["config"],
        "additionalProperties": False,
    },
    output_schema={
        "type": "object",
        "properties": {"reports": {"type": "array"}, "all_equal": {"type": "boolean"}, "verified": {"type": "boolean"}},
        "required": ["reports", "all_equal", "verified"],
        "additionalProperties": True,
    },
)
def verify_report(
    config: dict[str, Any],
    p: int = 2,
    q: int = 3,
    primes: list[int] | None = None,
    bound: int | None = None,
    system: dict[str, Any] | None = None,
    against: dict[str, Any] | None = None,
) -> dict[str, Any]:
    return _verify_report(config, p=p, q=q, primes=primes, bound=bound, system=system, against=against)
