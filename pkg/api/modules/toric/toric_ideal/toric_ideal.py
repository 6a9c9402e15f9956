"""
API 封装层：toric.toric_ideal
- 二项式理想成员判定（关系 (∗)）
- 纤维枚举
- 有界 Markov 基、极小生成元计数、不可缺二项式
"""

from typing import Any

import core
from shared.serialization import binomial_from_json, binomial_to_json, parse_config_document
from shared.toric_types import ToricConfiguration

from .impl import (
    binomial_grading,
    binomial_in_ideal,
    enumerate_fiber,
    indispensable_binomials,
    markov_basis,
    spanning_check,
)

_VECTOR = {"type": "array", "items": {"type": "integer"}}
_CONFIG = {
    "type": "object",
    "properties": {"n": {"type": "integer"}, "c": {"type": "integer"}, "rows": {"type": "array", "items": _VECTOR}},
    "required": ["n", "c", "rows"],
}
_BINOMIAL = {
    "type": "object",
    "properties": {"plus": {"type": "object"}, "minus": {"type": "object"}},
    "required": ["plus", "minus"],
}


def _config(data: dict[str, Any]) -> ToricConfiguration:
    doc = parse_config_document(data)
    if not isinstance(doc, ToricConfiguration):
        raise core.InvalidInputError("expected an explicit configuration {n, c, rows}", "MALFORMED_CONFIG")
    return doc


@core.register_api(
    path="toric/toric_ideal/binomial_in_ideal",
    name="二项式理想成员判定",
    description="两侧指数在配置矩阵下的像相等即属于 I(V)",
    input_schema={
        "type": "object",
        "properties": {"config": _CONFIG, "binomial": _BINOMIAL},
        "required": ["config", "binomial"],
        "additionalProperties": False,
    },
    output_schema={"type": "object", "properties": {"in_ideal": {"type": "boolean"}}, "required": ["in_ideal"]},
)
def in_ideal(config: dict[str, Any], binomial: dict[str, Any]) -> dict[str, Any]:
    T = _config(config)
    return {"in_ideal": binomial_in_ideal(binomial_from_json(binomial, T.n, T.r), T)}


@core.register_api(
    path="toric/toric_ideal/fiber",
    name="纤维枚举",
    description="列出 A·z = degree 的全部非负整解（字典序）",
    input_schema={
        "type": "object",
        "properties": {"config": _CONFIG, "degree": _VECTOR},
        "required": ["config", "degree"],
        "additionalProperties": False,
    },
    output_schema={
        "type": "object",
        "properties": {"degree": _VECTOR, "points": {"type": "array", "items": _VECTOR}},
        "required": ["degree", "points"],
    },
)
def fiber(config: dict[str, Any], degree: list[int]) -> dict[str, Any]:
    F = enumerate_fiber(_config(config), degree)
    return {"degree": list(F.degree), "points": [list(z) for z in F.points]}


@core.register_api(
    path="toric/toric_ideal/markov_basis",
    name="有界 Markov 基",
    description="按次数逐层处理纤维，返回次数 ≤ bound 的极小 Markov 基与稳定性标记",
    input_schema={
        "type": "object",
        "properties": {"config": _CONFIG, "bound": {"type": "integer", "minimum": 1}},
        "required": ["config"],
        "additionalProperties": False,
    },
    output_schema={
        "type": "object",
        "properties": {
            "binomials": {"type": "array", "items": _BINOMIAL},
            "equations": {"type": "array", "items": {"type": "string"}},
            "gradings": {"type": "array", "items": {"type": "integer"}},
            "indispensable": {"type": "array", "items": {"type": "string"}},
            "count": {"type": "integer"},
            "degree_bound_used": {"type": "integer"},
            "complete_up_to_bound": {"type": "boolean"},
        },
        "required": ["binomials", "count", "degree_bound_used", "complete_up_to_bound"],
    },
)
def markov(config: dict[str, Any], bound: int | None = None) -> dict[str, Any]:
    T = _config(config)
    result = markov_basis(T, bound)
    return {
        "binomials": [binomial_to_json(b) for b in result.binomials],
        "equations": [b.to_text() for b in result.binomials],
        "gradings": [binomial_grading(b, T) for b in result.binomials],
        "indispensable": [b.to_text() for b in indispensable_binomials(result)],
        "count": result.count,
        "degree_bound_used": result.degree_bound_used,
        "complete_up_to_bound": result.complete_up_to_bound,
    }


@core.register_api(
    path="toric/toric_ideal/spanning_check",
    name="连通性复核",
    description="用给定二项式复核次数 ≤ bound 的每个纤维是否连通",
    input_schema={
        "type": "object",
        "properties": {
            "config": _CONFIG,
            "binomials": {"type": "array", "items": _BINOMIAL},
            "bound": {"type": "integer", "minimum": 1},
        },
        "required": ["config", "binomials", "bound"],
        "additionalProperties": False,
    },
    output_schema={"type": "object", "properties": {"spanning": {"type": "boolean"}}, "required": ["spanning"]},
)
def spanning(config: dict[str, Any], binomials: list[dict[str, Any]], bound: int) -> dict[str, Any]:
    T = _config(config)
    system = [binomial_from_json(b, T.n, T.r) for b in binomials]
    return {"spanning": spanning_check(T, system, bound)}
