"""
API 封装层：toric.variety_verify
- 二项式求值与参数化采样
- 有限域消没集与方程组比较
- 二项式幂递推复核、整数提升复核
"""

from typing import Any

import core
from shared.serialization import binomial_from_json, parse_config_document, system_from_json
from shared.toric_types import ToricConfiguration

from .impl import (
    check_power_recursion,
    compare_systems,
    evaluate_binomial,
    integer_lift_check,
    parametrization_points,
    sample_parametrization_check,
    vanishing_set,
)

_INT = {"type": "integer"}
_VECTOR = {"type": "array", "items": _INT}
_SYSTEM = {
    "type": "object",
    "properties": {"n": _INT, "r": _INT, "binomials": {"type": "array"}},
    "required": ["n", "binomials"],
}
_CONFIG = {"type": "object", "required": ["n", "c", "rows"]}


def _system(data: dict[str, Any]):
    binomials = system_from_json(data)
    r = data.get("r")
    if r is None:
        r = binomials[0].r if binomials else 0
    return binomials, data["n"] + r


def _config(data: dict[str, Any]) -> ToricConfiguration:
    doc = parse_config_document(data)
    if not isinstance(doc, ToricConfiguration):
        raise core.InvalidInputError("expected an explicit configuration {n, c, rows}", "MALFORMED_CONFIG")
    return doc


@core.register_api(
    path="toric/variety_verify/evaluate",
    name="二项式求值",
    description="x^plus - x^minus 在给定点处的值（modulus = 0 为精确整数）",
    input_schema={
        "type": "object",
        "properties": {"binomial": {"type": "object"}, "n": _INT, "r": _INT, "point": _VECTOR, "modulus": _INT},
        "required": ["binomial", "n", "r", "point"],
        "additionalProperties": False,
    },
    output_schema={"type": "object", "properties": {"value": _INT}, "required": ["value"]},
)
def evaluate(binomial: dict[str, Any], n: int, r: int, point: list[int], modulus: int = 0) -> dict[str, Any]:
    return {"value": evaluate_binomial(binomial_from_json(binomial, n, r), point, modulus)}


@core.register_api(
    path="toric/variety_verify/parametrization_points",
    name="参数化像点",
    description="x_j = u_j^c，y_i = Π u_j^{a_ij}",
    input_schema={
        "type": "object",
        "properties": {"config": _CONFIG, "u_samples": {"type": "array", "items": _VECTOR}},
        "required": ["config", "u_samples"],
        "additionalProperties": False,
    },
    output_schema={"type": "object", "properties": {"points": {"type": "array"}}, "required": ["points"]},
)
def points(config: dict[str, Any], u_samples: list[list[int]]) -> dict[str, Any]:
    return {"points": [list(p) for p in parametrization_points(_config(config), u_samples)]}


@core.register_api(
    path="toric/variety_verify/vanishing_set",
    name="有限域消没集",
    description="𝔽_l 上方程组的全部公共零点（按 limit 截断输出，计数完整）",
    input_schema={
        "type": "object",
        "properties": {"system": _SYSTEM, "l": _INT, "limit": _INT},
        "required": ["system", "l"],
        "additionalProperties": False,
    },
    output_schema={
        "type": "object",
        "properties": {"count": _INT, "points": {"type": "array"}, "truncated": {"type": "boolean"}},
        "required": ["count", "points"],
    },
)
def zeros(system: dict[str, Any], l: int, limit: int = 1000) -> dict[str, Any]:
    binomials, N = _system(system)
    found = sorted(vanishing_set(binomials, l, num_vars=N))
    return {"count": len(found), "points": [list(p) for p in found[:limit]], "truncated": len(found) > limit}


@core.register_api(
    path="toric/variety_verify/compare_systems",
    name="方程组比较",
    description="逐素数比较两组方程的消没集，附对称差见证点",
    input_schema={
        "type": "object",
        "properties": {"system_a": _SYSTEM, "system_b": _SYSTEM, "primes": _VECTOR},
        "required": ["system_a", "system_b"],
        "additionalProperties": False,
    },
    output_schema={
        "type": "object",
        "properties": {"reports": {"type": "array"}, "all_equal": {"type": "boolean"}},
        "required": ["reports", "all_equal"],
    },
)
def compare(system_a: dict[str, Any], system_b: dict[str, Any], primes: list[int] | None = None) -> dict[str, Any]:
    a, na = _system(system_a)
    b, nb = _system(system_b)
    if na != nb:
        raise core.InvalidInputError(f"systems live in different rings ({na} vs {nb} variables)", "ARITY_MISMATCH")
    reports = compare_systems(a, b, primes, num_vars=na)
    return {"reports": [r.to_dict() for r in reports], "all_equal": all(r.equal for r in reports)}


@core.register_api(
    path="toric/variety_verify/power_recursion",
    name="二项式幂递推",
    description="逐点复核 F^{(h+1)} = M·F^{(h)} + F·N^h（精确整数）",
    input_schema={
        "type": "object",
        "properties": {
            "binomial": {"type": "object"},
            "n": _INT,
            "r": _INT,
            "h": _INT,
            "points": {"type": "array", "items": _VECTOR},
        },
        "required": ["binomial", "n", "r", "h", "points"],
        "additionalProperties": False,
    },
    output_schema={"type": "object", "properties": {"holds": {"type": "boolean"}}, "required": ["holds"]},
)
def power_recursion(binomial: dict[str, Any], n: int, r: int, h: int, points: list[list[int]]) -> dict[str, Any]:
    F = binomial_from_json(binomial, n, r)
    return {"holds": all(check_power_recursion(F, h, p) for p in points)}


@core.register_api(
    path="toric/variety_verify/sample_parametrization",
    name="参数化采样复核",
    description="方程组在参数化像点上取零",
    input_schema={
        "type": "object",
        "properties": {
            "config": _CONFIG,
            "system": _SYSTEM,
            "samples": {"type": "array", "items": _VECTOR},
            "modulus": _INT,
        },
        "required": ["config", "system", "samples"],
        "additionalProperties": False,
    },
    output_schema={"type": "object", "properties": {"passed": {"type": "boolean"}}, "required": ["passed"]},
)
def sample(config: dict[str, Any], system: dict[str, Any], samples: list[list[int]], modulus: int = 0) -> dict[str, Any]:
    binomials, _ = _system(system)
    return sample_parametrization_check(binomials, _config(config), samples, modulus)


@core.register_api(
    path="toric/variety_verify/integer_lift",
    name="整数提升复核",
    description="𝔽_l 零点提升为小整数点后，复核另一组生成元在其上精确取零",
    input_schema={
        "type": "object",
        "properties": {"system": _SYSTEM, "generators": _SYSTEM, "l": _INT},
        "required": ["system", "generators"],
        "additionalProperties": False,
    },
    output_schema={
        "type": "object",
        "properties": {"lifted": _INT, "passed": {"type": "boolean"}},
        "required": ["lifted", "passed"],
    },
)
def integer_lift(system: dict[str, Any], generators: dict[str, Any], l: int = 5) -> dict[str, Any]:
    a, na = _system(system)
    b, nb = _system(generators)
    if na != nb:
        raise core.InvalidInputError(f"systems live in different rings ({na} vs {nb} variables)", "ARITY_MISMATCH")
    return integer_lift_check(a, b, l, num_vars=na)
