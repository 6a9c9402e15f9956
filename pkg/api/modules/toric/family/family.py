"""
API 封装层：toric.family
- (n, f, g) 族配置、条件检查与四个定义方程
- 引理 1 配置与完全交二项式
- p 幂表示、F_{n,p}、见证 G、非完全交报告、恒等式与省略极小性
"""

from typing import Any

import core
from shared.serialization import binomial_to_json, configuration_to_json, parse_config_document
from shared.toric_types import ToricConfiguration

from .impl import (
    FamilyParameters,
    build_family,
    check_conditions,
    extra_binomial,
    frobenius_number,
    lemma1_ci_binomials,
    lemma1_configuration,
    p_power_rep,
    proposition2_check,
    proposition2_witness,
    recognize_family,
    relation_identities,
    remark2_check,
    theorem4_system,
)

_INT = {"type": "integer"}
_NFG = {"n": _INT, "f": _INT, "g": _INT}
_BINOMIALS = {"type": "array", "items": {"type": "object", "required": ["plus", "minus"]}}


def _system_out(binomials, n: int, r: int) -> dict[str, Any]:
    return {
        "n": n,
        "r": r,
        "binomials": [binomial_to_json(b) for b in binomials],
        "equations": [b.to_text() for b in binomials],
    }


@core.register_api(
    path="toric/family/conditions",
    name="族条件检查",
    description="逐条求值 n ≥ 3、gcd(f, g) = 1 与条件 (a)(b)(c)，不抛异常",
    input_schema={"type": "object", "properties": _NFG, "required": ["n", "f", "g"], "additionalProperties": False},
    output_schema={"type": "object", "properties": {"conditions": {"type": "object"}}, "required": ["conditions"]},
)
def conditions(n: int, f: int, g: int) -> dict[str, Any]:
    return {"conditions": check_conditions(n, f, g)}


@core.register_api(
    path="toric/family/build",
    name="族配置",
    description="构造 (n, f, g) 族的生成元集合 T",
    input_schema={"type": "object", "properties": _NFG, "required": ["n", "f", "g"], "additionalProperties": False},
    output_schema={
        "type": "object",
        "properties": {"config": {"type": "object"}, "conditions": {"type": "object"}, "frobenius": _INT},
        "required": ["config", "conditions"],
    },
)
def build(n: int, f: int, g: int) -> dict[str, Any]:
    params = FamilyParameters(n, f, g)
    return {
        "config": configuration_to_json(build_family(params)),
        "conditions": params.conditions,
        "frobenius": frobenius_number(f, g),
    }


@core.register_api(
    path="toric/family/lemma1",
    name="引理 1 配置",
    description="T^{(i_1..i_k)} 与其完全交二项式 F_{i_h}",
    input_schema={
        "type": "object",
        "properties": {"n": _INT, "c": _INT, "d": _INT, "indices": {"type": "array", "items": _INT}},
        "required": ["n", "c", "d", "indices"],
        "additionalProperties": False,
    },
    output_schema={
        "type": "object",
        "properties": {"config": {"type": "object"}, "binomials": _BINOMIALS},
        "required": ["config", "binomials"],
    },
)
def lemma1(n: int, c: int, d: int, indices: list[int]) -> dict[str, Any]:
    T = lemma1_configuration(n, c, d, indices)
    out = _system_out(lemma1_ci_binomials(n, c, d, indices), T.n, T.r)
    out["config"] = configuration_to_json(T)
    return out


@core.register_api(
    path="toric/family/p_power_rep",
    name="p 幂表示",
    description="最小 alpha 使 p^alpha = s·f + t·g，t 取最小非负解",
    input_schema={
        "type": "object",
        "properties": {"f": _INT, "g": _INT, "p": _INT},
        "required": ["f", "g", "p"],
        "additionalProperties": False,
    },
    output_schema={
        "type": "object",
        "properties": {"p": _INT, "alpha": _INT, "s": _INT, "t": _INT, "power": _INT},
        "required": ["p", "alpha", "s", "t"],
    },
)
def power_rep(f: int, g: int, p: int) -> dict[str, Any]:
    return p_power_rep(f, g, p).to_dict()


@core.register_api(
    path="toric/family/extra_binomial",
    name="F_{n,p}",
    description="由 p 幂表示导出的额外二项式 F_{n,p}",
    input_schema={
        "type": "object",
        "properties": {**_NFG, "p": _INT},
        "required": ["n", "f", "g", "p"],
        "additionalProperties": False,
    },
    output_schema={
        "type": "object",
        "properties": {"binomial": {"type": "object"}, "equation": {"type": "string"}, "rep": {"type": "object"}},
        "required": ["binomial", "equation"],
    },
)
def extra(n: int, f: int, g: int, p: int) -> dict[str, Any]:
    b = extra_binomial(FamilyParameters(n, f, g), p)
    return {"binomial": binomial_to_json(b), "equation": b.to_text(), "rep": p_power_rep(f, g, p).to_dict()}


@core.register_api(
    path="toric/family/theorem4_system",
    name="n + 1 个定义方程",
    description="F_1..F_{n-1}, F_{n,p}, F_{n,q}",
    input_schema={
        "type": "object",
        "properties": {**_NFG, "p": _INT, "q": _INT},
        "required": ["n", "f", "g", "p", "q"],
        "additionalProperties": False,
    },
    output_schema={
        "type": "object",
        "properties": {"n": _INT, "r": _INT, "binomials": _BINOMIALS, "equations": {"type": "array"}},
        "required": ["n", "r", "binomials"],
    },
)
def system(n: int, f: int, g: int, p: int, q: int) -> dict[str, Any]:
    return _system_out(theorem4_system(FamilyParameters(n, f, g), p, q), n, n)


@core.register_api(
    path="toric/family/witness",
    name="见证二项式 G",
    description="G = y_1^g···y_{n-1}^g y_n - x_1···x_n",
    input_schema={"type": "object", "properties": _NFG, "required": ["n", "f", "g"], "additionalProperties": False},
    output_schema={
        "type": "object",
        "properties": {"binomial": {"type": "object"}, "equation": {"type": "string"}},
        "required": ["binomial", "equation"],
    },
)
def witness(n: int, f: int, g: int) -> dict[str, Any]:
    G = proposition2_witness(FamilyParameters(n, f, g))
    return {"binomial": binomial_to_json(G), "equation": G.to_text()}


@core.register_api(
    path="toric/family/proposition2_check",
    name="非完全交报告",
    description="最小 e > 1、G ∈ I(V)、生成元个数下界 > n",
    input_schema={
        "type": "object",
        "properties": {**_NFG, "bound": _INT},
        "required": ["n", "f", "g"],
        "additionalProperties": False,
    },
    output_schema={
        "type": "object",
        "properties": {
            "e": _INT,
            "e_greater_than_one": {"type": "boolean"},
            "witness_in_ideal": {"type": "boolean"},
            "generator_count_lower_bound": _INT,
            "count_exceeds_n": {"type": "boolean"},
        },
        "required": ["e", "e_greater_than_one", "witness_in_ideal", "generator_count_lower_bound", "count_exceeds_n"],
    },
)
def proposition2(n: int, f: int, g: int, bound: int | None = None) -> dict[str, Any]:
    return proposition2_check(FamilyParameters(n, f, g), bound)


@core.register_api(
    path="toric/family/relation_identities",
    name="向量恒等式",
    description="族的精确向量恒等式（w_n 的三种表示、p 幂关系、见证关系）",
    input_schema={
        "type": "object",
        "properties": {**_NFG, "p": _INT},
        "required": ["n", "f", "g"],
        "additionalProperties": False,
    },
    output_schema={
        "type": "object",
        "properties": {"identities": {"type": "array"}, "all_hold": {"type": "boolean"}},
        "required": ["identities", "all_hold"],
    },
)
def identities(n: int, f: int, g: int, p: int = 2) -> dict[str, Any]:
    entries = relation_identities(FamilyParameters(n, f, g), p)
    return {"identities": entries, "all_hold": all(e["holds"] for e in entries)}


@core.register_api(
    path="toric/family/omission_minimality",
    name="省略极小性",
    description="省略部分 w_i 后 T^{(S)} ∪ {w_n} 均为粘合，w = f·w_n",
    input_schema={
        "type": "object",
        "properties": {**_NFG, "omit": {"type": "array", "items": _INT}},
        "required": ["n", "f", "g"],
        "additionalProperties": False,
    },
    output_schema={
        "type": "object",
        "properties": {"subsets": {"type": "array"}, "all_glued": {"type": "boolean"}},
        "required": ["subsets", "all_glued"],
    },
)
def omission(n: int, f: int, g: int, omit: list[int] | None = None) -> dict[str, Any]:
    entries = remark2_check(FamilyParameters(n, f, g), omit)
    return {"subsets": entries, "all_glued": all(e["glued"] and e["w_is_f_w_n"] for e in entries)}


@core.register_api(
    path="toric/family/recognize",
    name="族识别",
    description="判断显式配置 {n, c, rows} 是否恰为某个 (n, f, g) 族成员",
    input_schema={
        "type": "object",
        "properties": {"config": {"type": "object"}},
        "required": ["config"],
        "additionalProperties": False,
    },
    output_schema={
        "type": "object",
        "properties": {"family": {"type": ["object", "null"]}},
        "required": ["family"],
    },
)
def recognize(config: dict[str, Any]) -> dict[str, Any]:
    T = parse_config_document(config)
    if not isinstance(T, ToricConfiguration):
        raise core.InvalidInputError("expected an explicit configuration {n, c, rows}", "MALFORMED_CONFIG")
    params = recognize_family(T)
    return {"family": {"n": params.n, "f": params.f, "g": params.g} if params else None}
