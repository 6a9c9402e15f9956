"""
API 封装层：toric.gluing
- 粘合 / p-粘合证书判定
- 完全 p-粘合树搜索与二项式导出
- 证书与粘合树复核
"""

from typing import Any

import core
from core.config.engine_config import get_engine_config
from core.errors import CertificateError
from shared.serialization import binomial_to_json, parse_config_document
from shared.toric_types import ToricConfiguration

from .impl import (
    binomials_from_tree,
    check_gluing,
    check_p_gluing,
    completely_p_glued,
    proposition1_support_chain,
    tree_from_dict,
    validate_tree,
)
from .variables import CERTIFICATE_FIELDS

_VECTORS = {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}}
_CONFIG = {
    "type": "object",
    "properties": {"n": {"type": "integer"}, "c": {"type": "integer"}, "rows": _VECTORS},
    "required": ["n", "c", "rows"],
}
_CERTIFICATE = {"type": "object", "required": list(CERTIFICATE_FIELDS)}
_BINOMIALS = {"type": "array", "items": {"type": "object", "required": ["plus", "minus"]}}


def _config(data: dict[str, Any]) -> ToricConfiguration:
    doc = parse_config_document(data)
    if not isinstance(doc, ToricConfiguration):
        raise core.InvalidInputError("expected an explicit configuration {n, c, rows}", "MALFORMED_CONFIG")
    return doc


def _certificate_out(cert) -> dict[str, Any]:
    return {"glued": cert is not None, "certificate": cert.to_dict() if cert is not None else None}


@core.register_api(
    path="toric/gluing/check_gluing",
    name="粘合判定",
    description="判断 (T1, T2) 是否为粘合（alpha = 0），返回证书",
    input_schema={
        "type": "object",
        "properties": {"part1": _VECTORS, "part2": _VECTORS},
        "required": ["part1", "part2"],
        "additionalProperties": False,
    },
    output_schema={
        "type": "object",
        "properties": {"glued": {"type": "boolean"}, "certificate": {"oneOf": [_CERTIFICATE, {"type": "null"}]}},
        "required": ["glued", "certificate"],
    },
)
def gluing(part1: list[list[int]], part2: list[list[int]]) -> dict[str, Any]:
    return _certificate_out(check_gluing(part1, part2))


@core.register_api(
    path="toric/gluing/check_p_gluing",
    name="p-粘合判定",
    description="在 alpha ≤ alpha_max 内寻找最小 alpha 的 p-粘合证书",
    input_schema={
        "type": "object",
        "properties": {
            "part1": _VECTORS,
            "part2": _VECTORS,
            "p": {"type": "integer"},
            "alpha_max": {"type": "integer", "minimum": 0},
        },
        "required": ["part1", "part2", "p"],
        "additionalProperties": False,
    },
    output_schema={
        "type": "object",
        "properties": {"glued": {"type": "boolean"}, "certificate": {"oneOf": [_CERTIFICATE, {"type": "null"}]}},
        "required": ["glued", "certificate"],
    },
)
def p_gluing(part1: list[list[int]], part2: list[list[int]], p: int, alpha_max: int | None = None) -> dict[str, Any]:
    return _certificate_out(check_p_gluing(part1, part2, p, alpha_max))


@core.register_api(
    path="toric/gluing/completely_p_glued",
    name="完全 p-粘合树",
    description="递归二划分搜索完全 p-粘合树（p = 0 为完全粘合），并导出每个节点的二项式",
    input_schema={
        "type": "object",
        "properties": {
            "config": _CONFIG,
            "p": {"type": "integer"},
            "alpha_max": {"type": "integer", "minimum": 0},
        },
        "required": ["config", "p"],
        "additionalProperties": False,
    },
    output_schema={
        "type": "object",
        "properties": {
            "found": {"type": "boolean"},
            "p": {"type": "integer"},
            "alpha_max": {"type": "integer"},
            "tree": {"type": ["object", "null"]},
            "binomials": _BINOMIALS,
            "equations": {"type": "array", "items": {"type": "string"}},
        },
        "required": ["found", "p", "alpha_max", "tree", "binomials"],
    },
)
def complete_tree(config: dict[str, Any], p: int, alpha_max: int | None = None) -> dict[str, Any]:
    T = _config(config)
    alpha_max = get_engine_config().alpha_max if alpha_max is None else alpha_max
    tree = completely_p_glued(T, p, alpha_max=alpha_max)
    binomials = binomials_from_tree(tree, T) if tree is not None else []
    return {
        "found": tree is not None,
        "p": p,
        "alpha_max": alpha_max if p else 0,
        "tree": tree.to_dict() if tree is not None else None,
        "binomials": [binomial_to_json(b) for b in binomials],
        "equations": [b.to_text() for b in binomials],
    }


@core.register_api(
    path="toric/gluing/binomials_from_tree",
    name="由粘合树导出二项式",
    description="复核粘合树后，每个内部节点导出一条二项式（后序）",
    input_schema={
        "type": "object",
        "properties": {"config": _CONFIG, "tree": {"type": "object"}},
        "required": ["config", "tree"],
        "additionalProperties": False,
    },
    output_schema={"type": "object", "properties": {"binomials": _BINOMIALS}, "required": ["binomials"]},
)
def tree_binomials(config: dict[str, Any], tree: dict[str, Any]) -> dict[str, Any]:
    binomials = binomials_from_tree(tree_from_dict(tree), _config(config))
    return {"binomials": [binomial_to_json(b) for b in binomials], "equations": [b.to_text() for b in binomials]}


@core.register_api(
    path="toric/gluing/validate_tree",
    name="粘合树复核",
    description="复核粘合树：格相等、精确展开、划分良构、叶子自由",
    input_schema={
        "type": "object",
        "properties": {"config": _CONFIG, "tree": {"type": "object"}},
        "required": ["config", "tree"],
        "additionalProperties": False,
    },
    output_schema={
        "type": "object",
        "properties": {"valid": {"type": "boolean"}, "error_code": {"type": ["string", "null"]}, "message": {"type": "string"}},
        "required": ["valid"],
    },
)
def check_tree(config: dict[str, Any], tree: dict[str, Any]) -> dict[str, Any]:
    try:
        validate_tree(tree_from_dict(tree), _config(config))
    except CertificateError as e:
        return {"valid": False, "error_code": e.error_code, "message": str(e)}
    return {"valid": True, "error_code": None, "message": ""}


@core.register_api(
    path="toric/gluing/support_chain",
    name="支撑链条件",
    description="w_i 的支撑是否在某个排列下构成包含链",
    input_schema={
        "type": "object",
        "properties": {"config": _CONFIG},
        "required": ["config"],
        "additionalProperties": False,
    },
    output_schema={"type": "object", "properties": {"chain": {"type": "boolean"}}, "required": ["chain"]},
)
def support_chain(config: dict[str, Any]) -> dict[str, Any]:
    return {"chain": proposition1_support_chain(_config(config))}
