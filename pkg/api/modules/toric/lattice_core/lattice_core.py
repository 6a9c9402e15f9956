"""
API 封装层：toric.lattice_core
- 精确整数格运算（Hermite 基、成员判定、格交、秩 1 生成元）与有界半群成员判定
- 入参/出参均为 JSON 友好的整数数组
"""

from typing import Any

import core

from .impl import (
    IntegerLattice,
    hermite_basis,
    is_cyclic_generated_by,
    lattice_intersection,
    lattice_membership,
    semigroup_membership,
)

_VECTOR = {"type": "array", "items": {"type": "integer"}}
_VECTORS = {"type": "array", "items": _VECTOR}
_LATTICE = {
    "type": "object",
    "properties": {"basis": _VECTORS, "ambient_dim": {"type": "integer"}, "rank": {"type": "integer"}},
    "required": ["basis", "ambient_dim"],
}


def _lattice_out(L: IntegerLattice) -> dict[str, Any]:
    return {"basis": [list(row) for row in L.basis], "ambient_dim": L.ambient_dim, "rank": L.rank}


def _lattice_in(data: dict[str, Any]) -> IntegerLattice:
    basis = data.get("basis") or []
    if basis:
        # 重新规范化，允许调用方传入任意生成元
        return hermite_basis(basis)
    return IntegerLattice(basis=(), ambient_dim=int(data["ambient_dim"]))


@core.register_api(
    path="toric/lattice_core/hermite_basis",
    name="Hermite 规范基",
    description="返回生成元整张成格的行式 Hermite 标准形基",
    input_schema={
        "type": "object",
        "properties": {"generators": _VECTORS},
        "required": ["generators"],
        "additionalProperties": False,
    },
    output_schema=_LATTICE,
)
def hermite(generators: list[list[int]]) -> dict[str, Any]:
    return _lattice_out(hermite_basis(generators))


@core.register_api(
    path="toric/lattice_core/membership",
    name="格成员判定",
    description="判断向量是否属于给定生成元的整张成格，返回基下系数",
    input_schema={
        "type": "object",
        "properties": {"vector": _VECTOR, "generators": _VECTORS},
        "required": ["vector", "generators"],
        "additionalProperties": False,
    },
    output_schema={
        "type": "object",
        "properties": {"member": {"type": "boolean"}, "coefficients": {"type": ["array", "null"]}, "lattice": _LATTICE},
        "required": ["member", "coefficients"],
    },
)
def membership(vector: list[int], generators: list[list[int]]) -> dict[str, Any]:
    L = hermite_basis(generators)
    rep = lattice_membership(vector, L)
    return {"member": rep is not None, "coefficients": list(rep) if rep is not None else None, "lattice": _lattice_out(L)}


@core.register_api(
    path="toric/lattice_core/intersection",
    name="格交",
    description="计算两组生成元整张成格的交，可选返回秩 1 生成元",
    input_schema={
        "type": "object",
        "properties": {"generators_a": _VECTORS, "generators_b": _VECTORS},
        "required": ["generators_a", "generators_b"],
        "additionalProperties": False,
    },
    output_schema={
        "type": "object",
        "properties": {"lattice": _LATTICE, "cyclic_generator": {"type": ["array", "null"]}},
        "required": ["lattice", "cyclic_generator"],
    },
)
def intersection(generators_a: list[list[int]], generators_b: list[list[int]]) -> dict[str, Any]:
    L = lattice_intersection(hermite_basis(generators_a), hermite_basis(generators_b))
    w = is_cyclic_generated_by(L)
    return {"lattice": _lattice_out(L), "cyclic_generator": list(w) if w is not None else None}


@core.register_api(
    path="toric/lattice_core/cyclic_generator",
    name="秩 1 生成元",
    description="格秩为 1 时返回符号规范化的生成元",
    input_schema={
        "type": "object",
        "properties": {"lattice": _LATTICE},
        "required": ["lattice"],
        "additionalProperties": False,
    },
    output_schema={"type": "object", "properties": {"generator": {"type": ["array", "null"]}}, "required": ["generator"]},
)
def cyclic_generator(lattice: dict[str, Any]) -> dict[str, Any]:
    w = is_cyclic_generated_by(_lattice_in(lattice))
    return {"generator": list(w) if w is not None else None}


@core.register_api(
    path="toric/lattice_core/semigroup_membership",
    name="半群成员判定",
    description="判断 ℕ^n 中的向量是否为生成元的非负整组合，返回系数",
    input_schema={
        "type": "object",
        "properties": {"target": _VECTOR, "generators": _VECTORS},
        "required": ["target", "generators"],
        "additionalProperties": False,
    },
    output_schema={
        "type": "object",
        "properties": {"member": {"type": "boolean"}, "coefficients": {"type": ["array", "null"]}},
        "required": ["member", "coefficients"],
    },
)
def semigroup(target: list[int], generators: list[list[int]]) -> dict[str, Any]:
    rep = semigroup_membership(target, generators)
    return {"member": rep is not None, "coefficients": list(rep.coefficients) if rep is not None else None}
