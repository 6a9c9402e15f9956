"""
API 注册表

- 统一入口 @register_api(path, input_schema, output_schema, name?, description?)
- 斜杠路径（不含 /api 前缀）；命名空间由定义函数的包决定：
  • api/modules/* => modules
  • api/workflow/* => workflow
- 键为 (namespace, path)，同一路径可在两个命名空间各注册一次
- 只给路径时，仅在唯一匹配时解析成功，否则 ValueError
- call_api 与 HTTP 网关共用同一套必填字段检查（MISSING_REQUIRED）
"""

import logging
from collections.abc import Callable, Iterator
from dataclasses import dataclass
from typing import Any

from .errors import InvalidInputError

logger = logging.getLogger(__name__)

NAMESPACE_PACKAGES = (("api.modules", "modules"), ("api.workflow", "workflow"))


@dataclass(frozen=True)
class FunctionSpec:
    """一个已注册 API 的描述：路径、命名空间与输入输出 JSON Schema"""

    name: str
    description: str
    path: str
    namespace: str
    input_schema: dict[str, Any]
    output_schema: dict[str, Any]

    @property
    def key(self) -> tuple[str, str]:
        return (self.namespace, self.path)

    @property
    def required_inputs(self) -> list[str]:
        return list(self.input_schema.get("required") or [])

    def missing_inputs(self, payload: dict[str, Any]) -> list[str]:
        return [k for k in self.required_inputs if k not in payload]

    def __repr__(self):
        return f"{self.namespace}:{self.path} [{self.name}]"


class FunctionRegistry:
    def __init__(self):
        self.functions: dict[tuple[str, str], Callable] = {}
        self.specs: dict[tuple[str, str], FunctionSpec] = {}
        self._by_path: dict[str, list[tuple[str, str]]] = {}

    @staticmethod
    def namespace_of(func: Callable) -> str:
        mod = getattr(func, "__module__", "") or ""
        for package, ns in NAMESPACE_PACKAGES:
            if mod == package or mod.startswith(package + "."):
                return ns
        raise ValueError(f"无法解析命名空间（函数不在 api/modules 或 api/workflow 下）：module={mod}")

    def register(
        self,
        path: str,
        func: Callable,
        input_schema: dict[str, Any],
        output_schema: dict[str, Any],
        name: str | None = None,
        description: str = "",
    ) -> FunctionSpec:
        if not isinstance(path, str) or not path.strip("/"):
            raise ValueError("path 必须为非空字符串")
        if not isinstance(input_schema, dict) or not isinstance(output_schema, dict):
            raise ValueError("input_schema / output_schema 必须为字典(JSON Schema)")

        spec = FunctionSpec(
            name=name or func.__name__,
            description=description,
            path=path.strip("/"),
            namespace=self.namespace_of(func),
            input_schema=input_schema,
            output_schema=output_schema,
        )
        if spec.key in self.functions:
            raise ValueError(f"API key 冲突: {spec.key} 已被注册。已有: {self.specs[spec.key]}")

        self.functions[spec.key] = func
        self.specs[spec.key] = spec
        self._by_path.setdefault(spec.path, []).append(spec.key)
        logger.debug("✓ 已注册API: %s", spec)
        return spec

    def _resolve_key(self, path: str, namespace: str | None) -> tuple[str, str] | None:
        path = path.strip("/")
        if namespace:
            key = (namespace, path)
            return key if key in self.functions else None
        keys = self._by_path.get(path, [])
        if len(keys) > 1:
            raise ValueError(f"路径 '{path}' 匹配到 {len(keys)} 个注册项 {keys}，请使用 namespace 参数精确指定。")
        return keys[0] if keys else None

    def get_spec(self, path: str, namespace: str | None = None) -> FunctionSpec | None:
        key = self._resolve_key(path, namespace)
        return self.specs.get(key) if key else None

    def get_function(self, path: str, namespace: str | None = None) -> Callable | None:
        key = self._resolve_key(path, namespace)
        return self.functions.get(key) if key else None

    def iter_specs(self, namespace: str | None = None) -> Iterator[FunctionSpec]:
        """按命名空间、路径排序遍历"""
        for key in sorted(self.specs):
            if namespace is None or key[0] == namespace:
                yield self.specs[key]

    def call(self, path: str, namespace: str | None = None, **kwargs) -> Any:
        key = self._resolve_key(path, namespace)
        if key is None:
            raise ValueError(f"函数未注册: ns={namespace}, path={path}")
        missing = self.specs[key].missing_inputs(kwargs)
        if missing:
            raise InvalidInputError(f"{key[0]}:{key[1]} 缺少必填字段: {', '.join(missing)}", "MISSING_REQUIRED")
        return self.functions[key](**kwargs)

    def list_functions(self) -> list[tuple[str, str]]:
        return list(self.functions)


_registry = FunctionRegistry()


def get_registry() -> FunctionRegistry:
    return _registry


def register_api(
    path: str,
    input_schema: dict[str, Any],
    output_schema: dict[str, Any],
    name: str | None = None,
    description: str = "",
):
    """
    装饰器：注册API
    使用方法:
        @register_api(
            path="toric/family/build",
            input_schema={...},
            output_schema={...},
            description="构造 (n, f, g) 族的生成元集合",
        )
        def build(...):
            ...
    """

    def decorator(func):
        _registry.register(path, func, input_schema, output_schema, name=name, description=description)
        return func

    return decorator


def get_registered_api(path: str, namespace: str | None = None) -> Callable:
    func = _registry.get_function(path, namespace)
    if func is None:
        raise KeyError(f"API 未注册: ns={namespace}, path={path}")
    return func


def call_api(path: str, payload: dict[str, Any] | None = None, namespace: str | None = None) -> Any:
    """
    进程内直调：按 (namespace, path) 查找注册函数并以 payload 关键字参数调用。
    payload 与 HTTP 网关收到的 JSON 请求体同构。
    """
    return _registry.call(path, namespace=namespace, **(payload or {}))
