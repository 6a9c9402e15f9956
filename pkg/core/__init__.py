"""
核心门面导出
- 外部项目只需 `import core` 即可使用统一入口
- 暴露方法/对象：
  • register_api / get_registry / get_registered_api: API 注册与查找
  • call_api: 进程内按 (namespace, path) 调用已注册 API
  • ApiError 及其子类: 统一异常（HTTP 状态码 + CLI 退出码）
  • get_engine_config / set_engine_config: 引擎配置（core/config/engine_config.py）
  • get_service_manager: 模块发现与加载
"""

from .api_registry import call_api, get_registered_api, get_registry, register_api
from .config.engine_config import EngineConfig, get_engine_config, load_engine_config, set_engine_config
from .errors import ApiError, CertificateError, InvalidInputError, ResourceCapError
from .services import get_service_manager


# 为避免循环依赖，使用延迟导入包装 core.api_gateway.get_api_gateway
def get_api_gateway(*args, **kwargs):
    from .api_gateway import get_api_gateway as _get_api_gateway

    return _get_api_gateway(*args, **kwargs)


__all__ = [
    "ApiError",
    "CertificateError",
    "EngineConfig",
    "InvalidInputError",
    "ResourceCapError",
    "call_api",
    "get_api_gateway",
    "get_engine_config",
    "get_registered_api",
    "get_registry",
    "get_service_manager",
    "load_engine_config",
    "register_api",
    "set_engine_config",
]
