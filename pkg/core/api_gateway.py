"""
API网关模块（核心层 - core）

把注册表中的每个 API 暴露为 HTTP 端点：
- POST {api_prefix}/{namespace}/{path}，请求体为 JSON，字段即函数关键字参数
- GET  {api_prefix}/health
- ApiError 统一转为 {"error_code", "message"} JSON，状态码取自异常
- OpenAPI 文档直接由注册表的 JSON Schema 构建
"""

import asyncio
import functools
import inspect
import logging
from collections.abc import Callable
from dataclasses import dataclass, field
from datetime import datetime
from typing import Any

import uvicorn
from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

import core
from core.api_registry import FunctionSpec
from core.errors import ApiError

logger = logging.getLogger(__name__)


@dataclass
class GatewayConfig:
    """API网关配置"""

    # 服务器配置
    host: str = "127.0.0.1"
    port: int = 8050

    # API配置
    api_prefix: str = "/api"

    # 文档配置
    docs_enabled: bool = True
    docs_url: str = "/docs"

    # CORS配置
    cors_origins: list[str] = field(default_factory=lambda: ["*"])

    title: str = "toricglue API Gateway"
    description: str = "单纯形仿射环面簇：粘合证书、Markov 基与有限域复核"
    version: str = "0.1.0"

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "GatewayConfig":
        """从字典创建配置对象（server / api 两段嵌套，缺省取默认值）"""
        server_config = data.get("server", {})
        api_config = data.get("api", {})
        docs_config = api_config.get("documentation", {})
        defaults = cls()
        return cls(
            host=server_config.get("host", defaults.host),
            port=server_config.get("port", defaults.port),
            cors_origins=server_config.get("cors_origins", defaults.cors_origins),
            api_prefix=api_config.get("prefix", defaults.api_prefix),
            docs_enabled=docs_config.get("enabled", defaults.docs_enabled),
            docs_url=docs_config.get("url", defaults.docs_url),
            title=data.get("title", defaults.title),
            description=data.get("description", defaults.description),
            version=data.get("version", defaults.version),
        )


async def logging_middleware(request: Request, call_next):
    """日志中间件"""
    start_time = datetime.now()
    logger.debug("📨 %s %s", request.method, request.url)
    response = await call_next(request)
    logger.debug("📤 %s - %.4fs", response.status_code, (datetime.now() - start_time).total_seconds())
    return response


async def api_error_handler(request: Request, exc: ApiError) -> JSONResponse:
    return JSONResponse(status_code=exc.status_code, content={"error_code": exc.error_code, "message": str(exc)})


async def internal_error_handler(request: Request, exc: Exception) -> JSONResponse:
    logger.error("❌ API错误: %s: %s", type(exc).__name__, exc)
    return JSONResponse(status_code=500, content={"error_code": "INTERNAL_ERROR", "message": str(exc)})


class APIGateway:
    """
    API网关主类

    - FastAPI 应用初始化（CORS、日志中间件、异常处理器）
    - 系统端点与注册表函数端点
    - 基于注册表的 OpenAPI 文档
    """

    def __init__(self, config: GatewayConfig | None = None):
        self.config = config or GatewayConfig()
        self.app = FastAPI(
            title=self.config.title,
            description=self.config.description,
            version=self.config.version,
            docs_url=self.config.docs_url if self.config.docs_enabled else None,
        )
        self.app.add_middleware(
            CORSMiddleware,
            allow_origins=self.config.cors_origins,
            allow_methods=["*"],
            allow_headers=["*"],
        )
        self.app.middleware("http")(logging_middleware)
        self.app.add_exception_handler(ApiError, api_error_handler)
        self.app.add_exception_handler(Exception, internal_error_handler)
        self._registered = False

    # ========== 路由 ==========

    async def _health_check_handler(self):
        return {"status": "healthy", "timestamp": datetime.now().isoformat()}

    def _create_handler(self, fn: Callable, spec: FunctionSpec):
        async def handler(request: Request):
            body = await request.body()
            data = await request.json() if body else {}
            if not isinstance(data, dict):
                return JSONResponse(
                    status_code=400,
                    content={"error_code": "MALFORMED_REQUEST", "message": "请求体必须为 JSON 对象"},
                )

            missing = spec.missing_inputs(data)
            if missing:
                return JSONResponse(
                    status_code=400,
                    content={"error_code": "MISSING_REQUIRED", "message": "缺少必填字段", "missing": missing},
                )

            if inspect.iscoroutinefunction(fn):
                return await fn(**data)
            loop = asyncio.get_running_loop()
            return await loop.run_in_executor(None, functools.partial(fn, **data))

        return handler

    def register_functions(self) -> int:
        """把注册表中的全部函数挂到 FastAPI 应用上（幂等），返回端点数"""
        if self._registered:
            return len(core.get_registry().list_functions())

        prefix = self.config.api_prefix
        self.app.get(f"{prefix}/health", tags=["system"], summary="健康检查")(self._health_check_handler)

        registry = core.get_registry()
        paths: dict[str, Any] = {}
        for spec in registry.iter_specs():
            func = registry.functions[spec.key]
            full_path = f"{prefix}/{spec.namespace}/{spec.path}"
            summary = spec.description or spec.name
            self.app.post(full_path, tags=[spec.namespace], summary=summary)(self._create_handler(func, spec))
            paths[full_path] = {
                "post": {
                    "summary": summary,
                    "requestBody": {
                        "required": bool(spec.input_schema.get("required")),
                        "content": {"application/json": {"schema": spec.input_schema}},
                    },
                    "responses": {
                        "200": {"description": "OK", "content": {"application/json": {"schema": spec.output_schema}}}
                    },
                }
            }
            logger.debug("✓ 注册端点: POST %s", full_path)

        openapi_schema = {
            "openapi": "3.0.0",
            "info": {"title": self.config.title, "version": self.config.version},
            "paths": paths,
        }
        self.app.openapi = lambda: openapi_schema
        self._registered = True
        logger.info("✓ 网关已挂载 %d 个 API", len(paths))
        return len(paths)

    def start_server(self) -> None:
        """加载全部模块、挂载端点并前台运行 uvicorn"""
        core.get_service_manager().load_project_modules()
        self.register_functions()
        logger.info("🚀 API服务器启动: http://%s:%d", self.config.host, self.config.port)
        uvicorn.run(self.app, host=self.config.host, port=self.config.port, log_level="info")


# 全局API网关实例
_api_gateway_instance: APIGateway | None = None


def get_api_gateway(config: GatewayConfig | None = None) -> APIGateway:
    """获取API网关单例"""
    global _api_gateway_instance
    if _api_gateway_instance is None:
        _api_gateway_instance = APIGateway(config=config)
    return _api_gateway_instance
