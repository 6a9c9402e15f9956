"""
核心计算引擎配置（不使用环境变量）
- 默认值定义在 EngineConfig 中
- 可选配置文件：仓库根目录 toricglue-config.json，或 CLI 通过 --settings 指定
- 供 api/modules/toric/* 的实现层与 CLI 直接读取
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Any

logger = logging.getLogger(__name__)

REPO_ROOT = Path(__file__).resolve().parents[2]
DEFAULT_CONFIG_FILE = REPO_ROOT / "toricglue-config.json"


@dataclass(frozen=True)
class EngineConfig:
    # 粘合搜索
    alpha_max: int = 12
    gluing_search_cap: int = 12

    # 有限域穷举
    vanishing_point_cap: int = 10**8
    verify_primes: tuple[int, ...] = (5, 7, 11)
    max_witnesses: int = 5

    # Markov 基
    markov_default_bound: int = 36
    stabilization_fraction: float = 0.2

    # 枚举分片并发度（1 表示顺序执行）
    workers: int = 1

    log_level: str = "WARNING"

    extra: dict[str, Any] = field(default_factory=dict, compare=False)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> EngineConfig:
        """从字典创建配置对象；未知键保留在 extra 中，缺失键取默认值"""
        known = {f.name for f in fields(cls)} - {"extra"}
        kwargs: dict[str, Any] = {}
        extra: dict[str, Any] = {}
        for key, value in (data or {}).items():
            if key in known:
                kwargs[key] = tuple(value) if key == "verify_primes" else value
            else:
                extra[key] = value
        return cls(**kwargs, extra=extra)

    def with_overrides(self, **overrides: Any) -> EngineConfig:
        clean = {k: v for k, v in overrides.items() if v is not None}
        return replace(self, **clean) if clean else self


def load_engine_config(config_file: str | Path | None = None) -> EngineConfig:
    """
    读取配置文件；文件不存在时使用默认配置
    """
    path = Path(config_file) if config_file else DEFAULT_CONFIG_FILE
    if not path.exists():
        if config_file:
            logger.warning("配置文件不存在，使用默认引擎配置: %s", path)
        return EngineConfig()
    with open(path, encoding="utf-8") as f:
        data = json.load(f)
    logger.debug("从文件加载引擎配置: %s", path)
    return EngineConfig.from_dict(data)


_engine_config: EngineConfig | None = None


def get_engine_config() -> EngineConfig:
    """
    返回进程级引擎配置（首次调用时从默认文件加载）
    """
    global _engine_config
    if _engine_config is None:
        _engine_config = load_engine_config()
    return _engine_config


def set_engine_config(config: EngineConfig | None) -> None:
    """替换进程级引擎配置；传 None 时下次访问重新加载"""
    global _engine_config
    _engine_config = config
