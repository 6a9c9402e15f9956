"""
统一服务管理 (Unified Service Management)

启动时扫描 api/modules 与 api/workflow，导入每个功能包的封装层文件
（约定：包目录 foo/ 下的 foo.py），从而触发其中的 @register_api 注册。
impl.py / variables.py 由封装层自行导入；test_*.py、__*.py 与 test/example 目录不参与。
"""

import importlib
import logging
import threading
from pathlib import Path
from types import ModuleType

logger = logging.getLogger(__name__)

REPO_ROOT = Path(__file__).resolve().parents[1]
API_ROOTS = ("api/modules", "api/workflow")
SKIPPED_DIRS = {"test", "tests", "example", "examples", "__pycache__"}


def is_wrapper_file(path: Path) -> bool:
    """封装层文件：与所在目录同名，且不是测试或私有文件"""
    name = path.stem
    return path.suffix == ".py" and name == path.parent.name and not name.startswith(("__", "test_"))


class UnifiedServiceManager:
    """
    统一服务管理器（进程级单例）

    1. 发现封装层模块（discover_modules）
    2. 幂等导入（load_project_modules），失败的模块记录在 failed 中并跳过
    """

    _instance = None
    _lock = threading.Lock()

    def __new__(cls, base_path: Path | None = None):
        if cls._instance is None:
            with cls._lock:
                if cls._instance is None:
                    cls._instance = super().__new__(cls)
        return cls._instance

    def __init__(self, base_path: Path | None = None):
        if hasattr(self, "_initialized"):
            return
        self._initialized = True
        self._base_path = base_path or REPO_ROOT
        self.loaded: dict[str, ModuleType] = {}
        self.failed: dict[str, str] = {}
        self._loaded = False

    # ========== 动态模块发现与加载 ==========

    def discover_modules(self) -> list[str]:
        """返回全部封装层模块的导入路径（按路径排序）"""
        module_paths: list[str] = []
        for root in API_ROOTS:
            base_dir = self._base_path / root
            if not base_dir.exists():
                continue
            for p in sorted(base_dir.rglob("*.py")):
                rel = p.relative_to(self._base_path).with_suffix("")
                if SKIPPED_DIRS.intersection(rel.parts) or not is_wrapper_file(p):
                    continue
                module_paths.append(".".join(rel.parts))
        return module_paths

    def load_project_modules(self) -> int:
        """导入全部封装层模块（重复调用只导入一次），返回成功导入的个数"""
        if self._loaded:
            return len(self.loaded)

        for module_path in self.discover_modules():
            try:
                self.loaded[module_path] = importlib.import_module(module_path)
            except Exception as e:
                self.failed[module_path] = f"{type(e).__name__}: {e}"
                logger.error("✗ 模块加载失败 %s: %s", module_path, self.failed[module_path])
                continue
            logger.debug("✓ 加载模块: %s", module_path)

        self._loaded = True
        logger.info("已加载 %d 个 API 模块（失败 %d）", len(self.loaded), len(self.failed))
        return len(self.loaded)


service_manager = UnifiedServiceManager()


def get_service_manager() -> UnifiedServiceManager:
    """获取全局服务管理器"""
    return service_manager
