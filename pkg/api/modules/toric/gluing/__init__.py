"""
toric.gluing 包
- 粘合 / p-粘合证书、完全 p-粘合树搜索、由树导出二项式
- 注册脚本：gluing.py
- 实现脚本：impl.py
- 常量：variables.py
"""

__all__ = []
