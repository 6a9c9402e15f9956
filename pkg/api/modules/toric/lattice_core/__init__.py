"""
toric.lattice_core 包
- 精确整数格：Hermite 基、成员判定、格交、半群成员判定
- 注册脚本：lattice_core.py
- 实现脚本：impl.py
"""

__all__ = []
