"""
toric.family 包
- 引理 1 配置与其完全交二项式、(n, f, g) 族、p 幂表示、F_{n,p}、四个二项式的定义组
- 注册脚本：family.py
- 实现脚本：impl.py
"""

__all__ = []
