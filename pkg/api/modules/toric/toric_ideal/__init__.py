"""
toric.toric_ideal 包
- 关系 (∗) 判定、纤维枚举、有界 Markov 基
- 注册脚本：toric_ideal.py
- 实现脚本：impl.py
"""

__all__ = []
