"""
toric.variety_verify 包
- 二项式求值、参数化采样、有限域消没集穷举比较、二项式幂恒等式
- 注册脚本：variety_verify.py
- 实现脚本：impl.py
"""

__all__ = []
