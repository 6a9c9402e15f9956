"""
toric 模块命名空间（api/modules/toric）

说明：
- 子模块采用“封装层 + 实现层”结构，例如：
  - gluing/impl.py     -> 内部实现（类型化对象，精确整数运算）
  - gluing/gluing.py   -> 封装为公共 API（@core.register_api，JSON 入参/出参）
- 工作流层（api/workflow/toric）统一通过 core.call_api 调用封装层
- 该 __init__.py 文件用于确保服务发现能识别此为包
"""

__all__ = []
