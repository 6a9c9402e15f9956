"""
toric 工作流命名空间（api/workflow/toric）
- 组合 api/modules/toric/* 的公共 API，产出 CLI / 网关使用的报告
"""

__all__ = []
