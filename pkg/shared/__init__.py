"""
跨模块共享：环面配置与二项式值类型、JSON 编解码、原子写报告
"""
