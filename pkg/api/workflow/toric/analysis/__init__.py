"""
toric 分析工作流（family / glue / markov / verify 报告）
"""
