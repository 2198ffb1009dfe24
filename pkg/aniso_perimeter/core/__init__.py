"""
核心计算模块

包含凸体、SBV剖面、向量测度、周长公式与刚性判定
"""
