"""
各向异性周长工具

凸体对偶、Steiner对称化、v-分布集合的各向异性周长与刚性判定
"""

__version__ = "0.1.0"
