#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
异常定义模块

所有计算模块抛出的异常都继承自 AnisoPerimeterError，命令行入口据此统一返回退出码3
"""

from typing import Optional


class AnisoPerimeterError(Exception):
    """各向异性周长计算的基础异常"""


class InvalidBody(AnisoPerimeterError, ValueError):
    """凸体不满足构造条件（退化、原点不在内部、非有限坐标等）"""


class InvalidProfile(AnisoPerimeterError, ValueError):
    """SBV剖面数据不一致"""


class InvalidMeasure(AnisoPerimeterError, ValueError):
    """离散向量测度数据不一致"""


class InvalidPolygon(AnisoPerimeterError, ValueError):
    """多边形集合不是简单闭合环"""


class DimensionUnsupported(AnisoPerimeterError):
    """该操作只支持平面情形"""


class NotOnBoundary(AnisoPerimeterError):
    """给定点不在凸体边界上"""


class ZeroDirection(AnisoPerimeterError):
    """方向向量为零"""


class SectionNotSegment(AnisoPerimeterError):
    """多边形的竖直截面不是单个线段"""


class ProfileMismatch(AnisoPerimeterError):
    """重心剖面 b 在 v 的支撑集之外非零，或与截面长度不符"""


class NotASymmetral(AnisoPerimeterError):
    """凸体关于水平轴不对称，不能作为Steiner对称体使用"""


class InputFormatError(AnisoPerimeterError):
    """
    输入文件格式错误

    Args:
        message: 错误描述
        path: 出错的文件路径
        line: JSON解析出错的行号
        field: 出错的字段名
    """

    def __init__(self, message: str, path: Optional[str] = None,
                 line: Optional[int] = None, field: Optional[str] = None):
        self.path = path
        self.line = line
        self.field = field
        super().__init__(message)

    def __str__(self) -> str:
        parts = []
        if self.path:
            parts.append(str(self.path))
        if self.line is not None:
            parts.append(f"第{self.line}行")
        if self.field:
            parts.append(f"字段 '{self.field}'")
        location = ", ".join(parts)
        message = super().__str__()
        return f"{location}: {message}" if location else message
