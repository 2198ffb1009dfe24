#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Steiner对称化模块

沿竖直方向（最后一个坐标）对平面凸体做Steiner对称化，并构造 F[v]
"""

import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, Optional

import numpy as np

from aniso_perimeter.core.convex_body import ConvexBody, Ellipse, Polytope
from aniso_perimeter.core.exceptions import DimensionUnsupported
from aniso_perimeter.core.sbv1d import SbvProfile, VDistributedSet, section_profiles
from aniso_perimeter.utils.helpers import get_tolerance

logger = logging.getLogger(__name__)

SYMMETRY_SAMPLES = 360


@dataclass(frozen=True)
class SymmetralResult:
    """
    Steiner对称化结果

    Attributes:
        body: 关于水平轴对称的凸体
        section_width: 截面长度剖面（多边形情形）；椭圆情形为 None，截面长度由闭式给出
    """
    body: ConvexBody
    section_width: Optional[SbvProfile] = None

    def section_length(self, z: float) -> float:
        """横坐标 z 处的截面长度"""
        if self.section_width is not None:
            return self.section_width.value_at(z)
        a, b = self.body.semi_axes
        if abs(z) >= a:
            return 0.0
        return 2.0 * b * math.sqrt(1.0 - (z / a) ** 2)

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"body": self.body.to_dict()}
        if self.section_width is not None:
            data["section_width"] = self.section_width.to_dict()
        return data


def steiner_symmetrize(K: ConvexBody, tol: Optional[float] = None) -> SymmetralResult:
    """
    Steiner对称化 K^s

    多边形的每个竖直截面替换为等长的居中线段，对称体的顶点是 ±(截面长度/2) 的折点；
    轴对齐椭圆本身就是对称的

    Raises:
        DimensionUnsupported: 非平面凸体
    """
    if K.dimension != 2:
        raise DimensionUnsupported("Steiner对称化只支持平面凸体")
    if isinstance(K, Ellipse):
        return SymmetralResult(body=K)

    tol = get_tolerance(tol)
    width, _ = section_profiles(K)
    lower, upper = [], []
    for x, left, right in zip(width.nodes, width.values_left, width.values_right):
        # 凸多边形内部截面连续，只有两端可能有竖直边
        c = max(left, right)
        lower.append((x, -0.5 * c))
        upper.append((x, 0.5 * c))
    points = np.array(lower + upper[::-1])
    body = Polytope(points, tol=tol, allow_off_origin=K.allow_off_origin)
    logger.debug(f"对称化完成: {len(K.vertices)} 个顶点 -> {len(body.vertices)} 个顶点")
    return SymmetralResult(body=body, section_width=width)


def build_F_of_v(v: SbvProfile) -> VDistributedSet:
    """F[v] = {|q| < v(p)/2}，即 b ≡ 0 的 v-分布集合"""
    return VDistributedSet.symmetric(v)


def support_symmetry_check(K: ConvexBody, samples: int = SYMMETRY_SAMPLES,
                           tol: Optional[float] = None) -> bool:
    """
    在均匀采样的方向上检查 φ_K(p, q) = φ_K(p, −q)

    Steiner对称体必须通过该检查
    """
    tol = get_tolerance(tol)
    thetas = np.linspace(0.0, 2.0 * math.pi, samples, endpoint=False)
    if isinstance(K, Polytope):
        directions = np.column_stack([np.cos(thetas), np.sin(thetas)])
        flipped = directions * np.array([1.0, -1.0])
        upper = (K.vertices @ directions.T).max(axis=0)
        lower = (K.vertices @ flipped.T).max(axis=0)
        return bool(np.all(np.abs(upper - lower) <= tol * K.scale))
    for theta in thetas:
        p, q = math.cos(theta), math.sin(theta)
        if abs(K.support((p, q)) - K.support((p, -q))) > tol * K.scale:
            return False
    return True
