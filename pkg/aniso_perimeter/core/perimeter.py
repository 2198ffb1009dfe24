#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
各向异性周长模块

平面集合的各向异性周长 P_K(E; B×R) 的两种独立计算方式：
多边形边界上的逐边求和（精确的检验基准），以及由截面长度 v 和重心 b
给出的分解公式（绝对连续部分、跳跃部分、{v^∧ = 0} 上的边界项）
"""

import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.integrate import quad
from shapely.geometry import LinearRing, Polygon
from shapely.geometry.polygon import orient

from aniso_perimeter.core.convex_body import ConvexBody, Ellipse, Polytope
from aniso_perimeter.core.exceptions import InputFormatError, InvalidPolygon, NotASymmetral
from aniso_perimeter.core.sbv1d import SbvProfile, VDistributedSet, joint_limits
from aniso_perimeter.core.steiner import support_symmetry_check
from aniso_perimeter.utils.helpers import (
    NODE_MERGE_TOL,
    Strip,
    get_tolerance,
    in_strip,
    overlap_length,
)

logger = logging.getLogger(__name__)


class PolygonSet:
    """
    一个或多个互不相交的简单多边形

    每个环的方向使集合位于行进方向的左侧：外环逆时针，洞顺时针
    """

    def __init__(self, loops: Sequence[Sequence[Sequence[float]]],
                 holes: Sequence[Sequence[Sequence[float]]] = (), validate: bool = True):
        """
        Args:
            loops: 外环顶点列表
            holes: 洞的顶点列表
            validate: 是否用shapely检查环的简单性并统一方向（内部构造的环已定向时可关闭）

        Raises:
            InvalidPolygon: 环不是简单多边形
        """
        self.loops: Tuple[np.ndarray, ...]
        oriented = []
        for ring, sign in [(r, 1.0) for r in loops] + [(r, -1.0) for r in holes]:
            pts = np.asarray(ring, dtype=float)
            if pts.ndim != 2 or pts.shape[1] != 2 or len(pts) < 3:
                raise InvalidPolygon(f"多边形环至少需要三个平面顶点，得到形状 {pts.shape}")
            if validate:
                poly = Polygon(pts)
                if not poly.is_valid or poly.area <= 0:
                    raise InvalidPolygon("多边形环不是简单闭合曲线或面积为零")
                poly = orient(poly, sign=sign)
                pts = np.asarray(poly.exterior.coords, dtype=float)[:-1]
            oriented.append(pts)
        self.loops = tuple(oriented)

    @classmethod
    def from_body(cls, K: Polytope) -> "PolygonSet":
        return cls([K.vertices], validate=False)

    @classmethod
    def from_dict(cls, data: Dict[str, Any], path: Optional[str] = None) -> "PolygonSet":
        """
        JSON格式: {"loops": [[[x, y], ...], ...], "holes": [...]} 或单环 {"vertices": [[x, y], ...]}
        """
        if not isinstance(data, dict):
            raise InputFormatError("多边形集合必须是JSON对象", path=path)
        if "vertices" in data:
            loops = [data["vertices"]]
        elif "loops" in data:
            loops = data["loops"]
        else:
            raise InputFormatError("需要 loops 或 vertices 字段", path=path, field="loops")
        try:
            return cls(loops, data.get("holes", []))
        except (TypeError, ValueError) as e:
            if isinstance(e, InvalidPolygon):
                raise
            raise InputFormatError(f"顶点格式错误: {e}", path=path, field="loops")

    def signed_areas(self) -> List[float]:
        """各环面积，逆时针为正"""
        return [Polygon(loop).area * (1.0 if LinearRing(loop).is_ccw else -1.0) for loop in self.loops]

    def area(self) -> float:
        return float(sum(self.signed_areas()))

    def edges(self):
        for loop in self.loops:
            for p, q in zip(loop, np.roll(loop, -1, axis=0)):
                yield p, q

    def to_dict(self) -> Dict[str, Any]:
        return {"loops": [loop.tolist() for loop in self.loops]}


@dataclass(frozen=True)
class PerimeterBreakdown:
    """
    由 (v, b) 公式得到的周长分解

    Attributes:
        ac_part: 绝对连续部分
        jump_v_minus: v 的跳跃点处方向 (−ν_v, 0) 的墙
        jump_v_plus: v 的跳跃点处方向 (ν_v, 0) 的墙
        jump_b_only: 只有 b 跳跃的点处两侧的墙
        boundary_zero_part: {v^∧ = 0} 上的墙 v^∨ φ_K(−ν_v, 0)
        cantor_part: Cantor部分，在分段线性SBV中恒为零
    """
    ac_part: float = 0.0
    jump_v_minus: float = 0.0
    jump_v_plus: float = 0.0
    jump_b_only: float = 0.0
    boundary_zero_part: float = 0.0
    cantor_part: float = 0.0

    @property
    def jump_part(self) -> float:
        return self.jump_v_minus + self.jump_v_plus + self.jump_b_only

    @property
    def total(self) -> float:
        return self.ac_part + self.jump_part + self.boundary_zero_part + self.cantor_part

    def to_dict(self) -> Dict[str, Any]:
        return {
            "ac_part": self.ac_part,
            "jump_v_minus": self.jump_v_minus,
            "jump_v_plus": self.jump_v_plus,
            "jump_b_only": self.jump_b_only,
            "boundary_zero_part": self.boundary_zero_part,
            "cantor_part": self.cantor_part,
            "total": self.total,
        }


@dataclass(frozen=True)
class GraphPerimeter:
    """函数图像下方（或上方）区域在 B×R 中的周长"""
    ac_part: float
    jump_part: float
    cantor_part: float = 0.0

    @property
    def total(self) -> float:
        return self.ac_part + self.jump_part + self.cantor_part

    def __float__(self) -> float:
        return self.total

    def to_dict(self) -> Dict[str, Any]:
        return {"ac_part": self.ac_part, "jump_part": self.jump_part,
                "cantor_part": self.cantor_part, "total": self.total}


@dataclass(frozen=True)
class Wall:
    """竖直边: 横坐标、长度、外法向量的横向分量（±1）"""
    x: float
    length: float
    normal: int


# ---------------------------------------------------------------------------
# 多边形逐边求和
# ---------------------------------------------------------------------------

def polygon_perimeter(E: PolygonSet, K: ConvexBody, strip: Optional[Strip] = None) -> float:
    """
    P_K(E; B×R) = Σ_边 φ_K(外法向量)·|边 ∩ B×R|

    对多边形精确；竖直边当其横坐标属于 B 时整条计入
    """
    total = 0.0
    for p, q in E.edges():
        d = q - p
        weight = K.support((d[1], -d[0]))
        if abs(d[0]) <= NODE_MERGE_TOL:
            if in_strip(float(p[0]), strip):
                total += weight
            continue
        lo, hi = sorted((float(p[0]), float(q[0])))
        total += weight * overlap_length(lo, hi, strip) / (hi - lo)
    return total


def jump_walls(E: PolygonSet) -> List[Wall]:
    """多边形集合的全部竖直边及其外法向量"""
    walls = []
    for p, q in E.edges():
        d = q - p
        if abs(d[0]) <= NODE_MERGE_TOL and abs(d[1]) > 0:
            walls.append(Wall(x=float(p[0]), length=float(abs(d[1])), normal=1 if d[1] > 0 else -1))
    return walls


def body_perimeter(E: ConvexBody, K: ConvexBody) -> float:
    """
    凸体 E 作为集合的各向异性周长

    多边形逐边精确求和；椭圆在参数化边界 (a cos t, b sin t) 上自适应积分
    φ_K(b cos t, a sin t) dt
    """
    if isinstance(E, Polytope):
        return polygon_perimeter(PolygonSet.from_body(E), K)
    a, b = E.semi_axes
    value, error = quad(lambda t: K.support((b * math.cos(t), a * math.sin(t))),
                        0.0, 2.0 * math.pi, limit=200, epsabs=1e-13, epsrel=1e-12)
    logger.debug(f"椭圆边界积分: {value}, 误差估计 {error}")
    return float(value)


def wulff_deficit(E: Union[PolygonSet, ConvexBody], K: ConvexBody) -> float:
    """
    P_K(E) − 2·sqrt(|K|·|E|)

    平面各向异性等周不等式保证非负，E 是 K 的平移伸缩时为零
    """
    if isinstance(E, ConvexBody):
        perimeter, area = body_perimeter(E, K), E.area()
    else:
        perimeter, area = polygon_perimeter(E, K), E.area()
    return perimeter - 2.0 * math.sqrt(K.area() * area)


# ---------------------------------------------------------------------------
# 函数图像
# ---------------------------------------------------------------------------

def _graph_strip(u: SbvProfile, strip: Optional[Strip]) -> Optional[Strip]:
    if strip is not None:
        return strip
    hull = u.support_hull()
    return (hull,) if hull is not None else ()


def _graph_perimeter(u: SbvProfile, K: ConvexBody, strip: Optional[Strip], sign: float) -> GraphPerimeter:
    strip = _graph_strip(u, strip)
    if not strip:
        return GraphPerimeter(0.0, 0.0)
    ac = 0.0
    covered = 0.0
    for p in u.pieces():
        length = overlap_length(p.x0, p.x1, strip)
        covered += length
        ac += K.support((-sign * p.slope, sign)) * length
    # 节点范围之外 u ≡ 0
    outside = sum(hi - lo for lo, hi in strip) - covered
    ac += K.support((0.0, sign)) * max(0.0, outside)
    jump = sum(j.height * K.support((-sign * j.direction, 0.0))
               for j in u.jumps() if in_strip(j.location, strip))
    return GraphPerimeter(ac_part=ac, jump_part=jump)


def subgraph_perimeter(u: SbvProfile, K: ConvexBody, strip: Optional[Strip] = None) -> GraphPerimeter:
    """
    亚图 Σ_u = {t < u(x)} 在 B×R 中的周长

    ∫_B φ_K(−∇u, 1) dx + Σ_{J_u ∩ B} [u] φ_K(−ν_u, 0)；B 缺省为 u 的结点范围
    """
    return _graph_perimeter(u, K, strip, 1.0)


def epigraph_perimeter(u: SbvProfile, K: ConvexBody, strip: Optional[Strip] = None) -> GraphPerimeter:
    """上图 Σ^u = {t > u(x)}: ∫_B φ_K(∇u, −1) dx + Σ [u] φ_K(ν_u, 0)"""
    return _graph_perimeter(u, K, strip, -1.0)


# ---------------------------------------------------------------------------
# v-分布集合
# ---------------------------------------------------------------------------

def node_walls(vl: float, vr: float, bl: float, br: float, zero_tol: float) -> List[Tuple[str, float, int]]:
    """
    结点处由公式给出的墙: (类别, 长度, 外法向量横向分量)

    两侧截面 I_L、I_R 的对称差中，I_L∖I_R 朝 +x，I_R∖I_L 朝 −x
    """
    v_up, v_lo = max(vl, vr), min(vl, vr)
    nu_v = 1 if vr > vl else -1
    b_jump = abs(br - bl)
    if v_lo <= zero_tol:
        if v_up > zero_tol:
            return [("boundary_zero_part", v_up, -nu_v)]
        return []
    v_jump = v_up - v_lo
    if v_jump > zero_tol:
        half = 0.5 * v_jump
        walls = [("jump_v_minus", min(v_up, half + b_jump + max(half - b_jump, 0.0)), -nu_v)]
        plus = min(v_lo, max(0.0, b_jump - half))
        if plus > 0:
            walls.append(("jump_v_plus", plus, nu_v))
        return walls
    if b_jump > 0:
        width = min(b_jump, 0.5 * (vl + vr))
        return [("jump_b_only", width, -1), ("jump_b_only", width, 1)]
    return []


def perimeter_from_vb(S: VDistributedSet, K: ConvexBody, strip: Optional[Strip] = None,
                      tol: Optional[float] = None) -> PerimeterBreakdown:
    """
    W[v, b] 的各向异性周长分解

    绝对连续部分在 {v > 0} 的每个仿射段上为 φ_K(∇(b − v/2), −1) + φ_K(−∇(b + v/2), 1)；
    v 跳跃点处 min(v^∨, [v]/2 + [b] + max([v]/2 − [b], 0)) φ_K(−ν_v, 0)
    与 min(v^∧, max(0, [b] − [v]/2)) φ_K(ν_v, 0)；只有 b 跳跃的点处
    min([b], ṽ)(φ_K(−ν_b, 0) + φ_K(ν_b, 0))；{v^∧ = 0} 上 v^∨ φ_K(−ν_v, 0)

    b 单独跳跃项对一般的 K 使用同一个凸体，不限于对称体
    """
    tol = get_tolerance(tol)
    joint = joint_limits(S.v, S.b)
    zero_tol = tol * (1.0 + S.v.max_abs())
    parts: Dict[str, float] = {"ac_part": 0.0, "jump_v_minus": 0.0, "jump_v_plus": 0.0,
                               "jump_b_only": 0.0, "boundary_zero_part": 0.0}

    xs = joint.nodes
    for k in range(len(xs) - 1):
        if not joint.piece_is_active(k, zero_tol):
            continue
        length = overlap_length(xs[k], xs[k + 1], strip)
        if length <= 0:
            continue
        dv, db = joint.piece_slopes(k)
        parts["ac_part"] += (K.support((db - 0.5 * dv, -1.0)) + K.support((-(db + 0.5 * dv), 1.0))) * length

    for i, x in enumerate(xs):
        if not in_strip(x, strip):
            continue
        for category, length, normal in node_walls(joint.v_left[i], joint.v_right[i],
                                                   joint.b_left[i], joint.b_right[i], zero_tol):
            parts[category] += length * K.support((float(normal), 0.0))

    return PerimeterBreakdown(**parts)


def perimeter_F_of_v(v: SbvProfile, K: ConvexBody, strip: Optional[Strip] = None,
                     tol: Optional[float] = None) -> PerimeterBreakdown:
    """F[v] 的周长分解，即 b ≡ 0 时的 perimeter_from_vb"""
    return perimeter_from_vb(VDistributedSet.symmetric(v), K, strip, tol)


def steiner_gap(S: VDistributedSet, K_sym: ConvexBody, strip: Optional[Strip] = None,
                tol: Optional[float] = None) -> float:
    """
    P_{K^s}(W[v, b]; B×R) − P_{K^s}(F[v]; B×R)，对关于水平轴对称的 K^s 非负

    Raises:
        NotASymmetral: K^s 关于水平轴不对称
    """
    if not support_symmetry_check(K_sym, tol=tol):
        raise NotASymmetral("周长比较要求凸体关于水平轴对称")
    return perimeter_from_vb(S, K_sym, strip, tol).total - perimeter_F_of_v(S.v, K_sym, strip, tol).total


def vdistributed_polygon(S: VDistributedSet, tol: Optional[float] = None) -> PolygonSet:
    """
    W[v, b] 的精确多边形表示

    在 v 一侧为零或相邻截面不相交的结点处断开，每段连通区域生成一个逆时针环:
    下边界从左到右（跳跃处插入竖直墙），右墙向上，上边界从右到左，左墙向下
    """
    tol = get_tolerance(tol)
    joint = joint_limits(S.v, S.b)
    xs = joint.nodes
    m = len(xs)
    zero_tol = tol * (1.0 + S.v.max_abs())
    lo_l = [b - 0.5 * v for b, v in zip(joint.b_left, joint.v_left)]
    lo_r = [b - 0.5 * v for b, v in zip(joint.b_right, joint.v_right)]
    hi_l = [b + 0.5 * v for b, v in zip(joint.b_left, joint.v_left)]
    hi_r = [b + 0.5 * v for b, v in zip(joint.b_right, joint.v_right)]

    def breaks_at(i: int) -> bool:
        if min(joint.v_left[i], joint.v_right[i]) <= zero_tol:
            return True
        return min(hi_l[i], hi_r[i]) - max(lo_l[i], lo_r[i]) <= zero_tol

    def run_loop(s: int, e: int) -> np.ndarray:
        pts = [(xs[s], lo_r[s])]
        for i in range(s + 1, e + 1):
            pts.extend([(xs[i], lo_l[i]), (xs[i], lo_r[i])])
        pts.extend([(xs[e + 1], lo_l[e + 1]), (xs[e + 1], hi_l[e + 1])])
        for i in range(e, s, -1):
            pts.extend([(xs[i], hi_r[i]), (xs[i], hi_l[i])])
        pts.append((xs[s], hi_r[s]))
        loop = []
        for p in pts:
            if not loop or abs(p[0] - loop[-1][0]) > NODE_MERGE_TOL or abs(p[1] - loop[-1][1]) > NODE_MERGE_TOL:
                loop.append(p)
        if len(loop) > 1 and abs(loop[0][0] - loop[-1][0]) <= NODE_MERGE_TOL \
                and abs(loop[0][1] - loop[-1][1]) <= NODE_MERGE_TOL:
            loop.pop()
        return np.array(loop, dtype=float)

    loops = []
    k = 0
    while k < m - 1:
        if not joint.piece_is_active(k, zero_tol):
            k += 1
            continue
        e = k
        while e + 1 < m - 1 and joint.piece_is_active(e + 1, zero_tol) and not breaks_at(e + 1):
            e += 1
        loops.append(run_loop(k, e))
        k = e + 1
    logger.debug(f"W[v,b] 多边形化完成，环数: {len(loops)}")
    return PolygonSet(loops, validate=False)
