#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
凸体模块

表示包含原点的有界凸体（顶点表示的多面体或平面椭圆），提供支撑函数、
规范函数（gauge）、极体、次微分面、锥判定、极大化集合、可加性判定、
法向量集合以及Hausdorff距离等对偶计算
"""

import math
import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Sequence, Tuple

import numpy as np
from scipy.spatial import ConvexHull, QhullError
from shapely.geometry import MultiPoint, Point, Polygon

from aniso_perimeter.core.exceptions import (
    DimensionUnsupported,
    InputFormatError,
    InvalidBody,
    NotOnBoundary,
    ZeroDirection,
)
from aniso_perimeter.utils.helpers import get_tolerance, require_field

logger = logging.getLogger(__name__)

# Hausdorff距离在涉及椭圆时的采样方向数
HAUSDORFF_SAMPLES = 4096


def _as_vector(x: Any, dimension: int) -> np.ndarray:
    """把输入转换为指定维数的有限向量"""
    vec = np.asarray(x, dtype=float).reshape(-1)
    if vec.shape[0] != dimension:
        raise ValueError(f"向量维数 {vec.shape[0]} 与凸体维数 {dimension} 不一致")
    if not np.all(np.isfinite(vec)):
        raise ValueError(f"向量包含非有限值: {vec}")
    return vec


def _angle_between(u: np.ndarray, w: np.ndarray) -> float:
    """两个平面向量之间的夹角，对小角度数值稳定"""
    cross = u[0] * w[1] - u[1] * w[0]
    return abs(math.atan2(cross, float(np.dot(u, w))))


def _canonical_polygon(points: np.ndarray, tol: float) -> np.ndarray:
    """
    平面多边形的规范形式

    逆时针顺序，去除重复点和共线顶点，从字典序最小的顶点开始

    Raises:
        InvalidBody: 点集退化
    """
    scale = max(1.0, float(np.abs(points).max()))
    try:
        hull = ConvexHull(points)
    except (QhullError, ValueError) as e:
        raise InvalidBody(f"点集退化，无法构成二维凸体: {e}")

    # 二维凸包的顶点按逆时针排列
    verts = [points[i] for i in hull.vertices]

    changed = True
    while changed and len(verts) > 3:
        changed = False
        n = len(verts)
        for i in range(n):
            prev, cur, nxt = verts[i - 1], verts[i], verts[(i + 1) % n]
            base = nxt - prev
            base_len = float(np.linalg.norm(base))
            if np.linalg.norm(cur - prev) <= tol * scale or base_len <= tol * scale:
                del verts[i]
                changed = True
                break
            dist = abs(base[0] * (cur - prev)[1] - base[1] * (cur - prev)[0]) / base_len
            if dist <= tol * scale:
                del verts[i]
                changed = True
                break

    verts = np.array(verts, dtype=float)
    if len(verts) < 3 or Polygon(verts).area <= tol * scale * scale:
        raise InvalidBody("凸包面积为零，点集退化")

    # 字典序最小的顶点作为起点，横坐标在容差内视为相等
    min_x = verts[:, 0].min()
    candidates = [i for i in range(len(verts)) if verts[i, 0] <= min_x + tol * scale]
    start = min(candidates, key=lambda i: verts[i, 1])
    return np.roll(verts, -start, axis=0)


def _canonical_polytope(points: np.ndarray, tol: float) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """高维多面体：极点按字典序排列，面方程去重"""
    try:
        hull = ConvexHull(points)
    except (QhullError, ValueError) as e:
        raise InvalidBody(f"点集退化，无法构成{points.shape[1]}维凸体: {e}")
    verts = points[np.sort(hull.vertices)]
    order = np.lexsort(verts.T[::-1])
    verts = verts[order]

    # Qhull 的面方程格式为 [a, c]，内部满足 a·x + c <= 0
    normals = []
    offsets = []
    for row in hull.equations:
        a, c = row[:-1], row[-1]
        duplicate = any(
            np.linalg.norm(a - na) <= tol and abs(-c - no) <= tol for na, no in zip(normals, offsets)
        )
        if not duplicate:
            normals.append(a)
            offsets.append(-c)
    return verts, np.array(normals), np.array(offsets)


@dataclass(frozen=True)
class NormalSet:
    """
    凸体约化边界上的外法向量集合

    kind 为 "finite"（多边形的边法向量，已是闭集）或 "sphere"（光滑凸体，整个单位圆）
    """
    kind: str
    vectors: Tuple[Tuple[float, ...], ...] = ()

    @property
    def is_full_sphere(self) -> bool:
        return self.kind == "sphere"

    def as_array(self) -> np.ndarray:
        return np.array(self.vectors, dtype=float).reshape(-1, 2)

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind, "vectors": [list(v) for v in self.vectors]}


@dataclass(frozen=True)
class AdditivityResult:
    """
    支撑函数可加性判定结果

    Attributes:
        additive: φ(y1) + φ(y2) = φ(y1 + y2) 是否在容差内成立
        witness: 同时达到两个支撑值的边界点
        defect: φ(y1) + φ(y2) − φ(y1 + y2)，总是非负
    """
    additive: bool
    witness: Optional[np.ndarray] = field(default=None, compare=False)
    defect: float = 0.0

    def __bool__(self) -> bool:
        return self.additive


class ConvexBody(ABC):
    """包含原点的有界凸体（Wulff形状）的抽象基类"""

    kind: str = ""

    @property
    @abstractmethod
    def dimension(self) -> int:
        """环境空间维数"""

    @abstractmethod
    def support(self, x: Any) -> float:
        """支撑函数 φ_K(x) = sup{x·y: y ∈ K}"""

    @abstractmethod
    def gauge(self, x: Any) -> float:
        """规范函数 φ*_K(x) = inf{t > 0: x ∈ tK}"""

    @abstractmethod
    def polar(self) -> "ConvexBody":
        """极体 K* = {x: φ_K(x) < 1}"""

    @abstractmethod
    def support_point(self, y: Any) -> np.ndarray:
        """达到 φ_K(y) 的一个边界点"""

    @abstractmethod
    def maximizer_face(self, y: Any, tol: Optional[float] = None) -> "Face":
        """达到 φ_K(y) 的全部边界点构成的面"""

    @abstractmethod
    def normals(self) -> NormalSet:
        """约化边界上的外法向量集合"""

    @abstractmethod
    def area(self) -> float:
        """平面凸体的面积"""

    @abstractmethod
    def scaled(self, factor: float) -> "ConvexBody":
        """关于原点的位似"""

    @property
    @abstractmethod
    def circumradius(self) -> float:
        """以原点为中心包含凸体的最小球半径，即 φ_K(x) <= C|x| 中的 C"""

    @property
    @abstractmethod
    def inradius(self) -> float:
        """以原点为中心含于凸体的最大球半径，即 c|x| <= φ_K(x) 中的 c"""

    @abstractmethod
    def to_dict(self) -> Dict[str, Any]:
        """JSON表示"""

    @property
    def scale(self) -> float:
        """容差缩放因子"""
        return max(1.0, self.circumradius)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.to_dict()})"


class Polytope(ConvexBody):
    """
    顶点表示的凸多面体

    平面情形顶点按逆时针排列并从字典序最小的顶点开始；任意维数都支持支撑函数和
    规范函数，极体顶点、面和法向量只支持平面情形
    """

    kind = "polytope"

    def __init__(self, vertices: Sequence[Sequence[float]], tol: Optional[float] = None,
                 allow_off_origin: bool = False):
        """
        初始化多面体

        Args:
            vertices: 顶点或任意点云，取其凸包
            tol: 数值容差
            allow_off_origin: 允许原点不在内部（仅用于测试用多边形，此时不能计算规范函数和极体）

        Raises:
            InvalidBody: 点集退化、含非有限值或原点不在内部
        """
        tol = get_tolerance(tol)
        points = np.asarray(vertices, dtype=float)
        if points.ndim != 2 or points.shape[1] < 2:
            raise InvalidBody(f"顶点数组形状无效: {points.shape}")
        if not np.all(np.isfinite(points)):
            raise InvalidBody("顶点包含非有限坐标")
        if points.shape[0] < points.shape[1] + 1:
            raise InvalidBody(f"{points.shape[1]}维凸体至少需要{points.shape[1] + 1}个顶点")

        self._tol = tol
        self._allow_off_origin = allow_off_origin
        self._polar: Optional["Polytope"] = None

        if points.shape[1] == 2:
            verts = _canonical_polygon(points, tol)
            edges = np.roll(verts, -1, axis=0) - verts
            lengths = np.linalg.norm(edges, axis=1)
            normals = np.column_stack([edges[:, 1], -edges[:, 0]]) / lengths[:, None]
            offsets = np.einsum("ij,ij->i", normals, verts)
        else:
            verts, normals, offsets = _canonical_polytope(points, tol)

        self._vertices = verts
        self._facet_normals = normals
        self._offsets = offsets
        for arr in (self._vertices, self._facet_normals, self._offsets):
            arr.setflags(write=False)

        if not allow_off_origin and float(self._offsets.min()) <= tol * self.scale:
            raise InvalidBody("原点不在凸体内部")

    @classmethod
    def from_points(cls, points: Sequence[Sequence[float]], tol: Optional[float] = None,
                    allow_off_origin: bool = False) -> "Polytope":
        """由任意点云构造规范形式的多面体"""
        return cls(points, tol=tol, allow_off_origin=allow_off_origin)

    @property
    def vertices(self) -> np.ndarray:
        return self._vertices

    @property
    def facet_normals(self) -> np.ndarray:
        """单位外法向量，平面情形第 i 行对应边 (v_i, v_{i+1})"""
        return self._facet_normals

    @property
    def facet_offsets(self) -> np.ndarray:
        """原点到各面的距离 h_i = n_i·v_i"""
        return self._offsets

    @property
    def allow_off_origin(self) -> bool:
        return self._allow_off_origin

    @property
    def dimension(self) -> int:
        return int(self._vertices.shape[1])

    @property
    def circumradius(self) -> float:
        return float(np.linalg.norm(self._vertices, axis=1).max())

    @property
    def inradius(self) -> float:
        return float(max(0.0, self._offsets.min()))

    def _require_origin_interior(self) -> None:
        if float(self._offsets.min()) <= self._tol * self.scale:
            raise InvalidBody("原点不在凸体内部，无法计算规范函数或极体")

    def _require_planar(self, operation: str) -> None:
        if self.dimension != 2:
            raise DimensionUnsupported(f"{operation} 只支持平面多边形，当前维数为 {self.dimension}")

    def support(self, x: Any) -> float:
        x = _as_vector(x, self.dimension)
        return float(np.max(self._vertices @ x))

    def gauge(self, x: Any) -> float:
        self._require_origin_interior()
        x = _as_vector(x, self.dimension)
        return float(max(0.0, np.max((self._facet_normals @ x) / self._offsets)))

    def polar(self) -> "Polytope":
        self._require_planar("极体顶点枚举")
        self._require_origin_interior()
        if self._polar is None:
            # 相邻半平面 y·v_i <= 1 与 y·v_{i+1} <= 1 的交点为 n_i / h_i
            polar_vertices = self._facet_normals / self._offsets[:, None]
            self._polar = Polytope(polar_vertices, tol=self._tol)
        return self._polar

    def halfspaces(self) -> Tuple[np.ndarray, np.ndarray]:
        """极体的半空间表示 {y: A y <= b}，任意维数"""
        self._require_origin_interior()
        return self._vertices.copy(), np.ones(len(self._vertices))

    def support_point(self, y: Any) -> np.ndarray:
        y = _as_vector(y, self.dimension)
        return self._vertices[int(np.argmax(self._vertices @ y))].copy()

    def maximizer_face(self, y: Any, tol: Optional[float] = None) -> "Face":
        tol = get_tolerance(tol if tol is not None else self._tol)
        y = _as_vector(y, self.dimension)
        norm = float(np.linalg.norm(y))
        if norm == 0.0:
            raise ZeroDirection("极大化集合要求方向非零")
        values = self._vertices @ (y / norm)
        indices = np.nonzero(values >= values.max() - tol * self.scale)[0]
        return Face(body=self, vertex_indices=tuple(int(i) for i in indices))

    def normals(self) -> NormalSet:
        self._require_planar("法向量集合")
        unique = []
        for n in self._facet_normals:
            if not any(_angle_between(n, u) <= self._tol for u in unique):
                unique.append(n)
        return NormalSet(kind="finite", vectors=tuple((float(n[0]), float(n[1])) for n in unique))

    def outer_normal_at(self, x: Any, tol: Optional[float] = None) -> Optional[np.ndarray]:
        """
        边界点处的外法向量

        Returns:
            边的内部点返回该边的单位外法向量；顶点处法向量不唯一，返回 None

        Raises:
            NotOnBoundary: 点不在边界上
        """
        self._require_planar("外法向量")
        tol = get_tolerance(tol if tol is not None else self._tol)
        x = _as_vector(x, 2)
        n = len(self._vertices)
        for i in range(n):
            a, b = self._vertices[i], self._vertices[(i + 1) % n]
            if min(np.linalg.norm(x - a), np.linalg.norm(x - b)) <= tol * self.scale:
                return None
        for i in range(n):
            a, b = self._vertices[i], self._vertices[(i + 1) % n]
            if Point(x).distance(MultiPoint([a, b]).convex_hull) <= tol * self.scale:
                return self._facet_normals[i].copy()
        raise NotOnBoundary(f"点 {x.tolist()} 不在多边形边界上")

    def area(self) -> float:
        self._require_planar("面积")
        return float(Polygon(self._vertices).area)

    def scaled(self, factor: float) -> "Polytope":
        if not factor > 0:
            raise ValueError(f"位似系数必须为正: {factor}")
        return Polytope(self._vertices * factor, tol=self._tol, allow_off_origin=self._allow_off_origin)

    def is_close(self, other: "ConvexBody", tol: Optional[float] = None) -> bool:
        """顶点集合在容差内一致"""
        tol = get_tolerance(tol if tol is not None else self._tol)
        if not isinstance(other, Polytope) or other.vertices.shape != self._vertices.shape:
            return False
        return bool(np.all(np.abs(other.vertices - self._vertices) <= tol * self.scale))

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"kind": self.kind, "vertices": self._vertices.tolist()}
        if self._allow_off_origin:
            data["allow_off_origin"] = True
        return data


class Ellipse(ConvexBody):
    """以原点为中心、半轴沿坐标轴的平面椭圆，光滑凸体的代表"""

    kind = "ellipse"

    def __init__(self, a: float, b: float):
        a, b = float(a), float(b)
        if not (math.isfinite(a) and math.isfinite(b)) or a <= 0 or b <= 0:
            raise InvalidBody(f"椭圆半轴必须为正的有限数: a={a}, b={b}")
        self.a = a
        self.b = b

    @property
    def semi_axes(self) -> Tuple[float, float]:
        return self.a, self.b

    @property
    def dimension(self) -> int:
        return 2

    @property
    def circumradius(self) -> float:
        return max(self.a, self.b)

    @property
    def inradius(self) -> float:
        return min(self.a, self.b)

    def support(self, x: Any) -> float:
        x = _as_vector(x, 2)
        return float(math.hypot(self.a * x[0], self.b * x[1]))

    def gauge(self, x: Any) -> float:
        x = _as_vector(x, 2)
        return float(math.hypot(x[0] / self.a, x[1] / self.b))

    def polar(self) -> "Ellipse":
        return Ellipse(1.0 / self.a, 1.0 / self.b)

    def support_point(self, y: Any) -> np.ndarray:
        y = _as_vector(y, 2)
        phi = self.support(y)
        if phi == 0.0:
            raise ZeroDirection("椭圆的支撑点要求方向非零")
        return np.array([self.a ** 2 * y[0], self.b ** 2 * y[1]]) / phi

    def maximizer_face(self, y: Any, tol: Optional[float] = None) -> "Face":
        point = self.support_point(y)
        return Face(body=self, point=(float(point[0]), float(point[1])))

    def normals(self) -> NormalSet:
        return NormalSet(kind="sphere")

    def outer_normal_at(self, x: Any, tol: Optional[float] = None) -> np.ndarray:
        tol = get_tolerance(tol)
        x = _as_vector(x, 2)
        if abs(self.gauge(x) - 1.0) > tol:
            raise NotOnBoundary(f"点 {x.tolist()} 不在椭圆边界上")
        grad = np.array([x[0] / self.a ** 2, x[1] / self.b ** 2])
        return grad / np.linalg.norm(grad)

    def area(self) -> float:
        return math.pi * self.a * self.b

    def scaled(self, factor: float) -> "Ellipse":
        if not factor > 0:
            raise ValueError(f"位似系数必须为正: {factor}")
        return Ellipse(self.a * factor, self.b * factor)

    def is_close(self, other: "ConvexBody", tol: Optional[float] = None) -> bool:
        tol = get_tolerance(tol)
        return (isinstance(other, Ellipse) and abs(other.a - self.a) <= tol * self.scale
                and abs(other.b - self.b) <= tol * self.scale)

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind, "a": self.a, "b": self.b}


@dataclass(frozen=True)
class Face:
    """
    凸体边界上的闭凸子集

    多边形的面由顶点下标给出（顶点、边或整个面），椭圆的面是单点
    """
    body: ConvexBody
    vertex_indices: Tuple[int, ...] = ()
    point: Optional[Tuple[float, ...]] = None

    @property
    def points(self) -> np.ndarray:
        """张成该面的极点"""
        if self.point is not None:
            return np.array([self.point], dtype=float)
        return self.body.vertices[list(self.vertex_indices)]

    @property
    def is_singleton(self) -> bool:
        return self.point is not None or len(self.vertex_indices) == 1

    def representative(self) -> np.ndarray:
        """面上的一个点（极点的重心）"""
        return self.points.mean(axis=0)

    def contains(self, z: Any, tol: Optional[float] = None) -> bool:
        """判断点是否在面上（平面情形）"""
        tol = get_tolerance(tol)
        z = _as_vector(z, self.body.dimension)
        hull = MultiPoint([tuple(p) for p in self.points]).convex_hull
        return hull.distance(Point(z)) <= tol * self.body.scale

    def intersect(self, other: "Face", tol: Optional[float] = None) -> Optional["Face"]:
        """
        两个面的交

        同一多面体的两个面之交是由公共顶点张成的面；单点面按距离比较

        Returns:
            交集构成的面，空集时返回 None
        """
        tol = get_tolerance(tol)
        if self.point is None and other.point is None and self.body is other.body:
            common = tuple(sorted(set(self.vertex_indices) & set(other.vertex_indices)))
            return Face(body=self.body, vertex_indices=common) if common else None
        if self.is_singleton and other.contains(self.points[0], tol):
            return self
        if other.is_singleton and self.contains(other.points[0], tol):
            return other
        if self.is_singleton or other.is_singleton:
            return None
        raise ValueError("只能对同一多面体的面或单点面求交")

    def to_dict(self) -> Dict[str, Any]:
        return {"points": self.points.tolist(), "vertex_indices": list(self.vertex_indices)}


# ---------------------------------------------------------------------------
# 函数式接口
# ---------------------------------------------------------------------------

def support_eval(K: ConvexBody, x: Any) -> float:
    """支撑函数 φ_K(x)，1-齐次、凸、强制"""
    return K.support(x)


def gauge_eval(K: ConvexBody, x: Any) -> float:
    """规范函数 φ*_K(x)，等于极体的支撑函数"""
    return K.gauge(x)


def polar(K: ConvexBody) -> ConvexBody:
    """
    极体

    Raises:
        DimensionUnsupported: 三维及以上的多面体（请使用 polar_halfspaces）
    """
    return K.polar()


def polar_halfspaces(K: Polytope) -> Tuple[np.ndarray, np.ndarray]:
    """极体的半空间数据 {y: v_i·y <= 1}，适用于任意维数"""
    return K.halfspaces()


def support_point(K: ConvexBody, y: Any) -> np.ndarray:
    return K.support_point(y)


def body_area(K: ConvexBody) -> float:
    return K.area()


def subdifferential_face(K: ConvexBody, x0: Any, tol: Optional[float] = None) -> Face:
    """
    规范函数在边界点 x0 处的次微分 {y ∈ ∂K*: y·x0 = 1}，作为极体的一个面

    Raises:
        NotOnBoundary: φ*_K(x0) 与 1 的偏差超过容差
    """
    tol = get_tolerance(tol)
    value = K.gauge(x0)
    if abs(value - 1.0) > tol:
        raise NotOnBoundary(f"点 {list(np.asarray(x0, dtype=float))} 不在边界上 (φ* = {value})")
    return K.polar().maximizer_face(x0, tol)


def cone_contains(K: ConvexBody, z: Any, y: Any, tol: Optional[float] = None) -> bool:
    """
    判断 y 是否属于边界点 z 处的锥 C*_K(z)，即 φ_K(y) = y·z

    Raises:
        NotOnBoundary: z 不在边界上
    """
    tol = get_tolerance(tol)
    z = _as_vector(z, K.dimension)
    y = _as_vector(y, K.dimension)
    value = K.gauge(z)
    if abs(value - 1.0) > tol:
        raise NotOnBoundary(f"点 {z.tolist()} 不在边界上 (φ* = {value})")
    y_norm = float(np.linalg.norm(y))
    if y_norm == 0.0:
        return True
    return K.support(y) - float(y @ z) <= tol * K.scale * (1.0 + y_norm)


def maximizer_set(K: ConvexBody, y: Any, tol: Optional[float] = None) -> Face:
    """
    达到 φ_K(y) 的边界点集合 Z_K(y)，对 y 的正数倍不变

    Raises:
        ZeroDirection: y = 0
    """
    return K.maximizer_face(y, tol)


def is_additive(K: ConvexBody, y1: Any, y2: Any, tol: Optional[float] = None) -> AdditivityResult:
    """
    判断 φ_K(y1) + φ_K(y2) = φ_K(y1 + y2)

    等价于存在同时达到两个支撑值的边界点；见证点取 y1 + y2 的支撑点
    """
    tol = get_tolerance(tol)
    y1 = _as_vector(y1, K.dimension)
    y2 = _as_vector(y2, K.dimension)
    n1, n2 = float(np.linalg.norm(y1)), float(np.linalg.norm(y2))
    if n1 == 0.0 or n2 == 0.0:
        return AdditivityResult(additive=True, witness=None, defect=0.0)

    total = y1 + y2
    defect = max(0.0, K.support(y1) + K.support(y2) - K.support(total))
    additive = defect <= tol * K.scale * (1.0 + n1 + n2)
    witness = None
    if additive:
        witness = K.support_point(total) if np.linalg.norm(total) > 0 else K.support_point(y1)
    return AdditivityResult(additive=additive, witness=witness, defect=defect)


def normals_set(K: ConvexBody) -> NormalSet:
    """约化边界外法向量集合：多边形为有限集，椭圆为整个单位圆"""
    return K.normals()


def is_in_closure(nu: Any, normals: NormalSet, tol: Optional[float] = None) -> bool:
    """
    以角度容差判断方向 nu 是否属于法向量集合的闭包

    Raises:
        ZeroDirection: nu = 0
    """
    tol = get_tolerance(tol)
    nu = _as_vector(nu, 2)
    if np.linalg.norm(nu) == 0.0:
        raise ZeroDirection("法向量方向不能为零")
    if normals.is_full_sphere:
        return True
    return any(_angle_between(nu, np.asarray(n)) <= tol for n in normals.vectors)


def is_extreme_of_polar(y: Any, K: ConvexBody, tol: Optional[float] = None) -> bool:
    """
    判断 y/φ_K(y) 是否为极体闭包的极点

    多边形情形即是否为极体顶点（与顶点方向的角度比较）；椭圆边界上每个点都是极点

    Raises:
        ZeroDirection: y = 0
    """
    tol = get_tolerance(tol)
    y = _as_vector(y, K.dimension)
    if np.linalg.norm(y) == 0.0:
        raise ZeroDirection("方向不能为零")
    if isinstance(K, Ellipse):
        return True
    if K.dimension != 2:
        raise DimensionUnsupported("极点判定只支持平面多边形")
    p = y / K.support(y)
    return any(_angle_between(p, q) <= tol for q in K.polar().vertices)


def fenchel_gap(K: ConvexBody, x: Any, y: Any) -> float:
    """φ*_K(x)·φ_K(y) − x·y，由Fenchel不等式总是非负"""
    x = _as_vector(x, K.dimension)
    y = _as_vector(y, K.dimension)
    return K.gauge(x) * K.support(y) - float(x @ y)


def hausdorff_distance(A: ConvexBody, B: ConvexBody, samples: int = HAUSDORFF_SAMPLES) -> float:
    """
    两个平面凸体的Hausdorff距离

    两个多边形时精确计算（距离函数是凸的，最大值在顶点处取得）；
    涉及椭圆时用 sup|h_A − h_B| 在均匀方向上采样
    """
    if A.dimension != 2 or B.dimension != 2:
        raise DimensionUnsupported("Hausdorff距离只支持平面凸体")
    if isinstance(A, Polytope) and isinstance(B, Polytope):
        poly_a, poly_b = Polygon(A.vertices), Polygon(B.vertices)
        d_ab = max(poly_b.distance(Point(v)) for v in A.vertices)
        d_ba = max(poly_a.distance(Point(v)) for v in B.vertices)
        return float(max(d_ab, d_ba))
    thetas = np.linspace(0.0, 2.0 * math.pi, samples, endpoint=False)
    directions = np.column_stack([np.cos(thetas), np.sin(thetas)])
    return float(max(abs(A.support(u) - B.support(u)) for u in directions))


def regular_polygon(n_sides: int, radius: float = 1.0, phase: float = 0.0) -> Polytope:
    """内接于半径为 radius 的圆的正多边形"""
    if n_sides < 3:
        raise InvalidBody(f"正多边形至少需要3条边: {n_sides}")
    k = np.arange(n_sides)
    angles = phase + 2.0 * math.pi * k / n_sides
    return Polytope(np.column_stack([radius * np.cos(angles), radius * np.sin(angles)]))


def body_from_dict(data: Dict[str, Any], path: Optional[str] = None,
                   tol: Optional[float] = None) -> ConvexBody:
    """
    从JSON字典构造凸体

    格式: {"kind": "polytope", "vertices": [[x, y], ...]} 或 {"kind": "ellipse", "a": ..., "b": ...}

    Raises:
        InputFormatError: 字段缺失或类型错误
        InvalidBody: 数据不满足凸体条件
    """
    kind = require_field(data, "kind", path)
    if kind == "polytope":
        vertices = data.get("vertices")
        if not isinstance(vertices, list) or not vertices:
            raise InputFormatError("需要非空的顶点列表", path=path, field="vertices")
        try:
            return Polytope(vertices, tol=tol, allow_off_origin=bool(data.get("allow_off_origin", False)))
        except (TypeError, ValueError) as e:
            if isinstance(e, InvalidBody):
                raise
            raise InputFormatError(f"顶点格式错误: {e}", path=path, field="vertices")
    if kind == "ellipse":
        for key in ("a", "b"):
            if not isinstance(data.get(key), (int, float)):
                raise InputFormatError("椭圆半轴必须是数字", path=path, field=key)
        return Ellipse(data["a"], data["b"])
    raise InputFormatError(f"未知的凸体类型: {kind!r}", path=path, field="kind")


def body_to_dict(K: ConvexBody) -> Dict[str, Any]:
    return K.to_dict()
