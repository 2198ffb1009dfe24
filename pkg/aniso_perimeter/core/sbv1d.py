#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
一维分段线性SBV函数模块

承载截面长度 v 和重心 b 的函数类：紧支撑、分段线性、只有有限个跳跃点，
导数只有绝对连续部分和跳跃部分（Cantor部分恒为零）

剖面由结点 x_0 < ... < x_m、每个结点处的左右极限以及每段的斜率描述，满足
values_left[0] = 0, values_right[m] = 0, values_left[k+1] = values_right[k] + slopes[k]·(x_{k+1} − x_k)
"""

import bisect
import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from aniso_perimeter.core.exceptions import (
    InputFormatError,
    InvalidProfile,
    ProfileMismatch,
    SectionNotSegment,
)
from aniso_perimeter.utils.helpers import (
    NODE_MERGE_TOL,
    Strip,
    get_tolerance,
    in_strip,
    overlap_length,
    require_field,
)

logger = logging.getLogger(__name__)

# 加载剖面时左右极限与斜率一致性的相对容差
CONSISTENCY_TOL = 1e-9


@dataclass(frozen=True)
class JumpRecord:
    """
    跳跃点记录

    direction 为 +1 表示右极限是上极限 f^∨
    """
    location: float
    upper: float
    lower: float
    direction: int

    @property
    def height(self) -> float:
        return self.upper - self.lower

    def to_dict(self) -> Dict[str, Any]:
        return {"location": self.location, "upper": self.upper, "lower": self.lower,
                "direction": self.direction}


@dataclass(frozen=True)
class Piece:
    """开区间 (x0, x1) 上的仿射段"""
    x0: float
    x1: float
    slope: float
    start: float
    end: float

    @property
    def length(self) -> float:
        return self.x1 - self.x0

    def value(self, x: float) -> float:
        return self.start + self.slope * (x - self.x0)


@dataclass(frozen=True)
class DerivativeParts:
    """分布导数 Df = ∇f dx + Σ [f] ν_f δ_x 的两部分"""
    slopes: Tuple[Tuple[float, float, float], ...]
    jumps: Tuple[JumpRecord, ...]

    def total_variation(self, strip: Optional[Strip] = None) -> float:
        ac = sum(abs(s) * overlap_length(a, b, strip) for a, b, s in self.slopes)
        jump = sum(j.height for j in self.jumps if in_strip(j.location, strip))
        return ac + jump


def _merge_sorted(values: Sequence[float]) -> List[float]:
    """排序并合并间距不超过 NODE_MERGE_TOL 的结点"""
    merged: List[float] = []
    for x in sorted(values):
        if not merged or x - merged[-1] > NODE_MERGE_TOL:
            merged.append(float(x))
    return merged


@dataclass(frozen=True)
class SbvProfile:
    """
    紧支撑分段线性SBV函数

    Attributes:
        nodes: 严格递增的结点
        values_left: 各结点处的左极限
        values_right: 各结点处的右极限
        slopes: 相邻结点之间的斜率
        nonnegative: 是否要求非负（截面长度 v 需要，重心 b 不需要）
    """
    nodes: Tuple[float, ...] = ()
    values_left: Tuple[float, ...] = ()
    values_right: Tuple[float, ...] = ()
    slopes: Tuple[float, ...] = ()
    nonnegative: bool = False

    def __post_init__(self):
        m = len(self.nodes)
        if len(self.values_left) != m or len(self.values_right) != m:
            raise InvalidProfile("左右极限的个数必须与结点个数相同")
        if len(self.slopes) != max(0, m - 1):
            raise InvalidProfile("斜率个数必须比结点个数少一")
        data = self.nodes + self.values_left + self.values_right + self.slopes
        if not all(math.isfinite(x) for x in data):
            raise InvalidProfile("剖面包含非有限值")
        if m == 0:
            return
        for a, b in zip(self.nodes, self.nodes[1:]):
            if b - a <= NODE_MERGE_TOL:
                raise InvalidProfile(f"结点必须严格递增: {a}, {b}")
        scale = 1.0 + max(abs(x) for x in self.values_left + self.values_right)
        if abs(self.values_left[0]) > CONSISTENCY_TOL * scale:
            raise InvalidProfile(f"第一个结点的左极限必须为0: {self.values_left[0]}")
        if abs(self.values_right[-1]) > CONSISTENCY_TOL * scale:
            raise InvalidProfile(f"最后一个结点的右极限必须为0: {self.values_right[-1]}")
        for k in range(m - 1):
            predicted = self.values_right[k] + self.slopes[k] * (self.nodes[k + 1] - self.nodes[k])
            if abs(predicted - self.values_left[k + 1]) > CONSISTENCY_TOL * scale:
                raise InvalidProfile(
                    f"第{k}段的斜率与端点极限不一致: 预测 {predicted}, 实际 {self.values_left[k + 1]}"
                )
        if self.nonnegative:
            low = min(self.values_left + self.values_right)
            if low < -CONSISTENCY_TOL * scale:
                raise InvalidProfile(f"非负剖面出现负值: {low}")

    # ------------------------------------------------------------------
    # 构造
    # ------------------------------------------------------------------

    @classmethod
    def zero(cls) -> "SbvProfile":
        return cls(nonnegative=True)

    @classmethod
    def from_limits(cls, nodes: Sequence[float], left: Sequence[float], right: Sequence[float],
                    nonnegative: bool = False) -> "SbvProfile":
        """
        由结点和左右极限构造剖面，斜率由相邻极限导出

        间距不超过1e-12的结点合并，高度不超过1e-12的跳跃被擦除
        """
        if not (len(nodes) == len(left) == len(right)):
            raise InvalidProfile("结点与左右极限的个数不一致")
        xs: List[float] = []
        ls: List[float] = []
        rs: List[float] = []
        for x, lv, rv in sorted(zip(map(float, nodes), map(float, left), map(float, right)),
                                key=lambda t: t[0]):
            if xs and x - xs[-1] <= NODE_MERGE_TOL:
                # 合并后保留左侧结点的左极限和右侧结点的右极限
                rs[-1] = rv
                continue
            xs.append(x)
            ls.append(lv)
            rs.append(rv)
        if not xs:
            return cls(nonnegative=nonnegative)

        for k in range(len(xs)):
            if abs(rs[k] - ls[k]) <= NODE_MERGE_TOL:
                mid = 0.5 * (ls[k] + rs[k])
                ls[k] = rs[k] = mid
            if nonnegative:
                ls[k] = 0.0 if abs(ls[k]) <= NODE_MERGE_TOL else ls[k]
                rs[k] = 0.0 if abs(rs[k]) <= NODE_MERGE_TOL else rs[k]
        if abs(ls[0]) <= NODE_MERGE_TOL:
            ls[0] = 0.0
        if abs(rs[-1]) <= NODE_MERGE_TOL:
            rs[-1] = 0.0

        slopes = tuple((ls[k + 1] - rs[k]) / (xs[k + 1] - xs[k]) for k in range(len(xs) - 1))
        return cls(tuple(xs), tuple(ls), tuple(rs), slopes, nonnegative)

    @classmethod
    def piecewise_linear(cls, nodes: Sequence[float], values: Sequence[float],
                         nonnegative: bool = False) -> "SbvProfile":
        """
        内部连续的分段线性剖面，只在首尾结点处可能跳跃到0

        Args:
            nodes: 结点
            values: 支撑区间内各结点处的函数值
        """
        if len(nodes) != len(values) or len(nodes) < 2:
            raise InvalidProfile("分段线性剖面至少需要两个结点，且值的个数与结点一致")
        values = [float(v) for v in values]
        left = [0.0] + values[1:]
        right = values[:-1] + [0.0]
        return cls.from_limits(nodes, left, right, nonnegative)

    @classmethod
    def indicator(cls, a: float, b: float, height: float = 1.0) -> "SbvProfile":
        """height·1_{[a,b]}"""
        if not b > a:
            raise InvalidProfile(f"区间端点必须满足 a < b: [{a}, {b}]")
        return cls.piecewise_linear([a, b], [height, height], nonnegative=height >= 0)

    @classmethod
    def tent(cls, center: float = 0.0, half_width: float = 1.0, height: float = 1.0) -> "SbvProfile":
        """帐篷函数 height·max(0, 1 − |x − center|/half_width)"""
        return cls.piecewise_linear(
            [center - half_width, center, center + half_width], [0.0, height, 0.0],
            nonnegative=height >= 0,
        )

    @classmethod
    def from_dict(cls, data: Dict[str, Any], path: Optional[str] = None,
                  nonnegative: bool = False) -> "SbvProfile":
        """
        从JSON字典加载剖面

        格式: {"nodes": [...], "values_left": [...], "values_right": [...], "slopes": [...]}，
        slopes 可省略；给出时必须与极限一致

        Raises:
            InputFormatError: 字段缺失或类型错误
            InvalidProfile: 数据违反剖面不变量
        """
        if not isinstance(data, dict):
            raise InputFormatError("剖面必须是JSON对象", path=path)
        for key in ("nodes", "values_left", "values_right"):
            value = require_field(data, key, path)
            if not isinstance(value, list) or not all(isinstance(x, (int, float)) for x in value):
                raise InputFormatError("需要数字列表", path=path, field=key)
        slopes = data.get("slopes")
        if slopes is not None:
            if not isinstance(slopes, list) or not all(isinstance(x, (int, float)) for x in slopes):
                raise InputFormatError("需要数字列表", path=path, field="slopes")
            # 先按原样校验，再规范化
            cls(tuple(map(float, data["nodes"])), tuple(map(float, data["values_left"])),
                tuple(map(float, data["values_right"])), tuple(map(float, slopes)), nonnegative)
        return cls.from_limits(data["nodes"], data["values_left"], data["values_right"], nonnegative)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "nodes": list(self.nodes),
            "values_left": list(self.values_left),
            "values_right": list(self.values_right),
            "slopes": list(self.slopes),
        }

    # ------------------------------------------------------------------
    # 查询
    # ------------------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return all(v == 0.0 for v in self.values_left + self.values_right)

    def support_hull(self) -> Optional[Tuple[float, float]]:
        """结点范围 [x_0, x_m]，支撑集包含于其中"""
        if not self.nodes:
            return None
        return self.nodes[0], self.nodes[-1]

    def max_abs(self) -> float:
        if not self.nodes:
            return 0.0
        return max(abs(v) for v in self.values_left + self.values_right)

    def pieces(self) -> Iterator[Piece]:
        for k in range(len(self.slopes)):
            yield Piece(self.nodes[k], self.nodes[k + 1], self.slopes[k],
                        self.values_right[k], self.values_left[k + 1])

    def _node_index(self, x: float) -> Optional[int]:
        k = bisect.bisect_left(self.nodes, x - NODE_MERGE_TOL)
        if k < len(self.nodes) and abs(self.nodes[k] - x) <= NODE_MERGE_TOL:
            return k
        return None

    def limits_at(self, x: float) -> Tuple[float, float]:
        """x 处的（左极限, 右极限）"""
        if not self.nodes:
            return 0.0, 0.0
        k = self._node_index(x)
        if k is not None:
            return self.values_left[k], self.values_right[k]
        if x < self.nodes[0] or x > self.nodes[-1]:
            return 0.0, 0.0
        k = bisect.bisect_right(self.nodes, x) - 1
        value = self.values_right[k] + self.slopes[k] * (x - self.nodes[k])
        return value, value

    def value_at(self, x: float) -> float:
        """连续点处的函数值，结点处返回近似平均值 f̃"""
        left, right = self.limits_at(x)
        return 0.5 * (left + right)

    def eval_bounds(self, x: float) -> Tuple[float, float, float]:
        """
        近似下极限、上极限和平均值 (f^∧, f^∨, f̃)
        """
        left, right = self.limits_at(x)
        return min(left, right), max(left, right), 0.5 * (left + right)

    def jumps(self, tol: float = NODE_MERGE_TOL) -> Tuple[JumpRecord, ...]:
        """跳跃集合 J_f，按位置排序"""
        records = []
        for x, left, right in zip(self.nodes, self.values_left, self.values_right):
            if abs(right - left) > tol:
                records.append(JumpRecord(location=x, upper=max(left, right), lower=min(left, right),
                                          direction=1 if right > left else -1))
        return tuple(records)

    def derivative_parts(self) -> DerivativeParts:
        """分布导数的绝对连续部分（分段常数斜率）和跳跃部分"""
        slopes = tuple((p.x0, p.x1, p.slope) for p in self.pieces())
        return DerivativeParts(slopes=slopes, jumps=self.jumps())

    def total_variation(self, strip: Optional[Strip] = None) -> float:
        """|Df|(G) = ∫_G |∇f| + Σ_{J_f ∩ G} [f]"""
        return self.derivative_parts().total_variation(strip)

    # ------------------------------------------------------------------
    # 变换
    # ------------------------------------------------------------------

    def refine(self, extra_nodes: Sequence[float]) -> "SbvProfile":
        """在公共加细上重新表示，不改变函数"""
        nodes = _merge_sorted(list(self.nodes) + [float(x) for x in extra_nodes])
        left, right = zip(*(self.limits_at(x) for x in nodes)) if nodes else ((), ())
        return SbvProfile.from_limits(nodes, left, right, self.nonnegative)

    def _combine(self, other: "SbvProfile", op, nonnegative: bool) -> "SbvProfile":
        nodes = _merge_sorted(list(self.nodes) + list(other.nodes))
        if not nodes:
            return SbvProfile(nonnegative=nonnegative)
        left, right = [], []
        for x in nodes:
            l1, r1 = self.limits_at(x)
            l2, r2 = other.limits_at(x)
            left.append(op(l1, l2))
            right.append(op(r1, r2))
        return SbvProfile.from_limits(nodes, left, right, nonnegative)

    def __add__(self, other: "SbvProfile") -> "SbvProfile":
        return self._combine(other, lambda a, b: a + b, self.nonnegative and other.nonnegative)

    def __sub__(self, other: "SbvProfile") -> "SbvProfile":
        return self._combine(other, lambda a, b: a - b, False)

    def __neg__(self) -> "SbvProfile":
        return self.scale(-1.0)

    def __mul__(self, factor: float) -> "SbvProfile":
        return self.scale(factor)

    __rmul__ = __mul__

    def scale(self, factor: float) -> "SbvProfile":
        factor = float(factor)
        return SbvProfile.from_limits(
            self.nodes, [factor * v for v in self.values_left], [factor * v for v in self.values_right],
            self.nonnegative and factor >= 0,
        )

    def dilate(self, factor: float) -> "SbvProfile":
        """x ↦ factor·x 的位似，函数值同比缩放，斜率不变"""
        if not factor > 0:
            raise ValueError(f"位似系数必须为正: {factor}")
        return SbvProfile.from_limits(
            [factor * x for x in self.nodes],
            [factor * v for v in self.values_left],
            [factor * v for v in self.values_right],
            self.nonnegative,
        )

    def truncate(self, level: float) -> "SbvProfile":
        """
        截断 τ_M(f) = max(−M, min(M, f))

        在 |f| 穿过 M 的位置插入新结点，结果仍是分段线性的
        """
        if level < 0:
            raise ValueError(f"截断水平必须非负: {level}")
        crossings = []
        for p in self.pieces():
            if p.slope == 0.0:
                continue
            for target in (level, -level):
                t = p.x0 + (target - p.start) / p.slope
                if p.x0 + NODE_MERGE_TOL < t < p.x1 - NODE_MERGE_TOL:
                    crossings.append(t)
        refined = self.refine(crossings)
        clamp = lambda v: max(-level, min(level, v))
        return SbvProfile.from_limits(
            refined.nodes,
            [clamp(v) for v in refined.values_left],
            [clamp(v) for v in refined.values_right],
            self.nonnegative,
        )


def truncate(f: SbvProfile, level: float) -> SbvProfile:
    """τ_M(f)"""
    return f.truncate(level)


def eval_bounds(f: SbvProfile, x: float) -> Tuple[float, float, float]:
    return f.eval_bounds(x)


def derivative_parts(f: SbvProfile) -> DerivativeParts:
    return f.derivative_parts()


def clamp_value(s: float, level: float) -> float:
    """τ_M(s)"""
    return max(-level, min(level, s))


# ---------------------------------------------------------------------------
# v 与 b 的联合跳跃
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class JointLimits:
    """v 和 b 在公共结点上的左右极限"""
    nodes: Tuple[float, ...]
    v_left: Tuple[float, ...]
    v_right: Tuple[float, ...]
    b_left: Tuple[float, ...]
    b_right: Tuple[float, ...]

    def piece_slopes(self, k: int) -> Tuple[float, float]:
        """第 k 段上 (v', b')"""
        dx = self.nodes[k + 1] - self.nodes[k]
        return ((self.v_left[k + 1] - self.v_right[k]) / dx,
                (self.b_left[k + 1] - self.b_right[k]) / dx)

    def piece_is_active(self, k: int, tol: float) -> bool:
        """第 k 段上 v 不恒为零"""
        return max(self.v_right[k], self.v_left[k + 1]) > tol


def joint_limits(v: SbvProfile, b: SbvProfile) -> JointLimits:
    """在 v 和 b 的公共加细上取左右极限"""
    nodes = _merge_sorted(list(v.nodes) + list(b.nodes))
    vl, vr, bl, br = [], [], [], []
    for x in nodes:
        a, c = v.limits_at(x)
        d, e = b.limits_at(x)
        vl.append(a)
        vr.append(c)
        bl.append(d)
        br.append(e)
    return JointLimits(tuple(nodes), tuple(vl), tuple(vr), tuple(bl), tuple(br))


@dataclass(frozen=True)
class JointJump:
    """
    结点处 v、b 的跳跃分类以及 u1 = b − v/2、u2 = b + v/2 的上下极限与跳跃方向

    region 取值: "A"（只有 v 跳跃）、"B1"…"B6"（二者都跳跃）、"C"（只有 b 跳跃）、"none"
    """
    location: float
    region: str
    v_jump: float
    b_jump: float
    nu_v: int
    nu_b: int
    u1_upper: float
    u1_lower: float
    u2_upper: float
    u2_lower: float
    u1_direction: int
    u2_direction: int

    def to_dict(self) -> Dict[str, Any]:
        return dict(self.__dict__)


def _direction(left: float, right: float, tol: float) -> int:
    if right - left > tol:
        return 1
    if left - right > tol:
        return -1
    return 0


def classify_joint_jump(v: SbvProfile, b: SbvProfile, x: float, tol: Optional[float] = None) -> JointJump:
    """
    对结点 x 做 A、B1–B6、C 分类

    B1–B3 对应 ν_b = ν_v，B4–B6 对应 ν_b = −ν_v；每组内依次为 [b] 小于、等于、大于 [v]/2
    """
    tol = get_tolerance(tol)
    vl, vr = v.limits_at(x)
    bl, br = b.limits_at(x)
    v_jump, b_jump = abs(vr - vl), abs(br - bl)
    nu_v = _direction(vl, vr, tol)
    nu_b = _direction(bl, br, tol)

    if nu_v == 0 and nu_b == 0:
        region = "none"
    elif nu_b == 0:
        region = "A"
    elif nu_v == 0:
        region = "C"
    else:
        half = 0.5 * v_jump
        if b_jump < half - tol:
            offset = 1
        elif b_jump > half + tol:
            offset = 3
        else:
            offset = 2
        region = f"B{offset if nu_b == nu_v else offset + 3}"

    u1_left, u1_right = bl - 0.5 * vl, br - 0.5 * vr
    u2_left, u2_right = bl + 0.5 * vl, br + 0.5 * vr
    return JointJump(
        location=float(x), region=region, v_jump=v_jump, b_jump=b_jump, nu_v=nu_v, nu_b=nu_b,
        u1_upper=max(u1_left, u1_right), u1_lower=min(u1_left, u1_right),
        u2_upper=max(u2_left, u2_right), u2_lower=min(u2_left, u2_right),
        u1_direction=_direction(u1_left, u1_right, tol),
        u2_direction=_direction(u2_left, u2_right, tol),
    )


# ---------------------------------------------------------------------------
# 多边形的竖直截面
# ---------------------------------------------------------------------------

def _polygon_vertices(E: Any) -> np.ndarray:
    vertices = getattr(E, "vertices", E)
    pts = np.asarray(vertices, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2 or len(pts) < 3:
        raise SectionNotSegment(f"需要至少三个顶点的平面多边形，得到形状 {pts.shape}")
    return pts


def section_profiles(E: Any) -> Tuple[SbvProfile, SbvProfile]:
    """
    多边形竖直截面的长度剖面和中点剖面

    每个相邻顶点横坐标之间的区间必须恰好被两条非竖直边覆盖

    Args:
        E: 顶点序列或带 vertices 属性的对象

    Returns:
        (截面长度 v, 截面中点 b)

    Raises:
        SectionNotSegment: 某个截面不是单个线段
    """
    pts = _polygon_vertices(E)
    n = len(pts)
    edges = [(pts[i], pts[(i + 1) % n]) for i in range(n)]
    xs = _merge_sorted(pts[:, 0].tolist())

    length_left = [0.0] * len(xs)
    length_right = [0.0] * len(xs)
    mid_left = [0.0] * len(xs)
    mid_right = [0.0] * len(xs)

    for k in range(len(xs) - 1):
        xa, xb = xs[k], xs[k + 1]
        xm = 0.5 * (xa + xb)
        covering = []
        for p, q in edges:
            lo, hi = min(p[0], q[0]), max(p[0], q[0])
            if hi - lo <= NODE_MERGE_TOL:
                continue
            if lo <= xm <= hi:
                slope = (q[1] - p[1]) / (q[0] - p[0])
                covering.append(lambda x, p=p, slope=slope: p[1] + slope * (x - p[0]))
        if len(covering) != 2:
            raise SectionNotSegment(
                f"横坐标区间 ({xa}, {xb}) 被 {len(covering)} 条边覆盖，竖直截面不是单个线段"
            )
        lower, upper = sorted(covering, key=lambda line: line(xm))
        lo_a, lo_b, hi_a, hi_b = lower(xa), lower(xb), upper(xa), upper(xb)
        length_right[k] = hi_a - lo_a
        length_left[k + 1] = hi_b - lo_b
        mid_right[k] = 0.5 * (hi_a + lo_a)
        mid_left[k + 1] = 0.5 * (hi_b + lo_b)

    length = SbvProfile.from_limits(xs, length_left, length_right, nonnegative=True)
    midpoint = SbvProfile.from_limits(xs, mid_left, mid_right)
    return length, midpoint


def profiles_close(f: SbvProfile, g: SbvProfile, tol: Optional[float] = None) -> bool:
    """两个剖面在公共结点上的左右极限在容差内一致"""
    tol = get_tolerance(tol)
    scale = 1.0 + max(f.max_abs(), g.max_abs())
    for x in _merge_sorted(list(f.nodes) + list(g.nodes)):
        fl, fr = f.limits_at(x)
        gl, gr = g.limits_at(x)
        if abs(fl - gl) > tol * scale or abs(fr - gr) > tol * scale:
            return False
    return True


def barycenter_of_polygon_sections(E: Any, v: Optional[SbvProfile] = None,
                                   tol: Optional[float] = None) -> SbvProfile:
    """
    多边形竖直截面的重心 b_E(z) = (1/v(z)) ∫_{E_z} t dt

    Args:
        E: 竖直截面都是线段的多边形
        v: 截面长度剖面，给出时校验与多边形一致

    Raises:
        SectionNotSegment: 截面不是单个线段
        ProfileMismatch: v 与多边形的截面长度不符
    """
    length, midpoint = section_profiles(E)
    if v is not None and not profiles_close(length, v, tol):
        raise ProfileMismatch("给定的截面长度剖面与多边形不一致")
    logger.debug(f"截面重心计算完成，结点数: {len(midpoint.nodes)}")
    return midpoint


# ---------------------------------------------------------------------------
# v-分布集合
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class VDistributedSet:
    """
    W[v, b] = {(z, t): |t − b(z)| < v(z)/2}

    v 非负；b 在 v 为零的地方必须为零
    """
    v: SbvProfile
    b: SbvProfile

    def __post_init__(self):
        tol = get_tolerance()
        scale = 1.0 + self.v.max_abs()
        if self.v.nodes and min(self.v.values_left + self.v.values_right) < -tol * scale:
            raise InvalidProfile("截面长度 v 必须非负")
        joint = joint_limits(self.v, self.b)
        b_scale = 1.0 + self.b.max_abs()
        for k in range(len(joint.nodes) - 1):
            if joint.piece_is_active(k, tol * scale):
                continue
            if max(abs(joint.b_right[k]), abs(joint.b_left[k + 1])) > tol * b_scale:
                raise ProfileMismatch(
                    f"b 在 v 的支撑集之外非零: 区间 ({joint.nodes[k]}, {joint.nodes[k + 1]})"
                )

    @classmethod
    def clipped(cls, v: SbvProfile, b: SbvProfile, tol: Optional[float] = None) -> "VDistributedSet":
        """在 v 恒为零的区间上把 b 置零后构造"""
        tol = get_tolerance(tol)
        joint = joint_limits(v, b)
        bl, br = list(joint.b_left), list(joint.b_right)
        scale = 1.0 + v.max_abs()
        for k in range(len(joint.nodes) - 1):
            if not joint.piece_is_active(k, tol * scale):
                br[k] = 0.0
                bl[k + 1] = 0.0
        if joint.nodes:
            bl[0] = 0.0
            br[-1] = 0.0
        return cls(v, SbvProfile.from_limits(joint.nodes, bl, br))

    @classmethod
    def symmetric(cls, v: SbvProfile) -> "VDistributedSet":
        """F[v] = W[v, 0]"""
        return cls(v, SbvProfile.zero())

    @property
    def u_lower(self) -> SbvProfile:
        """下边界 u1 = b − v/2"""
        return self.b - self.v.scale(0.5)

    @property
    def u_upper(self) -> SbvProfile:
        """上边界 u2 = b + v/2"""
        return self.b + self.v.scale(0.5)

    def to_dict(self) -> Dict[str, Any]:
        return {"v": self.v.to_dict(), "b": self.b.to_dict()}
