#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
刚性判定模块

检查 W[v, b] 是否达到Steiner不等式的等号（截面、锥可加性、跳跃三个条件），
判定法向量条件 R1/R2，并在条件不满足时搜索非刚性见证
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Iterator, List, Optional, Tuple

import numpy as np

from aniso_perimeter.core.convex_body import (
    ConvexBody,
    Polytope,
    is_additive,
    is_extreme_of_polar,
    is_in_closure,
    normals_set,
)
from aniso_perimeter.core.exceptions import NotASymmetral
from aniso_perimeter.core.perimeter import perimeter_F_of_v, perimeter_from_vb
from aniso_perimeter.core.sbv1d import SbvProfile, VDistributedSet, joint_limits
from aniso_perimeter.core.steiner import support_symmetry_check
from aniso_perimeter.utils.helpers import get_tolerance

logger = logging.getLogger(__name__)

# 见证搜索网格的点数（[−diam, diam] 上的对称网格，去掉零点）
WITNESS_GRID_SIZE = 41
CANTOR_CONDITION = "vacuous-SBV"


class Verdict(str, Enum):
    EQUIVALENT = "Equivalent"
    NOT_GUARANTEED = "NotGuaranteed"


@dataclass
class EqualityReport:
    """
    等号条件检查结果

    Attributes:
        condition_sections_ok: 截面都是线段（由 W[v, b] 的构造保证）
        condition_cone_ok: 每个仿射段上锥可加性成立
        cone_failures: 不满足可加性的段 (x0, x1)
        condition_jump_ok: 2[b] ≤ [v] 在 v^∧ > 0 的跳跃点处成立
        jump_failures: 不满足跳跃条件的结点
        cantor_condition: Cantor部分条件，分段线性剖面中为空条件
        gap: P_{K^s}(W[v, b]) − P_{K^s}(F[v])
    """
    condition_sections_ok: bool = True
    condition_cone_ok: bool = True
    cone_failures: List[Tuple[float, float]] = field(default_factory=list)
    condition_jump_ok: bool = True
    jump_failures: List[float] = field(default_factory=list)
    cantor_condition: str = CANTOR_CONDITION
    gap: float = 0.0

    @property
    def all_ok(self) -> bool:
        return self.condition_sections_ok and self.condition_cone_ok and self.condition_jump_ok

    def to_dict(self) -> Dict[str, Any]:
        return {
            "condition_sections_ok": self.condition_sections_ok,
            "condition_cone_ok": self.condition_cone_ok,
            "cone_failures": [list(piece) for piece in self.cone_failures],
            "condition_jump_ok": self.condition_jump_ok,
            "jump_failures": list(self.jump_failures),
            "cantor_condition": self.cantor_condition,
            "gap": self.gap,
        }


@dataclass
class R1R2Result:
    r1_ok: bool
    r2_ok: bool
    failing_normals: List[Tuple[float, float]] = field(default_factory=list)
    failing_pieces: List[int] = field(default_factory=list)
    r2_reason: str = CANTOR_CONDITION


@dataclass
class RigidityReport:
    """
    刚性判定报告

    verdict 只描述等价性是否可以传递（Equivalent 当且仅当 R1、R2 都成立），
    从不断言欧氏刚性本身
    """
    equality: EqualityReport
    r1_ok: bool
    r2_ok: bool
    r2_reason: str
    failing_normals: List[Tuple[float, float]]
    verdict: Verdict
    witness: Optional[VDistributedSet] = None
    evaluated_on: str = "F[v]"

    @property
    def condition_sections_ok(self) -> bool:
        return self.equality.condition_sections_ok

    @property
    def condition_cone_ok(self) -> bool:
        return self.equality.condition_cone_ok

    @property
    def condition_jump_ok(self) -> bool:
        return self.equality.condition_jump_ok

    @property
    def cantor_condition(self) -> str:
        return self.equality.cantor_condition

    def to_dict(self) -> Dict[str, Any]:
        data = self.equality.to_dict()
        data.update({
            "r1_ok": self.r1_ok,
            "r2_ok": self.r2_ok,
            "r2_reason": self.r2_reason,
            "failing_normals": [list(n) for n in self.failing_normals],
            "verdict": self.verdict.value,
            "evaluated_on": self.evaluated_on,
            "witness": self.witness.to_dict() if self.witness is not None else None,
        })
        return data


def _require_symmetral(K_sym: ConvexBody, tol: float) -> None:
    if not support_symmetry_check(K_sym, tol=tol):
        raise NotASymmetral("刚性判定要求凸体关于水平轴对称")


def check_equality_membership(S: VDistributedSet, K_sym: ConvexBody,
                              tol: Optional[float] = None) -> EqualityReport:
    """
    检查 W[v, b] 是否属于 P_{K^s} 的等号集合

    锥条件在每个活动仿射段上取端点 (−v'/2 ± b', 1) 检查可加性；
    跳跃条件在 v^∧ > 0 且 v 或 b 跳跃的结点处检查 2[b] ≤ [v]

    Raises:
        NotASymmetral: K^s 关于水平轴不对称
    """
    tol = get_tolerance(tol)
    _require_symmetral(K_sym, tol)
    joint = joint_limits(S.v, S.b)
    zero_tol = tol * (1.0 + S.v.max_abs())
    jump_tol = tol * (1.0 + S.v.max_abs() + S.b.max_abs())
    report = EqualityReport()

    xs = joint.nodes
    for k in range(len(xs) - 1):
        if not joint.piece_is_active(k, zero_tol):
            continue
        dv, db = joint.piece_slopes(k)
        result = is_additive(K_sym, (-0.5 * dv + db, 1.0), (-0.5 * dv - db, 1.0), tol)
        if not result:
            report.condition_cone_ok = False
            report.cone_failures.append((xs[k], xs[k + 1]))
            logger.debug(f"段 ({xs[k]}, {xs[k + 1]}) 上可加性不成立，缺陷 {result.defect:.3e}")

    for i, x in enumerate(xs):
        vl, vr = joint.v_left[i], joint.v_right[i]
        if min(vl, vr) <= zero_tol:
            continue
        v_jump = abs(vr - vl)
        b_jump = abs(joint.b_right[i] - joint.b_left[i])
        if v_jump <= zero_tol and b_jump <= jump_tol:
            continue
        if 2.0 * b_jump > v_jump + jump_tol:
            report.condition_jump_ok = False
            report.jump_failures.append(x)

    report.gap = perimeter_from_vb(S, K_sym, tol=tol).total - perimeter_F_of_v(S.v, K_sym, tol=tol).total
    return report


def _piece_normal(slope: float) -> np.ndarray:
    raw = np.array([-0.5 * slope, 1.0])
    return raw / np.linalg.norm(raw)


def check_R1_R2(v: SbvProfile, K_sym: ConvexBody, tol: Optional[float] = None) -> R1R2Result:
    """
    法向量条件 R1/R2

    R1: {v > 0} 上每个仿射段内 F[v] 上边界的外法向量 (−v'/2, 1)/|·| 属于 K^s 法向量集合的闭包，
    结点是零测集不参与检查；R2 涉及 Cantor部分，对分段线性剖面是空条件

    Raises:
        NotASymmetral: K^s 关于水平轴不对称
    """
    tol = get_tolerance(tol)
    _require_symmetral(K_sym, tol)
    normals = normals_set(K_sym)
    zero_tol = tol * (1.0 + v.max_abs())
    result = R1R2Result(r1_ok=True, r2_ok=True)

    for k, piece in enumerate(v.pieces()):
        if max(piece.start, piece.end) <= zero_tol:
            continue
        nu = _piece_normal(piece.slope)
        inside = is_in_closure(nu, normals, tol)
        extreme = is_extreme_of_polar((-0.5 * piece.slope, 1.0), K_sym, tol)
        if inside != extreme:
            logger.warning(f"法向量闭包判定与极点判定不一致: 段 {k}, 法向量 {nu.tolist()}")
        if not inside:
            result.r1_ok = False
            result.failing_pieces.append(k)
            normal = (float(nu[0]), float(nu[1]))
            if not any(math.isclose(normal[0], n[0], abs_tol=tol) and math.isclose(normal[1], n[1], abs_tol=tol)
                       for n in result.failing_normals):
                result.failing_normals.append(normal)
    return result


def _witness_barycenter(v: SbvProfile, k: int, g: float, zero_tol: float) -> SbvProfile:
    """
    第 k 段上斜率为 g 的连续重心剖面：段前为零，段后保持常数直到 v 的下一个零点
    """
    xs = list(v.nodes)
    values = [0.0] * len(xs)
    level = g * (xs[k + 1] - xs[k])
    right = list(values)
    for i in range(k + 1, len(xs)):
        values[i] = level
        vl, vr = v.limits_at(xs[i])
        if min(vl, vr) <= zero_tol:
            right[i] = 0.0
            for j in range(i + 1, len(xs)):
                values[j] = 0.0
                right[j] = 0.0
            break
        right[i] = level
    return SbvProfile.from_limits(xs, values, right)


def admissible_tilt(K_sym: ConvexBody, slope: float, tol: Optional[float] = None) -> float:
    """
    最大的 g >= 0，使 (a + g, 1) 与 (a − g, 1) 都属于 z = support_point((a, 1)) 处的法锥，a = −slope/2

    对每个顶点 w 要求 (z − w)·(a ± g, 1) >= 0，即 g <= (z − w)·(a, 1) / |(z − w)_x|；
    光滑凸体的法锥退化为射线，返回 0

    Returns:
        可取的 |g| 上界，没有横向约束时为 inf
    """
    if not isinstance(K_sym, Polytope):
        return 0.0
    tol = get_tolerance(tol)
    direction = np.array([-0.5 * slope, 1.0])
    z = K_sym.support_point(direction)
    diffs = z - K_sym.vertices
    lateral = np.abs(diffs[:, 0])
    mask = lateral > tol * K_sym.scale
    if not mask.any():
        return math.inf
    margins = diffs[mask] @ direction
    return float(max(0.0, np.min(margins / lateral[mask])))


def _tilt_candidates(K_sym: ConvexBody, slope: float, grid_size: int, zero_tol: float,
                     tol: float) -> Iterator[float]:
    """
    候选 g 的顺序：法锥给出的精确值，[−diam, diam] 上的对称网格，网格最小值以下的几何加密
    """
    diam = 2.0 * K_sym.circumradius
    bound = min(admissible_tilt(K_sym, slope, tol), diam)
    magnitudes = [0.5 * bound] if 0.5 * bound > zero_tol else []
    half = np.linspace(0.0, diam, grid_size // 2 + 1)[1:]
    magnitudes.extend(float(g) for g in half if g > zero_tol)
    g = float(half[0]) / 2.0 if len(half) else 0.0
    while g > zero_tol:
        magnitudes.append(g)
        g /= 2.0
    # 按 ±g 成对给出，g 与 −g 取相同的绝对值
    for g in magnitudes:
        yield g
        yield -g


def construct_nonrigid_witness(v: SbvProfile, K_sym: ConvexBody, tol: Optional[float] = None,
                               grid_size: int = WITNESS_GRID_SIZE) -> Optional[VDistributedSet]:
    """
    在 R1 不成立的段上搜索 b' = g ≠ 0 使 W[v, b] 仍达到等号

    先取法锥允许范围的中点 g = admissible_tilt/2，多边形时它总能通过可加性；
    其后在 [−diam, diam] 的对称网格上、再在网格以下按减半加密继续搜索。
    取第一个通过可加性且周长差为零的 g；全部未命中时返回 None，
    这只说明搜索没有找到见证

    Returns:
        非平移的等号集合 W[v, b]，或 None
    """
    tol = get_tolerance(tol)
    r = check_R1_R2(v, K_sym, tol)
    if r.r1_ok:
        return None
    zero_tol = tol * (1.0 + v.max_abs())
    pieces = list(v.pieces())
    reference = perimeter_F_of_v(v, K_sym, tol=tol).total

    for k in r.failing_pieces:
        a = -0.5 * pieces[k].slope
        for g in _tilt_candidates(K_sym, pieces[k].slope, grid_size, zero_tol, tol):
            if not is_additive(K_sym, (a + g, 1.0), (a - g, 1.0), tol):
                continue
            S = VDistributedSet(v, _witness_barycenter(v, k, float(g), zero_tol))
            gap = perimeter_from_vb(S, K_sym, tol=tol).total - reference
            if abs(gap) <= tol * (1.0 + reference):
                logger.info(f"找到非刚性见证: 段 {k}, g = {g:.6g}")
                return S
            logger.debug(f"候选 g = {g:.6g} 的周长差 {gap:.3e} 超出容差")
    logger.warning("候选 g 全部未通过检查，没有找到非刚性见证")
    return None


def verdict(v: SbvProfile, K_sym: ConvexBody, b: Optional[SbvProfile] = None,
            grid_size: int = WITNESS_GRID_SIZE,
            tol: Optional[float] = None) -> RigidityReport:
    """
    汇总刚性判定

    给出 b 时在 W[v, b] 上检查等号条件；否则在见证（若存在）或 F[v] 上检查

    Raises:
        NotASymmetral: K^s 关于水平轴不对称
    """
    tol = get_tolerance(tol)
    r = check_R1_R2(v, K_sym, tol)
    witness = None
    if not (r.r1_ok and r.r2_ok):
        witness = construct_nonrigid_witness(v, K_sym, tol, grid_size)

    if b is not None:
        S, evaluated_on = VDistributedSet(v, b), "W[v,b]"
    elif witness is not None:
        S, evaluated_on = witness, "witness"
    else:
        S, evaluated_on = VDistributedSet.symmetric(v), "F[v]"
    equality = check_equality_membership(S, K_sym, tol)

    outcome = Verdict.EQUIVALENT if (r.r1_ok and r.r2_ok) else Verdict.NOT_GUARANTEED
    logger.info(f"刚性判定: {outcome.value}, R1={r.r1_ok}, 失败法向量 {len(r.failing_normals)} 个")
    return RigidityReport(
        equality=equality,
        r1_ok=r.r1_ok,
        r2_ok=r.r2_ok,
        r2_reason=r.r2_reason,
        failing_normals=r.failing_normals,
        verdict=outcome,
        witness=witness,
        evaluated_on=evaluated_on,
    )
