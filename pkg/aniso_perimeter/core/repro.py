#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
复现模块

菱形体上倾斜矩形的周长扫描、法向量叠加图的数据，以及随机 (v, b) 语料上的
公式与多边形逐边求和的一致性检查
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from aniso_perimeter.core.convex_body import ConvexBody, Ellipse, Polytope, is_in_closure, normals_set
from aniso_perimeter.core.perimeter import (
    perimeter_F_of_v,
    perimeter_from_vb,
    polygon_perimeter,
    vdistributed_polygon,
)
from aniso_perimeter.core.rigidity import check_equality_membership, verdict
from aniso_perimeter.core.sbv1d import SbvProfile, VDistributedSet
from aniso_perimeter.core.steiner import steiner_symmetrize

logger = logging.getLogger(__name__)

FIG2_BETAS_DEG = (0.0, 15.0, 30.0, 45.0, 60.0, 75.0)


def diamond() -> Polytope:
    """单位菱形 conv{(±1, 0), (0, ±1)}，支撑函数为 max(|p|, |q|)"""
    return Polytope([(1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0)])


def unit_square() -> Polytope:
    return Polytope([(-1.0, -1.0), (1.0, -1.0), (1.0, 1.0), (-1.0, 1.0)])


def tilted_rectangle(beta: float, width: float = 1.0, height: float = 2.0) -> VDistributedSet:
    """v = height·1_[0, width]，b(x) = x·tan β"""
    v = SbvProfile.indicator(0.0, width, height)
    slope = math.tan(beta)
    b = SbvProfile.from_limits([0.0, width], [0.0, slope * width], [0.0, 0.0])
    return VDistributedSet(v, b)


def fig2_rows(betas_deg: Sequence[float] = FIG2_BETAS_DEG, tol: Optional[float] = None) -> List[Dict[str, Any]]:
    """
    倾斜角扫描：对每个 β 给出 P(E)、P(E^s) = 2l + 2h、差值、等号判定和闭式 4 + 2·max(tan β, 1)
    """
    K = diamond()
    rows = []
    for deg in betas_deg:
        beta = math.radians(deg)
        S = tilted_rectangle(beta)
        report = check_equality_membership(S, K, tol)
        total = perimeter_from_vb(S, K, tol=tol).total
        symmetral = perimeter_F_of_v(S.v, K, tol=tol).total
        rows.append({
            "beta_deg": deg,
            "perimeter": total,
            "symmetral_perimeter": symmetral,
            "gap": total - symmetral,
            "equality": report.all_ok,
            "closed_form": 4.0 + 2.0 * max(math.tan(beta), 1.0),
        })
    return rows


def normals_overlay(K_sym: ConvexBody, v: SbvProfile, tol: Optional[float] = None) -> Dict[str, Any]:
    """
    F[v] 各仿射段的外法向量与 K^s 法向量集合的比较，以及刚性判定结论
    """
    normals = normals_set(K_sym)
    pieces = []
    for piece in v.pieces():
        if max(piece.start, piece.end) <= 0:
            continue
        raw = np.array([-0.5 * piece.slope, 1.0])
        nu = raw / np.linalg.norm(raw)
        pieces.append({
            "interval": [piece.x0, piece.x1],
            "normal": nu.tolist(),
            "in_closure": is_in_closure(nu, normals, tol),
        })
    report = verdict(v, K_sym, tol=tol)
    return {
        "body": K_sym.to_dict(),
        "body_normals": normals.to_dict(),
        "pieces": pieces,
        "verdict": report.verdict.value,
    }


def fig5_case():
    """晶体情形：菱形体与斜率 ±2 的帐篷剖面，F[v] 的法向量都是菱形的边法向量"""
    return diamond(), SbvProfile.tent(0.0, 1.0, 2.0)


def fig6_case():
    """光滑情形：椭圆的法向量集合是整个单位圆"""
    return Ellipse(2.0, 1.0), SbvProfile.tent(0.0, 1.0, 1.0)


# ---------------------------------------------------------------------------
# 随机语料
# ---------------------------------------------------------------------------

def random_polygon(rng: np.random.RandomState, max_vertices: int = 8) -> Polytope:
    """原点在内部的随机凸多边形"""
    n = rng.randint(3, max_vertices + 1)
    step = 2.0 * math.pi / n
    # 相邻角度差不超过 1.4·2π/n < π，原点落在内部
    angles = rng.uniform(0.0, step) + step * (np.arange(n) + rng.uniform(-0.2, 0.2, n))
    radii = rng.uniform(0.5, 1.5, n)
    return Polytope(np.column_stack([radii * np.cos(angles), radii * np.sin(angles)]))


def random_symmetral(rng: np.random.RandomState) -> Polytope:
    return steiner_symmetrize(random_polygon(rng)).body


def random_vdistributed(rng: np.random.RandomState, max_nodes: int = 6) -> VDistributedSet:
    """
    结点数不超过 max_nodes 的随机 (v, b)，允许跳跃和 v 为零的段，b 在 {v = 0} 上置零
    """
    m = rng.randint(2, max_nodes + 1)
    nodes = np.cumsum(rng.uniform(0.2, 1.0, m)) - 1.0
    vl, vr = rng.uniform(0.0, 2.0, m), rng.uniform(0.0, 2.0, m)
    bl, br = rng.uniform(-1.0, 1.0, m), rng.uniform(-1.0, 1.0, m)
    vl[0], vr[-1] = 0.0, 0.0
    bl[0], br[-1] = 0.0, 0.0
    for i in range(1, m - 1):
        if rng.rand() < 0.5:
            vr[i] = vl[i]
        if rng.rand() < 0.5:
            br[i] = bl[i]
    for k in range(m - 1):
        if rng.rand() < 0.15:
            vr[k], vl[k + 1] = 0.0, 0.0
    v = SbvProfile.from_limits(nodes, vl, vr, nonnegative=True)
    b = SbvProfile.from_limits(nodes, bl, br)
    return VDistributedSet.clipped(v, b)


@dataclass
class FuzzSummary:
    """随机语料检查的汇总"""
    cases: int = 0
    max_oracle_error: float = 0.0
    min_gap: float = math.inf
    soundness_mismatches: int = 0
    failures: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.max_oracle_error <= 1e-8 and self.min_gap >= -1e-9 and self.soundness_mismatches == 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "cases": self.cases,
            "max_oracle_error": self.max_oracle_error,
            "min_gap": self.min_gap if self.cases else 0.0,
            "soundness_mismatches": self.soundness_mismatches,
            "passed": self.passed,
            "failures": self.failures[:10],
        }


def run_fuzz(cases: int = 500, bodies: int = 10, seed: int = 0, tol: Optional[float] = None) -> FuzzSummary:
    """
    在 cases 个随机 (v, b) 和 bodies 个随机对称多边形上检查:
    公式与多边形逐边求和的相对误差、周长差非负、等号条件与周长差为零的等价
    """
    rng = np.random.RandomState(seed)
    symmetrals = [random_symmetral(rng) for _ in range(bodies)]
    sets = [random_vdistributed(rng) for _ in range(cases)]
    summary = FuzzSummary()
    for j, K in enumerate(symmetrals):
        for i, S in enumerate(sets):
            formula = perimeter_from_vb(S, K, tol=tol).total
            oracle = polygon_perimeter(vdistributed_polygon(S, tol), K)
            error = abs(formula - oracle) / (1.0 + abs(formula))
            report = check_equality_membership(S, K, tol)
            summary.cases += 1
            summary.max_oracle_error = max(summary.max_oracle_error, error)
            summary.min_gap = min(summary.min_gap, report.gap)
            if report.all_ok != (report.gap <= 1e-8):
                summary.soundness_mismatches += 1
                summary.failures.append({"set": i, "body": j, "gap": report.gap, **report.to_dict()})
    logger.info(f"随机语料检查完成: {summary.cases} 例, 最大相对误差 {summary.max_oracle_error:.3e}")
    return summary
