#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
各向异性全变差模块

离散向量测度（有限个原子加区间上的分段常数密度）的全变差 |μ|(G)、
各向异性全变差 |μ|_K(G)，以及用作检验的划分上确界、对偶检验场、平行四边形不等式
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from aniso_perimeter.core.convex_body import ConvexBody, is_additive
from aniso_perimeter.core.exceptions import InputFormatError, InvalidMeasure
from aniso_perimeter.utils.helpers import NODE_MERGE_TOL, Strip, get_tolerance, in_strip, overlap_length

logger = logging.getLogger(__name__)

PARTITION_DEPTH = 12

Atom = Tuple[float, np.ndarray]
Density = Tuple[Tuple[float, float], np.ndarray]


def _vector(value: Any) -> np.ndarray:
    vec = np.asarray(value, dtype=float).reshape(-1)
    if vec.size < 1 or not np.all(np.isfinite(vec)):
        raise InvalidMeasure(f"向量无效: {value}")
    return vec


class DiscreteVectorMeasure:
    """
    R^n 值离散测度 μ = Σ_i w_i δ_{x_i} + Σ_j g_j·1_{I_j} dx

    原子位置互不相同，密度区间互不重叠（允许共享端点）
    """

    def __init__(self, atoms: Sequence[Tuple[float, Any]] = (),
                 densities: Sequence[Tuple[Tuple[float, float], Any]] = ()):
        self.atoms: Tuple[Atom, ...] = tuple(
            sorted(((float(x), _vector(w)) for x, w in atoms), key=lambda a: a[0])
        )
        self.densities: Tuple[Density, ...] = tuple(
            sorted((((float(a), float(b)), _vector(g)) for (a, b), g in densities), key=lambda d: d[0])
        )
        dims = {w.size for _, w in self.atoms} | {g.size for _, g in self.densities}
        if len(dims) > 1:
            raise InvalidMeasure(f"向量维数不一致: {sorted(dims)}")
        self.dimension = dims.pop() if dims else 2

        for (x0, _), (x1, _) in zip(self.atoms, self.atoms[1:]):
            if x1 - x0 <= NODE_MERGE_TOL:
                raise InvalidMeasure(f"原子位置重复: {x0}")
        for (a, b), _ in self.densities:
            if not b > a:
                raise InvalidMeasure(f"密度区间无效: [{a}, {b}]")
        for ((_, b0), _), ((a1, _), _) in zip(self.densities, self.densities[1:]):
            if a1 < b0 - NODE_MERGE_TOL:
                raise InvalidMeasure(f"密度区间重叠: {b0} > {a1}")

    @classmethod
    def zero(cls) -> "DiscreteVectorMeasure":
        return cls()

    @classmethod
    def from_dict(cls, data: Dict[str, Any], path: Optional[str] = None) -> "DiscreteVectorMeasure":
        """
        JSON格式: {"atoms": [{"at": x, "vector": [..]}], "densities": [{"interval": [a, b], "vector": [..]}]}
        """
        if not isinstance(data, dict):
            raise InputFormatError("测度必须是JSON对象", path=path)
        try:
            atoms = [(item["at"], item["vector"]) for item in data.get("atoms", [])]
            densities = [(tuple(item["interval"]), item["vector"]) for item in data.get("densities", [])]
        except (KeyError, TypeError) as e:
            raise InputFormatError(f"测度条目格式错误: {e}", path=path, field="atoms/densities")
        return cls(atoms, densities)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "atoms": [{"at": x, "vector": w.tolist()} for x, w in self.atoms],
            "densities": [{"interval": list(iv), "vector": g.tolist()} for iv, g in self.densities],
        }

    def breakpoints(self) -> List[float]:
        points = [x for x, _ in self.atoms]
        for (a, b), _ in self.densities:
            points.extend([a, b])
        return sorted(points)

    def _refined(self, cuts: Sequence[float]) -> List[Density]:
        """把密度区间在给定切点处拆开"""
        pieces: List[Density] = []
        for (a, b), g in self.densities:
            inner = sorted(c for c in cuts if a + NODE_MERGE_TOL < c < b - NODE_MERGE_TOL)
            ends = [a] + inner + [b]
            pieces.extend(((lo, hi), g) for lo, hi in zip(ends, ends[1:]))
        return pieces

    def _combine(self, other: "DiscreteVectorMeasure", sign: float) -> "DiscreteVectorMeasure":
        dim = max(self.dimension, other.dimension)
        atoms: Dict[float, np.ndarray] = {}
        for x, w in self.atoms:
            atoms[x] = w.copy()
        for x, w in other.atoms:
            key = next((y for y in atoms if abs(y - x) <= NODE_MERGE_TOL), x)
            atoms[key] = atoms.get(key, np.zeros(dim)) + sign * w

        cuts = sorted(set(self.breakpoints() + other.breakpoints()))
        merged: Dict[Tuple[float, float], np.ndarray] = {}
        for (iv, g) in self._refined(cuts):
            merged[iv] = merged.get(iv, np.zeros(dim)) + g
        for (iv, g) in other._refined(cuts):
            key = next((k for k in merged
                        if abs(k[0] - iv[0]) <= NODE_MERGE_TOL and abs(k[1] - iv[1]) <= NODE_MERGE_TOL), iv)
            merged[key] = merged.get(key, np.zeros(dim)) + sign * g
        return DiscreteVectorMeasure(atoms.items(), merged.items())

    def __add__(self, other: "DiscreteVectorMeasure") -> "DiscreteVectorMeasure":
        return self._combine(other, 1.0)

    def __sub__(self, other: "DiscreteVectorMeasure") -> "DiscreteVectorMeasure":
        return self._combine(other, -1.0)

    def __neg__(self) -> "DiscreteVectorMeasure":
        return self.scale(-1.0)

    def __mul__(self, factor: float) -> "DiscreteVectorMeasure":
        return self.scale(factor)

    __rmul__ = __mul__

    def scale(self, factor: float) -> "DiscreteVectorMeasure":
        return DiscreteVectorMeasure([(x, factor * w) for x, w in self.atoms],
                                     [(iv, factor * g) for iv, g in self.densities])

    def mass(self, lo: float, hi: float, include_hi: bool, strip: Optional[Strip] = None) -> np.ndarray:
        """μ([lo, hi) ∩ G)，include_hi 为真时右端点闭合"""
        total = np.zeros(self.dimension)
        for x, w in self.atoms:
            if lo <= x < hi or (include_hi and x == hi):
                if in_strip(x, strip):
                    total = total + w
        for (a, b), g in self.densities:
            a_clip, b_clip = max(a, lo), min(b, hi)
            if b_clip > a_clip:
                total = total + g * overlap_length(a_clip, b_clip, strip)
        return total

    def bounding_interval(self) -> Optional[Tuple[float, float]]:
        points = self.breakpoints()
        if not points:
            return None
        return points[0], points[-1]

    def __repr__(self) -> str:
        return f"DiscreteVectorMeasure(atoms={len(self.atoms)}, densities={len(self.densities)})"


def _weighted_sum(mu: DiscreteVectorMeasure, weight: Callable[[np.ndarray], float],
                  strip: Optional[Strip]) -> float:
    total = 0.0
    for x, w in mu.atoms:
        if in_strip(x, strip):
            total += weight(w)
    for (a, b), g in mu.densities:
        total += weight(g) * overlap_length(a, b, strip)
    return total


def total_variation(mu: DiscreteVectorMeasure, strip: Optional[Strip] = None) -> float:
    """|μ|(G) = Σ_{原子∈G} |w| + Σ ∫_{I∩G} |g|"""
    return _weighted_sum(mu, lambda w: float(np.linalg.norm(w)), strip)


def anisotropic_total_variation(mu: DiscreteVectorMeasure, K: ConvexBody,
                                strip: Optional[Strip] = None) -> float:
    """|μ|_K(G) = Σ_{原子∈G} φ_K(w) + Σ ∫_{I∩G} φ_K(g)"""
    return _weighted_sum(mu, K.support, strip)


@dataclass(frozen=True)
class PartitionLadder:
    """各层划分上 Σ φ_K(μ(G_h)) 的取值"""
    values: Tuple[float, ...]
    separated_at: Optional[int]

    @property
    def value(self) -> float:
        return max(self.values) if self.values else 0.0


def _open_cell(mu: DiscreteVectorMeasure, lo: float, hi: float, strip: Optional[Strip]) -> Tuple[np.ndarray, int]:
    """开区间 (lo, hi) 上的质量与其中的成分个数"""
    total = np.zeros(mu.dimension)
    count = 0
    for x, w in mu.atoms:
        if lo < x < hi:
            count += 1
            if in_strip(x, strip):
                total = total + w
    for (a, b), g in mu.densities:
        a_clip, b_clip = max(a, lo), min(b, hi)
        if b_clip > a_clip:
            count += 1
            total = total + g * overlap_length(a_clip, b_clip, strip)
    return total, count


def sup_partition_ladder(mu: DiscreteVectorMeasure, K: ConvexBody, strip: Optional[Strip] = None,
                         depth: int = PARTITION_DEPTH) -> PartitionLadder:
    """
    在包络区间的逐层加细划分上计算 Σ_h φ_K(μ(G_h ∩ G))

    第 0 层是整个闭区间；第 L 层的切点是 2^L 等分点并上原子位置和密度端点，
    每个切点单独成一个单元，其余单元是相邻切点间的开区间。
    各层划分逐层加细，取值单调不减；每个开区间至多含一段密度时划分已分离所有成分，
    结果与 |μ|_K(G) 相等，提前终止
    """
    bounds = mu.bounding_interval()
    if bounds is None:
        return PartitionLadder(values=(0.0,), separated_at=0)
    lo, hi = bounds
    if hi - lo <= NODE_MERGE_TOL:
        hi = lo + 1.0

    values = [K.support(mu.mass(lo, hi, True, strip))]
    if len(mu.atoms) + len(mu.densities) <= 1:
        return PartitionLadder(values=tuple(values), separated_at=0)

    atoms = dict(mu.atoms)
    breakpoints = mu.breakpoints()
    for level in range(1, depth + 1):
        cuts = np.unique(np.concatenate([np.linspace(lo, hi, 2 ** level + 1), breakpoints]))
        total = 0.0
        for c in cuts:
            if c in atoms and in_strip(c, strip):
                total += K.support(atoms[c])
        separated = True
        for a, b in zip(cuts, cuts[1:]):
            mass, count = _open_cell(mu, a, b, strip)
            total += K.support(mass)
            if count > 1:
                separated = False
        values.append(total)
        if separated:
            logger.debug(f"划分在第 {level} 层分离所有成分")
            return PartitionLadder(values=tuple(values), separated_at=level)
    return PartitionLadder(values=tuple(values), separated_at=None)


def sup_partition_oracle(mu: DiscreteVectorMeasure, K: ConvexBody, strip: Optional[Strip] = None,
                         depth: int = PARTITION_DEPTH) -> float:
    """划分上确界的下界阶梯中的最大值，分离所有成分时精确等于 |μ|_K(G)"""
    return sup_partition_ladder(mu, K, strip, depth).value


def pair_with_field(mu: DiscreteVectorMeasure, test_field: Callable[[float], Any],
                    strip: Optional[Strip] = None) -> float:
    """
    ∫ ψ·dμ，ψ 在每段密度区间上取区间中点的值（分段常数检验场）
    """
    total = 0.0
    for x, w in mu.atoms:
        if in_strip(x, strip):
            total += float(np.dot(np.asarray(test_field(x), dtype=float), w))
    for (a, b), g in mu.densities:
        psi = np.asarray(test_field(0.5 * (a + b)), dtype=float)
        total += float(np.dot(psi, g)) * overlap_length(a, b, strip)
    return total


@dataclass(frozen=True)
class DualTestResult:
    """对偶检验场在各原子和密度段上取的值（都满足 φ*_K(ψ) = 1）"""
    value: float
    atom_fields: Tuple[Tuple[float, Tuple[float, ...]], ...] = ()
    density_fields: Tuple[Tuple[Tuple[float, float], Tuple[float, ...]], ...] = ()


def dual_test_value(mu: DiscreteVectorMeasure, K: ConvexBody, strip: Optional[Strip] = None) -> DualTestResult:
    """
    在满足 φ*_K(ψ) <= 1 的分段常数检验场中取上确界

    每个原子/密度段上 ψ 取该向量的支撑点，此时 ψ·w = φ_K(w)，上确界等于 |μ|_K(G)
    """
    atom_fields = []
    density_fields = []
    total = 0.0
    for x, w in mu.atoms:
        if not in_strip(x, strip) or not np.any(w):
            continue
        z = K.support_point(w)
        atom_fields.append((x, tuple(z.tolist())))
        total += float(z @ w)
    for iv, g in mu.densities:
        length = overlap_length(iv[0], iv[1], strip)
        if length <= 0 or not np.any(g):
            continue
        z = K.support_point(g)
        density_fields.append((iv, tuple(z.tolist())))
        total += float(z @ g) * length
    return DualTestResult(value=total, atom_fields=tuple(atom_fields), density_fields=tuple(density_fields))


@dataclass(frozen=True)
class ParallelogramReport:
    """
    平行四边形不等式 2|μ|_K(G) <= |μ+ν|_K(G) + |μ−ν|_K(G) 以及三角不等式两种形式
    """
    lhs: float
    rhs: float
    triangle_lhs: float
    triangle_rhs: float
    reverse_lhs: float
    reverse_rhs: float
    holds: bool = field(default=True)
    equality: bool = field(default=False)

    def to_dict(self) -> Dict[str, Any]:
        return dict(self.__dict__)


def parallelogram_defect(mu: DiscreteVectorMeasure, nu: DiscreteVectorMeasure, K: ConvexBody,
                         strip: Optional[Strip] = None, tol: Optional[float] = None) -> ParallelogramReport:
    """
    计算平行四边形不等式两侧

    三角不等式形式: |μ+ν|_K <= |μ|_K + |ν|_K；反向形式: |μ+ν|_K >= |μ|_K − |−ν|_K
    """
    tol = get_tolerance(tol)
    tv = lambda m: anisotropic_total_variation(m, K, strip)
    mu_k = tv(mu)
    nu_k = tv(nu)
    plus_k = tv(mu + nu)
    minus_k = tv(mu - nu)
    lhs, rhs = 2.0 * mu_k, plus_k + minus_k
    scale = tol * K.scale * (1.0 + total_variation(mu, strip) + total_variation(nu, strip))
    holds = lhs <= rhs + scale
    if not holds:
        logger.warning(f"平行四边形不等式被违反: {lhs} > {rhs}")
    return ParallelogramReport(
        lhs=lhs, rhs=rhs,
        triangle_lhs=plus_k, triangle_rhs=mu_k + nu_k,
        reverse_lhs=plus_k, reverse_rhs=mu_k - tv(-nu),
        holds=holds, equality=abs(rhs - lhs) <= scale,
    )


def equality_cone_check(h: Any, g: Any, K: ConvexBody, tol: Optional[float] = None) -> bool:
    """
    {h + t g: t ∈ [−1, 1]} 是否包含于某个 C*_K(z̄)

    由锥的凸性等价于端点 h ± g 的可加性；g = 0 时总为真
    """
    h = np.asarray(h, dtype=float)
    g = np.asarray(g, dtype=float)
    if not np.any(g):
        return True
    return is_additive(K, h + g, h - g, tol).additive


def pointwise_equality_check(mu: DiscreteVectorMeasure, nu: DiscreteVectorMeasure, K: ConvexBody,
                             strip: Optional[Strip] = None, tol: Optional[float] = None) -> bool:
    """
    在 μ、ν 的每个公共原子和密度段上检验锥条件（h 取 μ 的值，g 取 ν 的值）

    与平行四边形不等式取等号等价
    """
    dim = max(mu.dimension, nu.dimension)
    cuts = sorted(set(mu.breakpoints() + nu.breakpoints()))
    locations = sorted({x for x, _ in mu.atoms} | {x for x, _ in nu.atoms})
    for x in locations:
        if not in_strip(x, strip):
            continue
        h = next((w for y, w in mu.atoms if abs(y - x) <= NODE_MERGE_TOL), np.zeros(dim))
        g = next((w for y, w in nu.atoms if abs(y - x) <= NODE_MERGE_TOL), np.zeros(dim))
        if not equality_cone_check(h, g, K, tol):
            logger.debug(f"原子 {x} 处锥条件不成立: h={h.tolist()}, g={g.tolist()}")
            return False
    for lo, hi in zip(cuts, cuts[1:]):
        if hi - lo <= NODE_MERGE_TOL or overlap_length(lo, hi, strip) <= 0:
            continue
        mid = 0.5 * (lo + hi)
        h = next((gv for (a, b), gv in mu.densities if a <= mid <= b), np.zeros(dim))
        g = next((gv for (a, b), gv in nu.densities if a <= mid <= b), np.zeros(dim))
        if not equality_cone_check(h, g, K, tol):
            logger.debug(f"密度段 ({lo}, {hi}) 上锥条件不成立")
            return False
    return True
