#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
SVG输出模块

把凸体、多边形集合和法向量画成静态SVG，用于几何调试
"""

import logging
import math
from typing import List, Optional, Sequence, Tuple

import drawsvg as draw
import numpy as np

from aniso_perimeter.core.convex_body import ConvexBody, Ellipse, Polytope

ELLIPSE_SAMPLES = 128
ARROW_HEAD = 6.0


class SvgCanvas:
    """
    以世界坐标收集图元，渲染时统一缩放并翻转 y 轴（y 轴向上）
    """

    def __init__(self, width: float = 480.0, margin: float = 24.0,
                 logger: Optional[logging.Logger] = None):
        self.width = width
        self.margin = margin
        self.logger = logger or logging.getLogger(__name__)
        self._loops: List[Tuple[np.ndarray, str, str]] = []
        self._arrows: List[Tuple[np.ndarray, np.ndarray, str]] = []
        self._labels: List[Tuple[str, float, float, str]] = []

    def add_loop(self, points: Sequence[Sequence[float]], stroke: str = "#1f77b4",
                 fill: str = "none") -> None:
        self._loops.append((np.asarray(points, dtype=float), stroke, fill))

    def add_polygon_set(self, E, stroke: str = "#1f77b4", fill: str = "#1f77b433") -> None:
        for loop in E.loops:
            self.add_loop(loop, stroke, fill)

    def add_body(self, K: ConvexBody, stroke: str = "#d62728", fill: str = "none") -> None:
        if isinstance(K, Ellipse):
            a, b = K.semi_axes
            t = np.linspace(0.0, 2.0 * math.pi, ELLIPSE_SAMPLES, endpoint=False)
            self.add_loop(np.column_stack([a * np.cos(t), b * np.sin(t)]), stroke, fill)
        else:
            self.add_loop(K.vertices, stroke, fill)

    def add_normals(self, K: Polytope, length: float = 0.3, stroke: str = "#2ca02c") -> None:
        """在多边形每条边的中点画外法向量"""
        vertices = K.vertices
        for p, q, n in zip(vertices, np.roll(vertices, -1, axis=0), K.facet_normals):
            mid = 0.5 * (p + q)
            self.add_arrow(mid, mid + length * n, stroke)

    def add_arrow(self, start: Sequence[float], end: Sequence[float], stroke: str = "#2ca02c") -> None:
        self._arrows.append((np.asarray(start, dtype=float), np.asarray(end, dtype=float), stroke))

    def add_label(self, text: str, x: float, y: float, color: str = "#333333") -> None:
        self._labels.append((text, x, y, color))

    def _bounds(self) -> Tuple[float, float, float, float]:
        pts = [loop for loop, _, _ in self._loops]
        pts += [np.vstack([s, e]) for s, e, _ in self._arrows]
        pts += [np.array([[x, y]]) for _, x, y, _ in self._labels]
        if not pts:
            return -1.0, -1.0, 1.0, 1.0
        allpts = np.vstack(pts)
        lo, hi = allpts.min(axis=0), allpts.max(axis=0)
        span = np.maximum(hi - lo, 1e-9)
        return lo[0], lo[1], lo[0] + span[0], lo[1] + span[1]

    def render(self) -> draw.Drawing:
        x0, y0, x1, y1 = self._bounds()
        scale = (self.width - 2 * self.margin) / max(x1 - x0, y1 - y0)
        height = (y1 - y0) * scale + 2 * self.margin

        def to_px(x: float, y: float) -> Tuple[float, float]:
            return self.margin + (x - x0) * scale, height - self.margin - (y - y0) * scale

        d = draw.Drawing(self.width, height)
        d.append(draw.Rectangle(0, 0, self.width, height, fill="white"))
        for loop, stroke, fill in self._loops:
            coords = [c for x, y in loop for c in to_px(x, y)]
            d.append(draw.Lines(*coords, close=True, stroke=stroke, fill=fill, stroke_width=1.5))
        for start, end, stroke in self._arrows:
            sx, sy = to_px(*start)
            ex, ey = to_px(*end)
            d.append(draw.Line(sx, sy, ex, ey, stroke=stroke, stroke_width=1.2))
            angle = math.atan2(ey - sy, ex - sx)
            d.append(draw.Lines(
                ex, ey,
                ex - ARROW_HEAD * math.cos(angle - math.pi / 6), ey - ARROW_HEAD * math.sin(angle - math.pi / 6),
                ex - ARROW_HEAD * math.cos(angle + math.pi / 6), ey - ARROW_HEAD * math.sin(angle + math.pi / 6),
                close=True, fill=stroke, stroke="none",
            ))
        for text, x, y, color in self._labels:
            px, py = to_px(x, y)
            d.append(draw.Text(text, 11, px, py, fill=color, font_family="monospace"))
        return d

    def as_svg(self) -> str:
        return self.render().as_svg()

    def save(self, path: str) -> None:
        self.render().save_svg(path)
        self.logger.info(f"SVG已保存: {path}")
