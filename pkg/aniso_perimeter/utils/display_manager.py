#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
显示管理模块

用 rich 表格把计算报告输出到终端（--format text），JSON输出不经过这里
"""

import sys
import logging
from typing import Any, Dict, List, Optional, Sequence

from rich import box
from rich.console import Console
from rich.panel import Panel
from rich.table import Table


def _fmt(value: Any) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "是" if value else "否"
    if isinstance(value, float):
        return f"{value:.12g}"
    if isinstance(value, (list, tuple)):
        return ", ".join(_fmt(v) for v in value) if value else "无"
    return str(value)


class ReportPrinter:
    """报告打印类，负责把字典形式的报告渲染为表格"""

    def __init__(self, console: Optional[Console] = None, logger: Optional[logging.Logger] = None):
        """
        初始化报告打印器

        Args:
            console: rich 控制台，默认输出到标准输出
            logger: 日志记录器
        """
        self.logger = logger or logging.getLogger(__name__)
        self.console = console or Console(file=sys.stdout)

    def _table(self, title: str, show_header: bool = True) -> Table:
        return Table(
            title=title,
            box=box.ROUNDED,
            show_header=show_header,
            header_style="bold white",
            title_style="bold white",
        )

    def print_mapping(self, title: str, data: Dict[str, Any], skip: Sequence[str] = ()) -> None:
        """两列的键值表格，嵌套字典展开为 父键.子键"""
        table = self._table(title, show_header=False)
        table.add_column("项目", style="cyan")
        table.add_column("数值", style="yellow", justify="right")
        for key, value in sorted(data.items()):
            if key in skip:
                continue
            if isinstance(value, dict):
                for sub_key, sub_value in sorted(value.items()):
                    table.add_row(f"{key}.{sub_key}", _fmt(sub_value))
            else:
                table.add_row(key, _fmt(value))
        self.console.print(table)

    def print_rows(self, title: str, columns: Sequence[str], rows: List[Sequence[Any]]) -> None:
        table = self._table(title)
        for i, column in enumerate(columns):
            table.add_column(column, style="cyan" if i == 0 else "green", justify="center" if i == 0 else "right")
        for row in rows:
            table.add_row(*[_fmt(v) for v in row])
        self.console.print(table)
        self.logger.debug(f"表格 {title} 输出 {len(rows)} 行")

    def print_breakdown(self, data: Dict[str, Any], title: str = "周长分解") -> None:
        order = ["ac_part", "jump_v_minus", "jump_v_plus", "jump_b_only",
                 "boundary_zero_part", "cantor_part", "total"]
        rows = [[key, data[key]] for key in order if key in data]
        rows += [[key, value] for key, value in sorted(data.items()) if key not in order]
        self.print_rows(title, ["分量", "数值"], rows)

    def print_rigidity(self, report: Dict[str, Any]) -> None:
        """刚性报告：条件表格加上结论面板"""
        self.print_mapping("刚性判定条件", report, skip=("verdict", "witness"))
        verdict = report.get("verdict")
        style = "green" if verdict == "Equivalent" else "yellow"
        lines = [f"结论: {verdict}"]
        witness = report.get("witness")
        if witness is not None:
            lines.append(f"非刚性见证 b 结点: {_fmt(witness['b'].get('nodes', []))}")
        elif verdict != "Equivalent":
            lines.append("网格搜索未找到见证")
        self.console.print(Panel("\n".join(lines), border_style=style))
