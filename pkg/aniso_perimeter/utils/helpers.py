#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
辅助函数模块

包含配置加载、数值容差、区间并集和JSON读写等工具函数
"""

import os
import json
import math
import logging
from typing import Dict, List, Any, Optional, Sequence, Tuple

import yaml
import numpy as np
from dotenv import load_dotenv

from aniso_perimeter.core.exceptions import InputFormatError

# 默认数值容差，适用于单位尺度的数据
DEFAULT_TOL = 1e-9
# 结点合并容差与跳跃擦除阈值
NODE_MERGE_TOL = 1e-12

# 区间并集 [(a0, b0), (a1, b1), ...]，均为闭区间
Strip = Tuple[Tuple[float, float], ...]

logger = logging.getLogger(__name__)

# 读取项目根目录下的 .env（ANISO_TOL, DISABLE_CONSOLE_LOGGING）
load_dotenv()


def safe_get(data: Dict, keys: List[str], default: Any = None) -> Any:
    """
    安全地从嵌套字典中获取值

    Args:
        data: 嵌套字典
        keys: 键的路径列表
        default: 如果键不存在时返回的默认值

    Returns:
        获取到的值，或默认值
    """
    result = data
    for key in keys:
        if isinstance(result, dict) and key in result:
            result = result[key]
        else:
            return default
    return result


def load_config(config_path: str) -> Dict[str, Any]:
    """
    加载YAML配置文件

    Args:
        config_path: 配置文件路径

    Returns:
        配置字典

    Raises:
        FileNotFoundError: 配置文件不存在
    """
    if not os.path.exists(config_path):
        raise FileNotFoundError(f"配置文件不存在: {config_path}")

    with open(config_path, "r", encoding="utf-8") as f:
        config = yaml.safe_load(f)

    return config or {}


def default_config_path() -> str:
    """返回包内默认配置文件的路径"""
    return os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "config.yaml")


def get_tolerance(tol: Optional[float] = None) -> float:
    """
    解析数值容差

    优先级: 显式参数 > 环境变量 ANISO_TOL > DEFAULT_TOL

    Args:
        tol: 显式指定的容差

    Returns:
        正的容差值

    Raises:
        ValueError: 容差不是正数
    """
    if tol is None:
        raw = os.environ.get("ANISO_TOL")
        if raw is None or raw.strip() == "":
            return DEFAULT_TOL
        try:
            tol = float(raw)
        except ValueError:
            raise ValueError(f"环境变量 ANISO_TOL 不是数字: {raw!r}")
    if not math.isfinite(tol) or tol <= 0:
        raise ValueError(f"容差必须为正数: {tol}")
    return float(tol)


def round_sig(value: float, digits: int = 12) -> float:
    """按有效数字位数舍入浮点数，负零统一为零"""
    if value == 0 or not math.isfinite(value):
        return 0.0 if value == 0 else value
    rounded = float(f"{value:.{digits}g}")
    return 0.0 if rounded == 0 else rounded


def to_jsonable(obj: Any, digits: int = 12) -> Any:
    """
    把结果对象转换为可序列化的结构

    numpy数组转为列表，浮点数按有效数字舍入，带 to_dict 方法的对象递归展开
    """
    if hasattr(obj, "to_dict"):
        return to_jsonable(obj.to_dict(), digits)
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v, digits) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v, digits) for v in obj]
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist(), digits)
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return round_sig(float(obj), digits)
    return obj


def dump_json(obj: Any, digits: int = 12) -> str:
    """按固定格式输出JSON：键排序、缩进2、浮点数12位有效数字"""
    return json.dumps(to_jsonable(obj, digits), sort_keys=True, indent=2, ensure_ascii=False)


def read_json(path: str) -> Any:
    """
    读取JSON文件

    Args:
        path: 文件路径

    Returns:
        解析后的对象

    Raises:
        FileNotFoundError: 文件不存在
        InputFormatError: JSON格式错误，附带行号
    """
    if not os.path.exists(path):
        raise FileNotFoundError(f"输入文件不存在: {path}")
    with open(path, "r", encoding="utf-8") as f:
        text = f.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputFormatError(f"JSON解析失败: {e.msg}", path=path, line=e.lineno)


def require_field(data: Dict[str, Any], field: str, path: Optional[str] = None) -> Any:
    """从字典中取出必需字段，缺失时抛出 InputFormatError"""
    if not isinstance(data, dict):
        raise InputFormatError("顶层必须是JSON对象", path=path)
    if field not in data:
        raise InputFormatError("缺少必需字段", path=path, field=field)
    return data[field]


def normalize_intervals(intervals: Optional[Sequence[Sequence[float]]]) -> Optional[Strip]:
    """
    把闭区间列表整理为有序、互不重叠的并集

    Args:
        intervals: 区间列表，None 表示整条实轴

    Returns:
        合并后的区间元组，或 None
    """
    if intervals is None:
        return None
    cleaned = []
    for interval in intervals:
        if len(interval) != 2:
            raise ValueError(f"区间必须由两个端点组成: {interval}")
        lo, hi = float(interval[0]), float(interval[1])
        if not (math.isfinite(lo) and math.isfinite(hi)) or lo > hi:
            raise ValueError(f"无效区间: [{lo}, {hi}]")
        cleaned.append((lo, hi))
    cleaned.sort()
    merged: List[List[float]] = []
    for lo, hi in cleaned:
        if merged and lo <= merged[-1][1]:
            merged[-1][1] = max(merged[-1][1], hi)
        else:
            merged.append([lo, hi])
    return tuple((lo, hi) for lo, hi in merged)


def parse_strip(text: Optional[str]) -> Optional[Strip]:
    """
    解析命令行中的区间并集，例如 "0,1" 或 "0,1;2,3"

    Raises:
        ValueError: 格式错误
    """
    if text is None or text.strip() == "":
        return None
    intervals = []
    for chunk in text.split(";"):
        parts = [p.strip() for p in chunk.split(",")]
        if len(parts) != 2:
            raise ValueError(f"区间格式应为 a,b: {chunk!r}")
        intervals.append((float(parts[0]), float(parts[1])))
    return normalize_intervals(intervals)


def in_strip(x: float, strip: Optional[Strip]) -> bool:
    """判断点是否属于闭区间并集"""
    if strip is None:
        return True
    return any(lo <= x <= hi for lo, hi in strip)


def overlap_length(a: float, b: float, strip: Optional[Strip]) -> float:
    """计算区间 [a, b] 与区间并集的交集长度"""
    if b <= a:
        return 0.0
    if strip is None:
        return b - a
    total = 0.0
    for lo, hi in strip:
        total += max(0.0, min(b, hi) - max(a, lo))
    return total


def strip_bounds(strip: Optional[Strip]) -> Optional[Tuple[float, float]]:
    """区间并集的包络区间"""
    if not strip:
        return None
    return strip[0][0], strip[-1][1]
