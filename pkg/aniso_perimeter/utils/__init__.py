"""
工具函数模块

包含配置、日志、终端表格和SVG输出
"""

from .helpers import get_tolerance, load_config
from .logger import setup_logger
