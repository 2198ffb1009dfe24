#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
日志配置模块

配置应用程序的日志系统，支持文件和标准错误输出
支持日志轮转功能、文件大小限制和备份
标准输出保留给命令结果（JSON/表格），日志不会写入标准输出
"""

import logging
import os
import sys
from logging.handlers import RotatingFileHandler
from typing import Dict, Any

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


def setup_logger(config: Dict[str, Any], name: str = "aniso_perimeter") -> logging.Logger:
    """
    设置日志记录器，支持日志轮转

    Args:
        config: 日志配置字典，包含级别和文件路径
        name: 日志记录器名称

    Returns:
        配置好的日志记录器
    """
    # 获取日志级别
    log_level_str = str(config.get("level", "INFO")).upper()
    log_level = getattr(logging, log_level_str, logging.INFO)

    # 获取日志轮转配置
    max_bytes = config.get("max_file_size", 10 * 1024 * 1024)  # 默认10MB
    backup_count = config.get("backup_count", 5)  # 默认保留5个备份

    # 检查是否禁用控制台日志
    disable_console = (
        os.environ.get("DISABLE_CONSOLE_LOGGING", "0") == "1" or
        config.get("disable_console_logging", False)
    )

    logger = logging.getLogger(name)
    logger.setLevel(log_level)
    for handler in logger.handlers[:]:
        logger.removeHandler(handler)
        handler.close()

    formatter = logging.Formatter(LOG_FORMAT)

    # 文件为空时只输出到控制台
    log_file = config.get("file")
    if log_file:
        log_dir = os.path.dirname(log_file)
        if log_dir and not os.path.exists(log_dir):
            os.makedirs(log_dir)
        file_handler = RotatingFileHandler(
            log_file,
            maxBytes=max_bytes,
            backupCount=backup_count,
            encoding="utf-8"
        )
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)

    if not disable_console:
        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setFormatter(formatter)
        console_handler.setLevel(max(log_level, logging.WARNING))
        logger.addHandler(console_handler)

    if not logger.handlers:
        logger.addHandler(logging.NullHandler())

    # 阻止日志传递到根日志记录器
    logger.propagate = False

    logger.info(
        f"日志系统已初始化，级别: {log_level_str}, 文件: {log_file or '无'}, "
        f"轮转: {max_bytes/1024/1024:.1f}MB/{backup_count}个备份"
    )

    return logger
