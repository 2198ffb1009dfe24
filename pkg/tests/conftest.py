#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
测试公共夹具
"""

import os
import sys
import math

import pytest
import yaml

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
if ROOT not in sys.path:
    sys.path.insert(0, ROOT)

from aniso_perimeter.core.convex_body import Ellipse
from aniso_perimeter.core.repro import diamond, tilted_rectangle, unit_square

DATA_DIR = os.path.join(ROOT, "data")


@pytest.fixture(autouse=True)
def clean_tolerance_env(monkeypatch):
    monkeypatch.delenv("ANISO_TOL", raising=False)


@pytest.fixture
def square():
    return unit_square()


@pytest.fixture
def diamond_body():
    return diamond()


@pytest.fixture
def ellipse():
    return Ellipse(2.0, 1.0)


@pytest.fixture
def tilted():
    """按角度（度）构造倾斜矩形 W[v, b]"""
    return lambda deg: tilted_rectangle(math.radians(deg))


@pytest.fixture
def data_path():
    return lambda name: os.path.join(DATA_DIR, name)


@pytest.fixture
def cli_config(tmp_path):
    """日志写入临时目录且关闭控制台输出的配置文件"""
    config = {
        "numerics": {"tolerance": 1.0e-9, "symmetry_samples": 360, "partition_depth": 12},
        "rigidity": {"witness_grid": 41},
        "output": {"format": "json", "significant_digits": 12},
        "repro": {"fig2_betas_deg": [0, 30, 45, 60], "fuzz_cases": 20, "fuzz_bodies": 2, "fuzz_seed": 3},
        "logging": {
            "level": "DEBUG",
            "file": str(tmp_path / "logs" / "test.log"),
            "disable_console_logging": True,
        },
    }
    path = tmp_path / "config.yaml"
    path.write_text(yaml.safe_dump(config), encoding="utf-8")
    return str(path)
