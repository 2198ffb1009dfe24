#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
辅助函数与日志配置测试
"""

import json
import logging

import numpy as np
import pytest

from aniso_perimeter.core.exceptions import InputFormatError
from aniso_perimeter.core.sbv1d import SbvProfile
from aniso_perimeter.utils.helpers import (
    DEFAULT_TOL,
    default_config_path,
    dump_json,
    get_tolerance,
    in_strip,
    load_config,
    normalize_intervals,
    overlap_length,
    parse_strip,
    read_json,
    require_field,
    round_sig,
    safe_get,
    strip_bounds,
    to_jsonable,
)
from aniso_perimeter.utils.logger import setup_logger


def test_tolerance_resolution(monkeypatch):
    assert get_tolerance() == DEFAULT_TOL
    monkeypatch.setenv("ANISO_TOL", "1e-6")
    assert get_tolerance() == 1e-6
    assert get_tolerance(1e-3) == 1e-3
    monkeypatch.setenv("ANISO_TOL", "abc")
    with pytest.raises(ValueError):
        get_tolerance()
    with pytest.raises(ValueError):
        get_tolerance(-1.0)


def test_strip_parsing():
    assert parse_strip("0,1;0.5,2") == ((0.0, 2.0),)
    assert parse_strip("3,4; 0,1") == ((0.0, 1.0), (3.0, 4.0))
    assert parse_strip(None) is None
    with pytest.raises(ValueError):
        parse_strip("0;1")
    with pytest.raises(ValueError):
        normalize_intervals([(2.0, 1.0)])


def test_strip_queries():
    strip = ((0.0, 1.0), (2.0, 3.0))
    assert in_strip(1.0, strip)
    assert not in_strip(1.5, strip)
    assert in_strip(1.5, None)
    assert overlap_length(0.5, 2.5, strip) == pytest.approx(1.0)
    assert overlap_length(0.5, 2.5, None) == pytest.approx(2.0)
    assert strip_bounds(strip) == (0.0, 3.0)
    assert strip_bounds(()) is None


def test_json_output_is_rounded_and_sorted():
    data = {"b": np.float64(1.0 / 3.0), "a": np.array([0.1 + 0.2, -0.0]), "c": SbvProfile.indicator(0.0, 1.0)}
    text = dump_json(data)
    parsed = json.loads(text)
    assert list(parsed) == ["a", "b", "c"]
    assert parsed["a"] == [0.3, 0.0]
    assert parsed["b"] == 0.333333333333
    assert parsed["c"]["nodes"] == [0.0, 1.0]
    assert round_sig(123456.789, 3) == 123000.0
    assert to_jsonable(np.bool_(True)) is True


def test_read_json_errors(tmp_path):
    with pytest.raises(FileNotFoundError):
        read_json(str(tmp_path / "missing.json"))
    bad = tmp_path / "bad.json"
    bad.write_text('{\n  "nodes": [0, 1,\n}', encoding="utf-8")
    with pytest.raises(InputFormatError) as info:
        read_json(str(bad))
    assert info.value.line is not None
    assert str(bad) in str(info.value)


def test_require_field():
    assert require_field({"a": 1}, "a") == 1
    with pytest.raises(InputFormatError) as info:
        require_field({"a": 1}, "b", path="x.json")
    assert info.value.field == "b"


def test_default_config():
    config = load_config(default_config_path())
    assert safe_get(config, ["numerics", "tolerance"]) == pytest.approx(1e-9)
    assert safe_get(config, ["rigidity", "witness_grid"]) == 41
    assert safe_get(config, ["missing", "key"], "fallback") == "fallback"
    with pytest.raises(FileNotFoundError):
        load_config("/nonexistent/config.yaml")


def test_setup_logger_writes_rotating_file(tmp_path):
    log_file = tmp_path / "logs" / "run.log"
    logger = setup_logger({"level": "DEBUG", "file": str(log_file), "disable_console_logging": True},
                          name="aniso_perimeter.test")
    logger.debug("调试信息")
    for handler in logger.handlers:
        handler.flush()
    assert log_file.exists()
    assert "调试信息" in log_file.read_text(encoding="utf-8")
    assert logger.propagate is False
    assert logger.level == logging.DEBUG
