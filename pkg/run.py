#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
各向异性周长工具主运行文件
"""

import os
import sys

# 添加项目根目录到Python路径
project_root = os.path.dirname(os.path.abspath(__file__))
if project_root not in sys.path:
    sys.path.insert(0, project_root)

from aniso_perimeter.main import main


if __name__ == "__main__":
    main()
