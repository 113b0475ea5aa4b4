#!/usr/bin/env python3
"""
equimon: 有限 G-集合上等变变换幺半群的计数与穷举验证
主入口文件
"""

import sys
from pathlib import Path

# 添加项目根目录到Python路径
project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))

from equimon.cli.commands import main


if __name__ == "__main__":
    sys.exit(main())
