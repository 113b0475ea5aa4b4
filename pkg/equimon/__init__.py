"""
equimon: 有限 G-集合上等变变换幺半群的计数与穷举验证
"""

__version__ = "0.1.0"
