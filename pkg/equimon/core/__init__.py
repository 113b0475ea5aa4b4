"""
核心包初始化文件
"""
