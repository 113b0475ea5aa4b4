"""
命令行包初始化文件
"""
