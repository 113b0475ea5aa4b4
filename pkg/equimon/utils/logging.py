"""
日志配置

标准输出只承载报告（JSON / 文本 / DOT），日志一律写标准错误，可另加滚动文件。
"""

import logging
import logging.handlers
import sys
from pathlib import Path
from typing import Optional

DEFAULT_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
LOG_FILE_MAX_BYTES = 10 * 1024 * 1024
LOG_FILE_BACKUPS = 5


def resolve_level(level: Optional[str]) -> int:
    """级别名转为 logging 常量；未知或缺省时取 WARNING"""
    if not level:
        return logging.WARNING
    value = logging.getLevelName(level.upper())
    return value if isinstance(value, int) else logging.WARNING


def setup_logger(name: str, log_file: Optional[str] = None, level: Optional[str] = 'WARNING',
                 fmt: str = DEFAULT_FORMAT) -> logging.Logger:
    """配置 equimon 记录器，重复调用会替换已有处理器"""
    numeric_level = resolve_level(level)
    logger = logging.getLogger(name)
    logger.setLevel(numeric_level)
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
        handler.close()

    formatter = logging.Formatter(fmt)
    handlers = [logging.StreamHandler(sys.stderr)]
    if log_file:
        Path(log_file).parent.mkdir(parents=True, exist_ok=True)
        handlers.append(logging.handlers.RotatingFileHandler(
            log_file,
            maxBytes=LOG_FILE_MAX_BYTES,
            backupCount=LOG_FILE_BACKUPS,
            encoding='utf-8',
        ))

    for handler in handlers:
        handler.setLevel(numeric_level)
        handler.setFormatter(formatter)
        logger.addHandler(handler)

    logger.debug(f"日志已配置: 级别 {logging.getLevelName(numeric_level)}, 文件 {log_file or '无'}")
    return logger
