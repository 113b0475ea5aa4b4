"""
配置管理器 - 系统配置的统一管理
"""

import copy
import json
import os
import threading
from pathlib import Path
from typing import Dict, Any, Optional
import logging

from dotenv import load_dotenv

logger = logging.getLogger(__name__)

# 环境变量 -> (配置键, 类型)
ENV_OVERRIDES = {
    "EQUIMON_MAX_GROUP_ORDER": ("groups.max_subgroup_order", int),
    "EQUIMON_LOG_LEVEL": ("logging.level", str),
}


class ConfigManager:
    """配置管理器 - 负责配置的读取、环境覆盖和验证"""

    def __init__(self, config_dir: Optional[str] = None, load_env: bool = True):
        if load_env:
            load_dotenv()
        self.config_dir = Path(config_dir or os.environ.get("EQUIMON_CONFIG", "config"))
        self.config_file = self.config_dir / "default.json"
        self.lock = threading.RLock()
        self._config: Dict[str, Any] = {}

        self._load_config()

    def _load_config(self):
        """加载配置文件，叠加环境配置和环境变量"""
        with self.lock:
            self._config = self._get_default_config()
            self._merge_file(self.config_file)

            env_name = os.environ.get("EQUIMON_ENV")
            if env_name:
                self._merge_file(self.config_dir / f"{env_name}.json")

            self._apply_env_overrides()

    def _merge_file(self, path: Path):
        """把配置文件的内容合并进当前配置"""
        if not path.exists():
            logger.debug(f"配置文件不存在，使用默认值: {path}")
            return
        try:
            with open(path, 'r', encoding='utf-8') as f:
                data = json.load(f)
            self._deep_merge(self._config, data)
            logger.debug(f"配置加载成功: {path}")
        except Exception as e:
            logger.error(f"配置加载失败 {path}: {e}")

    def _deep_merge(self, base: Dict[str, Any], updates: Dict[str, Any]):
        for key, value in updates.items():
            if isinstance(value, dict) and isinstance(base.get(key), dict):
                self._deep_merge(base[key], value)
            else:
                base[key] = value

    def _apply_env_overrides(self):
        for env_key, (config_key, cast) in ENV_OVERRIDES.items():
            raw = os.environ.get(env_key)
            if raw is None or raw == "":
                continue
            try:
                self.set(config_key, cast(raw))
                logger.debug(f"环境变量覆盖配置: {env_key} -> {config_key}")
            except ValueError:
                logger.warning(f"忽略无效的环境变量 {env_key}={raw!r}")

    def _get_default_config(self) -> Dict[str, Any]:
        """获取默认配置"""
        return {
            "version": "0.1.0",
            "groups": {
                "max_order": 1000,
                "max_subgroup_order": 64
            },
            "oracle": {
                "endomorphism_cap": 1000000,
                "closure_cap": 5000,
                "filter_all_max_points": 8,
                "samples": 32,
                "seed": 0
            },
            "reports": {
                "templates_dir": None,
                "indent": 2
            },
            "logging": {
                "level": "WARNING",
                "file": None
            }
        }

    def get(self, key: str, default: Any = None) -> Any:
        """获取配置值，支持点分隔的嵌套键"""
        with self.lock:
            keys = key.split('.')
            value = self._config

            for k in keys:
                if isinstance(value, dict) and k in value:
                    value = value[k]
                else:
                    return default

            return default if value is None else value

    def set(self, key: str, value: Any):
        """设置配置值，支持点分隔的嵌套键（只影响内存中的配置）"""
        with self.lock:
            keys = key.split('.')
            config = self._config

            for k in keys[:-1]:
                if not isinstance(config.get(k), dict):
                    config[k] = {}
                config = config[k]

            config[keys[-1]] = value

    def get_all(self) -> Dict[str, Any]:
        """获取所有配置"""
        with self.lock:
            return copy.deepcopy(self._config)

    def reload(self):
        """重新加载配置文件"""
        logger.info("重新加载配置...")
        self._load_config()

    def validate_config(self) -> bool:
        """验证配置的有效性"""
        positive_keys = [
            'groups.max_order',
            'groups.max_subgroup_order',
            'oracle.endomorphism_cap',
            'oracle.closure_cap',
            'oracle.samples',
        ]
        for key in positive_keys:
            value = self.get(key)
            if not isinstance(value, int) or isinstance(value, bool) or value < 1:
                logger.error(f"无效的配置项 {key}: {value!r}")
                return False

        level = self.get('logging.level', 'INFO')
        if not isinstance(level, str) or not isinstance(getattr(logging, level.upper(), None), int):
            logger.error(f"无效的日志级别: {level!r}")
            return False

        return True
