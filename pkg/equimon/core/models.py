"""
核心数据结构定义
"""

import json
from enum import Enum
from typing import Dict, List, Optional, Any
from dataclasses import dataclass, asdict, field


class EquimonError(Exception):
    """所有库内异常的基类"""
    pass


class InputError(EquimonError):
    """输入数据异常（命令行以退出码2报告）"""
    pass


class InstanceFormatError(InputError):
    """实例文件格式异常，消息以字段路径开头"""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


class CheckStatus(Enum):
    """验证项状态枚举"""
    PASSED = "pass"
    FAILED = "fail"
    SKIPPED = "skipped"


@dataclass
class CheckResult:
    """单个验证项的结果"""
    name: str
    status: CheckStatus
    expected: Optional[str] = None
    actual: Optional[str] = None
    detail: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        """转换为字典"""
        data = asdict(self)
        data['status'] = self.status.value
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'CheckResult':
        """从字典创建实例"""
        data = data.copy()
        if isinstance(data.get('status'), str):
            data['status'] = CheckStatus(data['status'])
        return cls(**data)


def _require(condition: bool, path: str, message: str):
    if not condition:
        raise InstanceFormatError(path, message)


def _check_int_list(value: Any, path: str) -> List[int]:
    _require(isinstance(value, list), path, "应为整数数组")
    for i, v in enumerate(value):
        _require(isinstance(v, int) and not isinstance(v, bool), f"{path}[{i}]", "应为整数")
    return list(value)


def _check_permutation(value: Any, path: str, degree: Optional[int] = None) -> List[int]:
    images = _check_int_list(value, path)
    if degree is not None:
        _require(len(images) == degree, path, f"degree mismatch: 长度 {len(images)} != {degree}")
    _require(sorted(images) == list(range(len(images))), path,
             f"not a permutation: {images}")
    return images


@dataclass
class InstanceFile:
    """实例文件：群由置换生成元给出，作用由生成元像或陪集空间给出"""
    degree: int
    generators: List[List[int]]
    generator_images: Optional[List[List[int]]] = None
    coset_spaces: Optional[List[List[List[int]]]] = None
    n_points: Optional[int] = None
    name: Optional[str] = None
    metadata: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        """转换为字典（键顺序固定）"""
        action: Dict[str, Any] = {}
        if self.coset_spaces is not None:
            action['coset_spaces'] = self.coset_spaces
        else:
            action['generator_images'] = self.generator_images
            if self.n_points is not None:
                action['n_points'] = self.n_points
        data: Dict[str, Any] = {}
        if self.name is not None:
            data['name'] = self.name
        data['group'] = {'degree': self.degree, 'generators': self.generators}
        data['action'] = action
        if self.metadata:
            data['metadata'] = self.metadata
        return data

    def to_json(self) -> str:
        """转换为JSON字符串"""
        return json.dumps(self.to_dict(), ensure_ascii=False, indent=2)

    @classmethod
    def from_dict(cls, data: Any) -> 'InstanceFile':
        """从字典创建实例，逐字段校验"""
        _require(isinstance(data, dict), "$", "顶层应为对象")

        group = data.get('group')
        _require(isinstance(group, dict), "group", "缺少或不是对象")
        degree = group.get('degree')
        _require(isinstance(degree, int) and not isinstance(degree, bool) and degree >= 1,
                 "group.degree", "应为正整数")
        raw_gens = group.get('generators', [])
        _require(isinstance(raw_gens, list), "group.generators", "应为数组")
        generators = [
            _check_permutation(gen, f"group.generators[{i}]", degree)
            for i, gen in enumerate(raw_gens)
        ]

        action = data.get('action')
        _require(isinstance(action, dict), "action", "缺少或不是对象")
        has_images = 'generator_images' in action
        has_cosets = 'coset_spaces' in action
        _require(has_images != has_cosets, "action",
                 "必须恰好给出 generator_images 或 coset_spaces 之一")

        generator_images = None
        coset_spaces = None
        n_points = action.get('n_points')
        if n_points is not None:
            _require(isinstance(n_points, int) and not isinstance(n_points, bool) and n_points >= 0,
                     "action.n_points", "应为非负整数")

        if has_images:
            raw_images = action['generator_images']
            _require(isinstance(raw_images, list), "action.generator_images", "应为数组")
            _require(len(raw_images) == len(generators), "action.generator_images",
                     f"需要 {len(generators)} 个生成元像，实际 {len(raw_images)} 个")
            if n_points is None and raw_images:
                _check_int_list(raw_images[0], "action.generator_images[0]")
            width = n_points if n_points is not None else (len(raw_images[0]) if raw_images else None)
            _require(width is not None, "action.n_points", "无生成元时必须给出点数")
            generator_images = [
                _check_permutation(img, f"action.generator_images[{i}]", width)
                for i, img in enumerate(raw_images)
            ]
            n_points = width
        else:
            raw_spaces = action['coset_spaces']
            _require(isinstance(raw_spaces, list), "action.coset_spaces", "应为数组")
            coset_spaces = []
            for i, words in enumerate(raw_spaces):
                path = f"action.coset_spaces[{i}]"
                _require(isinstance(words, list), path, "应为生成元词的数组")
                checked = []
                for j, word in enumerate(words):
                    letters = _check_int_list(word, f"{path}[{j}]")
                    for k, letter in enumerate(letters):
                        _require(0 <= letter < len(generators), f"{path}[{j}][{k}]",
                                 f"生成元下标越界: {letter}")
                    checked.append(letters)
                coset_spaces.append(checked)

        name = data.get('name')
        _require(name is None or isinstance(name, str), "name", "应为字符串")
        metadata = data.get('metadata', {})
        _require(isinstance(metadata, dict), "metadata", "应为对象")

        return cls(
            degree=degree,
            generators=generators,
            generator_images=generator_images,
            coset_spaces=coset_spaces,
            n_points=n_points if has_images else None,
            name=name,
            metadata=metadata,
        )

    @classmethod
    def from_json(cls, json_str: str) -> 'InstanceFile':
        """从JSON字符串创建实例"""
        try:
            data = json.loads(json_str)
        except json.JSONDecodeError as e:
            raise InstanceFormatError(f"line {e.lineno}", f"JSON解析失败: {e.msg}")
        return cls.from_dict(data)
