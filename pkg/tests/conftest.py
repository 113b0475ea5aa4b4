"""
共享测试夹具：常用小群、Z2 六点集合、平凡与正则作用，以及实例文件工厂
"""

import json

import pytest

from equimon.core.corpus import named_group, regular_gset, trivial_gset, z2_six_point_set
from equimon.core.gset import box_decomposition


@pytest.fixture
def z2():
    return named_group("Z2")


@pytest.fixture
def s3():
    return named_group("S3")


@pytest.fixture
def d4():
    return named_group("D4")


@pytest.fixture
def six_points():
    """Z2 作用 (0 1)(2 3)，4 与 5 为不动点"""
    return z2_six_point_set().gset


@pytest.fixture
def six_point_boxes(six_points):
    return box_decomposition(six_points)


@pytest.fixture
def trivial3():
    return trivial_gset(3).gset


@pytest.fixture
def regular_s3():
    return regular_gset("S3").gset


@pytest.fixture
def write_instance(tmp_path):
    """把字典写成实例文件并返回路径"""
    def _write(data, name="instance.json"):
        path = tmp_path / name
        path.write_text(json.dumps(data), encoding="utf-8")
        return str(path)
    return _write


@pytest.fixture
def six_point_instance():
    return {
        "name": "z2-six-points",
        "group": {"degree": 2, "generators": [[1, 0]]},
        "action": {"generator_images": [[1, 0, 3, 2, 4, 5]]},
    }
