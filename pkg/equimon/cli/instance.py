"""
实例文件的读取与构造
"""

import logging
from pathlib import Path
from typing import Tuple

from ..core.group import (
    DEFAULT_MAX_ORDER,
    GroupTable,
    Perm,
    group_from_generators,
    subgroup_generated,
)
from ..core.gset import GSet, gset_from_coset_spaces, gset_from_generator_action
from ..core.models import InstanceFile, InstanceFormatError

logger = logging.getLogger(__name__)


def load_instance(path: str) -> InstanceFile:
    try:
        text = Path(path).read_text(encoding='utf-8')
    except OSError as e:
        raise InstanceFormatError(str(path), f"无法读取实例文件: {e.strerror or e}")
    return InstanceFile.from_json(text)


def build_instance(instance: InstanceFile, max_order: int = DEFAULT_MAX_ORDER) -> Tuple[GroupTable, GSet]:
    """由实例文件构造群与 G-集合"""
    gens = [Perm(tuple(images)) for images in instance.generators]
    G = group_from_generators(gens, instance.degree, max_order)

    if instance.coset_spaces is not None:
        subgroups = [
            subgroup_generated(G, [G.evaluate_word(word) for word in words])
            for words in instance.coset_spaces
        ]
        X = gset_from_coset_spaces(G, subgroups)
    else:
        images = [Perm(tuple(img)) for img in instance.generator_images]
        X = gset_from_generator_action(G, images, instance.n_points)

    logger.info(f"实例加载完成: |G|={G.order}, |X|={X.n_points}")
    return G, X
