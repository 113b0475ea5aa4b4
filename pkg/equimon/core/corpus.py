"""
实例语料 - 常用小群、平凡/正则作用族与随机陪集空间实例
"""

import functools
import logging
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .counting import count_endomorphisms
from .group import (
    GroupTable,
    Perm,
    Subgroup,
    all_subgroups,
    group_from_generators,
    minimal_generators,
)
from .gset import GSet, box_decomposition, gset_from_coset_spaces
from .models import InstanceFile

logger = logging.getLogger(__name__)

GROUP_GENERATORS: Dict[str, Tuple[int, Tuple[Tuple[Tuple[int, ...], ...], ...]]] = {
    # 名称 -> (次数, 每个生成元的轮换)
    "Z1": (1, ()),
    "Z2": (2, (((0, 1),),)),
    "Z3": (3, (((0, 1, 2),),)),
    "Z4": (4, (((0, 1, 2, 3),),)),
    "Z2xZ2": (4, (((0, 1),), ((2, 3),))),
    "S3": (3, (((0, 1),), ((0, 1, 2),))),
    "D4": (4, (((0, 1, 2, 3),), ((1, 3),))),
    "Z6": (6, (((0, 1, 2, 3, 4, 5),),)),
}

CORPUS_GROUPS = ("Z2", "Z3", "Z4", "Z2xZ2", "S3", "D4", "Z6")


@functools.lru_cache(maxsize=None)
def named_group(name: str) -> GroupTable:
    """按名称构造群；同名总是返回同一个 GroupTable 对象"""
    try:
        degree, gens = GROUP_GENERATORS[name]
    except KeyError:
        raise KeyError(f"未知的群: {name}，可选 {sorted(GROUP_GENERATORS)}")
    return group_from_generators([Perm.from_cycles(degree, *cycles) for cycles in gens], degree)


def trivial_group() -> GroupTable:
    return named_group("Z1")


@dataclass(frozen=True, eq=False)
class CorpusInstance:
    """由陪集空间 ⊔ G/H_i 给出的实例"""
    name: str
    group_name: str
    subgroups: Tuple[Subgroup, ...]
    gset: GSet

    @property
    def group(self) -> GroupTable:
        return self.gset.group

    def to_instance_file(self) -> InstanceFile:
        """转换为实例文件：子群写成生成元词的列表"""
        G = self.group
        coset_spaces = [
            [list(G.words[h]) for h in minimal_generators(G, H)]
            for H in self.subgroups
        ]
        return InstanceFile(
            degree=G.degree,
            generators=[list(G.elements[s].images) for s in G.generator_indices],
            coset_spaces=coset_spaces,
            name=self.name,
            metadata={'group': self.group_name},
        )


def coset_instance(group_name: str, subgroups: Sequence[Subgroup],
                   name: Optional[str] = None) -> CorpusInstance:
    G = named_group(group_name)
    X = gset_from_coset_spaces(G, subgroups)
    return CorpusInstance(name or f"{group_name}-cosets", group_name, tuple(subgroups), X)


def trivial_gset(n: int) -> CorpusInstance:
    """平凡群作用在 n 个点上"""
    G = trivial_group()
    return coset_instance("Z1", [G.whole()] * n, name=f"trivial-{n}")


def regular_gset(group_name: str) -> CorpusInstance:
    """G 在自身上的左乘作用"""
    G = named_group(group_name)
    return coset_instance(group_name, [G.trivial()], name=f"regular-{group_name}")


def z2_six_point_set() -> CorpusInstance:
    """Z2 在 {0,…,5} 上的作用 (0 1)(2 3)：G/{e} ⊔ G/{e} ⊔ G/Z2 ⊔ G/Z2"""
    G = named_group("Z2")
    return coset_instance("Z2", [G.trivial(), G.trivial(), G.whole(), G.whole()], name="z2-six-points")


def random_coset_instance(group_name: str, rng: np.random.Generator, max_spaces: int = 4,
                          max_points: int = 16, max_end: int = 10**6,
                          attempts: int = 200) -> CorpusInstance:
    """随机取 1 到 max_spaces 个子群作陪集空间，拒绝点数或预测 |End| 过大的组合"""
    G = named_group(group_name)
    subgroups = all_subgroups(G)
    for _ in range(attempts):
        k = int(rng.integers(1, max_spaces + 1))
        picks = sorted(int(i) for i in rng.integers(len(subgroups), size=k))
        chosen = [subgroups[i] for i in picks]
        if sum(G.order // H.size for H in chosen) > max_points:
            continue
        X = gset_from_coset_spaces(G, chosen)
        if count_endomorphisms(box_decomposition(X)) > max_end:
            continue
        sizes = "-".join(str(H.size) for H in chosen)
        return CorpusInstance(f"{group_name}-random-{sizes}", group_name, tuple(chosen), X)
    logger.warning(f"{group_name}: {attempts} 次抽样均被拒绝，退回正则作用")
    return regular_gset(group_name)


def random_corpus(count: int = 40, seed: int = 0, groups: Sequence[str] = CORPUS_GROUPS,
                  **limits) -> List[CorpusInstance]:
    """按群轮流生成 count 个随机实例，结果只依赖 seed"""
    rng = np.random.default_rng(seed)
    instances = [
        random_coset_instance(groups[i % len(groups)], rng, **limits)
        for i in range(count)
    ]
    logger.info(f"随机语料生成完成: {len(instances)} 个实例 (seed={seed})")
    return instances


def closed_form_families(max_trivial: int = 6) -> List[CorpusInstance]:
    """平凡群作用 n = 1…max_trivial 与各语料群的正则作用"""
    families = [trivial_gset(n) for n in range(1, max_trivial + 1)]
    families.extend(regular_gset(name) for name in CORPUS_GROUPS)
    return families


FIXTURES: Dict[str, Callable[[], CorpusInstance]] = {
    "z2-six-points": z2_six_point_set,
    "trivial-3": lambda: trivial_gset(3),
    "regular-S3": lambda: regular_gset("S3"),
}
