"""
有限 G-集合 - 作用表的构造与校验、轨道、稳定子与盒分解

作用为左作用：act[g, x] 表示 g·x，满足 act[gh] = act[g]∘act[h]。
因此 G_{g·x} = g G_x g⁻¹ = conjugate_subgroup(G_x, g⁻¹)。
"""

import logging
from collections import Counter, deque
from dataclasses import dataclass
from enum import Enum
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from .models import InputError
from .group import (
    DEFAULT_SUBGROUP_ORDER_CAP,
    GroupTable,
    Perm,
    PermutationError,
    Subgroup,
    SubgroupClass,
    class_leq,
    compose,
    normalizer,
    subgroup_generated,
    subgroup_lattice,
)

logger = logging.getLogger(__name__)


class ActionError(InputError):
    """群作用数据异常"""
    pass


class InconsistentActionError(ActionError):
    """生成元的像不能延拓为同态"""
    pass


@dataclass(frozen=True, eq=False)
class GSet:
    """有限 G-集合：点为 0…n_points−1，act 形状为 (|G|, n_points)"""
    group: GroupTable
    n_points: int
    act: np.ndarray

    def __post_init__(self):
        act = np.array(self.act, dtype=np.int64).reshape(self.group.order, self.n_points)
        act.setflags(write=False)
        object.__setattr__(self, 'act', act)
        self._validate()

    def _validate(self):
        """穷举检查作用公理"""
        n = self.n_points
        points = np.arange(n)
        if not np.array_equal(self.act[0], points):
            raise ActionError("作用公理不成立: e·x ≠ x")
        if n and not np.all(np.sort(self.act, axis=1) == points):
            raise ActionError("作用公理不成立: 某个 act[g] 不是双射")
        for g in range(self.group.order):
            # act[gh][x] == act[g][act[h][x]]，对所有 h, x
            if not np.array_equal(self.act[self.group.mul[g]], self.act[g][self.act]):
                raise ActionError(f"作用公理不成立: 元素 {g} 处 g·(h·x) ≠ (gh)·x")

    def image(self, g: int, x: int) -> int:
        return int(self.act[g, x])


@dataclass(frozen=True)
class Orbit:
    """轨道，代表元为最小下标的点"""
    representative: int
    points: Tuple[int, ...]

    def __contains__(self, x: int) -> bool:
        return x in self.points

    def __len__(self) -> int:
        return len(self.points)


def gset_from_generator_action(G: GroupTable, gen_images: Sequence[Perm],
                               n_points: Optional[int] = None) -> GSet:
    """把生成元的像沿 Cayley 图BFS延拓到全部元素，并检查良定性"""
    if len(gen_images) != len(G.generator_indices):
        raise ActionError(
            f"需要 {len(G.generator_indices)} 个生成元像，实际 {len(gen_images)} 个"
        )
    if n_points is None:
        if not gen_images:
            raise ActionError("无生成元时必须给出点数")
        n_points = gen_images[0].degree
    for k, img in enumerate(gen_images):
        if img.degree != n_points:
            raise PermutationError(f"degree mismatch: 生成元像 {k} 的次数 {img.degree} != {n_points}")

    perms: Dict[int, Perm] = {0: Perm.identity(n_points)}
    queue = deque([0])
    while queue:
        e = queue.popleft()
        for k, s in enumerate(G.generator_indices):
            target = int(G.mul[s, e])
            induced = compose(gen_images[k], perms[e])
            known = perms.get(target)
            if known is None:
                perms[target] = induced
                queue.append(target)
            elif known != induced:
                raise InconsistentActionError(
                    f"inconsistent action: 元素 {target} 的两个词诱导出不同的置换 "
                    f"{known} 与 {induced}"
                )

    act = np.array([perms[g].images for g in range(G.order)], dtype=np.int64)
    logger.debug(f"由生成元像构造G-集合: {n_points} 个点")
    return GSet(G, n_points, act.reshape(G.order, n_points))


def gset_from_coset_spaces(G: GroupTable, subgroups: Sequence[Subgroup]) -> GSet:
    """左陪集空间的不交并 ⊔ G/H_i，作用 g·(aH) = (ga)H"""
    columns: List[np.ndarray] = []
    offset = 0
    for i, H in enumerate(subgroups):
        if subgroup_generated(G, H.indices()) != H:
            raise ActionError(f"第 {i} 个陪集空间的参数不是子群")
        coset_of = np.full(G.order, -1, dtype=np.int64)
        count = 0
        members = np.array(H.indices(), dtype=np.int64)
        for a in range(G.order):
            if coset_of[a] >= 0:
                continue
            coset_of[G.mul[a, members]] = count
            count += 1
        reps = [int(np.flatnonzero(coset_of == c)[0]) for c in range(count)]
        # 列 c：所有 g 作用在陪集 c 上的结果
        block = np.empty((G.order, count), dtype=np.int64)
        for c, a in enumerate(reps):
            block[:, c] = coset_of[G.mul[:, a]] + offset
        columns.append(block)
        offset += count

    if columns:
        act = np.concatenate(columns, axis=1)
    else:
        act = np.empty((G.order, 0), dtype=np.int64)
    logger.debug(f"由 {len(subgroups)} 个陪集空间构造G-集合: {offset} 个点")
    return GSet(G, offset, act)


def orbit_of(X: GSet, x: int) -> Tuple[int, ...]:
    return tuple(int(p) for p in np.unique(X.act[:, x]))


def orbits(X: GSet) -> List[Orbit]:
    """轨道划分，按代表元排序"""
    seen = np.zeros(X.n_points, dtype=bool)
    result = []
    for x in range(X.n_points):
        if seen[x]:
            continue
        points = orbit_of(X, x)
        seen[list(points)] = True
        result.append(Orbit(x, points))
    return result


def stabilizer(X: GSet, x: int) -> Subgroup:
    return Subgroup.from_indices(np.flatnonzero(X.act[:, x] == x).tolist())


def points_with_stabilizer(X: GSet, H: Subgroup) -> Tuple[int, ...]:
    """B_H：稳定子恰为 H 的点"""
    return tuple(x for x in range(X.n_points) if stabilizer(X, x) == H)


@dataclass(frozen=True, eq=False)
class BoxDecomposition:
    """盒分解：Conj_G(X) 中的类、每类的轨道数 α 与类之间的偏序"""
    gset: GSet
    classes: Tuple[SubgroupClass, ...]
    orbits: Tuple[Orbit, ...]
    orbit_class: Dict[int, int]
    alpha: Dict[int, int]
    stab: Tuple[Subgroup, ...]
    poset: FrozenSet[Tuple[int, int]]
    indices: Dict[int, int]
    max_order: int = DEFAULT_SUBGROUP_ORDER_CAP

    @property
    def group(self) -> GroupTable:
        return self.gset.group

    @property
    def class_ids(self) -> Tuple[int, ...]:
        return tuple(c.class_id for c in self.classes)

    def subgroup_class(self, class_id: int) -> SubgroupClass:
        for c in self.classes:
            if c.class_id == class_id:
                return c
        raise KeyError(f"类 {class_id} 不在 Conj_G(X) 中")

    def representative(self, class_id: int) -> Subgroup:
        return self.subgroup_class(class_id).representative

    def leq(self, a: int, b: int) -> bool:
        return (a, b) in self.poset

    def orbits_in(self, class_id: int) -> List[Orbit]:
        return [o for o in self.orbits if self.orbit_class[o.representative] == class_id]

    def covering_relations(self) -> List[Tuple[int, int]]:
        """偏序的覆盖关系（Hasse 图的边），按类编号排序"""
        graph = nx.DiGraph()
        graph.add_nodes_from(self.class_ids)
        graph.add_edges_from((a, b) for a, b in self.poset if a != b)
        reduced = nx.transitive_reduction(graph)
        return sorted(reduced.edges())


def box_decomposition(X: GSet, max_order: int = DEFAULT_SUBGROUP_ORDER_CAP) -> BoxDecomposition:
    """计算稳定子类、每类的轨道数与 Conj_G(X) 上的偏序"""
    G = X.group
    lattice = subgroup_lattice(G, max_order)
    stab = tuple(stabilizer(X, x) for x in range(X.n_points))
    orbit_list = tuple(orbits(X))

    orbit_class = {
        o.representative: lattice.class_of(stab[o.representative]).class_id
        for o in orbit_list
    }
    alpha = dict(sorted(Counter(orbit_class.values()).items()))
    classes = tuple(lattice.classes[cid] for cid in alpha)
    poset = frozenset(
        (a.class_id, b.class_id)
        for a in classes for b in classes
        if class_leq(G, a, b)
    )
    indices = {
        c.class_id: normalizer(G, c.representative).size // c.representative.size
        for c in classes
    }
    logger.debug(f"盒分解完成: {len(orbit_list)} 个轨道, {len(classes)} 个稳定子类")
    return BoxDecomposition(
        gset=X,
        classes=classes,
        orbits=orbit_list,
        orbit_class=orbit_class,
        alpha=alpha,
        stab=stab,
        poset=poset,
        indices=indices,
        max_order=max_order,
    )


class MapExistence(Enum):
    """x 到 y 的等变映射的存在性"""
    NONE = "none"
    HOM = "hom"
    ISO = "iso"


def map_exists(X: GSet, x: int, y: int) -> MapExistence:
    Gx = stabilizer(X, x)
    Gy = stabilizer(X, y)
    if Gx == Gy:
        return MapExistence.ISO
    if Gx.issubset(Gy):
        return MapExistence.HOM
    return MapExistence.NONE
