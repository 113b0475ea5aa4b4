"""
穷举预言机 - 直接按定义枚举等变映射、自同构与固定初等坍缩

与计数公式完全独立：只用到作用表、稳定子和"G_x ≤ G_y 时才可映射"这一事实。
"""

import itertools
import logging
import math
from collections import deque
from dataclasses import dataclass
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

import numpy as np

from .models import EquimonError
from .group import Subgroup, n_conjugacy_class, normalizer
from .gset import BoxDecomposition, GSet, box_decomposition, orbit_of, orbits, stabilizer

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]


class OracleError(EquimonError):
    """预言机异常"""
    pass


class OracleCapExceeded(OracleError):
    """枚举规模超过上限"""
    pass


class CollapsingError(OracleError):
    """坍缩映射构造异常"""
    pass


class StabilizerConditionError(CollapsingError):
    pass


class StabilizerMismatchError(CollapsingError):
    pass


@dataclass(frozen=True)
class EquivariantMap:
    """X → X 的映射，以像数组表示"""
    images: Tuple[int, ...]

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __len__(self) -> int:
        return len(self.images)

    def compose(self, other: 'EquivariantMap') -> 'EquivariantMap':
        """self∘other：先作用 other"""
        return EquivariantMap(tuple(self.images[i] for i in other.images))

    def is_bijective(self) -> bool:
        return len(set(self.images)) == len(self.images)

    def fixed_points(self) -> FrozenSet[int]:
        return frozenset(i for i, v in enumerate(self.images) if i == v)


@dataclass(frozen=True)
class CollapsingType:
    """初等坍缩的类型 (H, [K]_{N_H})，H 取其共轭类的代表元"""
    h_class: int
    h_rep: Subgroup
    k_nclass: FrozenSet[Subgroup]

    def to_dict(self) -> Dict[str, Any]:
        return {
            'h_class': self.h_class,
            'h_order': self.h_rep.size,
            'k_nclass': sorted(K.members for K in self.k_nclass),
        }


@dataclass
class EndomorphismEnumeration:
    """End_G(X) 的枚举结果；count-only 模式下 maps 为 None"""
    count: int
    maps: Optional[List[EquivariantMap]] = None
    mode: str = "materialized"


def identity_map(X: GSet) -> EquivariantMap:
    return EquivariantMap(tuple(range(X.n_points)))


def is_equivariant(X: GSet, f: EquivariantMap, full: bool = False) -> bool:
    """检查 f(g·x) = g·f(x)；默认只检查生成元"""
    if len(f) != X.n_points:
        return False
    if X.n_points == 0:
        return True
    images = np.array(f.images, dtype=np.int64)
    elements = range(X.group.order) if full else X.group.generator_indices
    return all(
        np.array_equal(images[X.act[g]], X.act[g][images])
        for g in elements
    )


def collapsing_map(X: GSet, x: int, y: int) -> EquivariantMap:
    """[x↦y]：g·x 映到 g·y，其余点不动；y 与 x 同轨道时为双射 (x↦y)"""
    if not stabilizer(X, x).issubset(stabilizer(X, y)):
        raise StabilizerConditionError(f"stabilizer condition violated: G_{x} ⊄ G_{y}")
    images = np.arange(X.n_points)
    images[X.act[:, x]] = X.act[:, y]
    return EquivariantMap(tuple(images.tolist()))


def swap_map(X: GSet, x: int, y: int) -> EquivariantMap:
    """(x↔y)：交换 x 与 y 的轨道，其余点不动"""
    if stabilizer(X, x) != stabilizer(X, y):
        raise StabilizerMismatchError(f"stabilizer mismatch: G_{x} ≠ G_{y}")
    forward = np.arange(X.n_points)
    forward[X.act[:, x]] = X.act[:, y]
    backward = np.arange(X.n_points)
    backward[X.act[:, y]] = X.act[:, x]
    if y in orbit_of(X, x):
        if not np.array_equal(forward, backward):
            raise CollapsingError(f"同一轨道内的交换 ({x}↔{y}) 不良定")
        return EquivariantMap(tuple(forward.tolist()))
    images = forward
    images[X.act[:, y]] = X.act[:, x]
    return EquivariantMap(tuple(images.tolist()))


def _orbit_targets(X: GSet) -> List[Tuple[int, List[int]]]:
    """每个轨道代表点 r 的候选像：满足 G_r ≤ G_y 的全部 y"""
    stab = [stabilizer(X, y) for y in range(X.n_points)]
    return [
        (o.representative, [y for y in range(X.n_points) if stab[o.representative].issubset(stab[y])])
        for o in orbits(X)
    ]


def _assemble(X: GSet, choices: List[Tuple[int, List[int]]], picks: Iterable[int]) -> EquivariantMap:
    images = np.empty(X.n_points, dtype=np.int64)
    for (r, targets), k in zip(choices, picks):
        images[X.act[:, r]] = X.act[:, targets[k]]
    return EquivariantMap(tuple(images.tolist()))


def enumerate_endomorphisms(X: GSet, cap: Optional[int] = None, materialize: bool = True,
                            samples: int = 32, seed: int = 0) -> EndomorphismEnumeration:
    """逐轨道搜索目标点；每组选择按等变性唯一延拓

    materialize=False 时只返回精确计数，并随机抽样检查延拓出的映射。
    """
    choices = _orbit_targets(X)
    count = math.prod(len(targets) for _, targets in choices)

    if materialize:
        if cap is not None and count > cap:
            raise OracleCapExceeded(f"cap exceeded: |End| = {count} > {cap}")
        ranges = [range(len(targets)) for _, targets in choices]
        maps = [_assemble(X, choices, picks) for picks in itertools.product(*ranges)]
        if logger.isEnabledFor(logging.DEBUG):
            for f in maps:
                if not is_equivariant(X, f, full=True):
                    raise OracleError(f"延拓得到的映射不等变: {f.images}")
        logger.debug(f"枚举自同态: {len(maps)} 个")
        return EndomorphismEnumeration(count, maps, "materialized")

    rng = np.random.default_rng(seed)
    for _ in range(samples):
        picks = [int(rng.integers(len(targets))) for _, targets in choices]
        f = _assemble(X, choices, picks)
        if not is_equivariant(X, f, full=True):
            raise OracleError(f"抽样得到的映射不等变: {f.images}")
    logger.debug(f"自同态计数（不物化）: {count}")
    return EndomorphismEnumeration(count, None, "count-only")


def enumerate_all_functions(X: GSet, max_points: int = 8) -> List[EquivariantMap]:
    """在全部 n^n 个函数中筛选等变映射（逐点赋值并剪枝）"""
    n = X.n_points
    if n > max_points:
        raise OracleCapExceeded(f"cap exceeded: {n} 个点超过全函数筛选上限 {max_points}")
    gens = [X.act[s].tolist() for s in X.group.generator_indices]
    # back[p]：满足 s·z = p 且 z < p 的 (s, z)
    back: List[List[Tuple[List[int], int]]] = [[] for _ in range(n)]
    for gs in gens:
        for z in range(n):
            if z < gs[z]:
                back[gs[z]].append((gs, z))

    f = [-1] * n
    results: List[EquivariantMap] = []

    def assign(p: int):
        if p == n:
            results.append(EquivariantMap(tuple(f)))
            return
        for v in range(n):
            f[p] = v
            if all(f[gs[p]] == gs[v] for gs in gens if gs[p] <= p) and \
                    all(v == gs[f[z]] for gs, z in back[p]):
                assign(p + 1)
        f[p] = -1

    assign(0)
    return results


def enumerate_automorphisms(X: GSet) -> List[EquivariantMap]:
    """回溯：每个轨道代表点映到稳定子相同的点，且目标轨道两两不同"""
    orbit_list = orbits(X)
    orbit_index = {}
    for i, o in enumerate(orbit_list):
        for p in o.points:
            orbit_index[p] = i
    stab = [stabilizer(X, y) for y in range(X.n_points)]
    candidates = [
        [y for y in range(X.n_points) if stab[y] == stab[o.representative]]
        for o in orbit_list
    ]

    results: List[EquivariantMap] = []
    images = np.arange(X.n_points)
    used: Set[int] = set()

    def place(i: int):
        if i == len(orbit_list):
            results.append(EquivariantMap(tuple(images.tolist())))
            return
        r = orbit_list[i].representative
        for y in candidates[i]:
            if orbit_index[y] in used:
                continue
            used.add(orbit_index[y])
            images[X.act[:, r]] = X.act[:, y]
            place(i + 1)
            used.discard(orbit_index[y])

    place(0)
    logger.debug(f"枚举自同构: {len(results)} 个")
    return results


def is_group(maps: Iterable[EquivariantMap]) -> bool:
    """含单位元、对复合与求逆封闭"""
    elements = set(maps)
    if not elements:
        return False
    n = len(next(iter(elements)))
    identity = EquivariantMap(tuple(range(n)))
    if identity not in elements:
        return False
    for f in elements:
        if not f.is_bijective():
            return False
        inverse = [0] * n
        for i, v in enumerate(f.images):
            inverse[v] = i
        if EquivariantMap(tuple(inverse)) not in elements:
            return False
        if any(f.compose(g) not in elements for g in elements):
            return False
    return True


def kernel(f: EquivariantMap) -> FrozenSet[Pair]:
    """ker(f) = {(a, b) : f(a) = f(b)}"""
    n = len(f)
    return frozenset((a, b) for a in range(n) for b in range(n) if f(a) == f(b))


def collapsing_kernel(X: GSet, x: int, y: int) -> FrozenSet[Pair]:
    """由 x, y 给出的坍缩核：对角线 ∪ {(g·x, g·y), (g·y, g·x)} ∪ {(g·x, h·x) : h⁻¹g ∈ G_y}"""
    G = X.group
    Gy = stabilizer(X, y)
    pairs: Set[Pair] = {(a, a) for a in range(X.n_points)}
    for g in range(G.order):
        gx, gy = X.image(g, x), X.image(g, y)
        pairs.add((gx, gy))
        pairs.add((gy, gx))
        for h in range(G.order):
            if int(G.mul[G.inv[h], g]) in Gy:
                pairs.add((gx, X.image(h, x)))
    return frozenset(pairs)


def classify_collapsing(X: GSet, f: EquivariantMap,
                        boxes: Optional[BoxDecomposition] = None) -> Optional[CollapsingType]:
    """f 是固定初等坍缩时返回其类型，否则返回 None"""
    if not is_equivariant(X, f):
        return None
    moved = [z for z in range(X.n_points) if f(z) != z]
    if not moved:
        return None
    orbit = orbit_of(X, moved[0])
    # Fix(f) = X \ Gx
    if set(moved) != set(orbit):
        return None

    B = boxes or box_decomposition(X)
    class_id = B.orbit_class[orbit[0]]
    H = B.representative(class_id)
    x = next(p for p in orbit if B.stab[p] == H)
    y = f(x)
    if y in orbit:
        return None
    if kernel(f) != collapsing_kernel(X, x, y):
        return None

    N = normalizer(X.group, H)
    return CollapsingType(class_id, H, n_conjugacy_class(X.group, B.stab[y], N))


def enumerate_fixing_collapsings(X: GSet) -> Set[EquivariantMap]:
    """全部 [x↦y]，其中 G_x ≤ G_y 且 Gx ≠ Gy，按函数去重"""
    stab = [stabilizer(X, p) for p in range(X.n_points)]
    result: Set[EquivariantMap] = set()
    for o in orbits(X):
        # 同一轨道内的 x 给出相同的映射集合，取代表点即可
        x = o.representative
        for y in range(X.n_points):
            if y not in o and stab[x].issubset(stab[y]):
                result.add(collapsing_map(X, x, y))
    logger.debug(f"枚举固定初等坍缩: {len(result)} 个")
    return result


def enumerate_collapsing_types(X: GSet,
                               boxes: Optional[BoxDecomposition] = None) -> Set[CollapsingType]:
    B = boxes or box_decomposition(X)
    types: Set[CollapsingType] = set()
    for f in enumerate_fixing_collapsings(X):
        t = classify_collapsing(X, f, B)
        if t is None:
            raise OracleError(f"[x↦y] 未通过坍缩条件检查: {f.images}")
        types.add(t)
    return types


def monoid_closure(seed: Iterable[EquivariantMap], cap: int,
                   n_points: Optional[int] = None) -> Set[EquivariantMap]:
    """复合闭包（含单位元），元素数超过 cap 时报错"""
    gens = sorted(set(seed), key=lambda f: f.images)
    if n_points is None:
        if not gens:
            raise OracleError("空生成集必须给出点数")
        n_points = len(gens[0])
    if any(len(f) != n_points for f in gens):
        raise OracleError("生成集中的映射不在同一个 G-集合上")

    identity = EquivariantMap(tuple(range(n_points)))
    elements = {identity}
    queue = deque([identity])
    while queue:
        e = queue.popleft()
        for s in gens:
            c = e.compose(s)
            if c in elements:
                continue
            elements.add(c)
            if len(elements) > cap:
                raise OracleCapExceeded(f"cap exceeded: 闭包超过 {cap} 个元素")
            queue.append(c)
    logger.debug(f"幺半群闭包: {len(elements)} 个元素")
    return elements
