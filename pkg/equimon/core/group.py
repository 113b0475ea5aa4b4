"""
有限置换群 - 乘法表、子群枚举、共轭类与正规化子

群元素按下标引用，下标0恒为单位元。复合约定全库统一：
compose(p, q) 先作用 q 再作用 p。
"""

import functools
import logging
from collections import deque
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple

import numpy as np

from .models import InputError, EquimonError

logger = logging.getLogger(__name__)

DEFAULT_MAX_ORDER = 1000
DEFAULT_SUBGROUP_ORDER_CAP = 64


class PermutationError(InputError):
    """置换数据异常"""
    pass


class GroupTooLargeError(InputError):
    """生成元闭包超出阶数上限"""
    pass


class SubgroupEnumerationError(EquimonError):
    """群阶超过子群枚举上限"""
    pass


@dataclass(frozen=True)
class Perm:
    """{0,…,degree−1} 上的置换"""
    images: Tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(i) for i in self.images)
        if sorted(images) != list(range(len(images))):
            raise PermutationError(f"not a permutation: {list(images)}")
        object.__setattr__(self, 'images', images)

    @property
    def degree(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, degree: int) -> 'Perm':
        return cls(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, degree: int, *cycles: Sequence[int]) -> 'Perm':
        """由不相交轮换构造，例如 Perm.from_cycles(3, (0, 1, 2))"""
        images = list(range(degree))
        for cycle in cycles:
            for a, b in zip(cycle, tuple(cycle[1:]) + (cycle[0],)):
                if not 0 <= a < degree:
                    raise PermutationError(f"轮换中的点越界: {a}")
                images[a] = b
        return cls(tuple(images))

    def __call__(self, point: int) -> int:
        return self.images[point]

    def inverse(self) -> 'Perm':
        inv = [0] * self.degree
        for i, v in enumerate(self.images):
            inv[v] = i
        return Perm(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == v for i, v in enumerate(self.images))

    def cycle_notation(self) -> str:
        seen = set()
        cycles = []
        for start in range(self.degree):
            if start in seen:
                continue
            cycle = []
            j = start
            while j not in seen:
                seen.add(j)
                cycle.append(j)
                j = self.images[j]
            if len(cycle) > 1:
                cycles.append("(" + " ".join(str(c) for c in cycle) + ")")
        return "".join(cycles) if cycles else "()"

    def __str__(self) -> str:
        return self.cycle_notation()


def compose(p: Perm, q: Perm) -> Perm:
    """先作用 q 再作用 p：result(i) = p(q(i))"""
    if p.degree != q.degree:
        raise PermutationError(f"degree mismatch: {p.degree} != {q.degree}")
    return Perm(tuple(p.images[i] for i in q.images))


@dataclass(frozen=True, eq=False)
class GroupTable:
    """有限群的物化表示：元素表、乘法表、逆元表

    mul[i, j] 是 elements[i]∘elements[j] 的下标；words[i] 是生成元下标序列，
    按从左到右的乘积求值得到 elements[i]。
    """
    elements: Tuple[Perm, ...]
    mul: np.ndarray
    inv: np.ndarray
    generator_indices: Tuple[int, ...]
    words: Tuple[Tuple[int, ...], ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def degree(self) -> int:
        return self.elements[0].degree

    @functools.cached_property
    def _index(self) -> Dict[Tuple[int, ...], int]:
        return {p.images: i for i, p in enumerate(self.elements)}

    def index_of(self, perm: Perm) -> int:
        try:
            return self._index[perm.images]
        except KeyError:
            raise PermutationError(f"置换不在群中: {perm}")

    def evaluate_word(self, word: Iterable[int]) -> int:
        """生成元词求值，返回元素下标；空词为单位元"""
        acc = 0
        for letter in word:
            acc = int(self.mul[acc, self.generator_indices[letter]])
        return acc

    def whole(self) -> 'Subgroup':
        return Subgroup((1 << self.order) - 1, self.order)

    def trivial(self) -> 'Subgroup':
        return Subgroup(1, 1)


def group_from_generators(gens: Sequence[Perm], degree: int,
                          max_order: int = DEFAULT_MAX_ORDER) -> GroupTable:
    """从单位元出发按BFS求生成元闭包并建立乘法表"""
    for k, g in enumerate(gens):
        if g.degree != degree:
            raise PermutationError(f"degree mismatch: 生成元 {k} 的次数 {g.degree} != {degree}")

    identity = Perm.identity(degree)
    elements: List[Perm] = [identity]
    words: List[Tuple[int, ...]] = [()]
    index: Dict[Tuple[int, ...], int] = {identity.images: 0}

    queue = deque([0])
    while queue:
        e = queue.popleft()
        for k, s in enumerate(gens):
            product = compose(s, elements[e])
            if product.images in index:
                continue
            if len(elements) >= max_order:
                raise GroupTooLargeError(f"group too large: 闭包超过 {max_order} 个元素")
            index[product.images] = len(elements)
            elements.append(product)
            words.append((k,) + words[e])
            queue.append(len(elements) - 1)

    order = len(elements)
    table = np.array([p.images for p in elements], dtype=np.int64)
    mul = np.empty((order, order), dtype=np.int64)
    for i in range(order):
        # 行 i：elements[i]∘elements[j]
        composed = table[i][table]
        for j in range(order):
            mul[i, j] = index[tuple(composed[j].tolist())]
    inv = np.argmin(mul, axis=1).astype(np.int64)
    mul.setflags(write=False)
    inv.setflags(write=False)

    generator_indices = tuple(index[g.images] for g in gens)
    logger.debug(f"群构造完成: 阶 {order}, 生成元 {len(gens)} 个")
    return GroupTable(tuple(elements), mul, inv, generator_indices, tuple(words))


def check_group_axioms(G: GroupTable) -> bool:
    """穷举检查结合律、单位元与逆元"""
    n = G.order
    rng = np.arange(n)
    mul = G.mul
    if not (np.array_equal(mul[0], rng) and np.array_equal(mul[:, 0], rng)):
        return False
    if not np.all(mul[rng, G.inv] == 0):
        return False
    for a in range(n):
        # (ab)c == a(bc)
        if not np.array_equal(mul[mul[a]], mul[a][mul]):
            return False
    return len({p.images for p in G.elements}) == n


@dataclass(frozen=True)
class Subgroup:
    """子群：成员位集（第 i 位对应元素 i）与阶"""
    members: int
    size: int

    @classmethod
    def from_indices(cls, indices: Iterable[int]) -> 'Subgroup':
        mask = 0
        for i in indices:
            mask |= 1 << int(i)
        return cls(mask, bin(mask).count("1"))

    def __contains__(self, element: int) -> bool:
        return bool(self.members >> int(element) & 1)

    def indices(self) -> Tuple[int, ...]:
        mask = self.members
        out = []
        i = 0
        while mask:
            if mask & 1:
                out.append(i)
            mask >>= 1
            i += 1
        return tuple(out)

    def issubset(self, other: 'Subgroup') -> bool:
        return self.members & ~other.members == 0

    def sort_key(self) -> Tuple[int, int]:
        return (self.size, self.members)


@dataclass(frozen=True)
class SubgroupClass:
    """子群共轭类；代表元取位集最小的成员"""
    representative: Subgroup
    members: Tuple[Subgroup, ...]
    class_id: int

    def __contains__(self, H: Subgroup) -> bool:
        return H in self.members

    @property
    def size(self) -> int:
        return len(self.members)


def subgroup_generated(G: GroupTable, seed: Iterable[int]) -> Subgroup:
    """包含 seed 的最小子群（有限群中对乘法封闭即可）"""
    gens = sorted({int(s) for s in seed if s != 0})
    for s in gens:
        if not 0 <= s < G.order:
            raise IndexError(f"元素下标越界: {s}")
    members = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for e in frontier:
            for s in gens:
                c = int(G.mul[e, s])
                if c not in members:
                    members.add(c)
                    nxt.append(c)
        frontier = nxt
    return Subgroup.from_indices(members)


def cyclic_subgroups(G: GroupTable) -> List[Subgroup]:
    found = {subgroup_generated(G, [g]) for g in range(G.order)}
    return sorted(found, key=Subgroup.sort_key)


def conjugate_subgroup(G: GroupTable, H: Subgroup, g: int) -> Subgroup:
    """g⁻¹Hg"""
    idx = np.array(H.indices(), dtype=np.int64)
    conj = G.mul[G.mul[G.inv[g], idx], g]
    return Subgroup.from_indices(conj.tolist())


def normalizer(G: GroupTable, H: Subgroup) -> Subgroup:
    return Subgroup.from_indices(
        g for g in range(G.order) if conjugate_subgroup(G, H, g) == H
    )


def conjugacy_orbit(G: GroupTable, H: Subgroup) -> FrozenSet[Subgroup]:
    return frozenset(conjugate_subgroup(G, H, g) for g in range(G.order))


def n_conjugacy_class(G: GroupTable, H: Subgroup, N: Subgroup) -> FrozenSet[Subgroup]:
    """[H]_N = {n⁻¹Hn : n ∈ N}"""
    return frozenset(conjugate_subgroup(G, H, n) for n in N.indices())


def minimal_generators(G: GroupTable, H: Subgroup) -> List[int]:
    """贪心取生成元：按下标顺序加入尚未生成的元素"""
    gens: List[int] = []
    current = G.trivial()
    for h in H.indices():
        if h not in current:
            gens.append(h)
            current = subgroup_generated(G, gens)
            if current == H:
                break
    return gens


class SubgroupLattice:
    """一个群的全部子群及其共轭类，按 (阶, 位集) 排序"""

    def __init__(self, G: GroupTable, max_order: int = DEFAULT_SUBGROUP_ORDER_CAP):
        if G.order > max_order:
            raise SubgroupEnumerationError(
                f"subgroup enumeration refused: 群阶 {G.order} 超过上限 {max_order}"
            )
        self.group = G
        self.subgroups = self._enumerate(G)

        classes: List[SubgroupClass] = []
        self._class_of: Dict[int, int] = {}
        for H in self.subgroups:
            if H.members in self._class_of:
                continue
            orbit = sorted(conjugacy_orbit(G, H), key=Subgroup.sort_key)
            cls = SubgroupClass(orbit[0], tuple(orbit), len(classes))
            classes.append(cls)
            for member in orbit:
                self._class_of[member.members] = cls.class_id
        self.classes = classes
        logger.debug(f"子群枚举完成: {len(self.subgroups)} 个子群, {len(classes)} 个共轭类")

    @staticmethod
    def _enumerate(G: GroupTable) -> List[Subgroup]:
        cyclic = cyclic_subgroups(G)
        # 循环子群的生成元：取阶等于子群阶的元素
        cyclic_gens = []
        for C in cyclic:
            for g in C.indices():
                if subgroup_generated(G, [g]) == C:
                    cyclic_gens.append(g)
                    break
        known = set(cyclic)
        frontier = list(cyclic)
        while frontier:
            nxt = []
            for A in frontier:
                for C, g in zip(cyclic, cyclic_gens):
                    if C.issubset(A):
                        continue
                    joined = subgroup_generated(G, A.indices() + (g,))
                    if joined not in known:
                        known.add(joined)
                        nxt.append(joined)
            frontier = nxt
        return sorted(known, key=Subgroup.sort_key)

    def class_of(self, H: Subgroup) -> SubgroupClass:
        try:
            return self.classes[self._class_of[H.members]]
        except KeyError:
            raise EquimonError(f"不是该群的子群: {H}")


@functools.lru_cache(maxsize=32)
def subgroup_lattice(G: GroupTable, max_order: int = DEFAULT_SUBGROUP_ORDER_CAP) -> SubgroupLattice:
    return SubgroupLattice(G, max_order)


def all_subgroups(G: GroupTable, max_order: int = DEFAULT_SUBGROUP_ORDER_CAP) -> List[Subgroup]:
    """全部子群：从循环子群出发反复与循环子群求并生成，直到不动点"""
    return list(subgroup_lattice(G, max_order).subgroups)


def subgroup_conjugacy_classes(G: GroupTable,
                               max_order: int = DEFAULT_SUBGROUP_ORDER_CAP) -> List[SubgroupClass]:
    return list(subgroup_lattice(G, max_order).classes)


def class_of(G: GroupTable, H: Subgroup,
             max_order: int = DEFAULT_SUBGROUP_ORDER_CAP) -> SubgroupClass:
    return subgroup_lattice(G, max_order).class_of(H)


def class_leq(G: GroupTable, A: SubgroupClass, B: SubgroupClass) -> bool:
    """[A] ≤ [B] 当且仅当 B 的某个成员包含 A 的代表元"""
    return any(A.representative.issubset(member) for member in B.members)


def u_set(G: GroupTable, H: Subgroup, K: Subgroup) -> FrozenSet[FrozenSet[Subgroup]]:
    """U(H,K)：[K] 中包含 H 的子群按 N_H 共轭划分所得的类"""
    overgroups = [T for T in conjugacy_orbit(G, K) if H.issubset(T)]
    if not overgroups:
        return frozenset()
    N = normalizer(G, H)
    return frozenset(n_conjugacy_class(G, T, N) for T in overgroups)


def u_union(G: GroupTable, H: Subgroup,
            max_order: int = DEFAULT_SUBGROUP_ORDER_CAP) -> FrozenSet[FrozenSet[Subgroup]]:
    """U(H)：H 的全部上群按 N_H 共轭划分所得的类"""
    N = normalizer(G, H)
    return frozenset(
        n_conjugacy_class(G, T, N)
        for T in all_subgroups(G, max_order)
        if H.issubset(T)
    )
