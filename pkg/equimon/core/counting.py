"""
计数公式 - 基于盒分解计算 |End_G(X)|、|Aut_G(X)|、固定初等坍缩数及其类型数

所有计数均为精确整数。
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict

from .gset import BoxDecomposition
from .group import class_of, u_set, u_union

logger = logging.getLogger(__name__)


@dataclass
class CardinalityReport:
    """四个计数及每类的中间量"""
    end_count: int
    aut_count: int
    fixing_collapsing_count: int
    collapsing_type_count: int
    per_class_options: Dict[int, int] = field(default_factory=dict)
    alpha: Dict[int, int] = field(default_factory=dict)
    indices: Dict[int, int] = field(default_factory=dict)
    u_union_total: int = 0

    @property
    def kappa(self) -> int:
        """Σ|U(H)| 与可实现类型数之差"""
        return self.u_union_total - self.collapsing_type_count

    def to_dict(self) -> Dict[str, Any]:
        """转换为字典，计数以十进制字符串输出"""
        return {
            'endomorphisms': str(self.end_count),
            'automorphisms': str(self.aut_count),
            'fixing_collapsings': str(self.fixing_collapsing_count),
            'collapsing_types': str(self.collapsing_type_count),
        }


def _overgroup_weight(B: BoxDecomposition, h_id: int, k_id: int) -> int:
    """[K] 的轨道中可作为代表点像的点数：α_[K]·[N_G(K):K]·Σ_{C∈U(H,K)}|C|

    U(H,K) 中各 N_H 类等大时即 α·[N:K]·|[K]_{N_H}|·|U(H,K)|。
    """
    H = B.representative(h_id)
    K = B.representative(k_id)
    conjugates_above = sum(len(c) for c in u_set(B.group, H, K))
    return B.alpha[k_id] * B.indices[k_id] * conjugates_above


def target_options(B: BoxDecomposition, c: int) -> int:
    """稳定子恰为类 c 代表元的点可映到的点数"""
    return sum(
        _overgroup_weight(B, c, k)
        for k in B.class_ids
        if B.leq(c, k)
    )


def count_endomorphisms(B: BoxDecomposition) -> int:
    return math.prod(target_options(B, c) ** B.alpha[c] for c in B.class_ids)


def count_automorphisms(B: BoxDecomposition) -> int:
    return math.prod(
        math.factorial(B.alpha[c]) * B.indices[c] ** B.alpha[c]
        for c in B.class_ids
    )


def count_fixing_collapsings(B: BoxDecomposition) -> int:
    total = 0
    for h in B.class_ids:
        strictly_above = sum(
            _overgroup_weight(B, h, k)
            for k in B.class_ids
            if k != h and B.leq(h, k)
        )
        same_box = (B.alpha[h] - 1) * B.indices[h]
        total += B.alpha[h] * (strictly_above + same_box)
    return total


def _realizable_types(B: BoxDecomposition, h: int) -> int:
    H = B.representative(h)
    present = set(B.class_ids)
    count = 0
    for nclass in u_union(B.group, H, B.max_order):
        T = next(iter(nclass))
        k = class_of(B.group, T, B.max_order).class_id
        if k not in present:
            continue
        if k == h and B.alpha[h] < 2:
            continue
        count += 1
    return count


def count_collapsing_types(B: BoxDecomposition) -> int:
    """可实现的类型 (H, [K]_{N_H}) 数：[K] 必须出现在 Conj_G(X) 中，[K] = [H] 时需要第二个轨道"""
    return sum(_realizable_types(B, h) for h in B.class_ids)


def u_union_total(B: BoxDecomposition) -> int:
    """Σ_{[H]∈Conj_G(X)} |U(H)|"""
    return sum(len(u_union(B.group, B.representative(h), B.max_order)) for h in B.class_ids)


def cardinality_report(B: BoxDecomposition) -> CardinalityReport:
    report = CardinalityReport(
        end_count=count_endomorphisms(B),
        aut_count=count_automorphisms(B),
        fixing_collapsing_count=count_fixing_collapsings(B),
        collapsing_type_count=count_collapsing_types(B),
        per_class_options={c: target_options(B, c) for c in B.class_ids},
        alpha=dict(B.alpha),
        indices=dict(B.indices),
        u_union_total=u_union_total(B),
    )
    logger.info(
        f"计数完成: End={report.end_count}, Aut={report.aut_count}, "
        f"坍缩={report.fixing_collapsing_count}, 类型={report.collapsing_type_count}"
    )
    return report
