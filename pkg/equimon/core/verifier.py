"""
验证器 - 按阶段把计数公式与穷举预言机逐项对照

每个阶段产出一个 CheckResult；超出上限的阶段标记为 skipped，而不是失败。
"""

import logging
from typing import Callable, List, Optional

from .counting import CardinalityReport, cardinality_report
from .group import (
    Subgroup,
    all_subgroups,
    conjugate_subgroup,
    n_conjugacy_class,
    normalizer,
)
from .gset import BoxDecomposition, GSet, box_decomposition, orbit_of, points_with_stabilizer
from .models import CheckResult, CheckStatus
from .oracle import (
    OracleCapExceeded,
    classify_collapsing,
    enumerate_all_functions,
    enumerate_automorphisms,
    enumerate_collapsing_types,
    enumerate_endomorphisms,
    enumerate_fixing_collapsings,
    is_equivariant,
    is_group,
    monoid_closure,
)

logger = logging.getLogger(__name__)

MAX_REPORTED_FAILURES = 5


def check_structural_lemmas(X: GSet, B: Optional[BoxDecomposition] = None) -> List[str]:
    """穷举检查稳定子与正规化子之间的结构关系，返回违例描述（空列表表示全部成立）

    - G_{g·x} = g G_x g⁻¹，且 G_{g·x} = G_x 当且仅当 g ∈ N_G(G_x)
    - 对 n1, n2 ∈ N_G(G_x)：n1·x = n2·x 当且仅当 n1 G_x = n2 G_x
    - |B_{G_x} ∩ Gx| = [N_G(G_x) : G_x]
    - |[gKg⁻¹]_{N(gHg⁻¹)}| = |[K]_{N_H}|，对所有子群 H, K 与 g
    - H ≤ g⁻¹Hg 蕴含相等
    """
    G = X.group
    B = B or box_decomposition(X)
    failures: List[str] = []

    normalizers = {}

    def norm(H: Subgroup) -> Subgroup:
        if H not in normalizers:
            normalizers[H] = normalizer(G, H)
        return normalizers[H]

    for x in range(X.n_points):
        Gx = B.stab[x]
        N = norm(Gx)
        for g in range(G.order):
            moved = B.stab[X.image(g, x)]
            if moved != conjugate_subgroup(G, Gx, int(G.inv[g])):
                failures.append(f"G_(g·x) ≠ gG_xg⁻¹: x={x}, g={g}")
            if (moved == Gx) != (g in N):
                failures.append(f"G_(g·x) = G_x 与 g ∈ N(G_x) 不一致: x={x}, g={g}")

        members = N.indices()
        for n1 in members:
            for n2 in members:
                same_point = X.image(n1, x) == X.image(n2, x)
                same_coset = int(G.mul[G.inv[n1], n2]) in Gx
                if same_point != same_coset:
                    failures.append(f"n1·x = n2·x 与 n1G_x = n2G_x 不一致: x={x}, n1={n1}, n2={n2}")

        in_orbit = set(points_with_stabilizer(X, Gx)) & set(orbit_of(X, x))
        if len(in_orbit) != N.size // Gx.size:
            failures.append(f"|B_(G_x) ∩ Gx| = {len(in_orbit)} ≠ [N:G_x] = {N.size // Gx.size}: x={x}")

    subgroups = all_subgroups(G, B.max_order)
    for H in subgroups:
        for g in range(G.order):
            conj = conjugate_subgroup(G, H, g)
            if H.issubset(conj) and H != conj:
                failures.append(f"H ≤ g⁻¹Hg 但不相等: H={H.members}, g={g}")

    for H in subgroups:
        for K in subgroups:
            base = len(n_conjugacy_class(G, K, norm(H)))
            for g in range(G.order):
                gi = int(G.inv[g])
                moved_H = conjugate_subgroup(G, H, gi)
                moved_K = conjugate_subgroup(G, K, gi)
                if len(n_conjugacy_class(G, moved_K, norm(moved_H))) != base:
                    failures.append(
                        f"N_H 共轭类大小在共轭下改变: H={H.members}, K={K.members}, g={g}"
                    )
    return failures


def verification_passed(results: List[CheckResult]) -> bool:
    return all(r.status != CheckStatus.FAILED for r in results)


class Verifier:
    """公式对预言机的验证流程：end → aut → 坍缩 → 类型 → 坍缩形式 → 闭包 → 结构"""

    def __init__(self, cap: int = 1_000_000, closure_cap: int = 5000,
                 filter_all_max_points: int = 8, samples: int = 32, seed: int = 0,
                 skip_closure: bool = False):
        self.cap = cap
        self.closure_cap = closure_cap
        self.filter_all_max_points = filter_all_max_points
        self.samples = samples
        self.seed = seed
        self.skip_closure = skip_closure
        self._maps = None
        self._automorphisms = None
        self._collapsings = None

    @classmethod
    def from_config(cls, config_manager, **overrides) -> 'Verifier':
        params = {
            'cap': config_manager.get('oracle.endomorphism_cap', 1_000_000),
            'closure_cap': config_manager.get('oracle.closure_cap', 5000),
            'filter_all_max_points': config_manager.get('oracle.filter_all_max_points', 8),
            'samples': config_manager.get('oracle.samples', 32),
            'seed': config_manager.get('oracle.seed', 0),
        }
        params.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**params)

    def run(self, X: GSet, B: Optional[BoxDecomposition] = None,
            report: Optional[CardinalityReport] = None) -> List[CheckResult]:
        """运行全部阶段；report 缺省时由公式重新计算"""
        B = B or box_decomposition(X)
        report = report or cardinality_report(B)
        self._maps = None
        self._automorphisms = None
        self._collapsings = None

        phases: List[Callable[[], CheckResult]] = [
            lambda: self._check_endomorphisms(X, report),
            lambda: self._check_filter_all(X, report),
            lambda: self._check_automorphisms(X, report),
            lambda: self._check_fixing_collapsings(X, report),
            lambda: self._check_types(X, B, report),
            lambda: self._check_collapsing_forms(X, B),
            lambda: self._check_closure(X, report),
            lambda: self._check_structure(X, B),
        ]
        results = []
        for phase in phases:
            result = phase()
            logger.info(f"验证阶段 {result.name}: {result.status.value}")
            results.append(result)
        return results

    @staticmethod
    def _compare(name: str, expected: int, actual: int, detail: Optional[str] = None) -> CheckResult:
        status = CheckStatus.PASSED if expected == actual else CheckStatus.FAILED
        return CheckResult(name, status, str(expected), str(actual), detail)

    @staticmethod
    def _skipped(name: str, detail: str) -> CheckResult:
        return CheckResult(name, CheckStatus.SKIPPED, detail=detail)

    def _check_endomorphisms(self, X: GSet, report: CardinalityReport) -> CheckResult:
        try:
            result = enumerate_endomorphisms(X, cap=self.cap)
        except OracleCapExceeded as e:
            logger.warning(f"自同态枚举超出上限，改为只计数: {e}")
            result = enumerate_endomorphisms(X, materialize=False, samples=self.samples, seed=self.seed)
            return self._compare("end", report.end_count, result.count, "count-only (sampled)")

        bad = [f for f in result.maps if not is_equivariant(X, f)]
        if bad or len(set(result.maps)) != len(result.maps):
            return CheckResult("end", CheckStatus.FAILED, str(report.end_count), str(result.count),
                               f"{len(bad)} 个映射不等变或存在重复")
        self._maps = result.maps
        return self._compare("end", report.end_count, len(result.maps))

    def _check_filter_all(self, X: GSet, report: CardinalityReport) -> CheckResult:
        if X.n_points > self.filter_all_max_points or report.end_count > self.closure_cap:
            return self._skipped("end_filter_all", "cap exceeded")
        maps = enumerate_all_functions(X, self.filter_all_max_points)
        if self._maps is not None and set(maps) != set(self._maps):
            return CheckResult("end_filter_all", CheckStatus.FAILED, str(report.end_count),
                               str(len(maps)), "两种枚举得到的映射集合不同")
        return self._compare("end_filter_all", report.end_count, len(maps))

    def _check_automorphisms(self, X: GSet, report: CardinalityReport) -> CheckResult:
        if report.aut_count > self.cap:
            return self._skipped("aut", "cap exceeded")
        autos = enumerate_automorphisms(X)
        if len(autos) <= self.closure_cap and not is_group(autos):
            return CheckResult("aut", CheckStatus.FAILED, str(report.aut_count), str(len(autos)),
                               "自同构集合不构成群")
        self._automorphisms = autos
        return self._compare("aut", report.aut_count, len(autos))

    def _check_fixing_collapsings(self, X: GSet, report: CardinalityReport) -> CheckResult:
        self._collapsings = enumerate_fixing_collapsings(X)
        return self._compare("fixing_collapsings", report.fixing_collapsing_count, len(self._collapsings))

    def _check_types(self, X: GSet, B: BoxDecomposition, report: CardinalityReport) -> CheckResult:
        types = enumerate_collapsing_types(X, B)
        return self._compare("types", report.collapsing_type_count, len(types))

    def _check_collapsing_forms(self, X: GSet, B: BoxDecomposition) -> CheckResult:
        """End 中被判定为固定初等坍缩的映射都形如 [x↦y]"""
        if self._maps is None or len(self._maps) > self.closure_cap:
            return self._skipped("collapsing_forms", "cap exceeded")
        classified = {f for f in self._maps if classify_collapsing(X, f, B) is not None}
        status = CheckStatus.PASSED if classified == self._collapsings else CheckStatus.FAILED
        return CheckResult("collapsing_forms", status, str(len(self._collapsings)), str(len(classified)))

    def _check_closure(self, X: GSet, report: CardinalityReport) -> CheckResult:
        if self.skip_closure:
            return self._skipped("closure", "--skip-closure")
        if report.end_count > self.closure_cap or self._automorphisms is None:
            return self._skipped("closure", "cap exceeded")
        seed = set(self._automorphisms) | self._collapsings
        try:
            closure = monoid_closure(seed, self.closure_cap, X.n_points)
        except OracleCapExceeded as e:
            return CheckResult("closure", CheckStatus.FAILED, str(report.end_count), None, str(e))
        return self._compare("closure", report.end_count, len(closure))

    def _check_structure(self, X: GSet, B: BoxDecomposition) -> CheckResult:
        failures = check_structural_lemmas(X, B)
        if failures:
            detail = "; ".join(failures[:MAX_REPORTED_FAILURES])
            return CheckResult("structure", CheckStatus.FAILED, "0", str(len(failures)), detail)
        return CheckResult("structure", CheckStatus.PASSED, "0", "0")


def run_verification(X: GSet, B: Optional[BoxDecomposition] = None,
                     report: Optional[CardinalityReport] = None, **options) -> List[CheckResult]:
    return Verifier(**options).run(X, B, report)
