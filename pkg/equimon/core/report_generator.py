"""
报告生成器 - 把计数结果整理为稳定顺序的报告，并渲染为 JSON、文本或 DOT
"""

import json
import logging
import os
import tempfile
from pathlib import Path
from typing import Any, Dict, List, Optional

from jinja2 import Environment, FileSystemLoader

from .counting import CardinalityReport
from .group import GroupTable, Subgroup, minimal_generators
from .gset import BoxDecomposition
from .models import CheckResult

logger = logging.getLogger(__name__)

DEFAULT_TEMPLATES_DIR = Path(__file__).resolve().parent.parent / "templates"


def subgroup_generators(G: GroupTable, H: Subgroup) -> List[str]:
    """子群生成元的轮换记号"""
    return [G.elements[h].cycle_notation() for h in minimal_generators(G, H)]


class ReportGenerator:
    """报告生成器 - 负责整理报告数据并用 Jinja2 模板渲染"""

    def __init__(self, config_manager=None):
        self.config_manager = config_manager
        templates_dir = config_manager.get('reports.templates_dir') if config_manager else None
        self.templates_dir = Path(templates_dir) if templates_dir else DEFAULT_TEMPLATES_DIR
        self.indent = config_manager.get('reports.indent', 2) if config_manager else 2

        self.jinja_env = Environment(
            loader=FileSystemLoader(str(self.templates_dir)),
            autoescape=False,
            trim_blocks=True,
            lstrip_blocks=True,
            keep_trailing_newline=True,
        )
        self.jinja_env.filters['join_generators'] = self._join_generators
        logger.debug(f"ReportGenerator初始化完成，模板目录: {self.templates_dir}")

    def build_report(self, B: BoxDecomposition, counts: CardinalityReport,
                     verification: Optional[List[CheckResult]] = None,
                     name: Optional[str] = None) -> Dict[str, Any]:
        """按固定键顺序组织报告；计数一律为十进制字符串"""
        G = B.group
        report: Dict[str, Any] = {
            'instance': {
                'name': name,
                'group_order': G.order,
                'n_points': B.gset.n_points,
                'n_orbits': len(B.orbits),
            },
            'boxes': [
                {
                    'class_id': c.class_id,
                    'order': c.representative.size,
                    'generators': subgroup_generators(G, c.representative),
                    'alpha': B.alpha[c.class_id],
                    'normalizer_index': B.indices[c.class_id],
                    'options': str(counts.per_class_options[c.class_id]),
                }
                for c in B.classes
            ],
            'counts': counts.to_dict(),
            'types': {
                'u_union_total': str(counts.u_union_total),
                'kappa': str(counts.kappa),
            },
        }
        if verification is not None:
            report['verification'] = [r.to_dict() for r in verification]
        return report

    def to_json(self, report: Dict[str, Any]) -> str:
        return json.dumps(report, ensure_ascii=False, indent=self.indent) + "\n"

    def render_text(self, report: Dict[str, Any]) -> str:
        return self.jinja_env.get_template('report.txt.j2').render(report=report)

    def render_poset(self, B: BoxDecomposition) -> str:
        """Conj_G(X) 的 Hasse 图：每类一个节点，边为覆盖关系（从小到大）"""
        G = B.group
        nodes = []
        for c in B.classes:
            H = c.representative
            generators = self._join_generators(subgroup_generators(G, H))
            nodes.append({
                'class_id': c.class_id,
                'label': f"[{generators}]: |H|={H.size}, α={B.alpha[c.class_id]}, "
                         f"[N:H]={B.indices[c.class_id]}",
            })
        template = self.jinja_env.get_template('poset.dot.j2')
        return template.render(nodes=nodes, edges=B.covering_relations())

    def render(self, report: Dict[str, Any], fmt: str = 'json') -> str:
        if fmt == 'json':
            return self.to_json(report)
        if fmt == 'text':
            return self.render_text(report)
        raise ValueError(f"未知的输出格式: {fmt}")

    @staticmethod
    def write_atomic(path: str, content: str) -> str:
        """先写临时文件再原子替换"""
        target = Path(path)
        target.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp_path = tempfile.mkstemp(dir=str(target.parent), prefix=f".{target.name}.")
        try:
            with os.fdopen(fd, 'w', encoding='utf-8') as f:
                f.write(content)
            os.replace(tmp_path, target)
        except Exception as e:
            logger.error(f"保存报告失败 {target}: {e}")
            if os.path.exists(tmp_path):
                os.unlink(tmp_path)
            raise
        logger.info(f"报告已写入: {target}")
        return str(target)

    @staticmethod
    def _join_generators(generators: List[str]) -> str:
        return "⟨" + ", ".join(generators) + "⟩"
