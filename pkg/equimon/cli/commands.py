"""
命令行入口 - analyze / verify / enumerate / poset / corpus

退出码：0 成功，1 验证失败，2 输入错误。结果写到标准输出（或 --output 指定的文件），
诊断信息写到标准错误。
"""

import argparse
import json
import logging
import sys
from functools import wraps
from typing import Any, Dict, List, Optional

from .. import __version__
from ..core.config_manager import ConfigManager
from ..core.corpus import random_corpus
from ..core.counting import cardinality_report
from ..core.gset import box_decomposition
from ..core.models import EquimonError, InputError
from ..core.oracle import (
    OracleCapExceeded,
    enumerate_automorphisms,
    enumerate_endomorphisms,
    enumerate_fixing_collapsings,
)
from ..core.report_generator import ReportGenerator
from ..core.verifier import Verifier, verification_passed
from ..utils.logging import setup_logger
from .instance import build_instance, load_instance

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_INPUT_ERROR = 2


def handle_errors(f):
    """把库异常映射为退出码，并在标准错误上给出诊断"""
    @wraps(f)
    def decorated_function(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except InputError as e:
            logger.error(f"输入错误: {e}")
            print(f"error: {e}", file=sys.stderr)
            return EXIT_INPUT_ERROR
        except EquimonError as e:
            logger.error(f"命令失败: {e}")
            print(f"error: {e}", file=sys.stderr)
            return EXIT_INPUT_ERROR
    return decorated_function


class CommandContext:
    """一次命令调用共享的配置与报告生成器"""

    def __init__(self, config_manager: ConfigManager):
        self.config_manager = config_manager
        self.report_generator = ReportGenerator(config_manager)
        self.max_order = config_manager.get('groups.max_order', 1000)
        self.max_subgroup_order = config_manager.get('groups.max_subgroup_order', 64)

    def load(self, path: str):
        """返回 (实例名, G-集合, 盒分解)；实例未命名时用文件路径"""
        instance = load_instance(path)
        _, X = build_instance(instance, self.max_order)
        B = box_decomposition(X, self.max_subgroup_order)
        return instance.name or path, X, B

    def emit(self, content: str, output: Optional[str] = None):
        if output:
            self.report_generator.write_atomic(output, content)
        else:
            sys.stdout.write(content)
            sys.stdout.flush()


@handle_errors
def cmd_analyze(ctx: CommandContext, args) -> int:
    name, X, B = ctx.load(args.file)
    counts = cardinality_report(B)
    report = ctx.report_generator.build_report(B, counts, name=name)
    ctx.emit(ctx.report_generator.render(report, args.format), args.output)
    return EXIT_OK


@handle_errors
def cmd_verify(ctx: CommandContext, args) -> int:
    name, X, B = ctx.load(args.file)
    counts = cardinality_report(B)
    verifier = Verifier.from_config(ctx.config_manager, cap=args.cap, skip_closure=args.skip_closure)
    results = verifier.run(X, B, counts)
    report = ctx.report_generator.build_report(B, counts, verification=results, name=name)
    ctx.emit(ctx.report_generator.render(report, args.format), args.output)
    return EXIT_OK if verification_passed(results) else EXIT_VERIFICATION_FAILED


@handle_errors
def cmd_enumerate(ctx: CommandContext, args) -> int:
    _, X, B = ctx.load(args.file)
    cap = ctx.config_manager.get('oracle.endomorphism_cap', 1_000_000)
    payload: Dict[str, Any] = {'what': args.what}

    if args.what == 'end':
        try:
            result = enumerate_endomorphisms(X, cap=cap)
            maps = result.maps
        except OracleCapExceeded as e:
            logger.warning(f"{e}，只输出计数")
            result = enumerate_endomorphisms(
                X, materialize=False,
                samples=ctx.config_manager.get('oracle.samples', 32),
                seed=ctx.config_manager.get('oracle.seed', 0),
            )
            maps = []
        payload['count'] = str(result.count)
        payload['mode'] = result.mode
    elif args.what == 'aut':
        maps = enumerate_automorphisms(X)
        payload['count'] = str(len(maps))
    else:
        maps = sorted(enumerate_fixing_collapsings(X), key=lambda f: f.images)
        payload['count'] = str(len(maps))

    shown = maps if args.limit is None else maps[:args.limit]
    payload['maps'] = [list(f.images) for f in shown]
    ctx.emit(json.dumps(payload, ensure_ascii=False) + "\n", args.output)
    return EXIT_OK


@handle_errors
def cmd_poset(ctx: CommandContext, args) -> int:
    _, X, B = ctx.load(args.file)
    ctx.emit(ctx.report_generator.render_poset(B), args.output)
    return EXIT_OK


@handle_errors
def cmd_corpus(ctx: CommandContext, args) -> int:
    """在随机陪集空间语料上逐个运行验证"""
    verifier = Verifier.from_config(ctx.config_manager, cap=args.cap, skip_closure=args.skip_closure)
    summary: List[Dict[str, Any]] = []
    all_passed = True
    for instance in random_corpus(count=args.count, seed=args.seed, max_end=args.max_end):
        B = box_decomposition(instance.gset, ctx.max_subgroup_order)
        results = verifier.run(instance.gset, B)
        passed = verification_passed(results)
        all_passed = all_passed and passed
        summary.append({
            'name': instance.name,
            'passed': passed,
            'checks': {r.name: r.status.value for r in results},
        })
        if not passed:
            logger.error(f"实例验证失败: {instance.name}")
    ctx.emit(json.dumps(summary, ensure_ascii=False, indent=ctx.report_generator.indent) + "\n",
             args.output)
    return EXIT_OK if all_passed else EXIT_VERIFICATION_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='equimon',
        description='有限 G-集合上 End_G(X)、Aut_G(X) 与初等坍缩的计数及穷举验证',
    )
    parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}')
    parser.add_argument('--config', help='配置目录（默认 config/ 或 EQUIMON_CONFIG）')
    parser.add_argument('--log-level', help='日志级别，覆盖配置中的 logging.level')
    parser.add_argument('--log-file', help='同时写入滚动日志文件')
    sub = parser.add_subparsers(dest='command', required=True)

    def add_output(p, formats: bool = True):
        if formats:
            p.add_argument('--format', choices=['json', 'text'], default='json')
        p.add_argument('--output', '-o', help='写入文件而不是标准输出')

    p = sub.add_parser('analyze', help='用计数公式分析实例')
    p.add_argument('file')
    add_output(p)
    p.set_defaults(handler=cmd_analyze)

    p = sub.add_parser('verify', help='将计数公式与穷举结果逐项对照')
    p.add_argument('file')
    p.add_argument('--cap', type=int, help='物化枚举的上限')
    p.add_argument('--skip-closure', action='store_true', help='跳过幺半群闭包检查')
    add_output(p)
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser('enumerate', help='列出等变映射')
    p.add_argument('file')
    p.add_argument('--what', choices=['end', 'aut', 'collapsings'], required=True)
    p.add_argument('--limit', type=int, help='最多输出的映射数')
    add_output(p, formats=False)
    p.set_defaults(handler=cmd_enumerate)

    p = sub.add_parser('poset', help='输出 Conj_G(X) 的 Hasse 图（DOT）')
    p.add_argument('file')
    add_output(p, formats=False)
    p.set_defaults(handler=cmd_poset)

    p = sub.add_parser('corpus', help='在随机语料上运行验证')
    p.add_argument('--count', type=int, default=40)
    p.add_argument('--seed', type=int, default=0)
    p.add_argument('--max-end', type=int, default=10**6, help='拒绝预测 |End| 超过该值的实例')
    p.add_argument('--cap', type=int, help='物化枚举的上限')
    p.add_argument('--skip-closure', action='store_true')
    add_output(p, formats=False)
    p.set_defaults(handler=cmd_corpus)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """命令行主入口，返回退出码"""
    args = build_parser().parse_args(argv)
    config_manager = ConfigManager(args.config)
    if args.log_level:
        config_manager.set('logging.level', args.log_level)
    if args.log_file:
        config_manager.set('logging.file', args.log_file)

    setup_logger(
        "equimon",
        config_manager.get('logging.file'),
        config_manager.get('logging.level', 'WARNING'),
    )
    if not config_manager.validate_config():
        print("error: 配置无效", file=sys.stderr)
        return EXIT_INPUT_ERROR

    ctx = CommandContext(config_manager)
    return args.handler(ctx, args)
