#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
主模块

各向异性周长工具的命令行入口：body、steiner、perimeter、rigidity、tvk、repro 子命令
"""

import os
import sys
import logging
import argparse
from typing import Any, Dict, List, Optional, Tuple

from aniso_perimeter.core.aniso_measure import (
    DiscreteVectorMeasure,
    anisotropic_total_variation,
    dual_test_value,
    parallelogram_defect,
    pointwise_equality_check,
    sup_partition_ladder,
    total_variation,
)
from aniso_perimeter.core.convex_body import (
    ConvexBody,
    Polytope,
    body_from_dict,
    normals_set,
    polar,
)
from aniso_perimeter.core.exceptions import AnisoPerimeterError, InputFormatError, InvalidBody
from aniso_perimeter.core.perimeter import (
    PolygonSet,
    body_perimeter,
    perimeter_F_of_v,
    perimeter_from_vb,
    polygon_perimeter,
    vdistributed_polygon,
)
from aniso_perimeter.core.repro import fig2_rows, fig5_case, fig6_case, normals_overlay, run_fuzz
from aniso_perimeter.core.rigidity import Verdict, verdict
from aniso_perimeter.core.sbv1d import SbvProfile, VDistributedSet
from aniso_perimeter.core.steiner import steiner_symmetrize, support_symmetry_check
from aniso_perimeter.utils.display_manager import ReportPrinter
from aniso_perimeter.utils.helpers import (
    default_config_path,
    dump_json,
    get_tolerance,
    load_config,
    parse_strip,
    read_json,
    safe_get,
    strip_bounds,
)
from aniso_perimeter.utils.logger import setup_logger
from aniso_perimeter.utils.svg_writer import SvgCanvas

EXIT_OK = 0
EXIT_NOT_GUARANTEED = 2
EXIT_INPUT_ERROR = 3

# 子命令返回 (结果, 退出码)
CommandResult = Tuple[Dict[str, Any], int]


def _parse_point(text: str) -> List[float]:
    try:
        return [float(p) for p in text.split(",")]
    except ValueError:
        raise ValueError(f"点的格式应为 x,y: {text!r}")


def load_body(path: str) -> ConvexBody:
    return body_from_dict(read_json(path), path=path)


def load_profile(path: str, nonnegative: bool = False) -> SbvProfile:
    return SbvProfile.from_dict(read_json(path), path=path, nonnegative=nonnegative)


def load_vdistributed(profile: str, barycenter: Optional[str]) -> VDistributedSet:
    v = load_profile(profile, nonnegative=True)
    b = load_profile(barycenter) if barycenter else SbvProfile.zero()
    return VDistributedSet(v, b)


def cmd_body(args: argparse.Namespace, config: Dict[str, Any], logger: logging.Logger) -> CommandResult:
    """凸体报告：面积、P_K(K) = 2|K| 的检验、法向量集合、极体以及可选的点求值"""
    K = load_body(args.body)
    result: Dict[str, Any] = {
        "body": K.to_dict(),
        "dimension": K.dimension,
        "circumradius": K.circumradius,
        "inradius": K.inradius,
    }
    if K.dimension == 2:
        area = K.area()
        perimeter = body_perimeter(K, K)
        result["area"] = area
        result["wulff_identity"] = {
            "perimeter": perimeter,
            "expected": 2.0 * area,
            "relative_error": abs(perimeter - 2.0 * area) / (2.0 * area),
        }
        result["normals"] = normals_set(K).to_dict()
        try:
            result["polar"] = polar(K).to_dict()
        except InvalidBody as e:
            logger.warning(f"无法计算极体: {e}")
            result["polar"] = None
    if args.x:
        x = _parse_point(args.x)
        at: Dict[str, Any] = {"x": x, "support": K.support(x), "support_point": K.support_point(x)}
        try:
            at["gauge"] = K.gauge(x)
        except InvalidBody:
            at["gauge"] = None
        if any(x):
            at["maximizer_face"] = K.maximizer_face(x).to_dict()
        result["at"] = at
    if args.svg and K.dimension == 2:
        canvas = SvgCanvas(logger=logger)
        canvas.add_body(K)
        if isinstance(K, Polytope):
            canvas.add_normals(K)
        canvas.save(args.svg)
    return result, EXIT_OK


def cmd_steiner(args: argparse.Namespace, config: Dict[str, Any], logger: logging.Logger) -> CommandResult:
    K = load_body(args.body)
    sym = steiner_symmetrize(K)
    result = {
        "symmetral": sym.to_dict(),
        "area_original": K.area(),
        "area_symmetral": sym.body.area(),
        "symmetric": support_symmetry_check(sym.body, samples=safe_get(config, ["numerics", "symmetry_samples"], 360)),
    }
    if args.svg:
        canvas = SvgCanvas(logger=logger)
        canvas.add_body(K, stroke="#999999")
        canvas.add_body(sym.body, stroke="#1f77b4", fill="#1f77b433")
        canvas.save(args.svg)
    return result, EXIT_OK


def cmd_perimeter(args: argparse.Namespace, config: Dict[str, Any], logger: logging.Logger) -> CommandResult:
    K = load_body(args.body)
    strip = parse_strip(args.strip)
    canvas = SvgCanvas(logger=logger) if args.svg else None

    if args.set:
        E = PolygonSet.from_dict(read_json(args.set), path=args.set)
        result: Dict[str, Any] = {"total": polygon_perimeter(E, K, strip), "area": E.area()}
        if canvas:
            canvas.add_polygon_set(E)
    elif args.profile:
        S = load_vdistributed(args.profile, args.barycenter)
        breakdown = perimeter_from_vb(S, K, strip)
        W = vdistributed_polygon(S)
        result = {
            "breakdown": breakdown,
            "total": breakdown.total,
            "oracle_total": polygon_perimeter(W, K, strip),
            "F_of_v": perimeter_F_of_v(S.v, K, strip),
        }
        if support_symmetry_check(K):
            result["steiner_gap"] = breakdown.total - result["F_of_v"].total
        if canvas:
            canvas.add_polygon_set(W)
            canvas.add_polygon_set(vdistributed_polygon(VDistributedSet.symmetric(S.v)),
                                   stroke="#ff7f0e", fill="none")
    else:
        raise InputFormatError("perimeter 需要 --set 或 --profile", field="--set")

    if canvas:
        canvas.add_body(K)
        if isinstance(K, Polytope):
            canvas.add_normals(K)
        bounds = strip_bounds(strip)
        if bounds is not None:
            for lo, hi in strip:
                canvas.add_label(f"[{lo:g}, {hi:g}]", lo, -K.circumradius)
            canvas.add_label(f"B 的包络 [{bounds[0]:g}, {bounds[1]:g}]", bounds[0], K.circumradius)
        canvas.save(args.svg)
    return result, EXIT_OK


def cmd_rigidity(args: argparse.Namespace, config: Dict[str, Any], logger: logging.Logger) -> CommandResult:
    K = load_body(args.body)
    v = load_profile(args.profile, nonnegative=True)
    b = load_profile(args.barycenter) if args.barycenter else None
    report = verdict(v, K, b, grid_size=safe_get(config, ["rigidity", "witness_grid"], 41))
    if args.svg:
        canvas = SvgCanvas(logger=logger)
        canvas.add_polygon_set(vdistributed_polygon(VDistributedSet.symmetric(v)), stroke="#ff7f0e", fill="none")
        if report.witness is not None:
            canvas.add_polygon_set(vdistributed_polygon(report.witness))
        canvas.add_label(report.verdict.value, v.nodes[0] if v.nodes else 0.0, 0.5 * v.max_abs() + 0.2)
        canvas.save(args.svg)
    code = EXIT_OK if report.verdict == Verdict.EQUIVALENT else EXIT_NOT_GUARANTEED
    return report.to_dict(), code


def cmd_tvk(args: argparse.Namespace, config: Dict[str, Any], logger: logging.Logger) -> CommandResult:
    K = load_body(args.body)
    strip = parse_strip(args.strip)
    mu = DiscreteVectorMeasure.from_dict(read_json(args.measure), path=args.measure)
    depth = args.depth if args.depth is not None else safe_get(config, ["numerics", "partition_depth"], 12)
    ladder = sup_partition_ladder(mu, K, strip, depth)
    dual = dual_test_value(mu, K, strip)
    result: Dict[str, Any] = {
        "total_variation": total_variation(mu, strip),
        "anisotropic_total_variation": anisotropic_total_variation(mu, K, strip),
        "partition_ladder": {"values": list(ladder.values), "separated_at": ladder.separated_at,
                             "value": ladder.value},
        "dual_test": {"value": dual.value,
                      "atom_fields": [[x, list(z)] for x, z in dual.atom_fields],
                      "density_fields": [[list(iv), list(z)] for iv, z in dual.density_fields]},
    }
    if args.other:
        nu = DiscreteVectorMeasure.from_dict(read_json(args.other), path=args.other)
        result["parallelogram"] = parallelogram_defect(mu, nu, K, strip)
        result["pointwise_equality"] = pointwise_equality_check(mu, nu, K, strip)
    return result, EXIT_OK


def cmd_repro(args: argparse.Namespace, config: Dict[str, Any], logger: logging.Logger) -> CommandResult:
    if args.figure == "fig2":
        betas = safe_get(config, ["repro", "fig2_betas_deg"], [0, 15, 30, 45, 60, 75])
        return {"rows": fig2_rows([float(b) for b in betas])}, EXIT_OK
    if args.figure in ("fig5", "fig6"):
        K, v = fig5_case() if args.figure == "fig5" else fig6_case()
        result = normals_overlay(K, v)
        if args.svg:
            canvas = SvgCanvas(logger=logger)
            canvas.add_body(K)
            if isinstance(K, Polytope):
                canvas.add_normals(K)
            canvas.add_polygon_set(vdistributed_polygon(VDistributedSet.symmetric(v)), stroke="#ff7f0e")
            for piece in result["pieces"]:
                x0, x1 = piece["interval"]
                mid = 0.5 * (x0 + x1)
                top = 0.5 * v.value_at(mid)
                nx, ny = piece["normal"]
                canvas.add_arrow((mid, top), (mid + 0.3 * nx, top + 0.3 * ny), stroke="#9467bd")
            canvas.add_label(result["verdict"], -K.circumradius, K.circumradius + 0.2)
            canvas.save(args.svg)
        return result, EXIT_OK
    cases = args.cases if args.cases is not None else safe_get(config, ["repro", "fuzz_cases"], 500)
    seed = args.seed if args.seed is not None else safe_get(config, ["repro", "fuzz_seed"], 0)
    bodies = safe_get(config, ["repro", "fuzz_bodies"], 10)
    summary = run_fuzz(cases=cases, bodies=bodies, seed=seed)
    return summary.to_dict(), EXIT_OK


COMMANDS = {
    "body": cmd_body,
    "steiner": cmd_steiner,
    "perimeter": cmd_perimeter,
    "rigidity": cmd_rigidity,
    "tvk": cmd_tvk,
    "repro": cmd_repro,
}


class CliParser(argparse.ArgumentParser):
    """用法错误以输入错误码退出，退出码 2 只表示等价性无法保证"""

    def error(self, message: str) -> None:
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT_ERROR, f"{self.prog}: 错误: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = CliParser(prog="aniso_perimeter", description="各向异性周长与Steiner对称化计算工具")
    parser.add_argument("--config", type=str, help="配置文件路径")
    parser.add_argument("--tol", type=float, help="数值容差，覆盖 ANISO_TOL")
    parser.add_argument("--format", choices=["json", "text"], help="输出格式")
    parser.add_argument("--log-level", type=str, help="日志级别")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("body", help="凸体报告")
    p.add_argument("--body", required=True, help="凸体JSON")
    p.add_argument("--x", help="求值点，格式 x,y")
    p.add_argument("--svg", help="输出SVG路径")

    p = sub.add_parser("steiner", help="Steiner对称化")
    p.add_argument("--body", required=True, help="凸体JSON")
    p.add_argument("--svg", help="输出SVG路径")

    p = sub.add_parser("perimeter", help="各向异性周长")
    p.add_argument("--body", required=True, help="凸体JSON")
    p.add_argument("--set", help="多边形集合JSON")
    p.add_argument("--profile", help="截面长度 v 的剖面JSON")
    p.add_argument("--barycenter", help="截面重心 b 的剖面JSON")
    p.add_argument("--strip", help="区间并集 B，例如 0,1;2,3")
    p.add_argument("--svg", help="输出SVG路径")

    p = sub.add_parser("rigidity", help="刚性判定")
    p.add_argument("--body", required=True, help="对称凸体JSON")
    p.add_argument("--profile", required=True, help="截面长度 v 的剖面JSON")
    p.add_argument("--barycenter", help="截面重心 b 的剖面JSON")
    p.add_argument("--svg", help="输出SVG路径")

    p = sub.add_parser("tvk", help="离散向量测度的各向异性全变差")
    p.add_argument("--body", required=True, help="凸体JSON")
    p.add_argument("--measure", required=True, help="测度JSON")
    p.add_argument("--other", help="第二个测度JSON，用于平行四边形不等式")
    p.add_argument("--strip", help="区间并集 G")
    p.add_argument("--depth", type=int, help="二进划分最大层数")

    p = sub.add_parser("repro", help="复现图例与随机检查")
    p.add_argument("figure", choices=["fig2", "fig5", "fig6", "fuzz"])
    p.add_argument("--cases", type=int, help="随机语料的 (v, b) 数量")
    p.add_argument("--seed", type=int, help="随机种子")
    p.add_argument("--svg", help="输出SVG路径")
    return parser


def _print_text(command: str, result: Dict[str, Any], printer: ReportPrinter) -> None:
    if command == "rigidity":
        printer.print_rigidity(result)
    elif command == "repro" and "rows" in result:
        columns = ["beta_deg", "perimeter", "symmetral_perimeter", "gap", "equality", "closed_form"]
        printer.print_rows("倾斜矩形周长扫描", columns, [[row[c] for c in columns] for row in result["rows"]])
    elif command == "perimeter" and "breakdown" in result:
        printer.print_breakdown(result["breakdown"].to_dict())
        printer.print_mapping("对照", {k: v for k, v in result.items() if k not in ("breakdown", "F_of_v")})
    else:
        printer.print_mapping(command, result)


def run(argv: Optional[List[str]] = None) -> int:
    """
    解析参数并执行子命令

    Returns:
        退出码: 0 成功，2 等价性无法保证，3 输入错误
    """
    args = build_parser().parse_args(argv)
    previous_tol = os.environ.get("ANISO_TOL")
    logger = logging.getLogger("aniso_perimeter")
    try:
        config = load_config(args.config or default_config_path())
        log_config = dict(config.get("logging", {}))
        if args.log_level:
            log_config["level"] = args.log_level
        logger = setup_logger(log_config, "aniso_perimeter")

        tol = args.tol if args.tol is not None else safe_get(config, ["numerics", "tolerance"])
        if args.tol is not None or (previous_tol is None and tol is not None):
            os.environ["ANISO_TOL"] = repr(get_tolerance(float(tol)))
        logger.info(f"执行子命令: {args.command}, 容差 {get_tolerance()}")

        result, code = COMMANDS[args.command](args, config, logger)
        output_format = args.format or safe_get(config, ["output", "format"], "json")
        if output_format == "text":
            _print_text(args.command, result, ReportPrinter(logger=logger))
        else:
            digits = safe_get(config, ["output", "significant_digits"], 12)
            print(dump_json(result, digits))
        return code
    except (AnisoPerimeterError, FileNotFoundError, ValueError) as e:
        logger.error(f"输入错误: {e}")
        print(f"错误: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    finally:
        if previous_tol is None:
            os.environ.pop("ANISO_TOL", None)
        else:
            os.environ["ANISO_TOL"] = previous_tol


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
