"""Command line entry point.

Subcommands: ``run``, ``directions``, ``fuzz``, ``check``, ``render``,
``gtau``, ``replay`` and ``config_test``. JSON results go to stdout (or
``--out``); logs go to stderr. Failures print one JSON line
``{"error": ..., "message": ...}`` on stderr and exit with:

    0 ok, 2 invalid input, 3 cap exceeded, 4 max_iter exceeded,
    5 property failure
"""

import argparse
import json
import os
import sys
from typing import Optional, Sequence

import convertor.config as config
from convertor import describe_package
from convertor.combinatorics import g_tau, gtau_vs_fprime, is_oscillator, iterate_g
from convertor.directions import enumerate_total_orders, enumerate_weak_orders, orders_from_scene
from convertor.dynamics import Operator
from convertor.error_handler import install_exception_handler
from convertor.exceptions import (
    CapExceededError,
    ConfigurationError,
    ConvertorBaseError,
    MaxIterationsError,
    PropertyFailureError,
)
from convertor.fuzz import FuzzConfig, demo_instances, replay_bundle, run_fuzz, run_instance
from convertor.logging_config import create_logger, log_exception
from convertor.properties import PROPERTIES, run_check
from convertor.render import render_family, render_trace, to_svg_text
from convertor.serialization import (
    family_to_json,
    load_document,
    load_family,
    load_scene,
    order_family_from_json,
    order_family_to_json,
    set_family_from_json,
    total_order_to_json,
    trace_from_json,
    trace_to_json,
    verdict_to_json,
    weak_order_to_json,
)
from convertor.storage import dumps_json, ensure_output_directories, write_json, write_text

logger = create_logger(__name__)

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_CAP = 3
EXIT_MAX_ITER = 4
EXIT_PROPERTY = 5

# Most specific first; everything else in the hierarchy is invalid input
EXIT_CODES = [
    (CapExceededError, EXIT_CAP, "cap_exceeded"),
    (MaxIterationsError, EXIT_MAX_ITER, "max_iter"),
    (PropertyFailureError, EXIT_PROPERTY, "property_failure"),
    (ConvertorBaseError, EXIT_INVALID, "invalid_input"),
]


def _emit(document, out: Optional[str]) -> None:
    if out:
        write_json(document, out)
    else:
        sys.stdout.write(dumps_json(document))


def _load_scene_and_family(args):
    """Scene and raw start subsets from files or a named demo instance."""
    if getattr(args, "demo", None):
        scene, family = demo_instances()[args.demo]
        return scene, [p.labels for p in family]
    if not args.scene or not args.family:
        raise ConfigurationError("Pass --scene and --family, or --demo")
    scene = load_scene(args.scene)
    load_family(args.family, scene)
    return scene, load_document(args.family)


def cmd_run(args) -> int:
    scene, raw_start = _load_scene_and_family(args)
    operator = Operator.parse(args.mode)
    _, trace = run_instance(scene, raw_start, operator, args.max_iter)
    logger.info(f"✅ {operator.value}: transient={trace.transient}, period={trace.period}")
    _emit(trace_to_json(trace), args.out)
    return EXIT_OK


def cmd_directions(args) -> int:
    scene = load_scene(args.scene)
    if args.kind == "total":
        orders = [total_order_to_json(t) for t in enumerate_total_orders(scene, method=args.method)]
    else:
        orders = [weak_order_to_json(w) for w in enumerate_weak_orders(scene)]
    _emit({"kind": args.kind, "count": len(orders), "orders": orders}, args.out)
    return EXIT_OK


def _fuzz_config(args) -> FuzzConfig:
    return FuzzConfig(
        dim=args.dim,
        num_vertices=args.vertices,
        num_polytopes=args.polytopes,
        coordinate_bound=args.bound,
        seed=args.seed,
        trials=args.trials,
        operator=Operator.parse(args.operator),
        simplex_mode=args.simplex,
        general_position=args.general_position,
        max_iter=args.max_iter,
    ).validate()


def cmd_fuzz(args) -> int:
    report = run_fuzz(_fuzz_config(args))
    _emit(report.to_json(), args.out)
    if args.out:
        report.write_csv(os.path.splitext(args.out)[0] + ".csv")
    if args.findings_dir is not None:
        findings_dir = ensure_output_directories(args.findings_dir or None)["findings_dir"]
        for bundle in report.findings:
            name = f"finding-seed{bundle['seed']}-trial{bundle['trial']}.json"
            write_json(bundle, os.path.join(findings_dir, name))
    if report.failed:
        raise PropertyFailureError(
            f"{len(report.findings)} simplex-mode trials cycled with period > 2",
            bundle=report.findings[0],
        )
    return EXIT_OK


def cmd_check(args) -> int:
    report = run_check(args.property, _fuzz_config(args), steps=args.steps)
    _emit(report, args.out)
    if report["failed"]:
        raise PropertyFailureError(
            f"{args.property}: {report['failed']} of {report['trials']} instances failed",
            bundle=report["first_counterexample"],
        )
    return EXIT_OK


def cmd_render(args) -> int:
    if args.demo:
        scene, family = demo_instances()[args.demo]
        trace = run_instance(scene, [p.labels for p in family], Operator.FPRIME, config.DEFAULT_MAX_ITER)[1]
        root = render_trace(scene, trace)
    elif args.trace:
        scene = load_scene(args.scene)
        root = render_trace(scene, trace_from_json(load_document(args.trace), scene))
    elif args.family:
        scene = load_scene(args.scene)
        family = load_family(args.family, scene)
        root = render_family(scene, family, str(family))
    else:
        raise ConfigurationError("Pass --family or --trace with --scene, or --demo")
    text = to_svg_text(root)
    if args.out:
        write_text(text, args.out)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_gtau(args) -> int:
    if args.tau:
        tau = order_family_from_json(load_document(args.tau))
    elif args.scene:
        tau = orders_from_scene(load_scene(args.scene))
    else:
        raise ConfigurationError("Pass --tau or --scene to define the order family")

    if args.compare:
        if not args.scene:
            raise ConfigurationError("--compare needs --scene")
        scene = load_scene(args.scene)
        _emit(gtau_vs_fprime(load_family(args.family, scene), scene, args.steps), args.out)
        return EXIT_OK

    if args.oscillator:
        verdict = is_oscillator(
            tau, mode=args.oscillator, count=args.count, seed=args.seed, max_iter=args.max_iter
        )
        document = verdict_to_json(verdict)
        document["tau"] = order_family_to_json(tau)
        _emit(document, args.out)
        return EXIT_OK

    if not args.family:
        raise ConfigurationError("Pass --family with the start collection")
    start = set_family_from_json(load_document(args.family))
    if args.steps_only:
        states = [start]
        for _ in range(args.steps):
            states.append(g_tau(states[-1], tau))
        _emit({"states": [family_to_json(s) for s in states]}, args.out)
        return EXIT_OK
    trace = iterate_g(start, tau, args.max_iter)
    _emit(trace_to_json(trace), args.out)
    return EXIT_OK


def cmd_replay(args) -> int:
    bundle = load_document(args.bundle)
    if not replay_bundle(bundle, args.max_iter):
        raise PropertyFailureError("Replayed bundle produced a different trace", bundle=bundle)
    logger.info("✅ Bundle reproduces its recorded trace")
    return EXIT_OK


def cmd_config_test(args) -> int:
    """Log the effective configuration with pass/fail markers."""
    logger.info("🔍 Starting Configuration Validation")
    package = describe_package()
    logger.info(f"   📦 {package['name']} {package['version']}: {', '.join(package['modules'])}")
    for name, value in config.describe_config().items():
        logger.info(f"   ✅ {name}: {value}")
    if os.path.isdir(config.OUTPUT_DIR):
        logger.info(f"   ✅ Output directory {config.OUTPUT_DIR} exists")
    else:
        logger.warning(f"   ❌ Output directory {config.OUTPUT_DIR} does NOT exist yet")
    config.validate_config()
    logger.info("✨ Configuration Validation Complete")
    return EXIT_OK


def _add_fuzz_flags(parser: argparse.ArgumentParser, trials: int) -> None:
    parser.add_argument("--dim", type=int, default=2)
    parser.add_argument("--vertices", type=int, default=4)
    parser.add_argument("--polytopes", type=int, default=3)
    parser.add_argument("--bound", type=int, default=6, help="numerators drawn in [-bound, bound]")
    parser.add_argument("--seed", type=int, default=config.DEFAULT_SEED)
    parser.add_argument("--trials", type=int, default=trials)
    parser.add_argument("--operator", default="F", help="F, Fprime or gtau")
    parser.add_argument("--simplex", action="store_true", help="affinely independent vertices")
    parser.add_argument("--general-position", action="store_true")
    parser.add_argument("--max-iter", type=int, default=config.DEFAULT_MAX_ITER)
    parser.add_argument("--out")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="convertor", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    demos = sorted(demo_instances())

    run = sub.add_parser("run", help="iterate F or F' to recurrence")
    run.add_argument("--scene")
    run.add_argument("--family")
    run.add_argument("--demo", choices=demos)
    run.add_argument("--mode", default="F", help="F, Fprime or gtau")
    run.add_argument("--max-iter", type=int, default=config.DEFAULT_MAX_ITER)
    run.add_argument("--out")
    run.set_defaults(handler=cmd_run)

    directions = sub.add_parser("directions", help="enumerate realizable orders")
    directions.add_argument("--scene", required=True)
    directions.add_argument("--kind", choices=["total", "weak"], default="total")
    directions.add_argument("--method", choices=["auto", "sweep", "lp"], default="auto")
    directions.add_argument("--out")
    directions.set_defaults(handler=cmd_directions)

    fuzz = sub.add_parser("fuzz", help="batch random experiment")
    _add_fuzz_flags(fuzz, trials=100)
    fuzz.add_argument(
        "--findings-dir", nargs="?", const="", help="also write each finding bundle to disk"
    )
    fuzz.set_defaults(handler=cmd_fuzz)

    check = sub.add_parser("check", help="run a property suite")
    check.add_argument("property", choices=sorted(PROPERTIES))
    _add_fuzz_flags(check, trials=100)
    check.add_argument("--steps", type=int, default=6)
    check.set_defaults(handler=cmd_check)

    render = sub.add_parser("render", help="draw a planar family or trace as SVG")
    render.add_argument("--scene")
    render.add_argument("--family")
    render.add_argument("--trace")
    render.add_argument("--demo", choices=demos)
    render.add_argument("--out")
    render.set_defaults(handler=cmd_render)

    gtau = sub.add_parser("gtau", help="iterate the abstract map G_tau")
    gtau.add_argument("--tau", help="JSON array of total orders")
    gtau.add_argument("--scene", help="take tau from the scene's restricted directions")
    gtau.add_argument("--family", help="JSON array of label subsets")
    gtau.add_argument("--max-iter", type=int, default=config.DEFAULT_MAX_ITER)
    gtau.add_argument("--steps", type=int, default=6)
    gtau.add_argument("--steps-only", action="store_true", help="fixed number of steps, no cycle search")
    gtau.add_argument("--oscillator", choices=["exhaustive", "sampled"])
    gtau.add_argument("--count", type=int, default=1000)
    gtau.add_argument("--seed", type=int, default=config.DEFAULT_SEED)
    gtau.add_argument("--compare", action="store_true", help="compare with F' on --scene")
    gtau.add_argument("--out")
    gtau.set_defaults(handler=cmd_gtau)

    replay = sub.add_parser("replay", help="re-run a finding bundle")
    replay.add_argument("--bundle", required=True)
    replay.add_argument("--max-iter", type=int, default=config.DEFAULT_MAX_ITER)
    replay.set_defaults(handler=cmd_replay)

    config_test = sub.add_parser("config_test", help="show and validate configuration")
    config_test.set_defaults(handler=cmd_config_test)
    return parser


def _report_error(e: Exception) -> int:
    for kind_type, code, kind in EXIT_CODES:
        if isinstance(e, kind_type):
            sys.stderr.write(json.dumps({"error": kind, "message": str(e)}) + "\n")
            return code
    raise e


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Parse arguments, dispatch, and map failures to exit codes."""
    install_exception_handler()
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except MaxIterationsError as e:
        logger.error(f"❌ No recurrence after {len(e.history)} states")
        return _report_error(e)
    except (CapExceededError, PropertyFailureError) as e:
        logger.error(f"❌ {e}")
        return _report_error(e)
    except ConvertorBaseError as e:
        log_exception(logger, e, {"command": args.command})
        return _report_error(e)


if __name__ == "__main__":
    sys.exit(main())
