"""
Command-line interface of the ER load balancing engine.

Verbs: gen, analyze, plan, run, bench. Exit codes: 0 success, 2 invalid
arguments, 3 data errors, 4 internal invariant violations.
"""
import argparse
import json
import logging
import sys
from typing import List, Optional

import config
from bdm import BlockDistributionMatrix, compute_bdm
from core import ConfigurationError, DataError, InvariantViolation
from datagen import PLACEMENTS, ROUND_ROBIN, GenSpec, generate, load_csv, write_csv
from engine import JobConfig
from matching import build_matcher
from reporting import ANALYTIC, EXECUTE, bench_sweep, run_strategy
from strategies import build_strategy
from utils import ReportFormatter

logger = logging.getLogger("app")

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_INVARIANT = 4


def _int_list(text: str) -> List[int]:
    try:
        values = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not values or any(value < 1 for value in values):
        raise argparse.ArgumentTypeError(f"expected positive integers, got {text!r}")
    return values


def _name_list(text: str) -> List[str]:
    names = [part.strip() for part in text.split(",") if part.strip()]
    unknown = [name for name in names if name not in config.STRATEGY_NAMES]
    if not names or unknown:
        raise argparse.ArgumentTypeError(f"strategies must be among {config.STRATEGY_NAMES}, got {text!r}")
    return names


def build_parser() -> argparse.ArgumentParser:
    """Create the argument parser with one sub-command per verb."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--strategy", choices=config.STRATEGY_NAMES, default="pairrange")
    common.add_argument("--m", type=int, help="number of map (input) partitions")
    common.add_argument("--r", type=int, help="number of reduce tasks")
    common.add_argument("--workers", type=int, help="worker threads / simulated nodes")
    common.add_argument("--seed", type=int, help="generator seed")
    common.add_argument("--matcher", choices=config.MATCHER_NAMES)
    common.add_argument("--threshold", type=float, help="match threshold in [0, 1]")
    common.add_argument("--out", help="output file (stdout when omitted)")
    common.add_argument("--env-file", help=".env file with ERLB_* settings")
    common.add_argument("--log-level", help="logging level (stderr)")

    data = common.add_argument_group("dataset")
    data.add_argument("--input", help="CSV input; a dataset is generated when omitted")
    data.add_argument("--key-column", default="key", help="blocking key column of --input")
    data.add_argument("--n", type=int, default=1000, help="generated entity count")
    data.add_argument("--keys", type=int, default=100, help="distinct blocking keys")
    data.add_argument("--zipf", type=float, default=1.0, help="Zipf skew exponent")
    data.add_argument("--attr-len", type=int, default=config.DEFAULT_ATTR_LEN)
    data.add_argument("--placement", choices=PLACEMENTS, default=ROUND_ROBIN)

    parser = argparse.ArgumentParser(prog="app.py", description="Skew-robust MapReduce entity resolution")
    commands = parser.add_subparsers(dest="command", required=True)

    commands.add_parser("gen", parents=[common], help="generate a dataset as CSV")
    commands.add_parser("analyze", parents=[common], help="emit the BDM as JSON")

    plan = commands.add_parser("plan", parents=[common], help="emit a strategy plan as JSON")
    plan.add_argument("--bdm", help="BDM JSON from `analyze` instead of reading the dataset")

    run = commands.add_parser("run", parents=[common], help="run one strategy, emit a RunReport")
    run.add_argument("--timing", action="store_true", help="include wall_time_ms in the report")

    bench = commands.add_parser("bench", parents=[common], help="sweep strategies and r, emit CSV")
    bench.add_argument("--strategies", type=_name_list, default=list(config.STRATEGY_NAMES))
    bench.add_argument("--r-values", type=_int_list, default=[1, 2, 4, 8])
    bench.add_argument("--mode", choices=(EXECUTE, ANALYTIC), default=EXECUTE)
    return parser


def _write(text: str, out: Optional[str]) -> None:
    if not out:
        sys.stdout.write(text)
        return
    try:
        with open(out, "w", encoding="utf-8", newline="") as f:
            f.write(text)
    except OSError as e:
        raise DataError(f"cannot write {out}: {e}")
    logger.info(f"Wrote {out}")


def _pick(value, default):
    return default if value is None else value


def _job_config(args, settings: config.Settings, m: Optional[int] = None) -> JobConfig:
    return JobConfig(
        m=m or _pick(args.m, settings.map_partitions),
        r=_pick(args.r, settings.reduce_tasks),
        worker_count=_pick(args.workers, settings.workers),
    )


def _load_dataset(args, settings: config.Settings):
    m = _pick(args.m, settings.map_partitions)
    if args.input:
        return load_csv(args.input, args.key_column, m)
    spec = GenSpec(
        n=args.n,
        distinct_keys=args.keys,
        zipf_s=args.zipf,
        m=m,
        seed=settings.seed if args.seed is None else args.seed,
        attr_len=args.attr_len,
        placement=args.placement,
    )
    return generate(spec)


def _matcher(args, settings: config.Settings, default: Optional[str] = None):
    name = args.matcher or default or settings.matcher
    threshold = settings.match_threshold if args.threshold is None else args.threshold
    return build_matcher(name, threshold=threshold, attribute=settings.match_attribute)


def cmd_gen(args, settings: config.Settings) -> int:
    partitions = _load_dataset(args, settings)
    if args.out:
        try:
            write_csv(partitions, args.out)
        except OSError as e:
            raise DataError(f"cannot write {args.out}: {e}")
    else:
        write_csv(partitions, sys.stdout)
    return EXIT_OK


def cmd_analyze(args, settings: config.Settings) -> int:
    partitions = _load_dataset(args, settings)
    bdm = compute_bdm(partitions, _job_config(args, settings))
    logger.info("Largest blocks:\n" + ReportFormatter.bdm_frame(bdm).to_string(index=False))
    _write(ReportFormatter.to_json(bdm.to_dict()), args.out)
    return EXIT_OK


def cmd_plan(args, settings: config.Settings) -> int:
    if args.bdm:
        try:
            with open(args.bdm, encoding="utf-8") as f:
                bdm = BlockDistributionMatrix.from_dict(json.load(f))
        except (OSError, UnicodeDecodeError, json.JSONDecodeError) as e:
            raise DataError(f"cannot read BDM {args.bdm}: {e}")
        job = _job_config(args, settings, m=bdm.m)
    else:
        partitions = _load_dataset(args, settings)
        job = _job_config(args, settings)
        bdm = compute_bdm(partitions, job)
    strategy = build_strategy(args.strategy, bdm, job)
    _write(ReportFormatter.to_json(strategy.plan_document()), args.out)
    return EXIT_OK


def cmd_run(args, settings: config.Settings) -> int:
    partitions = _load_dataset(args, settings)
    report = run_strategy(args.strategy, partitions, _job_config(args, settings), _matcher(args, settings))
    logger.info("\n" + ReportFormatter.report_summary(report))
    _write(ReportFormatter.to_json(report.to_dict(include_timing=args.timing)), args.out)
    return EXIT_OK


def cmd_bench(args, settings: config.Settings) -> int:
    partitions = _load_dataset(args, settings)
    workers = args.workers
    if workers is None and config.env_is_set("WORKERS"):
        workers = settings.workers
    result = bench_sweep(
        partitions,
        args.strategies,
        args.r_values,
        worker_count=workers,
        matcher=_matcher(args, settings, default="null"),
        mode=args.mode,
    )
    _write(ReportFormatter.bench_csv(result.table), args.out)
    return EXIT_OK


COMMANDS = {
    "gen": cmd_gen,
    "analyze": cmd_analyze,
    "plan": cmd_plan,
    "run": cmd_run,
    "bench": cmd_bench,
}


def main(argv: Optional[List[str]] = None) -> int:
    """Main application function."""
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        settings = config.Settings.from_env(args.env_file)
        level = (args.log_level or settings.log_level).upper()
        if not isinstance(logging.getLevelName(level), int):
            raise ConfigurationError(f"unknown log level {level!r}")
        logging.basicConfig(
            level=level,
            stream=sys.stderr,
            format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        )
        return COMMANDS[args.command](args, settings)
    except ConfigurationError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except DataError as e:
        print(f"data error: {e}", file=sys.stderr)
        return EXIT_DATA
    except InvariantViolation as e:
        print(f"invariant violation: {e}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
