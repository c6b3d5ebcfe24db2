"""
dfsqc command line.

    dfsqc run CONFIG [--seed S] [--output DIR]   run one experiment and write its reports
    dfsqc validate CONFIG                        check a config against the schema
    dfsqc dump-sequence [--control C --target T] print the compiled CNOT pulse sequence as JSON
    dfsqc schema                                 print the ExperimentConfig JSON schema

Exit codes: 0 success, 1 internal error, 2 invalid configuration, 3 numerical contract violated.
"""

import argparse
import csv
import io
import json
import logging
import os
import sys
import tempfile
from collections.abc import Sequence
from pathlib import Path

from dfsqc._version import __version__
from dfsqc.cli.config import ExperimentConfig, config_schema, load_config
from dfsqc.cli.settings import DfsqcSettings
from dfsqc.encoding.register import LogicalRegister
from dfsqc.engines import engine_for
from dfsqc.engines.base import CsvTable, ExperimentResult
from dfsqc.gates.compiler import compile_cnot, preparation_sequence
from dfsqc.gates.params import GateParams
from dfsqc.toolkit.errors import ConfigError, DfsqcException

logger = logging.getLogger(__name__)

CSV_CONTRACT = """CSV columns per experiment kind:
  coherence  coherence_scan.csv   phi_std, coherence_ratio, analytic_ratio
  ms-scan    timing_scan.csv      fraction, infidelity
             imbalance_scan.csv   epsilon, infidelity
  cp-scan    timing_scan.csv      fraction, infidelity
             imbalance_scan.csv   epsilon, infidelity
"""


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dfsqc",
        description="Decoherence-free subspace trapped-ion simulator",
        epilog=CSV_CONTRACT,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--threads", type=int, default=None, help="worker threads (default: DFSQC_THREADS or 1)")
    parser.add_argument("--log-level", default=None, help="logging level (default: DFSQC_LOG_LEVEL or WARNING)")
    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser("run", help="run an experiment", epilog=CSV_CONTRACT, formatter_class=argparse.RawDescriptionHelpFormatter)
    run.add_argument("config", help="experiment config (JSON)")
    run.add_argument("--seed", type=int, default=None, help="override the config and noise seeds")
    run.add_argument("--output", default=None, help="output directory (default: the config's output)")

    validate = commands.add_parser("validate", help="validate an experiment config")
    validate.add_argument("config")

    dump = commands.add_parser("dump-sequence", help="print the compiled CNOT pulse sequence")
    dump.add_argument("--control", type=int, default=0)
    dump.add_argument("--target", type=int, default=1)
    dump.add_argument("--n-logical", type=int, default=2)
    dump.add_argument("--prepare", default=None, metavar="BITS", help="prepend the preparation pulses for these logical bits")
    dump.add_argument("--config", default=None, help="take gate parameters and register from this config")

    commands.add_parser("schema", help="print the experiment config JSON schema")
    return parser


def write_atomic(path: Path, text: str) -> None:
    """Write through a temporary file in the same directory, then rename over ``path``"""
    path.parent.mkdir(parents=True, exist_ok=True)
    with tempfile.NamedTemporaryFile("w", encoding="utf-8", dir=path.parent, prefix=f".{path.name}.", delete=False, newline="") as handle:
        handle.write(text)
        temp_name = handle.name
    os.replace(temp_name, path)


def render_csv(table: CsvTable) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerows(table)
    return buffer.getvalue()


def write_outputs(result: ExperimentResult, output_dir: Path) -> None:
    write_atomic(output_dir / "report.json", result.report.to_json())
    write_atomic(output_dir / "matrices.json", result.matrices.to_json())
    for name, table in result.tables.items():
        write_atomic(output_dir / name, render_csv(table))


def check_limits(config: ExperimentConfig, settings: DfsqcSettings) -> None:
    if config.layout.physical_dim > settings.max_dimension:
        raise ConfigError(details=f"register dimension {config.layout.physical_dim} exceeds DFSQC_MAX_DIMENSION={settings.max_dimension}")


def command_run(args: argparse.Namespace, settings: DfsqcSettings, threads: int) -> int:
    config = load_config(args.config)
    if args.seed is not None:
        config = config.with_seed(args.seed)
    check_limits(config, settings)
    engine = engine_for(config.kind)(config, threads=threads)
    logger.info(f"Running {config.kind} with {threads} thread(s)")
    result = engine.run()
    output_dir = Path(args.output or config.output)
    write_outputs(result, output_dir)
    if result.report.error is not None:
        print(f"dfsqc: {result.report.error.message}: {result.report.error.details}", file=sys.stderr)
        return result.report.error.code
    print(str(output_dir / "report.json"))
    return 0


def command_validate(args: argparse.Namespace, settings: DfsqcSettings) -> int:
    config = load_config(args.config)
    check_limits(config, settings)
    print(f"{args.config}: valid {config.kind} config")
    return 0


def command_dump_sequence(args: argparse.Namespace) -> int:
    if args.config:
        config = load_config(args.config)
        params, register = config.gates, config.layout
    else:
        params, register = GateParams(), LogicalRegister.linear(args.n_logical)
    sequence = compile_cnot(args.control, args.target, params, register)
    if args.prepare:
        sequence = preparation_sequence(args.prepare, register, params).then(sequence)
    payload = sequence.model_dump(mode="json", by_alias=True)
    payload["total_duration_us"] = sequence.total_duration_us
    print(json.dumps(payload, indent=2, sort_keys=True))
    return 0


def configure_logging(level: str) -> None:
    logging.basicConfig(level=level.upper(), format="%(asctime)s %(name)s %(levelname)s %(message)s", stream=sys.stderr)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    settings = DfsqcSettings()
    configure_logging(args.log_level or settings.log_level)
    threads = args.threads or settings.threads

    try:
        if args.command == "run":
            return command_run(args, settings, threads)
        if args.command == "validate":
            return command_validate(args, settings)
        if args.command == "dump-sequence":
            return command_dump_sequence(args)
        print(json.dumps(config_schema(), indent=2, sort_keys=True))
        return 0
    except DfsqcException as e:
        print(f"dfsqc: {e}", file=sys.stderr)
        return e.code
    except Exception as e:
        logger.exception(f"Unexpected failure in {args.command}")
        print(f"dfsqc: internal error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
