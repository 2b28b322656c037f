"""
Command-line router: one sub-command per pipeline entry point.
"""
import argparse
import logging
import sys
from typing import List, Optional

from errors import EXIT_INTERNAL, EXIT_USAGE, GxwError
from cli.bench import cmd_bench
from cli.commands import cmd_check, cmd_export, cmd_omega, cmd_simulate
from cli.synth import cmd_synth

logger = logging.getLogger(__name__)


class CommandParser(argparse.ArgumentParser):
    """Exits with EXIT_USAGE on bad arguments."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _unroll(value: str) -> str:
    if value in ('auto', 'off'):
        return value
    if value.isdigit() and int(value) > 0:
        return value
    raise argparse.ArgumentTypeError("expected auto, off or a positive depth")


def build_parser() -> argparse.ArgumentParser:
    parser = CommandParser(prog='gxw-synth', description="Synthesize actor-based controllers from GXW specifications")
    commands = parser.add_subparsers(dest='command', required=True)

    synth = commands.add_parser('synth', help="synthesize a controller")
    synth.add_argument('spec', help="spec file")
    synth.add_argument('-o', '--output', default='.', help="artifact directory")
    synth.add_argument('--dot', action='store_true', help="also write a Graphviz DOT file")
    synth.add_argument('--qdimacs', help="also write the solved encoding to this file")
    synth.add_argument('--unroll', type=_unroll, default='auto', help="auto, off or a forced depth")
    synth.add_argument('--fuzz', type=int, default=0, help="validate on this many random traces")
    synth.add_argument('--seed', type=int, default=0, help="seed for random validation")
    synth.add_argument('--json-report', help="report path, default <dir>/<stem>.report.json")
    synth.set_defaults(handler=cmd_synth)

    simulate = commands.add_parser('simulate', help="run a netlist on an input trace")
    simulate.add_argument('netlist', help="netlist JSON")
    simulate.add_argument('trace', help="input trace CSV")
    simulate.add_argument('-o', '--output', help="joint trace CSV, default stdout")
    simulate.set_defaults(handler=cmd_simulate)

    check = commands.add_parser('check', help="check a trace against a spec")
    check.add_argument('spec', help="spec file")
    check.add_argument('trace', help="joint trace CSV")
    check.set_defaults(handler=cmd_check)

    export = commands.add_parser('export', help="export a netlist")
    export.add_argument('netlist', help="netlist JSON")
    export.add_argument('--dot', action='store_true', help="emit Graphviz DOT")
    export.add_argument('--qdimacs', help="write the static encoding to this file")
    export.add_argument('--spec', help="spec file, required with --qdimacs")
    export.add_argument('-o', '--output', help="DOT output file, default stdout")
    export.set_defaults(handler=cmd_export)

    omega = commands.add_parser('omega', help="print the unroll bound of a spec")
    omega.add_argument('spec', help="spec file")
    omega.set_defaults(handler=cmd_omega)

    bench = commands.add_parser('bench', help="time the pipeline on synthetic specs")
    bench.add_argument('--n-in', type=int, default=20, help="inputs")
    bench.add_argument('--n-out', type=int, default=16, help="outputs")
    bench.add_argument('-k', type=int, nargs='+', default=[16], help="lock conjuncts, one row each")
    bench.add_argument('--seed', type=int, default=0)
    bench.set_defaults(handler=cmd_bench)
    return parser


def dispatch(argv: Optional[List[str]] = None) -> int:
    """Run one command and map its outcome to an exit code."""
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except GxwError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except Exception:
        logger.exception("%s failed", args.command)
        return EXIT_INTERNAL
