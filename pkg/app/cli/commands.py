"""
Delegating commands: simulate, check, export, omega.
"""
import logging
import sys
from typing import Optional

from depends import load_netlist_depend, load_spec_depend, load_trace_depend
from errors import GxwError
from formula.omega import compute_omega, unroll_complete
from qbf.encode import encode_static
from qbf.qdimacs import export_qdimacs
from sdf.netlist import to_dot, write_atomic
from sdf.simulate import run
from validate.semantics import check_trace
from validate.trace import write_trace_csv

logger = logging.getLogger(__name__)


def _emit(text: str, path: Optional[str]):
    if path:
        write_atomic(path, text)
        logger.info("wrote %s", path)
    else:
        sys.stdout.write(text)


def cmd_simulate(args) -> int:
    """Run a netlist on an input trace and print the joint trace."""
    system = load_netlist_depend(args.netlist)
    trace = load_trace_depend(args.trace, system.inputs)
    outputs = run(system, trace.input_rows())
    _emit(write_trace_csv(trace.with_outputs(system.outputs, outputs)), args.output)
    return 0


def cmd_check(args) -> int:
    """Print the violations of a joint trace; exit 1 when there are any."""
    spec = load_spec_depend(args.spec)
    trace = load_trace_depend(args.trace, spec.inputs, spec.outputs)
    if not trace.joint:
        logger.info("trace carries no outputs, only input-side conditions are checked")
    violations = check_trace(spec, trace)
    for violation in violations:
        print(violation)
    return 1 if violations else 0


def cmd_export(args) -> int:
    system = load_netlist_depend(args.netlist)
    if not args.dot and not args.qdimacs:
        raise GxwError("export needs --dot or --qdimacs")
    if args.dot:
        _emit(to_dot(system), args.output)
    if args.qdimacs:
        if not args.spec:
            raise GxwError("--qdimacs needs --spec for the assumption and invariants")
        problem = encode_static(system, load_spec_depend(args.spec))
        _emit(export_qdimacs(problem), args.qdimacs)
    return 0


def cmd_omega(args) -> int:
    spec = load_spec_depend(args.spec)
    print(compute_omega(spec))
    if not unroll_complete(spec):
        logger.info("the bounded unroll is not conclusive for %s", args.spec)
    return 0
