"""
Check a concretized system against its specification by simulation.
"""
import logging
from typing import Dict, List, Optional

from errors import ConflictAtRuntime, DashAtExternalOutput
from formula.models import GxwSpec
from sdf.models import ActorSystem
from sdf.simulate import initial_state, program, step
from validate.fuzz import fuzz_system, input_valuations
from validate.models import Counterexample, Ok, Trace
from validate.semantics import TraceChecker

logger = logging.getLogger(__name__)

EXHAUSTIVE_LIMIT = 1 << 22


def equivalence_check(sys: ActorSystem, spec: GxwSpec, depth: int,
                      samples: int = 1000, seed: int = 0, exhaustive: Optional[bool] = None):
    """
    Every input trace of length `depth` when that is tractable, else `samples` random ones.

    Returns:
        Ok with the number of explored traces, or Counterexample with an input trace
    """
    moves = input_valuations(spec)
    if exhaustive is None:
        exhaustive = len(moves) ** depth <= EXHAUSTIVE_LIMIT
    if not exhaustive:
        report = fuzz_system(sys, spec, samples, depth, seed)
        if report.ok:
            return Ok(report.traces)
        reasons = tuple(str(v) for v in report.violations) or ("runtime conflict",)
        return Counterexample(report.counterexample, reasons)

    checker = TraceChecker(spec)
    prog = program(sys)
    seen = set()
    path: List[Dict[str, bool]] = []
    explored = 0

    def search(t: int, sys_state, check_state) -> Optional[Counterexample]:
        nonlocal explored
        if t == depth:
            explored += 1
            return None
        key = (t, sys_state, check_state)
        if key in seen:
            return None
        seen.add(key)
        for inputs in moves:
            path.append(inputs)
            try:
                outputs, following = step(sys, sys_state, inputs, prog=prog)
            except (ConflictAtRuntime, DashAtExternalOutput) as exc:
                return Counterexample(Trace(tuple(spec.inputs), (), list(path)), (f"cycle {t}: {exc}",))
            checked, found = checker.feed(check_state, t, {**inputs, **outputs})
            if found:
                return Counterexample(Trace(tuple(spec.inputs), (), list(path)), tuple(str(v) for v in found))
            result = search(t + 1, following, checked)
            if result is not None:
                return result
            path.pop()
        return None

    result = search(0, initial_state(sys), checker.initial())
    if result is not None:
        logger.info("counterexample of length %d: %s", len(result.trace), ", ".join(result.violations))
        return result
    logger.debug("%d distinct traces of length %d explored", explored, depth)
    return Ok(explored)
