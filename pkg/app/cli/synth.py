"""
End-to-end synthesis: parse, build, order, encode, solve, concretize.
"""
import logging
import os
import time
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Dict, Optional

from errors import (
    EXIT_INTERNAL, EXIT_REJECTED, EXIT_SYNTHESIZED, EXIT_UNKNOWN, EXIT_UNREALIZABLE,
    CycleError, DepthExceeded, MixedClause, NoMatch, TemporalOperatorInPropositionalContext,
)
from formula.models import GxwSpec
from formula.omega import compute_omega, unroll_complete
from formula.patterns import load_spec
from qbf.encode import encode_static, encode_unrolled
from qbf.models import QbfProblem, SatWitness
from qbf.qdimacs import apply_witness, export_qdimacs, witness_text
from qbf.solver import solve_2qbf
from sdf.models import ActorSystem
from sdf.netlist import export_json, to_dot, write_atomic
from sdf.schedule import evaluation_order
from synthesis.builder import kinds_count, provenance_summary, synthesize_structure
from synthesis.models import PartialSystem
from validate.fuzz import fuzz_system
from cli.schemas import FuzzSummary, RunReport
from depends import load_text_depend

logger = logging.getLogger(__name__)

PATTERN_ERRORS = (TemporalOperatorInPropositionalContext, NoMatch, MixedClause, DepthExceeded)
EXIT_CODES = {
    'synthesized': EXIT_SYNTHESIZED,
    'unknown': EXIT_UNKNOWN,
    'unrealizable': EXIT_UNREALIZABLE,
    'rejected-cycle': EXIT_REJECTED,
    'rejected-pattern': EXIT_REJECTED,
    'validation-failed': EXIT_INTERNAL,
}
FUZZ_LENGTH = 50


@dataclass
class SynthOptions:
    unroll: str = 'auto'
    fuzz: int = 0
    seed: int = 0
    method: str = 'cegar'


@dataclass
class SynthOutcome:
    report: RunReport
    spec: Optional[GxwSpec] = None
    structure: Optional[PartialSystem] = None
    system: Optional[ActorSystem] = None
    problem: Optional[QbfProblem] = None


@contextmanager
def phase(timings: Dict[str, float], name: str):
    started = time.perf_counter()
    try:
        yield
    finally:
        timings[name] = round((time.perf_counter() - started) * 1000, 3)
        logger.info("%s took %.1f ms", name, timings[name])


def _finish(outcome: SynthOutcome, verdict: str, detail: Optional[str] = None) -> SynthOutcome:
    outcome.report.verdict = verdict
    outcome.report.exit_code = EXIT_CODES[verdict]
    outcome.report.detail = detail
    return outcome


def _unroll_depth(unroll: str, omega: int) -> Optional[int]:
    if unroll == 'off':
        return None
    if unroll == 'auto':
        return omega
    depth = int(unroll)
    if depth < 1:
        raise ValueError(f"--unroll must be auto, off or a positive depth, not {unroll!r}")
    return depth


def run_pipeline(text: str, name: str = '<spec>', options: Optional[SynthOptions] = None) -> SynthOutcome:
    """
    Synthesize a controller from spec text.

    Rejections by the fragment or by a feedback loop are reported through the
    verdict; parse errors propagate.
    """
    options = options or SynthOptions()
    outcome = SynthOutcome(RunReport(spec=name, verdict='unknown', exit_code=EXIT_UNKNOWN))
    report = outcome.report
    timings = report.timings
    try:
        with phase(timings, 'parse'):
            spec = outcome.spec = load_spec(text)
    except PATTERN_ERRORS as exc:
        logger.error("%s: %s", name, exc)
        return _finish(outcome, 'rejected-pattern', str(exc))
    report.omega = compute_omega(spec)
    report.unroll_complete = unroll_complete(spec)

    try:
        with phase(timings, 'build'):
            ps = outcome.structure = synthesize_structure(spec)
            evaluation_order(ps.system())
    except CycleError as exc:
        logger.error("%s: %s", name, exc)
        return _finish(outcome, 'rejected-cycle', str(exc))
    report.provenance = provenance_summary(ps)
    report.actors = {kind.value: n for kind, n in sorted(kinds_count(ps).items(), key=lambda item: item[0].value)}

    with phase(timings, 'encode'):
        problem = outcome.problem = encode_static(ps, spec)
    report.encoding = problem.summary()
    with phase(timings, 'solve'):
        result = solve_2qbf(problem, options.method)

    if not result:
        depth = _unroll_depth(options.unroll, report.omega)
        if depth is None:
            return _finish(outcome, 'unknown', "static check failed, unrolling disabled")
        if options.unroll == 'auto' and not report.unroll_complete:
            return _finish(outcome, 'unknown', "static check failed, bounded unroll is not conclusive for this spec")
        report.unroll_depth = depth
        with phase(timings, 'encode_unrolled'):
            unrolled = encode_unrolled(ps, spec, depth)
        with phase(timings, 'solve_unrolled'):
            result = solve_2qbf(unrolled, options.method)
        if not report.unroll_complete:
            return _finish(outcome, 'unknown', f"unrolled check at depth {depth} is not conclusive for this spec")
        if not result:
            return _finish(outcome, 'unrealizable', f"conflict forced within {depth} cycles")
        if depth < report.omega:
            return _finish(outcome, 'unknown', f"unrolled depth {depth} is below the bound {report.omega}")
        outcome.problem = unrolled

    assert isinstance(result, SatWitness)
    report.witness = dict(result.values)
    outcome.system = apply_witness(ps, result)
    if options.fuzz:
        with phase(timings, 'validate'):
            fuzzed = fuzz_system(outcome.system, spec, options.fuzz, FUZZ_LENGTH, options.seed)
        report.fuzz = FuzzSummary(traces=fuzzed.traces, length=FUZZ_LENGTH, conflicts=fuzzed.conflicts,
                                  violations=[str(v) for v in fuzzed.violations[:10]])
        if not fuzzed.ok:
            logger.error("%s: validation found %d conflicts and %d violations",
                         name, fuzzed.conflicts, len(fuzzed.violations))
            return _finish(outcome, 'validation-failed',
                           f"{fuzzed.conflicts} runtime conflicts, {len(fuzzed.violations)} violations in {fuzzed.traces} traces")
    return _finish(outcome, 'synthesized')


def write_artifacts(outcome: SynthOutcome, directory: str, stem: str, dot: bool = False,
                    qdimacs: Optional[str] = None, json_report: Optional[str] = None) -> RunReport:
    """Write the netlist, DOT, witness, QDIMACS and report files of a run."""
    report = outcome.report
    os.makedirs(directory, exist_ok=True)
    path = os.path.join(directory, stem)
    if outcome.system is not None:
        meta = {'spec': report.spec, 'omega': str(report.omega)}
        report.artifacts['netlist'] = write_atomic(f"{path}.json", export_json(outcome.system, meta=meta))
        if dot:
            report.artifacts['dot'] = write_atomic(f"{path}.dot", to_dot(outcome.system))
        report.artifacts['witness'] = write_atomic(f"{path}.witness", witness_text(SatWitness(report.witness)))
    if qdimacs and outcome.problem is not None:
        report.artifacts['qdimacs'] = write_atomic(qdimacs, export_qdimacs(outcome.problem))
    report_path = json_report or f"{path}.report.json"
    report.artifacts['report'] = report_path
    write_atomic(report_path, report.model_dump_json(indent=2))
    return report


def cmd_synth(args) -> int:
    text = load_text_depend(args.spec)
    stem = os.path.splitext(os.path.basename(args.spec))[0]
    options = SynthOptions(unroll=args.unroll, fuzz=args.fuzz, seed=args.seed)
    outcome = run_pipeline(text, args.spec, options)
    report = write_artifacts(outcome, args.output, stem, dot=args.dot,
                             qdimacs=args.qdimacs, json_report=args.json_report)
    print(f"{report.verdict}: {args.spec}" + (f" ({report.detail})" if report.detail else ""))
    if report.witness is not None:
        print(witness_text(SatWitness(report.witness)), end='')
    return report.exit_code
