"""
Seeded random traces, system fuzzing and random specifications.
"""
import logging
import random
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, List, Optional, Sequence

from errors import ConflictAtRuntime, DashAtExternalOutput, UnsatisfiableAssumption
from formula.dnf import evaluate_window
from formula.models import TRUE, GxwSpec
from formula.patterns import load_spec
from sdf.models import ActorSystem
from sdf.simulate import run
from validate.models import Trace, Violation
from validate.semantics import check_trace

logger = logging.getLogger(__name__)


def assumption_valuations(spec: GxwSpec) -> List[Dict[str, bool]]:
    """Every assignment to the assumption's variables that satisfies it."""
    names = sorted(spec.assumption.variables())
    valuations = []
    for bits in product((False, True), repeat=len(names)):
        row = dict(zip(names, bits))
        if evaluate_window(spec.assumption, [row]):
            valuations.append(row)
    return valuations


def input_valuations(spec: GxwSpec) -> List[Dict[str, bool]]:
    """Every assumption-respecting input assignment, in binary order."""
    rows = []
    for bits in product((False, True), repeat=len(spec.inputs)):
        row = dict(zip(spec.inputs, bits))
        if spec.assumption == TRUE or evaluate_window(spec.assumption, [row]):
            rows.append(row)
    return rows


def random_trace(spec: GxwSpec, length: int, seed: int = 0) -> Trace:
    """
    Sample each cycle uniformly from the inputs satisfying the assumption.

    Raises:
        UnsatisfiableAssumption: no input assignment satisfies the assumption
    """
    rng = random.Random(seed)
    constrained: List[Dict[str, bool]] = []
    if spec.assumption != TRUE:
        constrained = assumption_valuations(spec)
        if not constrained:
            raise UnsatisfiableAssumption(f"assumption {spec.assumption} has no model")
    fixed = set(constrained[0]) if constrained else set()
    free = [n for n in spec.inputs if n not in fixed]
    rows = []
    for _ in range(length):
        row = dict(rng.choice(constrained)) if constrained else {}
        for name in free:
            row[name] = rng.random() < 0.5
        rows.append({n: row[n] for n in spec.inputs})
    return Trace(tuple(spec.inputs), (), rows)


@dataclass
class FuzzReport:
    traces: int = 0
    cycles: int = 0
    conflicts: int = 0
    violations: List[Violation] = field(default_factory=list)
    counterexample: Optional[Trace] = None

    @property
    def ok(self) -> bool:
        return not self.conflicts and not self.violations


def fuzz_system(sys: ActorSystem, spec: GxwSpec, n: int, length: int, seed: int = 0) -> FuzzReport:
    """Simulate `n` random traces and check every joint trace."""
    report = FuzzReport()
    for k in range(n):
        trace = random_trace(spec, length, seed + k)
        report.traces += 1
        report.cycles += length
        try:
            outputs = run(sys, trace.rows)
        except (ConflictAtRuntime, DashAtExternalOutput) as exc:
            logger.info("trace %d: %s", k, exc)
            report.conflicts += 1
            report.counterexample = report.counterexample or trace
            continue
        found = check_trace(spec, trace.with_outputs(sys.outputs, outputs))
        if found:
            logger.info("trace %d: %s", k, found[0])
            report.violations.extend(found)
            report.counterexample = report.counterexample or trace
    return report


def _literal(rng: random.Random, names: Sequence[str]) -> str:
    name = rng.choice(names)
    return name if rng.random() < 0.5 else f"!{name}"


def _clause(rng: random.Random, names: Sequence[str], depth: int) -> str:
    """One or two literals over distinct (variable, offset) pairs."""
    slots = [(d, n) for d in range(depth + 1) for n in names]
    picked = rng.sample(slots, min(len(slots), rng.randint(1, 2)))
    parts = []
    for offset, name in picked:
        text = name if rng.random() < 0.5 else f"!{name}"
        parts.append("X " * offset + text)
    return " & ".join(parts)


def random_spec_text(seed: int, max_specs: int = 3, max_inputs: int = 3, max_outputs: int = 2) -> str:
    """
    Spec text restricted to single-clause parts of depth at most one,
    input-only releases, no invariants and no assumption.
    """
    rng = random.Random(seed)
    inputs = [f"i{k}" for k in range(rng.randint(1, max_inputs))]
    outputs = [f"o{k}" for k in range(rng.randint(1, max_outputs))]
    lines = [f"input {', '.join(inputs)};", f"output {', '.join(outputs)};"]
    for k in range(rng.randint(1, max_specs)):
        out = _literal(rng, outputs)
        shift = rng.randint(0, 1)
        prefix = f"X[{shift}] " if shift else ""
        trigger = _clause(rng, inputs, shift)
        kind = rng.choice(('P1', 'P2', 'P3', 'P4'))
        if kind == 'P1':
            body = f"{out} W ({_clause(rng, inputs, 1)})"
        elif kind == 'P2':
            body = f"G(({trigger}) -> {prefix}({out} W ({_clause(rng, inputs, 1)})))"
        elif kind == 'P3':
            body = f"G(({trigger}) -> {prefix}{out})"
        else:
            body = f"G(({trigger}) <-> {prefix}{out})"
        lines.append(f"R{k}: {body};")
    return "\n".join(lines) + "\n"


def random_spec(seed: int, **limits) -> GxwSpec:
    return load_spec(random_spec_text(seed, **limits))
