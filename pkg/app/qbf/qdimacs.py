"""
QDIMACS export, witness files and fixing resolution parameters.
"""
import re
from dataclasses import replace
from typing import Dict, List, Mapping, Tuple, Union

from errors import GxwError, ParseError, UnknownWitnessVariable
from qbf.models import QbfProblem, SatWitness
from sdf.models import ActorKind, ActorSystem, ext

Prefix = List[Tuple[str, List[int]]]


def export_qdimacs(problem: QbfProblem) -> str:
    """
    Prefix `e` parameters, `a` every other variable, `e` implication auxiliaries.

    The matrix states (g | f_1 | ... | f_n), f_i -> not assumption clause i,
    and g -> every guarantee clause. Variables are renumbered densely.
    """
    if problem.trivially_valid:
        return "p cnf 0 0\n"
    exists = list(problem.exists)
    parameters = set(exists)
    others = [v for v in range(1, problem.num_vars + 1) if v not in parameters]
    number = {v: k for k, v in enumerate(exists + others, start=1)}
    top = len(number)
    flags = list(range(top + 1, top + 1 + len(problem.assumptions)))
    g = top + len(flags) + 1

    def renumber(lit: int) -> int:
        return number[abs(lit)] if lit > 0 else -number[abs(lit)]

    clauses: List[List[int]] = [[g] + flags]
    for flag, clause in zip(flags, problem.assumptions):
        clauses.extend([-flag, -renumber(lit)] for lit in clause)
    clauses.extend([-g] + [renumber(lit) for lit in clause] for clause in problem.guarantees)
    lines = [f"p cnf {g} {len(clauses)}"]
    if exists:
        lines.append("e " + " ".join(str(number[v]) for v in exists) + " 0")
    if others:
        lines.append("a " + " ".join(str(number[v]) for v in others) + " 0")
    lines.append("e " + " ".join(str(v) for v in flags + [g]) + " 0")
    lines.extend(" ".join(str(lit) for lit in clause) + " 0" for clause in clauses)
    return "\n".join(lines) + "\n"


def parse_qdimacs(text: str) -> Tuple[int, Prefix, List[List[int]]]:
    """Return the variable count, quantifier blocks and clauses."""
    num_vars = None
    prefix: Prefix = []
    clauses: List[List[int]] = []
    for number, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith('c'):
            continue
        if line.startswith('p'):
            header = re.match(r'p\s+cnf\s+(\d+)\s+(\d+)$', line)
            if header is None:
                raise ParseError(f"bad header {line!r}", number, 1)
            num_vars = int(header.group(1))
            continue
        fields = line.split()
        if fields[-1] != '0':
            raise ParseError("line does not end with 0", number, len(line))
        if fields[0] in ('e', 'a'):
            prefix.append((fields[0], [int(v) for v in fields[1:-1]]))
        else:
            clauses.append([int(v) for v in fields[:-1]])
    if num_vars is None:
        raise ParseError("missing header")
    return num_vars, prefix, clauses


def witness_text(witness: SatWitness) -> str:
    return "".join(f"A_{name}={int(value)}\n" for name, value in witness.values.items())


def parse_witness(text: str) -> SatWitness:
    values: Dict[str, bool] = {}
    for number, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        match = re.fullmatch(r'A_(\S+?)\s*=\s*([01])', line)
        if match is None:
            raise ParseError(f"bad witness line {line!r}", number, 1)
        values[match.group(1)] = match.group(2) == '1'
    return SatWitness(values)


def apply_witness(ps, witness: Union[SatWitness, Mapping[str, bool]]) -> ActorSystem:
    """
    Fix every resolution parameter.

    Raises:
        UnknownWitnessVariable: a value names no resolved output
    """
    sys = ps if isinstance(ps, ActorSystem) else ps.system()
    values = witness.values if isinstance(witness, SatWitness) else dict(witness)
    owners: Dict[str, str] = {}
    for name in sys.outputs:
        driver = sys.driver(ext(name))
        if driver is not None and not driver.external and sys.actors[driver.actor].kind is ActorKind.RES:
            owners[driver.actor] = name
    unknown = sorted(set(values) - set(owners.values()))
    if unknown:
        raise UnknownWitnessVariable(f"witness names unresolved outputs: {', '.join(unknown)}")
    actors = []
    for actor in sys.actors.values():
        if actor.kind is ActorKind.RES:
            name = owners.get(actor.id)
            if name not in values:
                raise GxwError(f"witness lacks a value for {actor.id}")
            actor = replace(actor, behavior=actor.behavior.with_parameter(values[name]))
        actors.append(actor)
    return ActorSystem(sys.inputs, sys.outputs, actors, sys.wires)
