"""
Structural construction of a controller from a classified specification.

    build_skeleton       external ports, high-level controllers, resolution actors
    wire_input_parts     trigger monitors for P1, P2 and P3
    wire_release_parts   release paths of P2, phase adjusted where deeper than 0
    wire_p4              P4 monitors into the resolution actors
"""
import logging
import re
from typing import Dict, List, Sequence

from blocks.gates import AndGate, ConstSource, NotGate, OrGate, Resolution
from blocks.highlevel import BEHAVIORS, HighLevelKind
from blocks.monitors import make_theta, syn_monitor, syn_p4_monitor
from formula.models import DnfClause, GxwSpec, PatternId, SubSpec
from sdf.models import ActorKind, PortRef, ext
from synthesis.models import PartialSystem

logger = logging.getLogger(__name__)

HIGH_LEVEL = {
    PatternId.P1: HighLevelKind.INUB,
    PatternId.P2: HighLevelKind.TRUB,
    PatternId.P3: HighLevelKind.IFTB,
}

RESOLVED = (PatternId.P1, PatternId.P2, PatternId.P3, PatternId.P4)


def _tag(sub: SubSpec) -> str:
    return sub.label if re.fullmatch(r'\w+', sub.label) else f"c{sub.index}"


def _res_port(ps: PartialSystem, sub: SubSpec) -> PortRef:
    position = ps.map_out[sub.out.name].index(sub.index)
    return PortRef(ps.res_id(sub.out.name), f"in{position}")


def _drive(ps: PartialSystem, sources: List[PortRef], dest: PortRef, gate_id: str,
           provenance: Sequence[str], conjunction: bool = False):
    """Combine `sources` with an OR (or AND) gate into `dest`; single sources are wired through."""
    if len(sources) == 1:
        ps.connect(sources[0], dest)
        return
    if not sources:
        const = ps.add(gate_id, ConstSource(conjunction), provenance)
        ps.connect(const.port('output'), dest)
        return
    behavior = AndGate(len(sources)) if conjunction else OrGate(len(sources))
    gate = ps.add(gate_id, behavior, provenance)
    for k, source in enumerate(sources):
        ps.connect(source, gate.port(f"in{k}"))
    ps.connect(gate.port('output'), dest)


def _monitor(ps: PartialSystem, actor_id: str, clause: DnfClause, depth: int, provenance: Sequence[str],
             p4: bool = False) -> PortRef:
    behavior = syn_p4_monitor(clause, depth) if p4 else syn_monitor(clause, depth)
    actor = ps.add(actor_id, behavior, provenance)
    for name in behavior.inputs:
        ps.connect(ext(name), actor.port(name))
    return actor.port('output')


def _negated(ps: PartialSystem, source: PortRef, actor_id: str, provenance: Sequence[str]) -> PortRef:
    gate = ps.add(actor_id, NotGate(), provenance)
    ps.connect(source, gate.port('input'))
    return gate.port('output')


def build_skeleton(spec: GxwSpec) -> PartialSystem:
    """
    External ports, one high-level controller per P1/P2/P3 conjunct and one
    resolution actor per written output.

    P4 conjuncts reserve their resolution input here; `wire_p4` drives it.
    """
    ps = PartialSystem(spec.inputs, spec.outputs)
    for sub in spec.of_pattern(*RESOLVED):
        ps.labels[sub.index] = sub.label
        ps.map_out[sub.out.name].append(sub.index)
    for sub in spec.of_pattern(PatternId.P1, PatternId.P2, PatternId.P3):
        kind = HIGH_LEVEL[sub.pattern]
        actor = ps.add(f"{kind.value}_{_tag(sub)}", BEHAVIORS[kind](), (sub.label,))
        ps.high_level[sub.index] = actor.id
    for name in spec.outputs:
        writers = ps.map_out[name]
        if not writers:
            logger.warning("output %s is not constrained by any conjunct, driving it with false", name)
            const = ps.add(f"CONST_{name}", ConstSource(False))
            ps.connect(const.port('output'), ext(name))
            continue
        labels = [ps.labels[m] for m in writers]
        res = ps.add(f"Res_{name}", Resolution(len(writers)), labels)
        ps.connect(res.port('output'), ext(name))
    for sub in spec.of_pattern(PatternId.P1, PatternId.P2, PatternId.P3):
        source = ps.actors[ps.high_level[sub.index]].port('output')
        if not sub.out.positive:
            source = _negated(ps, source, f"NOT_{_tag(sub)}", (sub.label,))
        ps.connect(source, _res_port(ps, sub))
    return ps


def wire_input_parts(ps: PartialSystem, spec: GxwSpec) -> PartialSystem:
    """One monitor per trigger clause, OR-combined into the high-level controller input."""
    for sub in spec.of_pattern(PatternId.P1, PatternId.P2, PatternId.P3):
        tag = _tag(sub)
        provenance = (sub.label,)
        sources = [
            _monitor(ps, f"Mon_{tag}_{k}", clause, clause.depth, provenance)
            for k, clause in enumerate(sub.trigger)
        ]
        if len(sources) == 1:
            signal = sources[0]
        else:
            gate = ps.add(f"OR_{tag}", OrGate(len(sources)), provenance)
            for k, source in enumerate(sources):
                ps.connect(source, gate.port(f"in{k}"))
            signal = gate.port('output')
        ps.trigger_signal[sub.index] = signal
        ps.connect(signal, ps.actors[ps.high_level[sub.index]].port('input'))
    return ps


def _not_res(ps: PartialSystem, name: str, label: str) -> PortRef:
    """Shared negation of an output value, created on first use."""
    actor_id = f"NOT_Res_{name}"
    if actor_id in ps.actors:
        ps.add_provenance(actor_id, (label,))
        return ps.actors[actor_id].port('output')
    return _negated(ps, ps.output_source(name), actor_id, (label,))


def wire_release_parts(ps: PartialSystem, spec: GxwSpec) -> PartialSystem:
    """
    Release paths of P2 conjuncts, input clauses first, then output clauses.

    An input clause of depth h > 0 is detected h cycles after its window
    starts, so it passes through a phase adjustment set by the trigger.
    """
    for sub in spec.of_pattern(PatternId.P2):
        tag = _tag(sub)
        provenance = (sub.label,)
        sources: List[PortRef] = []
        for k, clause in enumerate(sub.release_in):
            detected = _monitor(ps, f"Mon_{tag}_r{k}", clause, clause.depth, provenance)
            if clause.depth == 0:
                sources.append(detected)
                continue
            theta = ps.add(f"Theta_{tag}_r{k}", make_theta(clause.depth), provenance)
            ps.connect(ps.trigger_signal[sub.index], theta.port('set'))
            ps.connect(detected, theta.port('in'))
            sources.append(theta.port('out'))
        for k, clause in enumerate(sub.release_out, start=len(sub.release_in)):
            literals = [
                ps.output_source(lit.name) if lit.positive else _not_res(ps, lit.name, sub.label)
                for lit in clause.literals
            ]
            if len(literals) == 1:
                sources.append(literals[0])
                continue
            gate = ps.add(f"AND_{tag}_r{k}", AndGate(len(literals)), provenance)
            for j, literal in enumerate(literals):
                ps.connect(literal, gate.port(f"in{j}"))
            sources.append(gate.port('output'))
        release = ps.actors[ps.high_level[sub.index]].port('release')
        _drive(ps, sources, release, f"OR_{tag}_r", provenance)
    ps.notes['release_order'] = 'input clauses first, then output clauses'
    return ps


def wire_p4(ps: PartialSystem, spec: GxwSpec) -> PartialSystem:
    """P4 monitors, OR-combined and negated where the output literal is negative."""
    for sub in spec.of_pattern(PatternId.P4):
        tag = _tag(sub)
        provenance = (sub.label,)
        sources = [
            _monitor(ps, f"P4Mon_{tag}_{k}", clause, sub.depth, provenance, p4=True)
            for k, clause in enumerate(sub.trigger)
        ]
        target = _res_port(ps, sub)
        if not sub.out.positive:
            negation = ps.add(f"NOT_{tag}", NotGate(), provenance)
            target, negated = negation.port('input'), negation.port('output')
            ps.connect(negated, _res_port(ps, sub))
        _drive(ps, sources, target, f"OR_{tag}", provenance)
    return ps


def synthesize_structure(spec: GxwSpec, share: bool = True) -> PartialSystem:
    """Run every construction step, then the sharing optimizations."""
    from synthesis.sharing import share_monitors

    ps = build_skeleton(spec)
    wire_input_parts(ps, spec)
    wire_release_parts(ps, spec)
    wire_p4(ps, spec)
    if share:
        share_monitors(ps)
    logger.info("built %d actors and %d wires", len(ps.actors), len(ps.wires))
    return ps


def provenance_summary(ps: PartialSystem) -> Dict[str, List[str]]:
    return {label: sorted(ids) for label, ids in sorted(ps.provenance_table().items())}


def kinds_count(ps: PartialSystem) -> Dict[ActorKind, int]:
    counts: Dict[ActorKind, int] = {}
    for actor in ps.actors.values():
        counts[actor.kind] = counts.get(actor.kind, 0) + 1
    return counts
