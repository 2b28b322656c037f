"""
Sharing optimizations applied after construction.

Depth-0 monitors become combinational logic over the external inputs, then
actors with equal behavior and equal input drivers are merged until nothing
changes. Both passes keep the cycle behavior of the system.
"""
import logging
from typing import Dict, Tuple

from blocks.gates import AndGate, ConstSource, NotGate
from sdf.models import ActorKind, PortRef, ext
from synthesis.models import PartialSystem

logger = logging.getLogger(__name__)

MERGEABLE = (ActorKind.MONITOR, ActorKind.P4_MONITOR, ActorKind.THETA,
             ActorKind.NOT, ActorKind.AND, ActorKind.OR, ActorKind.CONST)


def _inline_combinational(ps: PartialSystem) -> int:
    replaced = 0
    for actor in list(ps.actors.values()):
        if actor.kind not in (ActorKind.MONITOR, ActorKind.P4_MONITOR) or actor.behavior.depth:
            continue
        literals = actor.behavior.clause.literals
        provenance = actor.provenance
        output = actor.port('output')
        sources = []
        for lit in literals:
            source = ext(lit.name)
            if not lit.positive:
                gate = ps.add(f"NOT_{lit.name}", NotGate(), provenance)
                ps.connect(source, gate.port('input'))
                source = gate.port('output')
            sources.append(source)
        if not sources:
            const = ps.add(f"CONST_{actor.id}", ConstSource(True), provenance)
            result = const.port('output')
        elif len(sources) == 1:
            result = sources[0]
        else:
            gate = ps.add(f"AND_{actor.id}", AndGate(len(sources)), provenance)
            for k, source in enumerate(sources):
                ps.connect(source, gate.port(f"in{k}"))
            result = gate.port('output')
        ps.redirect(output, result)
        ps.remove(actor.id)
        replaced += 1
        logger.debug("replaced depth-0 monitor %s by combinational logic", actor.id)
    return replaced


def _merge_round(ps: PartialSystem) -> int:
    seen: Dict[Tuple, str] = {}
    merged = 0
    for actor in list(ps.actors.values()):
        if actor.kind not in MERGEABLE:
            continue
        drivers = tuple(str(ps.driver(actor.port(p))) for p in actor.behavior.inputs)
        key = (actor.behavior.signature(), drivers)
        keep = seen.get(key)
        if keep is None:
            seen[key] = actor.id
            continue
        ps.add_provenance(keep, actor.provenance)
        for port in actor.behavior.outputs:
            ps.redirect(actor.port(port), PortRef(keep, port))
        ps.remove(actor.id)
        merged += 1
        logger.debug("merged %s into %s", actor.id, keep)
    return merged


def share_monitors(ps: PartialSystem) -> PartialSystem:
    """Inline depth-0 monitors and merge duplicates; a fixpoint of itself."""
    inlined = _inline_combinational(ps)
    merged = 0
    while True:
        count = _merge_round(ps)
        if not count:
            break
        merged += count
    logger.info("sharing inlined %d monitors and merged %d actors", inlined, merged)
    return ps
