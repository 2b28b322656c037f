"""
Reachable-state invariants for the static encoding.

The static encoding quantifies pre-states universally, which admits joint
states no run can produce (e.g. two locks that exclude each other). For each
resolution actor with two or more inputs, and for each P5 conjunct, the
stateful actors feeding it are explored explicitly: the cone stops at
external inputs and at resolution outputs, which become free Boolean inputs.
The reachable joint states of the cone are then asserted as a disjunction of
state cubes.
"""
import logging
from collections import deque
from itertools import product
from math import prod
from typing import Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

import config
from formula.dnf import evaluate_window
from formula.models import GxwSpec, PatternId
from qbf.cnf import CnfBuilder, StateBits
from sdf.models import ActorKind, ActorSystem, PortRef, Wire, ext
from sdf.simulate import initial_state, step

logger = logging.getLogger(__name__)

MAX_FREE = 16


class Cone:
    def __init__(self):
        self.actors: Set[str] = set()
        self.inputs: Set[str] = set()
        self.free: Set[PortRef] = set()

    def key(self) -> FrozenSet[str]:
        return frozenset(self.actors)


def cone_of(sys: ActorSystem, dests: Sequence[PortRef], cone: Optional[Cone] = None) -> Cone:
    """Walk backwards from `dests` through non-resolution actors."""
    cone = cone or Cone()
    queue = deque(dests)
    while queue:
        dest = queue.popleft()
        source = sys.driver(dest)
        if source is None:
            continue
        if source.external:
            cone.inputs.add(source.port)
            continue
        actor = sys.actors[source.actor]
        if actor.kind is ActorKind.RES:
            cone.free.add(source)
            continue
        if actor.id in cone.actors:
            continue
        cone.actors.add(actor.id)
        queue.extend(actor.port(p) for p in actor.behavior.inputs)
    return cone


def _res_cone(sys: ActorSystem, res_ids: Sequence[str]) -> Cone:
    cone = Cone()
    for res_id in res_ids:
        actor = sys.actors[res_id]
        cone_of(sys, [actor.port(p) for p in actor.behavior.inputs], cone)
    return cone


def _groups(sys: ActorSystem, spec: GxwSpec) -> List[Tuple[str, Cone]]:
    groups: List[Tuple[str, Cone]] = []
    for res in sys.actors_of(ActorKind.RES):
        if res.behavior.n >= 2:
            groups.append((res.id, _res_cone(sys, [res.id])))
    for sub in spec.of_pattern(PatternId.P5):
        res_ids = []
        for name in sorted(sub.invariant.variables()):
            driver = sys.driver(ext(name))
            if driver is not None and not driver.external and sys.actors[driver.actor].kind is ActorKind.RES:
                res_ids.append(driver.actor)
        groups.append((sub.label, _res_cone(sys, res_ids)))
    unique: Dict[FrozenSet[str], Tuple[str, Cone]] = {}
    for name, cone in groups:
        if any(sys.actors[a].behavior.stateful for a in cone.actors):
            unique.setdefault(cone.key(), (name, cone))
    return list(unique.values())


def _subsystem(sys: ActorSystem, cone: Cone) -> Tuple[ActorSystem, List[str], List[str]]:
    inputs = sorted(cone.inputs)
    free = sorted(str(p) for p in cone.free)
    actors = [a for a in sys.actors.values() if a.id in cone.actors]
    wires = []
    for wire in sys.wires:
        if wire.dest.actor not in cone.actors:
            continue
        source = wire.source
        if not source.external and source.actor not in cone.actors:
            source = PortRef(None, str(source))
        wires.append(Wire(source, wire.dest))
    return ActorSystem(inputs + free, (), actors, wires), inputs, free


def _input_valuations(spec: GxwSpec, inputs: List[str]) -> Optional[List[Tuple[bool, ...]]]:
    """Valuations of `inputs` that extend to a valuation satisfying the assumption."""
    names = sorted(set(inputs) | set(spec.assumption.variables()))
    if len(names) > MAX_FREE:
        return None
    allowed = set()
    for bits in product((False, True), repeat=len(names)):
        valuation = dict(zip(names, bits))
        if evaluate_window(spec.assumption, [valuation]):
            allowed.add(tuple(valuation[n] for n in inputs))
    return sorted(allowed)


def reachable_cone_states(sys: ActorSystem, spec: GxwSpec, cone: Cone,
                          guard: Optional[int] = None) -> Optional[Tuple[ActorSystem, Set[Tuple]]]:
    """Joint states of the cone reachable under assumption-respecting inputs; None past the guards."""
    guard = config.INVARIANT_GUARD if guard is None else guard
    sub, inputs, free = _subsystem(sys, cone)
    if len(inputs) + len(free) > MAX_FREE:
        return None
    valuations = _input_valuations(spec, inputs)
    if valuations is None:
        return None
    moves = [
        dict(zip(sub.inputs, head + tail))
        for head in valuations
        for tail in product((False, True), repeat=len(free))
    ]
    start = initial_state(sub)
    seen = {start}
    queue = deque([start])
    while queue:
        current = queue.popleft()
        for move in moves:
            _, target = step(sub, current, move)
            if target not in seen:
                if len(seen) >= guard:
                    return None
                seen.add(target)
                queue.append(target)
    return sub, seen


def _cube(sub: ActorSystem, state: Tuple, bits: Dict[str, List[StateBits]]) -> List[int]:
    cube: List[int] = []
    for actor, values in zip(sub.actors.values(), state):
        for var, value, encoded in zip(actor.behavior.state_vars, values, bits.get(actor.id, [])):
            if var.three_valued and value is None:
                cube.append(-encoded.known)
                continue
            if var.three_valued:
                cube.append(encoded.known)
            cube.append(encoded.val if value else -encoded.val)
    return cube


def state_invariants(sys: ActorSystem, spec: GxwSpec, cnf: CnfBuilder,
                     bits: Dict[str, List[StateBits]]) -> List[int]:
    """
    Add reachable-state constraints to `cnf`.

    Returns:
        The selector variables introduced, one per reachable joint state
    """
    selectors: List[int] = []
    for name, cone in _groups(sys, spec):
        explored = reachable_cone_states(sys, spec, cone)
        if explored is None:
            logger.debug("invariant for %s skipped: cone too large", name)
            continue
        sub, states = explored
        domain = prod(
            3 if var.three_valued else 2
            for actor in sub.actors.values() for var in actor.behavior.state_vars
        )
        if len(states) >= domain:
            continue
        chosen = []
        for k, state in enumerate(sorted(states, key=repr)):
            selector = cnf.new_var(f"inv:{name}:{k}")
            for lit in _cube(sub, state, bits):
                cnf.add([-selector, lit])
            chosen.append(selector)
        cnf.add(chosen)
        selectors.extend(chosen)
        logger.debug("invariant for %s: %d of %d joint states reachable", name, len(states), domain)
    return selectors
