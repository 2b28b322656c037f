"""
Cycle semantics of an actor system.

All ports start a cycle undefined; external inputs are copied in, then wires
and actors are processed once each in evaluation order, so every actor fires
exactly once with defined inputs. Ports are reset at the end of the cycle.
"""
import logging
from collections import Counter
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from errors import ConflictAtRuntime, DashAtExternalOutput, GxwError
from sdf.models import DASH, UNDEFINED, Actor, ActorSystem, PortRef, PortValue, State

logger = logging.getLogger(__name__)

SystemState = Tuple[State, ...]


class FiringCounter:
    """Instrumentation: how often each actor fired and each wire transferred."""

    def __init__(self):
        self.actors: Counter = Counter()
        self.wires: Counter = Counter()

    def reset(self):
        self.actors.clear()
        self.wires.clear()


@dataclass
class Program:
    slots: Dict[PortRef, int]
    input_slots: List[Tuple[str, int]]
    output_slots: List[Tuple[str, int]]
    actors: List[Actor]
    # ('wire', index, src, dst) or ('actor', position, in_slots, out_slots)
    ops: List[Tuple]


def compile_system(sys: ActorSystem, order: Optional[Sequence] = None) -> Program:
    order = sys.order if order is None else order
    slots: Dict[PortRef, int] = {}

    def slot(ref: PortRef) -> int:
        if ref not in slots:
            slots[ref] = len(slots)
        return slots[ref]

    actors = list(sys.actors.values())
    position = {a.id: k for k, a in enumerate(actors)}
    ops: List[Tuple] = []
    for kind, key in order:
        if kind == 'wire':
            wire = sys.wires[key]
            ops.append(('wire', key, slot(wire.source), slot(wire.dest)))
        else:
            actor = sys.actors[key]
            ops.append((
                'actor', position[key],
                tuple(slot(actor.port(p)) for p in actor.behavior.inputs),
                tuple(slot(actor.port(p)) for p in actor.behavior.outputs),
            ))
    inputs = [(name, slot(PortRef(None, name))) for name in sys.inputs]
    outputs = [(name, slot(PortRef(None, name))) for name in sys.outputs]
    return Program(slots, inputs, outputs, actors, ops)


def program(sys: ActorSystem) -> Program:
    if sys._program is None:
        sys._program = compile_system(sys)
    return sys._program


def initial_state(sys: ActorSystem) -> SystemState:
    return tuple(a.behavior.initial_state() for a in sys.actors.values())


def step(sys: ActorSystem, state: SystemState, inputs: Mapping[str, bool],
         counter: Optional[FiringCounter] = None,
         prog: Optional[Program] = None) -> Tuple[Dict[str, bool], SystemState]:
    """
    Execute one cycle.

    Args:
        sys: a wired, acyclic system with every resolution parameter fixed
        state: per-actor states, in actor order
        inputs: a Boolean for every external input
        counter: optional firing instrumentation
        prog: precompiled program, e.g. for an alternative ordering

    Returns:
        External outputs and the successor state

    Raises:
        ConflictAtRuntime: a resolution actor saw true and false together
        DashAtExternalOutput: an external output carries Dash
    """
    prog = prog or program(sys)
    values: List[PortValue] = [UNDEFINED] * len(prog.slots)
    for name, index in prog.input_slots:
        if name not in inputs:
            raise GxwError(f"no value for input {name!r}")
        values[index] = PortValue.from_bool(inputs[name])
    following = list(state)
    for op in prog.ops:
        if op[0] == 'wire':
            _, wire_index, src, dst = op
            value = values[src]
            if value is UNDEFINED:
                raise GxwError(f"wire {sys.wires[wire_index]} read an undefined port")
            values[dst] = value
            if counter is not None:
                counter.wires[wire_index] += 1
        else:
            _, position, in_slots, out_slots = op
            actor = prog.actors[position]
            args = tuple(values[s] for s in in_slots)
            if UNDEFINED in args:
                raise GxwError(f"actor {actor.id} fired with undefined inputs")
            try:
                produced, following[position] = actor.behavior.fire(state[position], args)
            except ConflictAtRuntime:
                raise ConflictAtRuntime(actor.id) from None
            for s, value in zip(out_slots, produced):
                values[s] = value
            if counter is not None:
                counter.actors[actor.id] += 1
    outputs: Dict[str, bool] = {}
    for name, index in prog.output_slots:
        value = values[index]
        if value is DASH or value is UNDEFINED:
            raise DashAtExternalOutput(f"external output {name!r} carries {value.name}")
        outputs[name] = value is PortValue.TRUE
    return outputs, tuple(following)


def run(sys: ActorSystem, input_trace: Sequence[Mapping[str, bool]],
        state: Optional[SystemState] = None) -> List[Dict[str, bool]]:
    """Fold `step` over a trace from the initial state."""
    state = initial_state(sys) if state is None else state
    outputs: List[Dict[str, bool]] = []
    prog = program(sys)
    for cycle, inputs in enumerate(input_trace):
        try:
            produced, state = step(sys, state, inputs, prog=prog)
        except ConflictAtRuntime as exc:
            raise ConflictAtRuntime(exc.actor_id, cycle) from None
        outputs.append(produced)
    return outputs
