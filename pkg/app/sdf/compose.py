"""
Explicit-state views of behaviors and systems, for small-instance oracles and
netlist tables.
"""
import logging
from collections import deque
from itertools import product
from typing import Dict, List, Mapping, Sequence, Tuple

import config
from errors import StateExplosion
from sdf.models import F, T, ActorKind, ActorSystem, Behavior, MealyMachine, PortValue, State, StateVar
from sdf.simulate import initial_state, program, step

logger = logging.getLogger(__name__)


class ExplicitMealy(MealyMachine):
    """Table-driven machine over Boolean inputs and outputs."""
    kind = ActorKind.MONITOR

    def __init__(self, inputs: Sequence[str], outputs: Sequence[str], states: List[Tuple],
                 table: Dict[Tuple[int, Tuple[bool, ...]], Tuple[Tuple[bool, ...], int]]):
        self.inputs = tuple(inputs)
        self.outputs = tuple(outputs)
        self.states = states
        self.table = table
        self.state_vars = (StateVar('q'),) if len(states) > 1 else ()

    def initial_state(self):
        return (0,) if self.state_vars else ()

    def _lookup(self, state, values):
        key = tuple(v is T for v in values)
        return self.table[(state[0] if state else 0, key)]

    def output(self, state, values):
        produced, _ = self._lookup(state, values)
        return tuple(PortValue.from_bool(b) for b in produced)

    def successor(self, state, values):
        _, target = self._lookup(state, values)
        return (target,) if self.state_vars else ()

    def encode_output(self, cnf, ins, state, param=None):
        raise NotImplementedError("explicit machines are simulation oracles only")

    def run(self, trace: Sequence[Mapping[str, bool]]) -> List[Dict[str, bool]]:
        state, outputs = 0, []
        for inputs in trace:
            produced, state = self.table[(state, tuple(bool(inputs[n]) for n in self.inputs))]
            outputs.append(dict(zip(self.outputs, produced)))
        return outputs

    @property
    def size(self) -> int:
        return len(self.states)


def compose_to_mealy(sys: ActorSystem, guard: int = None) -> ExplicitMealy:
    """
    Explore the product machine of a system from its initial state.

    Raises:
        StateExplosion: when more than `guard` joint states are reachable
    """
    guard = config.STATE_GUARD if guard is None else guard
    prog = program(sys)
    start = initial_state(sys)
    index: Dict[Tuple, int] = {start: 0}
    states: List[Tuple] = [start]
    table: Dict[Tuple[int, Tuple[bool, ...]], Tuple[Tuple[bool, ...], int]] = {}
    valuations = list(product((False, True), repeat=len(sys.inputs)))
    queue = deque([start])
    while queue:
        current = queue.popleft()
        for bits in valuations:
            produced, target = step(sys, current, dict(zip(sys.inputs, bits)), prog=prog)
            if target not in index:
                if len(states) >= guard:
                    raise StateExplosion(f"more than {guard} reachable states")
                index[target] = len(states)
                states.append(target)
                queue.append(target)
            table[(index[current], bits)] = (tuple(produced[n] for n in sys.outputs), index[target])
    logger.info("composed machine with %d states", len(states))
    return ExplicitMealy(sys.inputs, sys.outputs, states, table)


def reachable_table(behavior: Behavior, guard: int = None):
    """
    Enumerate the reachable transitions of a behavior under Boolean inputs.

    Returns:
        (states, rows) where rows are (state, inputs, outputs, next) tuples,
        or None for stateless behaviors
    """
    if not behavior.stateful:
        return None
    guard = config.STATE_GUARD if guard is None else guard
    start = behavior.initial_state()
    seen = {start}
    order = [start]
    rows = []
    queue = deque([start])
    valuations = list(product((F, T), repeat=len(behavior.inputs)))
    while queue:
        current = queue.popleft()
        for values in valuations:
            produced, target = behavior.fire(current, values)
            rows.append((current, tuple(v is T for v in values), tuple(str(p) for p in produced), target))
            if target not in seen:
                if len(seen) >= guard:
                    raise StateExplosion(f"{behavior.kind.value} has more than {guard} reachable states")
                seen.add(target)
                order.append(target)
                queue.append(target)
    return order, rows


def reachable_states(behavior: Behavior, guard: int = None) -> List[State]:
    table = reachable_table(behavior, guard)
    return [behavior.initial_state()] if table is None else table[0]
