"""
High-level controllers realizing the skeleton of each pattern.

    IfTB  G(input -> output)            P3
    InUB  output W input                P1
    TrUB  G(input -> (output W release))  P2
"""
from enum import Enum
from typing import Optional, Sequence

from qbf.cnf import PortBits, StateBits
from sdf.models import DASH, T, Actor, ActorKind, MealyMachine, StateVar


class HighLevelKind(Enum):
    IFTB = "IfTB"
    INUB = "InUB"
    TRUB = "TrUB"


class IfTB(MealyMachine):
    kind = ActorKind.IFTB

    def __init__(self):
        self.inputs = ('input',)

    def output(self, state, values):
        return (T if values[0] is T else DASH,)

    def successor(self, state, values):
        return ()

    def encode_output(self, cnf, ins, state, param=None):
        (i,) = ins
        return [PortBits(-i.val, i.val)]


class InUB(MealyMachine):
    """Locked from the start; the first true input unlocks it for good."""
    kind = ActorKind.INUB

    def __init__(self):
        self.inputs = ('input',)
        self.state_vars = (StateVar('lock'),)

    def initial_state(self):
        return (True,)

    def output(self, state, values):
        return (T if state[0] and values[0] is not T else DASH,)

    def successor(self, state, values):
        return (state[0] and values[0] is not T,)

    def encode_output(self, cnf, ins, state, param=None):
        held = cnf.and_([state[0].val, -ins[0].val])
        return [PortBits(-held, held)]

    def encode_successor(self, cnf, ins, state):
        return [StateBits(cnf.true, cnf.and_([state[0].val, -ins[0].val]))]


class TrUB(MealyMachine):
    """
    Locks on a true input and unlocks on a true release.

    A release has priority: in a cycle where release is true the output is
    Dash and the lock is cleared, even if input is true as well.
    """
    kind = ActorKind.TRUB

    def __init__(self):
        self.inputs = ('input', 'release')
        self.state_vars = (StateVar('lock'),)

    def initial_state(self):
        return (False,)

    def _held(self, state, values) -> bool:
        return values[1] is not T and (values[0] is T or bool(state[0]))

    def output(self, state, values):
        return (T if self._held(state, values) else DASH,)

    def successor(self, state, values):
        return (self._held(state, values),)

    def _encode_held(self, cnf, ins, state) -> int:
        return cnf.and_([-ins[1].val, cnf.or_([ins[0].val, state[0].val])])

    def encode_output(self, cnf, ins, state, param=None):
        held = self._encode_held(cnf, ins, state)
        return [PortBits(-held, held)]

    def encode_successor(self, cnf, ins, state):
        return [StateBits(cnf.true, self._encode_held(cnf, ins, state))]


BEHAVIORS = {
    HighLevelKind.IFTB: IfTB,
    HighLevelKind.INUB: InUB,
    HighLevelKind.TRUB: TrUB,
}


def make_highlevel(kind: HighLevelKind, actor_id: Optional[str] = None,
                   provenance: Sequence[str] = ()) -> Actor:
    """Create the high-level controller actor for P3 (IfTB), P1 (InUB) or P2 (TrUB)."""
    return Actor(actor_id or kind.value, BEHAVIORS[kind](), tuple(provenance))
