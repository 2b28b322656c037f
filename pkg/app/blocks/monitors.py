"""
Monitor actors over a sliding input window.

A clause monitor of depth i keeps, for every input variable of its clause, the
values seen 1..i cycles ago (unknown before the window has filled). Its output
at cycle t is the clause evaluated on the window [t-i, t], and false while
t < i.
"""
from typing import List, Optional, Sequence, Tuple

from errors import InvalidH
from formula.models import DnfClause, Literal
from qbf.cnf import PortBits, StateBits
from sdf.models import DASH, F, T, ActorKind, MealyMachine, StateVar

TICK = '$tick'


class ClauseMonitor(MealyMachine):
    kind = ActorKind.MONITOR

    def __init__(self, clause: DnfClause, depth: Optional[int] = None):
        depth = clause.depth if depth is None else depth
        if clause.depth > depth:
            raise ValueError(f"clause {clause} is deeper than {depth}")
        self.clause = DnfClause(clause.literals, depth)
        self.depth = depth
        self.inputs = clause.variables
        # an input-free clause still needs a clock to tell when the window has filled
        self.tracked = self.inputs or (TICK,)
        width = len(self.tracked)
        self.state_vars = tuple(
            StateVar(f"{name}@{k}", three_valued=True)
            for k in range(1, depth + 1) for name in self.tracked
        )
        index = {name: pos for pos, name in enumerate(self.tracked)}
        # (cycles ago, position among tracked variables, polarity)
        self.reads: Tuple[Tuple[int, int, bool], ...] = tuple(
            (depth - lit.depth, index[lit.name], lit.positive) for lit in self.clause.literals
        )
        self.width = width

    def initial_state(self):
        return (None,) * len(self.state_vars)

    def _current(self, values) -> Tuple[bool, ...]:
        if not self.inputs:
            return (True,)
        return tuple(v is T for v in values)

    def holds(self, state, values) -> bool:
        if self.depth and state[(self.depth - 1) * self.width] is None:
            return False
        current = self._current(values)
        for ago, pos, positive in self.reads:
            value = current[pos] if ago == 0 else state[(ago - 1) * self.width + pos]
            if value is None or value != positive:
                return False
        return True

    def output(self, state, values):
        return (T if self.holds(state, values) else F,)

    def successor(self, state, values):
        if not self.depth:
            return ()
        return self._current(values) + tuple(state[:(self.depth - 1) * self.width])

    def _encode_holds(self, cnf, ins, state) -> int:
        current = [i.val for i in ins] or [cnf.true]
        parts: List[int] = []
        if self.depth:
            parts.append(state[(self.depth - 1) * self.width].known)
        for ago, pos, positive in self.reads:
            if ago == 0:
                parts.append(current[pos] if positive else -current[pos])
            else:
                bits = state[(ago - 1) * self.width + pos]
                parts.append(bits.val if positive else cnf.and_([bits.known, -bits.val]))
        return cnf.and_(parts)

    def encode_output(self, cnf, ins, state, param=None):
        return [PortBits(cnf.false, self._encode_holds(cnf, ins, state))]

    def encode_successor(self, cnf, ins, state):
        if not self.depth:
            return []
        current = [i.val for i in ins] or [cnf.true]
        shifted = [StateBits(cnf.true, lit) for lit in current]
        return shifted + list(state[:(self.depth - 1) * self.width])

    def params(self):
        return {
            'clause': [[lit.depth, lit.name, lit.positive] for lit in self.clause.literals],
            'depth': self.depth,
        }


class P4Monitor(ClauseMonitor):
    """
    Clause monitor with a don't-care flag `dc` raised for the first i cycles.

    The actor port carries Dash while dc holds, the clause value afterwards.
    """
    kind = ActorKind.P4_MONITOR
    machine_outputs = ('out', 'dc')

    def flags(self, state, values) -> Tuple[bool, bool]:
        dc = bool(self.depth) and state[(self.depth - 1) * self.width] is None
        return self.holds(state, values), dc

    def output(self, state, values):
        out, dc = self.flags(state, values)
        if dc:
            return (DASH,)
        return (T if out else F,)

    def encode_output(self, cnf, ins, state, param=None):
        dc = -state[(self.depth - 1) * self.width].known if self.depth else cnf.false
        return [PortBits(dc, self._encode_holds(cnf, ins, state))]


class Theta(MealyMachine):
    """
    Phase adjustment for a release of depth h.

    Output is false before the first set. A set starts a mask of h cycles
    (restarting on every set); after the mask the output mirrors `in`.
    State: an `armed` bit and a little-endian countdown of the remaining
    masked cycles.
    """
    kind = ActorKind.THETA

    def __init__(self, h: int):
        if h <= 0:
            raise InvalidH(f"phase adjustment needs h >= 1, got {h}")
        self.h = h
        self.bits = h.bit_length()
        self.inputs = ('set', 'in')
        self.outputs = ('out',)
        self.state_vars = (StateVar('armed'),) + tuple(StateVar(f"count{b}") for b in range(self.bits))

    def initial_state(self):
        return (False,) + (False,) * self.bits

    def _count(self, state) -> int:
        return sum(1 << b for b in range(self.bits) if state[1 + b])

    def _pack(self, armed: bool, count: int):
        return (armed,) + tuple(bool(count >> b & 1) for b in range(self.bits))

    def output(self, state, values):
        if values[0] is T or self._count(state):
            return (F,)
        return (T if state[0] and values[1] is T else F,)

    def successor(self, state, values):
        if values[0] is T:
            return self._pack(True, self.h - 1)
        count = self._count(state)
        return self._pack(bool(state[0]), count - 1 if count else 0)

    def encode_output(self, cnf, ins, state, param=None):
        zero = -cnf.or_([s.val for s in state[1:]])
        return [PortBits(cnf.false, cnf.and_([-ins[0].val, zero, state[0].val, ins[1].val]))]

    def encode_successor(self, cnf, ins, state):
        setting = ins[0].val
        counter = [s.val for s in state[1:]]
        zero = -cnf.or_(counter)
        armed = cnf.or_([setting, state[0].val])
        following: List[StateBits] = [StateBits(cnf.true, armed)]
        borrow = cnf.true
        for b, bit in enumerate(counter):
            decremented = cnf.and_([-zero, cnf.xor_(bit, borrow)])
            borrow = cnf.and_([-bit, borrow])
            reload = cnf.const(bool((self.h - 1) >> b & 1))
            following.append(StateBits(cnf.true, cnf.ite(setting, reload, decremented)))
        return following

    def params(self):
        return {'h': self.h}


def syn_monitor(clause: DnfClause, depth: int) -> ClauseMonitor:
    """Window monitor for an input-only clause, padded to `depth`."""
    return ClauseMonitor(clause, depth)


def syn_p4_monitor(clause: DnfClause, depth: int) -> P4Monitor:
    return P4Monitor(clause, depth)


def make_theta(h: int) -> Theta:
    return Theta(h)


def clause_from_params(literals: Sequence[Sequence]) -> DnfClause:
    return DnfClause(tuple(Literal(int(d), str(n), bool(p)) for d, n, p in literals))
