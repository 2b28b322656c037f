"""
Stateless actors: NOT, OR-n, AND-n, the resolution actor RES-n and constant sources.

Values are lifted to Dash as sets {true, false}: NOT keeps Dash, OR is true on
any true and false on all false, AND is the dual.
"""
from typing import Optional, Sequence, Tuple

from errors import ConflictAtRuntime, GxwError
from qbf.cnf import PortBits
from sdf.models import DASH, F, T, Actor, ActorKind, Behavior, PortValue


def _inputs(n: int) -> Tuple[str, ...]:
    return tuple(f"in{k}" for k in range(n))


class NotGate(Behavior):
    kind = ActorKind.NOT

    def __init__(self):
        self.inputs = ('input',)

    def fire(self, state, values):
        value = values[0]
        if value is T:
            return (F,), ()
        if value is F:
            return (T,), ()
        return (DASH,), ()

    def encode_output(self, cnf, ins, state, param=None):
        (i,) = ins
        return [PortBits(i.dash, cnf.and_([-i.dash, -i.val]))]


class OrGate(Behavior):
    kind = ActorKind.OR

    def __init__(self, n: int):
        self.n = n
        self.inputs = _inputs(n)

    def fire(self, state, values):
        if T in values:
            return (T,), ()
        if all(v is F for v in values):
            return (F,), ()
        return (DASH,), ()

    def encode_output(self, cnf, ins, state, param=None):
        val = cnf.or_([i.val for i in ins])
        all_false = cnf.and_([cnf.and_([-i.dash, -i.val]) for i in ins])
        return [PortBits(cnf.and_([-val, -all_false]), val)]

    def params(self):
        return {'n': self.n}


class AndGate(Behavior):
    kind = ActorKind.AND

    def __init__(self, n: int):
        self.n = n
        self.inputs = _inputs(n)

    def fire(self, state, values):
        if F in values:
            return (F,), ()
        if all(v is T for v in values):
            return (T,), ()
        return (DASH,), ()

    def encode_output(self, cnf, ins, state, param=None):
        val = cnf.and_([i.val for i in ins])
        any_false = cnf.or_([cnf.and_([-i.dash, -i.val]) for i in ins])
        return [PortBits(cnf.and_([-val, -any_false]), val)]

    def params(self):
        return {'n': self.n}


class Resolution(Behavior):
    """
    Merges the demands of every conjunct writing one output.

    True if any input is true, false if any is false, the parameter `a` when
    all inputs are Dash. True and false together is a runtime conflict.
    """
    kind = ActorKind.RES

    def __init__(self, n: int, a: Optional[bool] = None):
        self.n = n
        self.a = a
        self.inputs = _inputs(n)

    def fire(self, state, values):
        has_true = T in values
        has_false = F in values
        if has_true and has_false:
            raise ConflictAtRuntime('RES')
        if has_true:
            return (T,), ()
        if has_false:
            return (F,), ()
        if self.a is None:
            raise GxwError("resolution parameter A is not fixed")
        return (PortValue.from_bool(self.a),), ()

    def encode_output(self, cnf, ins, state, param=None):
        # on conflicting inputs the output is true; the conflict itself is a guarantee violation
        a = param if param is not None else cnf.const(bool(self.a))
        all_dash = cnf.and_([i.dash for i in ins])
        val = cnf.or_([cnf.or_([i.val for i in ins]), cnf.and_([all_dash, a])])
        return [PortBits(cnf.false, val)]

    def with_parameter(self, a: bool) -> 'Resolution':
        return Resolution(self.n, a)

    def params(self):
        return {'n': self.n, 'A': self.a}


class ConstSource(Behavior):
    kind = ActorKind.CONST

    def __init__(self, value: bool = False):
        self.value = value
        self.inputs = ()

    def fire(self, state, values):
        return (PortValue.from_bool(self.value),), ()

    def encode_output(self, cnf, ins, state, param=None):
        return [PortBits(cnf.false, cnf.const(self.value))]

    def params(self):
        return {'value': self.value}


def make_gate(kind: ActorKind, n: int = 1, actor_id: Optional[str] = None,
              provenance: Sequence[str] = ()) -> Actor:
    """Create a NOT, OR-n or AND-n actor."""
    if kind is ActorKind.NOT:
        behavior = NotGate()
    elif kind is ActorKind.OR:
        behavior = OrGate(n)
    elif kind is ActorKind.AND:
        behavior = AndGate(n)
    else:
        raise ValueError(f"{kind.value} is not a gate")
    return Actor(actor_id or f"{kind.value.lower()}{n}", behavior, tuple(provenance))


def make_res(n: int, actor_id: Optional[str] = None, a: Optional[bool] = None,
             provenance: Sequence[str] = ()) -> Actor:
    """Create a resolution actor of arity n with parameter A (None until synthesized)."""
    if n < 1:
        raise ValueError("resolution arity must be positive")
    return Actor(actor_id or f"res{n}", Resolution(n, a), tuple(provenance))
