import json
from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple


class PortValue(Enum):
    UNDEFINED = "undefined"
    FALSE = "0"
    TRUE = "1"
    DASH = "-"

    def __str__(self) -> str:
        return "–" if self is PortValue.DASH else self.value

    @classmethod
    def from_bool(cls, value: bool) -> 'PortValue':
        return cls.TRUE if value else cls.FALSE

    def to_bool(self) -> bool:
        if self is PortValue.TRUE:
            return True
        if self is PortValue.FALSE:
            return False
        raise ValueError(f"{self.name} is not a Boolean port value")


T = PortValue.TRUE
F = PortValue.FALSE
DASH = PortValue.DASH
UNDEFINED = PortValue.UNDEFINED


class ActorKind(Enum):
    NOT = "NOT"
    OR = "OR"
    AND = "AND"
    RES = "RES"
    CONST = "CONST"
    IFTB = "IfTB"
    INUB = "InUB"
    TRUB = "TrUB"
    MONITOR = "Monitor"
    P4_MONITOR = "P4Monitor"
    THETA = "Theta"


@dataclass(frozen=True)
class StateVar:
    name: str
    three_valued: bool = False


StateValue = Optional[bool]
State = Tuple[StateValue, ...]


class Behavior(ABC):
    """Cycle behavior of an actor: ports, state variables and one firing."""
    kind: ActorKind
    inputs: Tuple[str, ...] = ()
    outputs: Tuple[str, ...] = ('output',)
    state_vars: Tuple[StateVar, ...] = ()

    @property
    def stateful(self) -> bool:
        return bool(self.state_vars)

    def initial_state(self) -> State:
        return ()

    @abstractmethod
    def fire(self, state: State, values: Sequence[PortValue]) -> Tuple[Tuple[PortValue, ...], State]:
        """Consume one value per input port, produce one per output port and the next state."""

    @abstractmethod
    def encode_output(self, cnf, ins, state, param=None) -> List[Any]:
        """Return output PortBits as literals of `cnf` given input PortBits and pre-state StateBits."""

    def encode_successor(self, cnf, ins, state) -> List[Any]:
        return []

    def params(self) -> Dict[str, Any]:
        return {}

    def signature(self) -> Tuple[str, str]:
        return (self.kind.value, json.dumps(self.params(), sort_keys=True))

    def __eq__(self, other) -> bool:
        return isinstance(other, Behavior) and self.signature() == other.signature()

    def __hash__(self) -> int:
        return hash(self.signature())


class MealyMachine(Behavior):
    """Deterministic Mealy machine split into output and successor functions."""

    @abstractmethod
    def output(self, state: State, values: Sequence[PortValue]) -> Tuple[PortValue, ...]:
        pass

    @abstractmethod
    def successor(self, state: State, values: Sequence[PortValue]) -> State:
        pass

    def fire(self, state, values):
        return self.output(state, values), self.successor(state, values)


@dataclass(frozen=True)
class PortRef:
    """Actor port `actor.port`, or external port `$port` when actor is None."""
    actor: Optional[str]
    port: str

    def __str__(self) -> str:
        return f"${self.port}" if self.actor is None else f"{self.actor}.{self.port}"

    @property
    def external(self) -> bool:
        return self.actor is None

    @classmethod
    def parse(cls, text: str) -> 'PortRef':
        if text.startswith('$'):
            return cls(None, text[1:])
        actor, sep, port = text.rpartition('.')
        if not sep or not actor or not port:
            raise ValueError(f"malformed port reference {text!r}")
        return cls(actor, port)


def ext(name: str) -> PortRef:
    return PortRef(None, name)


@dataclass(frozen=True)
class Wire:
    source: PortRef
    dest: PortRef

    def __str__(self) -> str:
        return f"{self.source} -> {self.dest}"


@dataclass(frozen=True)
class Actor:
    id: str
    behavior: Behavior
    provenance: Tuple[str, ...] = ()

    @property
    def kind(self) -> ActorKind:
        return self.behavior.kind

    def port(self, name: str) -> PortRef:
        return PortRef(self.id, name)


class ActorSystem:
    """
    Actors, external ports and wires; the evaluation ordering is computed on demand.

    Instances are treated as immutable once built.
    """

    def __init__(self, inputs: Iterable[str], outputs: Iterable[str],
                 actors: Iterable[Actor], wires: Iterable[Wire]):
        self.inputs: Tuple[str, ...] = tuple(inputs)
        self.outputs: Tuple[str, ...] = tuple(outputs)
        self.actors: Dict[str, Actor] = {}
        for actor in actors:
            if actor.id in self.actors:
                raise ValueError(f"duplicate actor id {actor.id!r}")
            self.actors[actor.id] = actor
        self.wires: Tuple[Wire, ...] = tuple(wires)
        self._order = None
        self._program = None

    @property
    def order(self) -> List[Tuple[str, Any]]:
        if self._order is None:
            from sdf.schedule import evaluation_order
            self._order = evaluation_order(self)
        return self._order

    def actors_of(self, *kinds: ActorKind) -> List[Actor]:
        return [a for a in self.actors.values() if a.kind in kinds]

    def driver(self, dest: PortRef) -> Optional[PortRef]:
        for wire in self.wires:
            if wire.dest == dest:
                return wire.source
        return None

    def readers(self, source: PortRef) -> List[PortRef]:
        return [w.dest for w in self.wires if w.source == source]

    def structure(self) -> Tuple:
        actors = tuple(sorted((a.id, a.behavior.signature(), a.provenance) for a in self.actors.values()))
        wires = tuple(sorted((str(w.source), str(w.dest)) for w in self.wires))
        return (self.inputs, self.outputs, actors, wires)

    def __eq__(self, other) -> bool:
        return isinstance(other, ActorSystem) and self.structure() == other.structure()

    def __hash__(self) -> int:
        return hash(self.structure())

    def __repr__(self) -> str:
        return f"ActorSystem(actors={len(self.actors)}, wires={len(self.wires)})"
