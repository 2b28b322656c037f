import logging
from collections import defaultdict
from dataclasses import replace
from typing import Dict, List, Optional, Sequence, Set

from sdf.models import Actor, ActorKind, ActorSystem, Behavior, PortRef, Wire, ext

logger = logging.getLogger(__name__)


class PartialSystem:
    """
    Actor system under construction, resolution parameters still open.

    `map_out` lists, per output variable, the indices of the conjuncts writing
    it in resolution-input order.
    """

    def __init__(self, inputs: Sequence[str], outputs: Sequence[str]):
        self.inputs = tuple(inputs)
        self.outputs = tuple(outputs)
        self.actors: Dict[str, Actor] = {}
        self.wires: List[Wire] = []
        self.map_out: Dict[str, List[int]] = {v: [] for v in self.outputs}
        self.labels: Dict[int, str] = {}
        self.high_level: Dict[int, str] = {}
        # port carrying the combined trigger of a conjunct
        self.trigger_signal: Dict[int, PortRef] = {}
        self.notes: Dict[str, str] = {}

    def add(self, actor_id: str, behavior: Behavior, provenance: Sequence[str] = ()) -> Actor:
        actor_id = self.fresh_id(actor_id)
        actor = Actor(actor_id, behavior, tuple(provenance))
        self.actors[actor_id] = actor
        logger.debug("created %s %s", behavior.kind.value, actor_id)
        return actor

    def fresh_id(self, base: str) -> str:
        if base not in self.actors:
            return base
        n = 2
        while f"{base}_{n}" in self.actors:
            n += 1
        return f"{base}_{n}"

    def connect(self, source: PortRef, dest: PortRef):
        self.wires.append(Wire(source, dest))

    def driver(self, dest: PortRef) -> Optional[PortRef]:
        for wire in self.wires:
            if wire.dest == dest:
                return wire.source
        return None

    def output_source(self, name: str) -> PortRef:
        """Port driving the external output `name`."""
        source = self.driver(ext(name))
        if source is None:
            raise KeyError(name)
        return source

    def res_id(self, name: str) -> Optional[str]:
        source = self.driver(ext(name))
        if source is None or source.external:
            return None
        actor = self.actors[source.actor]
        return actor.id if actor.kind is ActorKind.RES else None

    def add_provenance(self, actor_id: str, labels: Sequence[str]):
        actor = self.actors[actor_id]
        merged = tuple(sorted(set(actor.provenance) | set(labels), key=_label_key))
        self.actors[actor_id] = replace(actor, provenance=merged)

    def redirect(self, old: PortRef, new: PortRef):
        """Let every reader of `old` read `new` instead."""
        self.wires = [Wire(new, w.dest) if w.source == old else w for w in self.wires]

    def remove(self, actor_id: str):
        del self.actors[actor_id]
        self.wires = [w for w in self.wires if w.dest.actor != actor_id and w.source.actor != actor_id]

    def provenance_table(self) -> Dict[str, Set[str]]:
        """Conjunct label to the ids of the actors realizing it."""
        table: Dict[str, Set[str]] = defaultdict(set)
        for actor in self.actors.values():
            for label in actor.provenance:
                table[label].add(actor.id)
        return dict(table)

    def system(self) -> ActorSystem:
        return ActorSystem(self.inputs, self.outputs, self.actors.values(), self.wires)


def _label_key(label: str):
    digits = ''.join(ch for ch in label if ch.isdigit())
    return (label.rstrip('0123456789'), int(digits) if digits else 0, label)
