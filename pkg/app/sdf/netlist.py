"""
Netlist JSON and DOT export of actor systems.
"""
import logging
import os
import tempfile
from typing import Dict, Optional

from pydantic import ValidationError

from blocks.gates import AndGate, ConstSource, NotGate, OrGate, Resolution
from blocks.highlevel import IfTB, InUB, TrUB
from blocks.monitors import ClauseMonitor, P4Monitor, Theta, clause_from_params
from errors import ParseError
from sdf.compose import reachable_table
from sdf.models import Actor, ActorKind, ActorSystem, Behavior, PortRef, Wire
from sdf.schedule import check_wiring
from sdf.schemas import ActorSchema, MealySchema, NetlistSchema, TransitionRow, WireSchema

logger = logging.getLogger(__name__)


def write_atomic(path: str, text: str) -> str:
    """Write through a temporary file in the target directory, then rename."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, temp = tempfile.mkstemp(dir=directory, prefix='.tmp-')
    try:
        with os.fdopen(fd, 'w', encoding='utf-8') as handle:
            handle.write(text)
        os.replace(temp, path)
    except BaseException:
        if os.path.exists(temp):
            os.unlink(temp)
        raise
    return path


def behavior_from_params(kind: ActorKind, params: Dict) -> Behavior:
    """Rebuild a behavior from its kind and parameter dictionary."""
    if kind is ActorKind.NOT:
        return NotGate()
    if kind is ActorKind.OR:
        return OrGate(int(params['n']))
    if kind is ActorKind.AND:
        return AndGate(int(params['n']))
    if kind is ActorKind.RES:
        return Resolution(int(params['n']), params.get('A'))
    if kind is ActorKind.CONST:
        return ConstSource(bool(params.get('value', False)))
    if kind is ActorKind.IFTB:
        return IfTB()
    if kind is ActorKind.INUB:
        return InUB()
    if kind is ActorKind.TRUB:
        return TrUB()
    if kind is ActorKind.MONITOR:
        return ClauseMonitor(clause_from_params(params['clause']), int(params['depth']))
    if kind is ActorKind.P4_MONITOR:
        return P4Monitor(clause_from_params(params['clause']), int(params['depth']))
    if kind is ActorKind.THETA:
        return Theta(int(params['h']))
    raise ParseError(f"unknown actor kind {kind.value}")


def _mealy(behavior: Behavior) -> Optional[MealySchema]:
    table = reachable_table(behavior)
    if table is None:
        return None
    _, rows = table
    return MealySchema(
        vars=[v.name for v in behavior.state_vars],
        init=list(behavior.initial_state()),
        transitions=[
            TransitionRow(state=list(s), inputs=list(i), outputs=list(o), next=list(n))
            for s, i, o, n in rows
        ],
    )


def to_schema(sys: ActorSystem, tables: bool = True, meta: Optional[Dict[str, str]] = None) -> NetlistSchema:
    actors = [
        ActorSchema(
            id=a.id,
            kind=a.kind.value,
            provenance=list(a.provenance),
            inputs=list(a.behavior.inputs),
            outputs=list(a.behavior.outputs),
            params=a.behavior.params(),
            mealy=_mealy(a.behavior) if tables else None,
        )
        for a in sys.actors.values()
    ]
    wires = [WireSchema(source=str(w.source), dest=str(w.dest)) for w in sys.wires]
    return NetlistSchema(inputs=list(sys.inputs), outputs=list(sys.outputs),
                         actors=actors, wires=wires, meta=dict(meta or {}))


def export_json(sys: ActorSystem, tables: bool = True, meta: Optional[Dict[str, str]] = None) -> str:
    return to_schema(sys, tables, meta).model_dump_json(by_alias=True, indent=2)


def from_schema(netlist: NetlistSchema) -> ActorSystem:
    actors = []
    for item in netlist.actors:
        try:
            behavior = behavior_from_params(ActorKind(item.kind), item.params)
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"actor {item.id}: bad parameters ({exc})") from None
        actors.append(Actor(item.id, behavior, tuple(item.provenance)))
    wires = [Wire(PortRef.parse(w.source), PortRef.parse(w.dest)) for w in netlist.wires]
    try:
        sys = ActorSystem(netlist.inputs, netlist.outputs, actors, wires)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    check_wiring(sys)
    return sys


def import_json(text: str) -> ActorSystem:
    """
    Parse a netlist.

    Raises:
        ParseError: malformed JSON or unknown kinds/parameters
        UnwiredPort: a wire endpoint does not exist or a port lacks a driver
    """
    try:
        netlist = NetlistSchema.model_validate_json(text)
    except ValidationError as exc:
        raise ParseError(f"invalid netlist: {exc.errors()[0]['msg']}") from None
    return from_schema(netlist)


def _dot_id(text: str) -> str:
    return '"' + text.replace('"', '\\"') + '"'


def to_dot(sys: ActorSystem) -> str:
    """One node per actor labeled kind and provenance, one edge per wire."""
    lines = ['digraph controller {', '  rankdir=LR;']
    for name in sys.inputs:
        lines.append(f"  {_dot_id('$' + name)} [shape=invhouse, label={_dot_id(name)}];")
    for name in sys.outputs:
        lines.append(f"  {_dot_id('$' + name)} [shape=house, label={_dot_id(name)}];")
    for actor in sys.actors.values():
        label = actor.kind.value
        if actor.kind is ActorKind.RES and actor.behavior.a is not None:
            label += f" A={int(actor.behavior.a)}"
        if actor.provenance:
            label += '\\n(' + ','.join(actor.provenance) + ')'
        lines.append(f"  {_dot_id(actor.id)} [shape=box, label={_dot_id(label)}];")
    for wire in sys.wires:
        src = wire.source.actor if wire.source.actor is not None else '$' + wire.source.port
        dst = wire.dest.actor if wire.dest.actor is not None else '$' + wire.dest.port
        ports = f"{'' if wire.source.external else wire.source.port}:{'' if wire.dest.external else wire.dest.port}"
        lines.append(f"  {_dot_id(src)} -> {_dot_id(dst)} [label={_dot_id(ports)}];")
    lines.append('}')
    return '\n'.join(lines) + '\n'
