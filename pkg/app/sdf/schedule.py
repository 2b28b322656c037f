"""
Wiring checks and the evaluation ordering of an actor system.

The port graph has one node per port, an edge per wire and an edge from every
input port of an actor to each of its output ports. The system is schedulable
iff this graph is acyclic.
"""
import logging
from collections import Counter
from typing import List, Optional, Tuple

import networkx as nx

from errors import CycleError, UnwiredPort
from sdf.models import ActorSystem, PortRef

logger = logging.getLogger(__name__)

OrderItem = Tuple[str, object]


def check_wiring(sys: ActorSystem):
    """
    Validate endpoints and single drivers.

    Raises:
        UnwiredPort: if a destination is missing a driver, has two, or a wire
            references an unknown port
    """
    sources = {PortRef(None, name) for name in sys.inputs}
    dests = {PortRef(None, name) for name in sys.outputs}
    for actor in sys.actors.values():
        sources.update(actor.port(p) for p in actor.behavior.outputs)
        dests.update(actor.port(p) for p in actor.behavior.inputs)
    drivers = Counter()
    for wire in sys.wires:
        if wire.source not in sources:
            raise UnwiredPort(f"wire {wire} starts at unknown port {wire.source}")
        if wire.dest not in dests:
            raise UnwiredPort(f"wire {wire} ends at unknown port {wire.dest}")
        drivers[wire.dest] += 1
    for dest in sorted(dests, key=str):
        if drivers[dest] == 0:
            raise UnwiredPort(f"port {dest} has no incoming wire")
        if drivers[dest] > 1:
            raise UnwiredPort(f"port {dest} receives data from {drivers[dest]} sources")


def port_graph(sys: ActorSystem) -> nx.DiGraph:
    graph = nx.DiGraph()
    for name in sys.inputs + sys.outputs:
        graph.add_node(str(PortRef(None, name)))
    for actor in sys.actors.values():
        for i in actor.behavior.inputs:
            graph.add_node(str(actor.port(i)))
            for o in actor.behavior.outputs:
                graph.add_edge(str(actor.port(i)), str(actor.port(o)))
        for o in actor.behavior.outputs:
            graph.add_node(str(actor.port(o)))
    for wire in sys.wires:
        graph.add_edge(str(wire.source), str(wire.dest))
    return graph


def find_cycle(sys: ActorSystem) -> Optional[List[str]]:
    """Return the ports of one strongly connected component with a loop, if any."""
    graph = port_graph(sys)
    looping = [
        sorted(scc) for scc in nx.strongly_connected_components(graph)
        if len(scc) > 1 or any(graph.has_edge(n, n) for n in scc)
    ]
    return min(looping) if looping else None


def evaluation_order(sys: ActorSystem, reverse: bool = False) -> List[OrderItem]:
    """
    Compute an evaluation ordering over actors and wires.

    Args:
        sys: the actor system
        reverse: break ties in reverse name order, giving a second valid ordering

    Returns:
        Items ('wire', index) and ('actor', id), |actors| + |wires| in total

    Raises:
        UnwiredPort: on wiring defects
        CycleError: with one strongly connected component as witness
    """
    check_wiring(sys)
    scc = find_cycle(sys)
    if scc is not None:
        raise CycleError(scc)
    items = nx.DiGraph()
    for actor_id in sys.actors:
        items.add_node(('actor', actor_id))
    for index, wire in enumerate(sys.wires):
        node = ('wire', index)
        items.add_node(node)
        if wire.source.actor is not None:
            items.add_edge(('actor', wire.source.actor), node)
        if wire.dest.actor is not None:
            items.add_edge(node, ('actor', wire.dest.actor))
    ranked = sorted(items.nodes, key=lambda n: (n[0], str(n[1]).zfill(8) if n[0] == 'wire' else n[1]))
    rank = {node: (-pos if reverse else pos) for pos, node in enumerate(ranked)}
    order = list(nx.lexicographical_topological_sort(items, key=rank.__getitem__))
    logger.debug("evaluation ordering of %d items", len(order))
    return order
