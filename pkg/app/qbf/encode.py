"""
Conflict constraints over the actor system as a 2QBF problem.

Ports are encoded as PortBits (dash, val) and three-valued state variables as
StateBits (known, val). Wires become equalities, actors their output
relations. The guarantee part forbids a resolution actor from receiving true
and false in the same cycle and asserts every P5 invariant on the external
outputs.
"""
import logging
from typing import Dict, List, Tuple

from formula.models import GxwSpec, PatternId
from qbf.cnf import CnfBuilder, PortBits, StateBits
from qbf.invariants import state_invariants
from qbf.models import QbfProblem
from sdf.models import ActorKind, ActorSystem, PortRef, ext

logger = logging.getLogger(__name__)

Ports = Dict[PortRef, PortBits]
States = Dict[str, List[StateBits]]


def _system(ps) -> ActorSystem:
    return ps if isinstance(ps, ActorSystem) else ps.system()


class _Encoder:
    def __init__(self, sys: ActorSystem, spec: GxwSpec):
        self.sys = sys
        self.spec = spec
        self.cnf = CnfBuilder()
        self.guarantees: List[List[int]] = []
        self.universals: List[int] = []
        self.res_of: Dict[str, str] = {}
        self.parameters: Dict[str, int] = {}
        for name in sys.outputs:
            driver = sys.driver(ext(name))
            if driver is not None and not driver.external and sys.actors[driver.actor].kind is ActorKind.RES:
                self.res_of[driver.actor] = name
                self.parameters[name] = self.cnf.new_var(f"A_{name}")

    def frame(self, t: int, states: States) -> Ports:
        cnf = self.cnf
        ports: Ports = {}
        for name in self.sys.inputs:
            val = cnf.new_var(f"${name}@{t}")
            self.universals.append(val)
            ports[ext(name)] = PortBits(cnf.false, val)
        rho = cnf.formula(self.spec.assumption, lambda name, depth: ports[ext(name)].val)
        cnf.add([rho])
        for kind, key in self.sys.order:
            if kind == 'wire':
                wire = self.sys.wires[key]
                bits = cnf.port(f"{wire.dest}@{t}")
                cnf.equal_port(bits, ports[wire.source])
                ports[wire.dest] = bits
                continue
            actor = self.sys.actors[key]
            behavior = actor.behavior
            ins = [ports[actor.port(p)] for p in behavior.inputs]
            param = None
            if actor.id in self.res_of:
                param = self.parameters[self.res_of[actor.id]]
            outs = behavior.encode_output(cnf, ins, states.get(actor.id, []), param)
            for port, produced in zip(behavior.outputs, outs):
                bits = cnf.port(f"{actor.port(port)}@{t}")
                cnf.equal_port(bits, produced)
                ports[actor.port(port)] = bits
        return ports

    def guard(self, ports: Ports):
        cnf = self.cnf
        for actor in self.sys.actors_of(ActorKind.RES):
            ins = [ports[actor.port(p)] for p in actor.behavior.inputs]
            for i, left in enumerate(ins):
                for j, right in enumerate(ins):
                    if i != j:
                        self.guarantees.append([-left.val, right.dash, right.val])
        for sub in self.spec.of_pattern(PatternId.P5):
            holds = cnf.formula(sub.invariant, lambda name, depth: ports[ext(name)].val)
            self.guarantees.append([holds])

    def successors(self, ports: Ports, states: States) -> States:
        following: States = {}
        for actor in self.sys.actors.values():
            if not actor.behavior.stateful:
                continue
            ins = [ports[actor.port(p)] for p in actor.behavior.inputs]
            following[actor.id] = actor.behavior.encode_successor(self.cnf, ins, states[actor.id])
        return following

    def initial_states(self) -> States:
        cnf = self.cnf
        states: States = {}
        for actor in self.sys.actors.values():
            bits = []
            for var, value in zip(actor.behavior.state_vars, actor.behavior.initial_state()):
                if value is None:
                    bits.append(StateBits(cnf.false, cnf.false))
                else:
                    bits.append(StateBits(cnf.true, cnf.const(bool(value))))
            if bits:
                states[actor.id] = bits
        return states

    def free_states(self) -> States:
        cnf = self.cnf
        states: States = {}
        for actor in self.sys.actors.values():
            bits = []
            for var in actor.behavior.state_vars:
                state = cnf.state(f"{actor.id}.{var.name}", var.three_valued)
                if var.three_valued:
                    cnf.canonical_state(state)
                    self.universals.append(state.known)
                self.universals.append(state.val)
                bits.append(state)
            if bits:
                states[actor.id] = bits
        return states

    def problem(self, depth: int) -> QbfProblem:
        exists = [self.parameters[name] for name in self.sys.outputs if name in self.parameters]
        bound = set(exists) | set(self.universals)
        dependent = [v for v in self.cnf.variables() if v not in bound]
        problem = QbfProblem(
            exists=exists,
            universals=list(self.universals),
            dependent=dependent,
            assumptions=[list(c) for c in self.cnf.clauses],
            guarantees=self.guarantees,
            num_vars=self.cnf.num_vars,
            names=dict(self.cnf.names),
            parameters=dict(self.parameters),
            depth=depth,
        )
        logger.debug("encoding at depth %d: %s", depth, problem.summary())
        return problem


def encode_static(ps, spec: GxwSpec, invariants: bool = True) -> QbfProblem:
    """
    One cycle from an arbitrary pre-state.

    Pre-states are universally quantified, narrowed by the reachable-state
    invariants of the actors feeding each resolution actor and P5 conjunct.
    """
    encoder = _Encoder(_system(ps), spec)
    states = encoder.free_states()
    if invariants:
        state_invariants(encoder.sys, spec, encoder.cnf, states)
    ports = encoder.frame(0, states)
    encoder.guard(ports)
    return encoder.problem(0)


def encode_unrolled(ps, spec: GxwSpec, omega: int) -> QbfProblem:
    """`omega` cycles from the initial state, the assumption and the guarantees asserted in every cycle."""
    if omega < 1:
        raise ValueError("unroll depth must be at least 1")
    encoder = _Encoder(_system(ps), spec)
    states = encoder.initial_states()
    for t in range(omega):
        ports = encoder.frame(t, states)
        encoder.guard(ports)
        if t + 1 < omega:
            states = encoder.successors(ports, states)
    return encoder.problem(omega)


def parameter_names(problem: QbfProblem) -> List[Tuple[str, int]]:
    return sorted(problem.parameters.items(), key=lambda item: problem.exists.index(item[1]))
