import json

import pytest

from blocks.gates import make_gate, make_res
from blocks.highlevel import HighLevelKind, make_highlevel
from errors import ConflictAtRuntime, CycleError, DashAtExternalOutput, GxwError, ParseError, UnwiredPort
from sdf.compose import compose_to_mealy, reachable_states
from sdf.models import ActorKind, ActorSystem, PortRef, PortValue, Wire, ext
from sdf.netlist import export_json, import_json, to_dot
from sdf.schedule import evaluation_order, find_cycle
from sdf.simulate import FiringCounter, compile_system, initial_state, run, step
from validate.fuzz import random_trace


def small_system(a=False):
    """$o = RES(TrUB(input=NOT $a, release=$b))."""
    actors = [
        make_gate(ActorKind.NOT, actor_id='not0'),
        make_highlevel(HighLevelKind.TRUB, 'trub0', provenance=('L1',)),
        make_res(1, 'res_o', a=a),
    ]
    wires = [
        Wire(ext('a'), PortRef('not0', 'input')),
        Wire(PortRef('not0', 'output'), PortRef('trub0', 'input')),
        Wire(ext('b'), PortRef('trub0', 'release')),
        Wire(PortRef('trub0', 'output'), PortRef('res_o', 'in0')),
        Wire(PortRef('res_o', 'output'), ext('o')),
    ]
    return ActorSystem(('a', 'b'), ('o',), actors, wires)


def rows(**columns):
    names = sorted(columns)
    return [dict(zip(names, values)) for values in zip(*(columns[n] for n in names))]


TRACE = rows(a=[False, True, True, True], b=[False, False, True, False])


def test_evaluation_order_covers_everything():
    sys = small_system()
    order = evaluation_order(sys)
    assert len(order) == len(sys.actors) + len(sys.wires)
    position = {item: k for k, item in enumerate(order)}
    for index, wire in enumerate(sys.wires):
        if wire.source.actor is not None:
            assert position[('actor', wire.source.actor)] < position[('wire', index)]
        if wire.dest.actor is not None:
            assert position[('wire', index)] < position[('actor', wire.dest.actor)]


def test_simulation_follows_lock_and_release():
    assert [r['o'] for r in run(small_system(), TRACE)] == [True, True, False, False]
    assert [r['o'] for r in run(small_system(a=True), TRACE)] == [True, True, True, True]


def test_step_reports_unset_parameter_and_missing_input():
    sys = small_system(a=None)
    with pytest.raises(GxwError):
        run(sys, TRACE)
    with pytest.raises(GxwError):
        step(small_system(), initial_state(small_system()), {'a': True})


def test_dash_at_external_output():
    sys = ActorSystem(('a',), ('o',), [make_highlevel(HighLevelKind.IFTB, 'iftb0')], [
        Wire(ext('a'), PortRef('iftb0', 'input')),
        Wire(PortRef('iftb0', 'output'), ext('o')),
    ])
    assert run(sys, [{'a': True}]) == [{'o': True}]
    with pytest.raises(DashAtExternalOutput):
        run(sys, [{'a': True}, {'a': False}])


def test_conflict_names_actor_and_cycle():
    actors = [make_gate(ActorKind.NOT, actor_id='not0'), make_res(2, 'res_o', a=False)]
    wires = [
        Wire(ext('a'), PortRef('not0', 'input')),
        Wire(ext('a'), PortRef('res_o', 'in0')),
        Wire(PortRef('not0', 'output'), PortRef('res_o', 'in1')),
        Wire(PortRef('res_o', 'output'), ext('o')),
    ]
    sys = ActorSystem(('a',), ('o',), actors, wires)
    with pytest.raises(ConflictAtRuntime) as info:
        run(sys, [{'a': False}, {'a': True}])
    assert info.value.actor_id == 'res_o'
    assert info.value.cycle == 0


def test_feedback_loop_is_rejected():
    sys = ActorSystem((), ('o',), [make_gate(ActorKind.NOT, actor_id='not0')], [
        Wire(PortRef('not0', 'output'), PortRef('not0', 'input')),
        Wire(PortRef('not0', 'output'), ext('o')),
    ])
    assert find_cycle(sys) == ['not0.input', 'not0.output']
    with pytest.raises(CycleError) as info:
        evaluation_order(sys)
    assert 'not0.input' in info.value.scc


@pytest.mark.parametrize("wires", [
    [Wire(ext('a'), PortRef('not0', 'input'))],
    [Wire(ext('a'), PortRef('not0', 'input')), Wire(ext('a'), PortRef('not0', 'input')),
     Wire(PortRef('not0', 'output'), ext('o'))],
    [Wire(ext('a'), PortRef('not0', 'nope')), Wire(PortRef('not0', 'output'), ext('o'))],
])
def test_wiring_defects(wires):
    sys = ActorSystem(('a',), ('o',), [make_gate(ActorKind.NOT, actor_id='not0')], wires)
    with pytest.raises(UnwiredPort):
        evaluation_order(sys)


def test_duplicate_actor_ids():
    with pytest.raises(ValueError):
        ActorSystem((), (), [make_gate(ActorKind.NOT, actor_id='x'), make_gate(ActorKind.NOT, actor_id='x')], [])


def test_outputs_do_not_depend_on_ordering(door_system, door_spec):
    forward = compile_system(door_system, evaluation_order(door_system))
    backward = compile_system(door_system, evaluation_order(door_system, reverse=True))
    for seed in range(20):
        trace = random_trace(door_spec, 30, seed).rows
        state_f = state_b = initial_state(door_system)
        for inputs in trace:
            out_f, state_f = step(door_system, state_f, inputs, prog=forward)
            out_b, state_b = step(door_system, state_b, inputs, prog=backward)
            assert out_f == out_b
            assert state_f == state_b


def test_every_actor_fires_once_per_cycle(door_system):
    counter = FiringCounter()
    state = initial_state(door_system)
    inputs = {name: False for name in door_system.inputs}
    for _ in range(3):
        _, state = step(door_system, state, inputs, counter=counter)
    assert set(counter.actors.values()) == {3}
    assert set(counter.wires.values()) == {3}
    assert len(counter.actors) == len(door_system.actors)
    assert len(counter.wires) == len(door_system.wires)


def test_composed_machine_matches_simulation(eq3_system, eq3_spec):
    machine = compose_to_mealy(eq3_system)
    assert machine.size >= 2
    for seed in range(10):
        trace = random_trace(eq3_spec, 25, seed).rows
        assert machine.run(trace) == run(eq3_system, trace)


def test_reachable_states_of_stateless_actor():
    assert reachable_states(make_gate(ActorKind.OR, 2).behavior) == [()]


def test_netlist_round_trip(door_system):
    text = export_json(door_system, meta={'spec': 'door'})
    data = json.loads(text)
    assert data['meta'] == {'spec': 'door'}
    assert {'from', 'to'} <= set(data['wires'][0])
    trub = next(a for a in data['actors'] if a['kind'] == 'TrUB')
    assert trub['mealy']['init'] == [False]
    assert len(trub['mealy']['transitions']) == 8
    assert import_json(text) == door_system


def test_netlist_without_tables(door_system):
    data = json.loads(export_json(door_system, tables=False))
    assert all(a['mealy'] is None for a in data['actors'])


@pytest.mark.parametrize("text", [
    '{"inputs": []',
    '{"inputs": [], "outputs": [], "actors": [{"id": "x", "kind": "XOR"}]}',
    '{"inputs": [], "outputs": [], "actors": [{"id": "x", "kind": "OR", "params": {}}]}',
])
def test_malformed_netlists(text):
    with pytest.raises(ParseError):
        import_json(text)


def test_netlist_with_dangling_wire():
    text = json.dumps({'inputs': ['a'], 'outputs': [], 'actors': [], 'wires': [{'from': '$a', 'to': 'ghost.input'}]})
    with pytest.raises(UnwiredPort):
        import_json(text)


def test_dot_lists_actors_and_wires():
    sys = small_system()
    dot = to_dot(sys)
    assert dot.startswith('digraph controller {')
    assert '"res_o" [shape=box, label="RES A=0"];' in dot
    assert 'TrUB\\n(L1)' in dot
    assert dot.count(' -> ') == len(sys.wires)


def test_port_value_bool_conversion():
    assert PortValue.from_bool(True).to_bool() is True
    assert PortValue.from_bool(False).to_bool() is False
    with pytest.raises(ValueError):
        PortValue.DASH.to_bool()
