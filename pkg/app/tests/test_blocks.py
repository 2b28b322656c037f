from itertools import combinations, product

import pytest

from blocks.gates import AndGate, ConstSource, NotGate, OrGate, Resolution, make_gate, make_res
from blocks.highlevel import HighLevelKind, IfTB, InUB, TrUB, make_highlevel
from blocks.monitors import ClauseMonitor, P4Monitor, Theta, clause_from_params
from errors import ConflictAtRuntime, GxwError, InvalidH
from formula.models import DnfClause, Literal
from qbf.cnf import CnfBuilder, PortBits, StateBits
from qbf.sat import solve_cnf
from sdf.compose import reachable_states
from sdf.models import DASH, F, T, ActorKind

VALUES = (T, F, DASH)


def drive(behavior, rows):
    """Fire a behavior over a sequence of input tuples from its initial state."""
    state, produced = behavior.initial_state(), []
    for values in rows:
        outputs, state = behavior.fire(state, values)
        produced.append(outputs[0])
    return produced


def rising_edge(name='a'):
    return DnfClause((Literal(0, name, False), Literal(1, name, True)))


def test_not_keeps_dash():
    gate = NotGate()
    assert [gate.fire((), (v,))[0][0] for v in VALUES] == [F, T, DASH]


@pytest.mark.parametrize("values,expected_or,expected_and", [
    ((T, F), T, F),
    ((F, F), F, F),
    ((T, T), T, T),
    ((DASH, F), DASH, F),
    ((DASH, T), T, DASH),
    ((DASH, DASH), DASH, DASH),
])
def test_or_and_lifting(values, expected_or, expected_and):
    assert OrGate(2).fire((), values)[0] == (expected_or,)
    assert AndGate(2).fire((), values)[0] == (expected_and,)


def test_resolution_merges_demands():
    res = Resolution(3, a=False)
    assert res.fire((), (T, DASH, DASH))[0] == (T,)
    assert res.fire((), (DASH, F, DASH))[0] == (F,)
    assert res.fire((), (DASH, DASH, DASH))[0] == (F,)
    assert res.with_parameter(True).fire((), (DASH, DASH, DASH))[0] == (T,)


def test_resolution_conflict_and_missing_parameter():
    with pytest.raises(ConflictAtRuntime):
        Resolution(2, a=True).fire((), (T, F))
    with pytest.raises(GxwError):
        Resolution(2).fire((), (DASH, DASH))


def test_factories():
    assert make_gate(ActorKind.OR, 3).behavior.inputs == ('in0', 'in1', 'in2')
    assert make_gate(ActorKind.NOT).kind is ActorKind.NOT
    with pytest.raises(ValueError):
        make_gate(ActorKind.RES, 2)
    with pytest.raises(ValueError):
        make_res(0)
    actor = make_highlevel(HighLevelKind.TRUB, 'trub0', provenance=('S1',))
    assert actor.kind is ActorKind.TRUB and actor.provenance == ('S1',)
    assert ConstSource(True).fire((), ())[0] == (T,)


def test_iftb():
    assert drive(IfTB(), [(T,), (F,), (DASH,)]) == [T, DASH, DASH]


def test_inub_unlocks_for_good():
    assert drive(InUB(), [(F,), (F,), (T,), (F,)]) == [T, T, DASH, DASH]


def test_trub_locks_and_release_wins():
    rows = [(F, F), (T, F), (F, F), (F, T), (F, F), (T, T), (F, F)]
    assert drive(TrUB(), rows) == [DASH, T, T, DASH, DASH, DASH, DASH]


def test_clause_monitor_window():
    chi = DnfClause((Literal(0, 'in1', False), Literal(1, 'in1'), Literal(1, 'in2'), Literal(2, 'in2', False)))
    monitor = ClauseMonitor(chi)
    assert monitor.inputs == ('in1', 'in2')
    assert drive(monitor, [(F, F), (T, T), (T, F)]) == [F, F, T]


def test_clause_monitor_padding_rejects_shallow_depth():
    with pytest.raises(ValueError):
        ClauseMonitor(rising_edge(), 0)
    padded = ClauseMonitor(DnfClause((Literal(0, 'a'),)), 2)
    assert drive(padded, [(T,), (F,), (F,), (T,)]) == [F, F, T, F]


@pytest.mark.parametrize("length", range(1, 6))
def test_rising_edge_monitor_exhaustive(length):
    monitor = ClauseMonitor(rising_edge())
    for bits in product((False, True), repeat=length):
        produced = drive(monitor, [(T if b else F,) for b in bits])
        expected = [T if t >= 1 and not bits[t - 1] and bits[t] else F for t in range(length)]
        assert produced == expected, bits


SLOTS = [(d, name) for d in range(3) for name in ('a', 'b', 'c')]


def clauses_of_size(k):
    for slots in combinations(SLOTS, k):
        for signs in product((True, False), repeat=k):
            yield DnfClause(tuple(Literal(d, name, sign) for (d, name), sign in zip(slots, signs)))


def check_against_window(clause):
    monitor = ClauseMonitor(clause)
    names, depth = clause.variables, clause.depth
    length = 6 if len(names) <= 2 else 4
    for bits in product((False, True), repeat=len(names) * length):
        rows = [dict(zip(names, bits[t * len(names):(t + 1) * len(names)])) for t in range(length)]
        produced = drive(monitor, [tuple(T if row[n] else F for n in names) for row in rows])
        expected = [T if t >= depth and clause.evaluate(rows[t - depth:t + 1]) else F for t in range(length)]
        assert produced == expected, (str(clause), rows)


@pytest.mark.parametrize("k", [1, pytest.param(2, marks=pytest.mark.slow), pytest.param(3, marks=pytest.mark.slow)])
def test_clause_monitor_matches_window_evaluation(k):
    for clause in clauses_of_size(k):
        check_against_window(clause)


def test_input_free_clause_counts_cycles():
    monitor = ClauseMonitor(DnfClause((), 2))
    assert monitor.inputs == ()
    assert drive(monitor, [(), (), (), ()]) == [F, F, T, T]


def test_p4_monitor_dash_until_window_fills():
    monitor = P4Monitor(rising_edge(), 1)
    assert drive(monitor, [(F,), (T,), (T,), (F,), (T,)]) == [DASH, T, F, F, T]


def test_theta_masks_after_set():
    theta = Theta(2)
    rows = [(T, T), (F, T), (F, T), (T, T), (F, T), (F, T)]
    assert drive(theta, rows) == [F, F, T, F, F, T]


def test_theta_silent_before_first_set():
    assert drive(Theta(1), [(F, T), (F, T), (T, T), (F, T)]) == [F, F, F, T]



def theta_reference(h, sets, ins):
    """Masked for h cycles from each set, false before the first set, else mirrors `in`."""
    last, produced = None, []
    for t, (s, value) in enumerate(zip(sets, ins)):
        if s:
            last = t
        produced.append(T if last is not None and t >= last + h and value else F)
    return produced


@pytest.mark.parametrize("h", [1, 2, 3])
def test_theta_exhaustive(h):
    theta = Theta(h)
    for bits in product((False, True), repeat=16):
        sets, ins = bits[:8], bits[8:]
        produced = drive(theta, [(T if s else F, T if v else F) for s, v in zip(sets, ins)])
        assert produced == theta_reference(h, sets, ins), (sets, ins)

@pytest.mark.parametrize("h", [0, -1])
def test_theta_rejects_nonpositive_h(h):
    with pytest.raises(InvalidH):
        Theta(h)


def test_clause_from_params_round_trip():
    monitor = ClauseMonitor(rising_edge(), 2)
    assert ClauseMonitor(clause_from_params(monitor.params()['clause']), 2) == monitor


def _constant_port(cnf, value):
    return PortBits(cnf.const(value is DASH), cnf.const(value is T))


def _constant_state(cnf, value):
    if value is None:
        return StateBits(cnf.false, cnf.false)
    return StateBits(cnf.true, cnf.const(value))


def _decode(model, lit):
    value = model.get(abs(lit), False)
    return value if lit > 0 else not value


def _encoded_fire(behavior, state, values, a=None):
    cnf = CnfBuilder()
    ins = [_constant_port(cnf, v) for v in values]
    bits = [_constant_state(cnf, s) for s in state]
    param = None if a is None else cnf.const(a)
    outs = behavior.encode_output(cnf, ins, bits, param)
    following = behavior.encode_successor(cnf, ins, bits)
    model = solve_cnf(cnf.clauses)
    assert model is not None
    port = outs[0]
    produced = DASH if _decode(model, port.dash) else (T if _decode(model, port.val) else F)
    target = tuple(_decode(model, s.val) if _decode(model, s.known) else None for s in following)
    return produced, target


@pytest.mark.parametrize("behavior,domain", [
    (NotGate(), VALUES),
    (OrGate(2), VALUES),
    (AndGate(3), VALUES),
    (IfTB(), (T, F)),
    (InUB(), (T, F)),
    (TrUB(), (T, F)),
    (ClauseMonitor(rising_edge(), 2), (T, F)),
    (P4Monitor(rising_edge(), 1), (T, F)),
    (Theta(3), (T, F)),
])
def test_encoding_agrees_with_firing(behavior, domain):
    for state in reachable_states(behavior):
        for values in product(domain, repeat=len(behavior.inputs)):
            produced, target = behavior.fire(state, values)
            assert _encoded_fire(behavior, state, values) == (produced[0], target), (state, values)


@pytest.mark.parametrize("a", [False, True])
def test_resolution_encoding_agrees_with_firing(a):
    res = Resolution(2, a)
    for values in product(VALUES, repeat=2):
        if T in values and F in values:
            continue
        assert _encoded_fire(res, (), values, a)[0] == res.fire((), values)[0][0]
